// Copyright 2026 The Beatline Authors
// SPDX-License-Identifier: Apache-2.0

// One PASS/FAIL line per acceptance criterion. Exits nonzero if any fails.

#include "fsm_oracle.hpp"
#include "support.hpp"

#include "beatline/affect/aggregate.hpp"
#include "beatline/affect/alignment.hpp"
#include "beatline/affect/sentiment.hpp"
#include "beatline/gateway/mock_backend.hpp"
#include "beatline/orchestrator/prompts.hpp"
#include "beatline/runtime/bench.hpp"
#include "beatline/runtime/replay.hpp"
#include "beatline/story/repository.hpp"

#include <fmt/core.h>
#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <mutex>
#include <random>
#include <sstream>

namespace bl = beatline;
using bl::story::EmotionCategory;

namespace {

struct Check {
    std::ostringstream failures;
    int count = 0;
    void expect(bool ok, const std::string& what) {
        if (!ok && count++ < 5) failures << "  " << what << "\n";
    }
    [[nodiscard]] bool ok() const { return count == 0; }
};

using Criterion = std::function<void(Check&)>;

void appendix_fidelity(Check& c) {
    const auto& o = bl::testing::appendix_outline();
    c.expect(o.segment_count() == 5, "segment count");
    const std::vector<EmotionCategory> want{EmotionCategory::Neutral, EmotionCategory::Neutral,
                                            EmotionCategory::Neutral, EmotionCategory::Fearful,
                                            EmotionCategory::Surprised};
    c.expect(o.trajectory() == want, "trajectory");
    c.expect(o.segment_count() == 5 && o.segment(4).raw_label == "Anxious", "raw label of segment 4");
    const auto text = bl::story::serialize_outline(o);
    const auto again = bl::story::parse_story_outline(text, o.story_id);
    c.expect(again == o, "parse(serialize(x)) == x");
    c.expect(bl::story::serialize_outline(again) == text, "serialization fixed point");
}

bl::affect::SegmentAffectSummary summary(int index, double happy, double neutral) {
    bl::affect::EmotionVector::Components v{};
    v[static_cast<std::size_t>(EmotionCategory::Happy)] = happy;
    v[static_cast<std::size_t>(EmotionCategory::Neutral)] = neutral;
    return {index, bl::affect::EmotionVector(v), 1.0, 10};
}

void threshold_fidelity(Check& c) {
    const bl::affect::AlignmentPolicy policy;
    auto aligned = [&](double prev_happy, double d) {
        const auto prev = summary(1, prev_happy, 1.0 - prev_happy);
        const double happy = std::min(1.0, prev_happy + d);
        const auto cur = summary(2, happy, 1.0 - happy);
        return bl::affect::evaluate_alignment(prev, cur, EmotionCategory::Neutral, EmotionCategory::Happy, policy)
            .aligned();
    };
    c.expect(aligned(0.0, 0.30), "+0.30 from 0");
    c.expect(aligned(0.1, 0.30), "+0.30 from 0.1");
    c.expect(!aligned(0.0, 0.299), "+0.299 from 0");
    c.expect(!aligned(0.1, 0.299), "+0.299 from 0.1");
    // Every base and step on the 0.001 grid: Aligned exactly from 0.300.
    for (int base = 0; base <= 100; base += 5) {
        for (int k = 0; base + k <= 1000; ++k) {
            const bool got = aligned(base / 1000.0, k / 1000.0);
            c.expect(got == (k >= 300), fmt::format("base {} step {}", base, k));
        }
    }
}

void attention_fidelity(Check& c) {
    const bl::affect::AlignmentPolicy policy;
    using bl::affect::FaceObservation;
    c.expect(bl::affect::attention_flag(FaceObservation{320, 240, 640, 480}, policy), "center");
    c.expect(bl::affect::attention_flag(FaceObservation{384, 240, 640, 480}, policy), "cx=384");
    c.expect(!bl::affect::attention_flag(FaceObservation{500, 240, 640, 480}, policy), "cx=500");
    std::mt19937 rng(2026);
    std::uniform_int_distribution<int> size(16, 4096);
    for (int i = 0; i < 10000; ++i) {
        const int w = size(rng);
        const int h = size(rng);
        const int cx = std::uniform_int_distribution<int>(0, w)(rng);
        const int cy = std::uniform_int_distribution<int>(0, h)(rng);
        // |cx - w/2| <= 0.2 w, scaled to integers.
        const bool want = 5 * std::abs(2 * cx - w) <= 2 * w && 5 * std::abs(2 * cy - h) <= 2 * h;
        const bool got = bl::affect::attention_flag(FaceObservation{double(cx), double(cy), double(w), double(h)},
                                                    policy);
        c.expect(got == want, fmt::format("face {} {} in {}x{}", cx, cy, w, h));
    }
}

void three_consecutive(Check& c) {
    for (const auto cause : {bl::testing::BadCause::Mismatch, bl::testing::BadCause::Inattention}) {
        for (unsigned mask = 0; mask < 1024; ++mask) {
            const auto bits = bl::testing::bits_of(mask, 10);
            const auto run = bl::testing::run_fsm(bits, cause);
            const auto oracle = bl::testing::fsm_oracle(bits, cause);
            c.expect(run.interventions == oracle.interventions, fmt::format("interventions mask {}", mask));
            c.expect(run.modes == oracle.modes, fmt::format("modes mask {}", mask));
            c.expect(run.ended, fmt::format("ended mask {}", mask));
        }
    }
}

int run_cli(const std::string& args) {
    const std::string command = std::string("\"") + BEATLINE_CLI + "\" " + args + " >/dev/null 2>&1";
    const int status = std::system(command.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

const std::vector<std::string> kGoldenTraces{"all_aligned", "mismatch_streak", "inattention_streak"};

void end_to_end(Check& c) {
    bl::testing::TempDir dir;
    for (const auto& name : kGoldenTraces) {
        const auto start = std::chrono::steady_clock::now();
        const int rc = run_cli(fmt::format("run --story \"{}\" --trace \"{}\" --backend mock --out \"{}\"",
                                           bl::testing::appendix_story_path().string(),
                                           (bl::testing::traces_dir() / (name + ".trace")).string(),
                                           dir.path().string()));
        const auto elapsed = std::chrono::steady_clock::now() - start;
        c.expect(rc == 0, name + " exit code");
        c.expect(elapsed < std::chrono::seconds(1), name + " wall time");
        for (const auto* ext : {".transcript", ".segments", ".turns"}) {
            const auto file = name + ext;
            c.expect(std::filesystem::exists(dir.path() / file) &&
                         bl::story::read_text_file(dir.path() / file) ==
                             bl::story::read_text_file(bl::testing::golden_dir() / file),
                     file + " differs from golden");
        }
    }
}

class Recorder final : public bl::gateway::GenerationBackend {
  public:
    [[nodiscard]] std::string_view id() const noexcept override { return inner_.id(); }
    bl::gateway::GenerationResult generate(const bl::orchestrator::PromptEnvelope& envelope) override {
        std::lock_guard lock(mutex_);
        seen.push_back(envelope);
        return inner_.generate(envelope);
    }
    bl::gateway::SupervisorVerdict supervise(std::span<const bl::orchestrator::ConversationTurn> history,
                                             std::string_view last) override {
        return inner_.supervise(history, last);
    }
    std::vector<bl::orchestrator::PromptEnvelope> seen;

  private:
    bl::gateway::MockBackend inner_;
    std::mutex mutex_;
};

void directive_coverage(Check& c) {
    namespace d = bl::orchestrator::directive;
    bl::testing::TempDir dir;
    std::size_t baseline = 0, emotive = 0;
    for (const auto& name : kGoldenTraces) {
        auto recorder = std::make_shared<Recorder>();
        (void)bl::runtime::run_trace(bl::testing::appendix_story_path(),
                                     bl::testing::traces_dir() / (name + ".trace"), {}, dir.path(), recorder);
        for (const auto& env : recorder->seen) {
            if (env.purpose != bl::orchestrator::PromptPurpose::Narration) continue;
            auto has = [&](std::string_view s) {
                return std::any_of(env.directives.begin(), env.directives.end(),
                                   [&](const std::string& x) { return x.find(s) != std::string::npos; });
            };
            const auto where = fmt::format("{} segment {}", name, env.segment_index.value_or(0));
            for (const auto s : {d::kMaxFiveSentences, d::kFirstPerson, d::kAdhereToSource, d::kNoNamePrefix}) {
                c.expect(has(s), where + " lacks " + std::string(s));
            }
            if (env.mode == bl::orchestrator::NarrationMode::Emotive) {
                ++emotive;
                const auto& seg = bl::testing::appendix_outline().segment(env.segment_index.value_or(1));
                c.expect(env.expected_emotion == seg.expected_emotion, where + " expected emotion field");
                c.expect(has(bl::orchestrator::emotive_directive(seg.expected_emotion)), where + " emotive directive");
                c.expect(has(bl::story::name(seg.expected_emotion)), where + " names the emotion");
            } else {
                ++baseline;
                c.expect(!env.expected_emotion.has_value(), where + " baseline carries an emotion");
            }
        }
    }
    c.expect(baseline > 0 && emotive > 0, "both modes exercised");
}

struct SentimentCase {
    const char* text;
    double expected;
};

constexpr SentimentCase kSentimentCases[] = {
#include "unit/sentiment_cases.inc"
};

void sentiment_formula(Check& c) {
    const auto& lex = bl::affect::default_lexicon();
    c.expect(std::size(kSentimentCases) == 25, "25 frozen cases");
    for (const auto& k : kSentimentCases) {
        const double got = bl::affect::sentiment_score(k.text, lex);
        c.expect(std::abs(got - k.expected) <= 1e-9, fmt::format("\"{}\" got {:.17g}", k.text, got));
    }
    const std::vector<std::string> pool{"good", "bad", "love", "hate", "not", "never", "great", "awful",
                                        "angry", "happy", "no", "very", "the", "rally", "!", "isn't", "scary"};
    std::mt19937 rng(99);
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    std::uniform_int_distribution<int> len(0, 60);
    for (int i = 0; i < 10000; ++i) {
        std::string s;
        for (int n = len(rng); n > 0; --n) s += pool[pick(rng)] + " ";
        const double got = bl::affect::sentiment_score(s, lex);
        c.expect(std::isfinite(got) && got > -1.0 && got < 1.0, fmt::format("fuzz \"{}\" -> {}", s, got));
    }
}

void aggregation_oracle(Check& c) {
    std::mt19937 rng(4242);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (const int n : {1, 2, 3, 10, 99, 1000, 5000, 10000}) {
        std::vector<bl::affect::AffectFrame> frames;
        for (int i = 0; i < n; ++i) {
            bl::affect::EmotionVector::Components v{};
            double total = 0;
            for (auto& x : v) total += (x = u(rng));
            for (auto& x : v) x /= total;
            frames.push_back({i * 100, bl::affect::EmotionVector(v), std::nullopt});
        }
        const auto s = bl::affect::aggregate_segment(frames, 1, {});
        long double sum_avg = 0;
        for (const auto e : bl::story::kAllEmotions) {
            long double sum = 0;
            for (const auto& f : frames) sum += f.probs[e];
            const auto mean = static_cast<double>(sum / n);
            c.expect(std::abs(s.avg[e] - mean) <= 1e-12, fmt::format("n={} {}", n, bl::story::name(e)));
            sum_avg += s.avg[e];
        }
        c.expect(std::abs(static_cast<double>(sum_avg) - 1.0) <= 1e-9, fmt::format("n={} normalization", n));
        c.expect(s.frame_count == n, "frame count");
    }
}

void throughput(Check& c) {
    const auto r = bl::runtime::run_ingestion_bench(bl::testing::appendix_outline());
    std::fprintf(stderr, "%s\n", bl::runtime::format_bench(r).c_str());
    c.expect(r.frames_per_second >= 1000.0, fmt::format("ingest {:.0f} frames/s", r.frames_per_second));
    c.expect(r.max_boundary_ms < 10.0, fmt::format("boundary {:.3f} ms", r.max_boundary_ms));
}

} // namespace

int main() {
    const std::vector<std::pair<const char*, Criterion>> criteria{
        {"appendix_fidelity", appendix_fidelity},    {"threshold_fidelity", threshold_fidelity},
        {"attention_fidelity", attention_fidelity},  {"three_consecutive_rule", three_consecutive},
        {"end_to_end_determinism", end_to_end},      {"prompt_directive_coverage", directive_coverage},
        {"sentiment_formula", sentiment_formula},    {"aggregation_oracle", aggregation_oracle},
        {"throughput", throughput},
    };
    int failed = 0;
    for (const auto& [name, fn] : criteria) {
        Check check;
        try {
            fn(check);
        } catch (const std::exception& e) {
            check.expect(false, std::string("exception: ") + e.what());
        }
        std::printf("%s %s\n", check.ok() ? "PASS" : "FAIL", name);
        if (!check.ok()) {
            std::printf("%s", check.failures.str().c_str());
            ++failed;
        }
    }
    std::fflush(stdout);
    return failed == 0 ? 0 : 1;
}
