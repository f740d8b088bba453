// Copyright 2026 The Beatline Authors
// SPDX-License-Identifier: Apache-2.0

#include "support.hpp"

#include "beatline/gateway/mock_backend.hpp"
#include "beatline/runtime/config.hpp"
#include "beatline/runtime/logs.hpp"
#include "beatline/runtime/protocol.hpp"
#include "beatline/runtime/replay.hpp"
#include "beatline/runtime/session_engine.hpp"
#include "beatline/story/errors.hpp"
#include "beatline/story/repository.hpp"

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include <fstream>
#include <random>

namespace beatline::runtime {
namespace {

using json = nlohmann::json;
using orchestrator::Phase;

std::string type_of(const std::string& message) { return json::parse(message).at("type").get<std::string>(); }

std::string frame_line(std::int64_t t, bool centered = true) {
    affect::AffectFrame f;
    f.t_ms = t;
    f.probs = testing::peaked(story::EmotionCategory::Neutral);
    if (centered) f.face = testing::centered_face();
    return serialize_client_message(FrameMessage{f});
}

struct EngineFixture {
    EngineFixture() : EngineFixture(EngineConfig{}) {}
    explicit EngineFixture(const EngineConfig& config)
        : segments(std::make_shared<MemorySink>()),
          turns(std::make_shared<MemorySink>()),
          engine("s1",
                 build_context(config,
                               std::make_shared<const std::vector<story::StoryOutline>>(
                                   1, testing::appendix_outline())),
                 segments, turns) {}
    std::shared_ptr<MemorySink> segments;
    std::shared_ptr<MemorySink> turns;
    SessionEngine engine;
};

const char* kPresetStart = R"({"type":"start","profile":{"orientation":"Democrat","salient_issue":"climate"}})";

TEST(Config, ParsesKeysAndResolvesPaths) {
    const auto cfg = parse_config(
        "# policy\nshift_threshold = 0.25\nconsecutive_limit=4 # inline\nsegment_window_ms = 5000\n"
        "lexicon = lex.tsv\nbackend = http\nhttp.model = local\nhttp.deadline_ms = 1500\n",
        {}, "/etc/beatline");
    EXPECT_DOUBLE_EQ(cfg.policy.shift_threshold, 0.25);
    EXPECT_EQ(cfg.policy.consecutive_limit, 4);
    EXPECT_EQ(cfg.segment_window_ms, 5000);
    EXPECT_EQ(cfg.lexicon, std::filesystem::path("/etc/beatline/lex.tsv"));
    EXPECT_EQ(cfg.backend, BackendKind::Http);
    EXPECT_EQ(cfg.http.model, "local");
    EXPECT_EQ(cfg.http.deadline.count(), 1500);
    EXPECT_DOUBLE_EQ(cfg.policy.hold_tolerance, 0.10);
}

TEST(Config, Errors) {
    EXPECT_THROW((void)parse_config("nonsense\n"), ConfigError);
    EXPECT_THROW((void)parse_config("colour = red\n"), ConfigError);
    EXPECT_THROW((void)parse_config("shift_threshold = lots\n"), ConfigError);
    EXPECT_THROW((void)parse_config("consecutive_limit = 2.5\n"), ConfigError);
    EXPECT_THROW((void)parse_config("shift_threshold = 1.5\n"), ConfigError);
    EXPECT_THROW((void)parse_config("backend = magic\n"), ConfigError);
    try {
        (void)parse_config("\n\ncolour = red\n");
    } catch (const ConfigError& e) {
        EXPECT_EQ(e.line(), 3);
    }
}

TEST(Config, MakeBackend) {
    EXPECT_EQ(make_backend({})->id(), "mock");
}

TEST(Protocol, ParsesEveryClientMessage) {
    EXPECT_TRUE(std::holds_alternative<StartMessage>(parse_client_message(R"({"type":"start"})")));
    const auto start = std::get<StartMessage>(parse_client_message(
        R"({"type":"start","profile":{"orientation":"republican","issue":"guns"},"story_id":"x"})"));
    EXPECT_EQ(start.profile->orientation, story::Orientation::Republican);
    EXPECT_EQ(start.profile->salient_issue, "guns");
    EXPECT_EQ(start.story_id, "x");
    const auto u = std::get<UtteranceMessage>(parse_client_message(R"({"type":"utterance","text":"hi","t_ms":5})"));
    EXPECT_EQ(u.text, "hi");
    EXPECT_EQ(u.t_ms, 5);
    const auto f = std::get<FrameMessage>(parse_client_message(frame_line(7)));
    EXPECT_EQ(f.frame.t_ms, 7);
    EXPECT_DOUBLE_EQ(f.frame.probs[story::EmotionCategory::Neutral], 0.7);
    EXPECT_TRUE(f.frame.face.has_value());
    EXPECT_FALSE(std::get<FrameMessage>(parse_client_message(frame_line(7, false))).frame.face.has_value());
    EXPECT_EQ(std::get<SegmentEndMessage>(parse_client_message(R"({"type":"segment_end","t_ms":9})")).t_ms, 9);
    EXPECT_TRUE(std::holds_alternative<EndMessage>(parse_client_message(R"({"type":"end"})")));
}

TEST(Protocol, FrameRoundTrip) {
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> u(0, 1);
    for (int i = 0; i < 200; ++i) {
        affect::EmotionVector::Components c{};
        double s = 0;
        for (auto& x : c) s += (x = u(rng));
        for (auto& x : c) x /= s;
        affect::AffectFrame f{i, affect::EmotionVector(c), affect::FaceObservation{u(rng) * 640, u(rng) * 480, 640, 480}};
        const auto back = std::get<FrameMessage>(parse_client_message(serialize_client_message(FrameMessage{f})));
        EXPECT_EQ(back.frame, f);
    }
}

TEST(Protocol, RejectsBadMessages) {
    auto code_of = [](std::string_view line) {
        try {
            (void)parse_client_message(line);
        } catch (const ProtocolError& e) {
            return e.code();
        }
        return std::string("accepted");
    };
    EXPECT_EQ(code_of("{nope"), "bad_json");
    EXPECT_EQ(code_of("[1,2]"), "bad_message");
    EXPECT_EQ(code_of(R"({"kind":"start"})"), "bad_message");
    EXPECT_EQ(code_of(R"({"type":"dance"})"), "unknown_type");
    EXPECT_EQ(code_of(R"({"type":"utterance","text":"x"})"), "bad_message");
    EXPECT_EQ(code_of(R"({"type":"utterance","text":"x","t_ms":-1})"), "bad_message");
    EXPECT_EQ(code_of(R"({"type":"frame","t_ms":1,"probs":{"happy":1}})"), "bad_frame");
    EXPECT_EQ(code_of(R"({"type":"frame","t_ms":1,"probs":{"happy":0.5,"sad":0.5,"angry":0,"disgusted":0,"fearful":0,"surprised":0,"neutral":0.5}})"),
              "bad_frame");
    EXPECT_EQ(code_of(R"({"type":"frame","t_ms":1,"probs":{"happy":1,"sad":0,"angry":0,"disgusted":0,"fearful":0,"surprised":0,"neutral":0},"face":{"cx":900,"cy":1,"frame_w":640,"frame_h":480}})"),
              "bad_frame");
    EXPECT_EQ(code_of(R"({"type":"start","profile":{"orientation":"whig"}})"), "bad_message");
    EXPECT_EQ(code_of(R"({"type":"start","profile":{"shoe":"9"}})"), "bad_message");
}

TEST(Protocol, ServerMessages) {
    EXPECT_EQ(narration_message(2, orchestrator::NarrationMode::Emotive, "t"),
              R"({"type":"narration","segment":2,"mode":"emotive","text":"t"})");
    EXPECT_EQ(question_message(orchestrator::InterventionCause::Inattention, "q"),
              R"({"type":"question","cause":"attention","text":"q"})");
    EXPECT_EQ(error_message("no_active_session", "no active session"),
              R"({"type":"error","code":"no_active_session","detail":"no active session"})");
    EXPECT_EQ(end_message(true), R"({"type":"end","reason":"completed"})");
    EXPECT_EQ(end_message(false), R"({"type":"end","reason":"aborted"})");
    EXPECT_EQ(onboarding_question_message("q"), R"({"type":"onboarding_question","text":"q"})");
}

SegmentLogEntry sample_entry() {
    affect::SegmentAffectSummary s{3, testing::peaked(story::EmotionCategory::Fearful, 0.123456789), 0.9, 42};
    return SegmentLogEntry::make("sess", s, true, {affect::Alignment::Mismatch, -0.1234567},
                                 orchestrator::Proceed{4, orchestrator::NarrationMode::Emotive},
                                 orchestrator::NarrationMode::Baseline, 1234);
}

TEST(SegmentLog, RoundTrip) {
    const auto e = sample_entry();
    const auto line = format_segment_log(e);
    EXPECT_EQ(line.find('\n'), std::string::npos);
    EXPECT_NE(line.find("\"fearful\":0.123457"), std::string::npos);
    EXPECT_NE(line.find("\"delta\":-0.123457"), std::string::npos);
    EXPECT_EQ(parse_segment_log(line), e);
    EXPECT_THROW((void)parse_segment_log("{}"), MalformedLogLine);
    EXPECT_THROW((void)parse_segment_log("x"), MalformedLogLine);
}

TEST(SegmentLog, RandomRoundTrip) {
    std::mt19937 rng(9);
    std::uniform_real_distribution<double> u(0, 1);
    for (int i = 0; i < 500; ++i) {
        affect::EmotionVector::Components c{};
        double s = 0;
        for (auto& x : c) s += (x = u(rng));
        for (auto& x : c) x /= s;
        const auto e = SegmentLogEntry::make("r", {i + 1, affect::EmotionVector(c), u(rng), i + 1},
                                             false, {affect::Alignment::Aligned, u(rng) - 0.5},
                                             orchestrator::EndStory{}, orchestrator::NarrationMode::Emotive, i);
        ASSERT_EQ(parse_segment_log(format_segment_log(e)), e);
    }
}

TEST(SegmentLog, AppendsInOrder) {
    MemorySink sink;
    auto a = sample_entry();
    auto b = sample_entry();
    b.segment_index = 4;
    EXPECT_EQ(append_segment_log(a, sink).line_number, 1u);
    EXPECT_EQ(append_segment_log(b, sink).line_number, 2u);
    const auto lines = sink.lines();
    ASSERT_EQ(lines.size(), 2u);
    EXPECT_EQ(parse_segment_log(lines[0]), a);
    EXPECT_EQ(parse_segment_log(lines[1]), b);
}

TEST(SegmentLog, FileSink) {
    testing::TempDir dir;
    {
        FileSink sink(dir.path() / "x.segments");
        (void)append_segment_log(sample_entry(), sink);
        (void)append_segment_log(sample_entry(), sink);
    }
    std::ifstream in(dir.path() / "x.segments");
    std::string line;
    int n = 0;
    while (std::getline(in, line)) {
        EXPECT_EQ(parse_segment_log(line), sample_entry());
        ++n;
    }
    EXPECT_EQ(n, 2);
}

TEST(SegmentLog, UnavailableSinks) {
    testing::TempDir dir;
    // A directory cannot be opened for append.
    EXPECT_THROW(FileSink{dir.path()}, SinkUnavailable);
    EXPECT_THROW(FileSink{dir.path() / "missing" / "x.segments"}, SinkUnavailable);
    if (std::filesystem::exists("/dev/full")) {
        FileSink full("/dev/full");
        EXPECT_THROW((void)append_segment_log(sample_entry(), full), SinkUnavailable);
    }
}

TEST(Transcript, Bracketing) {
    SessionTranscript t("x");
    t.add(0, EventKind::Onboarding, "hello");
    t.add(1, EventKind::Narration, "line one\nline two");
    t.end(2, true);
    t.end(3, false);
    EXPECT_EQ(t.count(EventKind::End), 1u);
    EXPECT_THROW(t.add(4, EventKind::User, "late"), std::logic_error);
    EXPECT_EQ(t.render(), "# session x\n       0 onboarding hello\n       1 narration  line one\\nline two\n"
                          "       2 end        completed\n");
}

TEST(Engine, FrameBeforeStart) {
    EngineFixture fx;
    const auto out = fx.engine.handle_line(frame_line(0));
    ASSERT_EQ(out.size(), 1u);
    const auto obj = json::parse(out[0]);
    EXPECT_EQ(obj["type"], "error");
    EXPECT_EQ(obj["detail"], "no active session");
    EXPECT_FALSE(fx.engine.started());
}

TEST(Engine, InvalidMessagesLeaveStateUnchanged) {
    EngineFixture fx;
    (void)fx.engine.handle_line(kPresetStart);
    (void)fx.engine.handle_line(frame_line(100));
    const auto before = fx.engine.state();
    const auto transcript_before = fx.engine.transcript().events();
    for (const char* bad : {"{", "[]", R"({"type":"teleport"})", R"({"type":"utterance"})",
                            R"({"type":"frame","t_ms":1,"probs":{}})", R"({"type":"start"})",
                            R"({"type":"utterance","text":"x","t_ms":50})"}) {
        const auto out = fx.engine.handle_line(bad);
        ASSERT_EQ(out.size(), 1u) << bad;
        EXPECT_EQ(type_of(out[0]), "error") << bad;
        EXPECT_EQ(fx.engine.state(), before) << bad;
        EXPECT_EQ(fx.engine.transcript().events(), transcript_before) << bad;
    }
}

TEST(Engine, SegmentEndWithoutFramesRejected) {
    EngineFixture fx;
    (void)fx.engine.handle_line(kPresetStart);
    const auto out = fx.engine.handle_line(R"({"type":"segment_end","t_ms":10})");
    ASSERT_EQ(out.size(), 1u);
    EXPECT_EQ(json::parse(out[0])["code"], "empty_window");
    EXPECT_EQ(fx.engine.state().cursor, 1);
}

TEST(Engine, PresetProfileNarratesAtOnce) {
    EngineFixture fx;
    const auto out = fx.engine.handle_line(kPresetStart);
    ASSERT_EQ(out.size(), 1u);
    const auto obj = json::parse(out[0]);
    EXPECT_EQ(obj["type"], "narration");
    EXPECT_EQ(obj["segment"], 1);
    EXPECT_EQ(obj["mode"], "baseline");
    EXPECT_EQ(fx.engine.state().phase, Phase::Narrating);
}

TEST(Engine, SegmentBoundaryEmitsSummaryThenNarration) {
    EngineFixture fx;
    (void)fx.engine.handle_line(kPresetStart);
    for (int i = 1; i <= 10; ++i) (void)fx.engine.handle_line(frame_line(i * 100));
    const auto out = fx.engine.handle_line(R"({"type":"segment_end","t_ms":1100})");
    ASSERT_EQ(out.size(), 2u);
    const auto summary = json::parse(out[0]);
    EXPECT_EQ(summary["type"], "segment_summary");
    EXPECT_EQ(summary["session"], "s1");
    EXPECT_EQ(summary["segment"], 1);
    EXPECT_EQ(summary["frames"], 10);
    EXPECT_EQ(summary["action"], "proceed:2:baseline");
    EXPECT_EQ(type_of(out[1]), "narration");
    ASSERT_EQ(fx.segments->lines().size(), 1u);
    EXPECT_EQ(parse_segment_log(fx.segments->lines()[0]).segment_index, 1);
}

TEST(Engine, TimeWindowClosesSegment) {
    EngineConfig cfg;
    cfg.segment_window_ms = 1000;
    EngineFixture fx(cfg);
    (void)fx.engine.handle_line(kPresetStart);
    for (int i = 0; i < 10; ++i) EXPECT_TRUE(fx.engine.handle_line(frame_line(i * 100)).empty());
    const auto out = fx.engine.handle_line(frame_line(1000));
    ASSERT_EQ(out.size(), 2u);
    EXPECT_EQ(type_of(out[0]), "segment_summary");
    EXPECT_EQ(json::parse(out[0])["frames"], 10);
    EXPECT_EQ(fx.engine.state().cursor, 2);
}

TEST(Engine, ClientEndAborts) {
    EngineFixture fx;
    (void)fx.engine.handle_line(kPresetStart);
    const auto out = fx.engine.handle_line(R"({"type":"end"})");
    ASSERT_EQ(out.size(), 1u);
    EXPECT_EQ(out[0], end_message(false));
    EXPECT_TRUE(fx.engine.finished());
    EXPECT_EQ(fx.engine.transcript().events().back().payload, "aborted");
    EXPECT_EQ(type_of(fx.engine.handle_line(R"({"type":"end"})")[0]), "error");
}

TEST(Engine, DisconnectAddsAbortMarkerAndFlushes) {
    EngineFixture fx;
    (void)fx.engine.handle_line(R"({"type":"start"})");
    (void)fx.engine.handle_line(R"({"type":"utterance","text":"I'm a Democrat and I care about climate.","t_ms":5})");
    fx.engine.disconnect();
    fx.engine.disconnect();
    EXPECT_TRUE(fx.engine.finished());
    EXPECT_EQ(fx.engine.transcript().count(EventKind::End), 1u);
    EXPECT_EQ(fx.engine.transcript().events().back().payload, "aborted");
    EXPECT_TRUE(fx.engine.state().aborted);
    EXPECT_EQ(fx.turns->lines().size(), fx.engine.state().history.size());
}

TEST(Engine, GuardrailReplacesGeneration) {
    class Rude final : public gateway::GenerationBackend {
      public:
        [[nodiscard]] std::string_view id() const noexcept override { return "rude"; }
        gateway::GenerationResult generate(const orchestrator::PromptEnvelope&) override {
            return {"All Democrats are liars.", "rude", 0, false};
        }
        gateway::SupervisorVerdict supervise(std::span<const orchestrator::ConversationTurn>,
                                             std::string_view) override {
            return {gateway::SupervisorVerdict::Kind::ReturnToStory, ""};
        }
    };
    auto segments = std::make_shared<MemorySink>();
    auto turns = std::make_shared<MemorySink>();
    SessionEngine engine("g",
                         build_context({}, std::make_shared<const std::vector<story::StoryOutline>>(
                                               1, testing::appendix_outline()),
                                       std::make_shared<Rude>()),
                         segments, turns);
    const auto out = engine.handle_line(kPresetStart);
    ASSERT_EQ(out.size(), 1u);
    EXPECT_EQ(json::parse(out[0])["text"], testing::appendix_outline().segment(1).source_text);
    EXPECT_EQ(engine.transcript().count(EventKind::Error), 1u);
}

std::string slurp(const std::filesystem::path& p) { return story::read_text_file(p); }

TEST(Replay, DeterministicAcrossRuns) {
    testing::TempDir a, b;
    for (const auto* name : {"all_aligned", "mismatch_streak", "inattention_streak", "interrupt"}) {
        const auto trace = testing::traces_dir() / (std::string(name) + ".trace");
        const auto ra = run_trace(testing::appendix_story_path(), trace, {}, a.path());
        const auto rb = run_trace(testing::appendix_story_path(), trace, {}, b.path());
        EXPECT_EQ(ra.transcript.render(), rb.transcript.render()) << name;
        EXPECT_EQ(ra.server_messages, rb.server_messages) << name;
        for (const auto* ext : {".segments", ".turns", ".transcript"}) {
            EXPECT_EQ(slurp(a.path() / (std::string(name) + ext)), slurp(b.path() / (std::string(name) + ext)));
        }
    }
}

TEST(Replay, RerunReplacesOutputs) {
    testing::TempDir dir;
    const auto trace = testing::traces_dir() / "all_aligned.trace";
    (void)run_trace(testing::appendix_story_path(), trace, {}, dir.path());
    const auto first = slurp(dir.path() / "all_aligned.segments");
    (void)run_trace(testing::appendix_story_path(), trace, {}, dir.path());
    EXPECT_EQ(slurp(dir.path() / "all_aligned.segments"), first);
}

TEST(Replay, LogCompleteness) {
    testing::TempDir dir;
    for (const auto* name : {"all_aligned", "mismatch_streak", "inattention_streak", "interrupt"}) {
        const auto r =
            run_trace(testing::appendix_story_path(), testing::traces_dir() / (std::string(name) + ".trace"), {},
                      dir.path());
        std::ifstream in(r.segment_log);
        std::string line;
        std::size_t n = 0, repeats = 0;
        while (std::getline(in, line)) {
            repeats += parse_segment_log(line).repeat ? 1 : 0;
            ++n;
        }
        EXPECT_EQ(n, r.transcript.count(EventKind::Narration)) << name;
        EXPECT_EQ(repeats, std::string(name) == "inattention_streak" ? 1u : 0u) << name;
        EXPECT_EQ(r.transcript.count(EventKind::End), 1u);
    }
}

TEST(Replay, MalformedTraceReportsLine) {
    testing::TempDir dir;
    const auto trace = dir.path() / "bad.trace";
    std::ofstream(trace) << "# comment\n" << frame_line(0) << "\n";
    try {
        (void)run_trace(testing::appendix_story_path(), trace, {}, dir.path());
        FAIL() << "expected MalformedTrace";
    } catch (const MalformedTrace& e) {
        EXPECT_EQ(e.line(), 2);
    }
    std::ofstream(trace) << R"({"type":"start"})" << "\n{broken\n";
    try {
        (void)run_trace(testing::appendix_story_path(), trace, {}, dir.path());
        FAIL() << "expected MalformedTrace";
    } catch (const MalformedTrace& e) {
        EXPECT_EQ(e.line(), 2);
    }
}

TEST(Replay, TruncatedTraceAborts) {
    testing::TempDir dir;
    const auto trace = dir.path() / "short.trace";
    std::ofstream(trace) << kPresetStart << "\n" << frame_line(100) << "\n";
    const auto r = run_trace(testing::appendix_story_path(), trace, {}, dir.path());
    EXPECT_EQ(r.transcript.events().back().kind, EventKind::End);
    EXPECT_EQ(r.transcript.events().back().payload, "aborted");
}

TEST(Replay, StoryParseErrorsPropagate) {
    testing::TempDir dir;
    std::ofstream(dir.path() / "broken.txt") << "Segment 2\n\nx\n\nExpected emotion: Happy\n";
    EXPECT_THROW((void)run_trace(dir.path() / "broken.txt", testing::traces_dir() / "all_aligned.trace", {},
                                 dir.path()),
                 story::NonSequentialIndex);
}

} // namespace
} // namespace beatline::runtime
