// Copyright 2026 The Beatline Authors
// SPDX-License-Identifier: Apache-2.0

#include "beatline/runtime/bench.hpp"
#include "beatline/runtime/config.hpp"
#include "beatline/runtime/replay.hpp"
#include "beatline/runtime/server.hpp"
#include "beatline/story/errors.hpp"
#include "beatline/story/lint.hpp"
#include "beatline/story/repository.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <csignal>
#include <cstdio>
#include <pthread.h>

namespace {

using namespace beatline;

constexpr int kExitOk = 0;
constexpr int kExitDiagnostics = 1;
constexpr int kExitError = 2;

int cmd_validate(const std::string& path) {
    story::StoryOutline outline;
    try {
        outline = story::load_story_file(path);
    } catch (const std::exception& e) {
        fmt::print(stderr, "{}: error: {}\n", path, e.what());
        return kExitError;
    }
    const auto diagnostics = story::validate_outline(outline);
    for (const auto& d : diagnostics) {
        fmt::print("{}:{}: {}: {}\n", path, d.segment ? fmt::format("segment {}", *d.segment) : "story",
                   story::name(d.code), d.message);
    }
    if (!diagnostics.empty()) {
        return kExitDiagnostics;
    }
    fmt::print("{}: ok ({} segments)\n", path, outline.segment_count());
    return kExitOk;
}

runtime::EngineConfig engine_config(const std::string& policy, const std::string& backend,
                                    runtime::EngineConfig config = {}) {
    if (!policy.empty()) {
        config = runtime::load_config(policy, config);
    }
    if (!backend.empty()) {
        config.backend = runtime::parse_backend_kind(backend);
    }
    return config;
}

int cmd_run(const std::string& story_path, const std::string& trace_path, const std::string& backend,
            const std::string& policy, const std::string& out_dir) {
    try {
        const auto config = engine_config(policy, backend);
        const auto run = runtime::run_trace(story_path, trace_path, config, out_dir);
        fmt::print("{}: {} narrations, {} questions, {}\n", run.transcript.session_id(),
                   run.transcript.count(runtime::EventKind::Narration),
                   run.transcript.count(runtime::EventKind::Question), run.transcript.events().back().payload);
        fmt::print("wrote {}\n", run.transcript_file.string());
        return kExitOk;
    } catch (const std::exception& e) {
        fmt::print(stderr, "error: {}\n", e.what());
        return kExitError;
    }
}

int cmd_serve(const std::string& listen, const std::string& stories, const std::string& backend,
              const std::string& policy, const std::string& log_dir) {
    // Block the stop signals before any thread starts so only sigwait sees them.
    sigset_t signals;
    sigemptyset(&signals);
    sigaddset(&signals, SIGINT);
    sigaddset(&signals, SIGTERM);
    pthread_sigmask(SIG_BLOCK, &signals, nullptr);

    try {
        // Live clients may never send segment_end, so close windows by time.
        runtime::EngineConfig base;
        base.segment_window_ms = 8000;
        const auto config = engine_config(policy, backend, base);
        auto repository = std::make_shared<const std::vector<story::StoryOutline>>(story::load_repository(stories));
        runtime::ServerOptions options;
        options.listen = runtime::parse_listen_address(listen);
        options.log_dir = log_dir;
        runtime::Server server(options, runtime::build_context(config, repository));
        server.start();
        fmt::print("listening on {}:{} ({} stories, logs in {})\n", options.listen.host, server.port(),
                   repository->size(), log_dir);
        std::fflush(stdout);
        int sig = 0;
        sigwait(&signals, &sig);
        fmt::print("stopping\n");
        server.stop();
        return kExitOk;
    } catch (const std::exception& e) {
        fmt::print(stderr, "error: {}\n", e.what());
        return kExitError;
    }
}

int cmd_bench(const std::string& story_path, int frames) {
    try {
        const auto outline = story::load_story_file(story_path);
        runtime::BenchOptions options;
        options.frames_per_segment = frames;
        const auto r = runtime::run_ingestion_bench(outline, options);
        fmt::print("{}\n", runtime::format_bench(r));
        return r.frames_per_second >= 1000.0 && r.max_boundary_ms < 10.0 ? kExitOk : kExitDiagnostics;
    } catch (const std::exception& e) {
        fmt::print(stderr, "error: {}\n", e.what());
        return kExitError;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"beatline: affect-adaptive story narration engine"};
    app.require_subcommand(1);

    std::string story_path;
    auto* validate = app.add_subcommand("validate", "Parse and lint a story file");
    validate->add_option("story", story_path, "Story file")->required();

    std::string trace_path, backend, policy, out_dir;
    auto* run = app.add_subcommand("run", "Replay a trace against a story");
    run->add_option("--story", story_path, "Story file")->required();
    run->add_option("--trace", trace_path, "Trace file")->required();
    run->add_option("--backend", backend, "mock or http")->check(CLI::IsMember({"mock", "http"}));
    run->add_option("--policy", policy, "Configuration file");
    run->add_option("--out", out_dir, "Output directory")->required();

    std::string listen, stories, log_dir = "logs";
    auto* serve = app.add_subcommand("serve", "Run the session service");
    serve->add_option("--listen", listen, "host:port")->required();
    serve->add_option("--stories", stories, "Story directory")->required();
    serve->add_option("--backend", backend, "mock or http")->check(CLI::IsMember({"mock", "http"}));
    serve->add_option("--policy", policy, "Configuration file");
    serve->add_option("--logs", log_dir, "Log directory");

    int frames = 1000;
    auto* bench = app.add_subcommand("bench", "Measure ingestion throughput and boundary latency");
    bench->add_option("--story", story_path, "Story file")->required();
    bench->add_option("--frames", frames, "Frames per segment")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitError;
    }

    if (*validate) return cmd_validate(story_path);
    if (*run) return cmd_run(story_path, trace_path, backend, policy, out_dir);
    if (*serve) return cmd_serve(listen, stories, backend, policy, log_dir);
    return cmd_bench(story_path, frames);
}
