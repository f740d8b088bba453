// Copyright 2026 The Beatline Authors
// SPDX-License-Identifier: Apache-2.0

#include "beatline/runtime/replay.hpp"

#include "beatline/runtime/session_engine.hpp"
#include "beatline/story/repository.hpp"
#include "beatline/story/text.hpp"

#include <nlohmann/json.hpp>

#include <fstream>

namespace beatline::runtime {

TraceRun run_trace(const std::filesystem::path& story_path, const std::filesystem::path& trace_path,
                   const EngineConfig& config, const std::filesystem::path& out_dir,
                   std::shared_ptr<gateway::GenerationBackend> backend) {
    auto outline = story::load_story_file(story_path);
    const auto trace = story::read_text_file(trace_path);

    auto repository = std::make_shared<const std::vector<story::StoryOutline>>(1, std::move(outline));
    auto context = build_context(config, repository, std::move(backend));

    const auto session_id = trace_path.stem().string();
    std::filesystem::create_directories(out_dir);
    TraceRun run;
    run.segment_log = out_dir / (session_id + ".segments");
    run.turn_log = out_dir / (session_id + ".turns");
    run.transcript_file = out_dir / (session_id + ".transcript");
    for (const auto& p : {run.segment_log, run.turn_log, run.transcript_file}) {
        std::filesystem::remove(p);
    }

    SessionEngine engine(session_id, std::move(context), std::make_shared<FileSink>(run.segment_log),
                         std::make_shared<FileSink>(run.turn_log));

    const auto lines = story::split_lines(trace);
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const int line_no = static_cast<int>(i) + 1;
        const auto line = story::trim(lines[i]);
        if (line.empty() || line.front() == '#') {
            continue;
        }
        if (engine.finished()) {
            throw MalformedTrace(line_no, "message after the session ended");
        }
        for (auto& reply : engine.handle_line(line)) {
            const auto obj = nlohmann::json::parse(reply);
            if (obj.at("type") == "error") {
                throw MalformedTrace(line_no, obj.at("code").get<std::string>() + ": " +
                                                  obj.at("detail").get<std::string>());
            }
            run.server_messages.push_back(std::move(reply));
        }
    }
    engine.disconnect();

    run.transcript = engine.transcript();
    std::ofstream out(run.transcript_file, std::ios::binary);
    out << run.transcript.render();
    if (!out.flush()) {
        throw SinkUnavailable("cannot write " + run.transcript_file.string());
    }
    return run;
}

} // namespace beatline::runtime
