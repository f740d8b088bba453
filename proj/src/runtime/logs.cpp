// Copyright 2026 The Beatline Authors
// SPDX-License-Identifier: Apache-2.0

#include "beatline/runtime/logs.hpp"

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include <cerrno>
#include <cmath>
#include <cstring>

namespace beatline::runtime {

using json = nlohmann::json;

namespace {

std::string json_quote(std::string_view s) { return json(std::string(s)).dump(); }

std::string fixed6(double x) {
    auto s = fmt::format("{:.6f}", x);
    return s == "-0.000000" ? "0.000000" : s;
}

template <class T>
T require(const json& obj, const char* key) {
    const auto it = obj.find(key);
    if (it == obj.end()) {
        throw MalformedLogLine(std::string("missing key '") + key + "'");
    }
    try {
        return it->get<T>();
    } catch (const json::exception&) {
        throw MalformedLogLine(std::string("bad value for '") + key + "'");
    }
}

} // namespace

double quantize(double x) noexcept {
    const double q = std::round(x * 1e6) / 1e6;
    return q == 0.0 ? 0.0 : q;
}

SegmentLogEntry SegmentLogEntry::make(std::string session_id, const affect::SegmentAffectSummary& summary, bool repeat,
                                      const affect::AlignmentVerdict& verdict, const orchestrator::Action& action,
                                      orchestrator::NarrationMode mode, std::int64_t t_ms) {
    SegmentLogEntry e;
    e.session_id = std::move(session_id);
    e.segment_index = summary.segment_index;
    e.repeat = repeat;
    for (std::size_t i = 0; i < e.avg.size(); ++i) {
        e.avg[i] = quantize(summary.avg.components()[i]);
    }
    e.attention_fraction = quantize(summary.attention_fraction);
    e.frame_count = summary.frame_count;
    e.verdict = verdict.verdict;
    if (verdict.delta) {
        e.delta = quantize(*verdict.delta);
    }
    e.action = orchestrator::to_string(action);
    e.mode = mode;
    e.t_ms = t_ms;
    return e;
}

std::string format_segment_log(const SegmentLogEntry& e) {
    std::string avg;
    for (const auto c : story::kAllEmotions) {
        if (!avg.empty()) avg += ',';
        avg += fmt::format("\"{}\":{}", story::name(c), fixed6(e.avg[story::index_of(c)]));
    }
    return fmt::format(
        R"({{"session":{},"segment":{},"repeat":{},"avg":{{{}}},"attention_fraction":{},"frames":{},"verdict":"{}","delta":{},"action":{},"mode":"{}","t_ms":{}}})",
        json_quote(e.session_id), e.segment_index, e.repeat ? "true" : "false", avg, fixed6(e.attention_fraction),
        e.frame_count, affect::name(e.verdict), e.delta ? fixed6(*e.delta) : "null", json_quote(e.action),
        orchestrator::name(e.mode), e.t_ms);
}

SegmentLogEntry parse_segment_log(std::string_view line) {
    json obj;
    try {
        obj = json::parse(line);
    } catch (const json::parse_error& ex) {
        throw MalformedLogLine(ex.what());
    }
    if (!obj.is_object()) {
        throw MalformedLogLine("segment log line is not an object");
    }
    SegmentLogEntry e;
    e.session_id = require<std::string>(obj, "session");
    e.segment_index = require<int>(obj, "segment");
    e.repeat = require<bool>(obj, "repeat");
    const auto avg = require<json>(obj, "avg");
    for (const auto c : story::kAllEmotions) {
        e.avg[story::index_of(c)] = require<double>(avg, std::string(story::name(c)).c_str());
    }
    e.attention_fraction = require<double>(obj, "attention_fraction");
    e.frame_count = require<int>(obj, "frames");
    const auto verdict = require<std::string>(obj, "verdict");
    if (verdict == "aligned") {
        e.verdict = affect::Alignment::Aligned;
    } else if (verdict == "mismatch") {
        e.verdict = affect::Alignment::Mismatch;
    } else {
        throw MalformedLogLine("unknown verdict '" + verdict + "'");
    }
    const auto delta = require<json>(obj, "delta");
    if (!delta.is_null()) {
        if (!delta.is_number()) throw MalformedLogLine("bad value for 'delta'");
        e.delta = delta.get<double>();
    }
    e.action = require<std::string>(obj, "action");
    const auto mode = require<std::string>(obj, "mode");
    if (mode == "baseline") {
        e.mode = orchestrator::NarrationMode::Baseline;
    } else if (mode == "emotive") {
        e.mode = orchestrator::NarrationMode::Emotive;
    } else {
        throw MalformedLogLine("unknown mode '" + mode + "'");
    }
    e.t_ms = require<std::int64_t>(obj, "t_ms");
    return e;
}

std::string format_turn_log(std::string_view session_id, const orchestrator::ConversationTurn& t) {
    return fmt::format(R"({{"session":{},"turn":{},"speaker":"{}","text":{},"sentiment":{},"t_ms":{}}})",
                       json_quote(session_id), t.turn_index, orchestrator::name(t.speaker), json_quote(t.text),
                       t.sentiment ? fixed6(*t.sentiment) : "null", t.t_ms);
}

FileSink::FileSink(const std::filesystem::path& path) : path_(path) {
    file_ = std::fopen(path.c_str(), "a");
    if (file_ == nullptr) {
        throw SinkUnavailable("cannot open " + path.string() + " for append: " + std::strerror(errno));
    }
}

FileSink::~FileSink() {
    if (file_ != nullptr) {
        std::fclose(file_);
    }
}

void FileSink::append_line(std::string_view line) {
    std::lock_guard lock(mutex_);
    const bool ok = std::fwrite(line.data(), 1, line.size(), file_) == line.size() && std::fputc('\n', file_) != EOF &&
                    std::fflush(file_) == 0;
    if (!ok) {
        const int err = errno;
        std::clearerr(file_);
        throw SinkUnavailable("write to " + path_.string() + " failed: " + std::strerror(err));
    }
    ++lines_;
}

std::size_t FileSink::lines_written() const {
    std::lock_guard lock(mutex_);
    return lines_;
}

void MemorySink::append_line(std::string_view line) {
    std::lock_guard lock(mutex_);
    lines_.emplace_back(line);
}

std::size_t MemorySink::lines_written() const {
    std::lock_guard lock(mutex_);
    return lines_.size();
}

std::vector<std::string> MemorySink::lines() const {
    std::lock_guard lock(mutex_);
    return lines_;
}

LogAck append_segment_log(const SegmentLogEntry& entry, LogSink& sink) {
    sink.append_line(format_segment_log(entry));
    return LogAck{sink.lines_written()};
}

} // namespace beatline::runtime
