// Copyright 2026 The Beatline Authors
// SPDX-License-Identifier: Apache-2.0

#include "beatline/runtime/protocol.hpp"

#include <nlohmann/json.hpp>

namespace beatline::runtime {

using json = nlohmann::json;
using ojson = nlohmann::ordered_json;
using story::EmotionCategory;

namespace {

[[noreturn]] void bad(const std::string& detail) { throw ProtocolError(error_code::kBadMessage, detail); }

const json& field(const json& obj, const char* key) {
    const auto it = obj.find(key);
    if (it == obj.end()) {
        bad(std::string("missing field '") + key + "'");
    }
    return *it;
}

std::int64_t get_t_ms(const json& obj) {
    const auto& v = field(obj, "t_ms");
    if (!v.is_number_integer() || v.get<std::int64_t>() < 0) {
        bad("t_ms must be a non-negative integer");
    }
    return v.get<std::int64_t>();
}

double get_number(const json& obj, const char* key, const char* what) {
    const auto it = obj.find(key);
    if (it == obj.end() || !it->is_number()) {
        throw ProtocolError(error_code::kBadFrame, std::string(what) + "." + key + " must be a number");
    }
    return it->get<double>();
}

std::optional<std::string> optional_string(const json& obj, const char* key) {
    const auto it = obj.find(key);
    if (it == obj.end() || it->is_null()) {
        return std::nullopt;
    }
    if (!it->is_string()) {
        bad(std::string("'") + key + "' must be a string");
    }
    return it->get<std::string>();
}

story::UserProfile parse_profile(const json& p) {
    if (!p.is_object()) {
        bad("profile must be an object");
    }
    for (const auto& [key, _] : p.items()) {
        if (key != "orientation" && key != "salient_issue" && key != "issue" && key != "age_band" &&
            key != "gender" && key != "race_ethnicity") {
            bad("unknown profile field '" + key + "'");
        }
    }
    story::UserProfile profile;
    if (auto o = optional_string(p, "orientation")) {
        profile.orientation = story::parse_orientation(*o);
        if (!profile.orientation) {
            bad("unknown orientation '" + *o + "'");
        }
    }
    if (auto v = optional_string(p, "salient_issue")) profile.salient_issue = *v;
    else if (auto w = optional_string(p, "issue")) profile.salient_issue = *w;
    if (auto v = optional_string(p, "age_band")) profile.age_band = *v;
    if (auto v = optional_string(p, "gender")) profile.gender = *v;
    if (auto v = optional_string(p, "race_ethnicity")) profile.race_ethnicity = *v;
    return profile;
}

FrameMessage parse_frame(const json& obj) {
    FrameMessage msg;
    msg.frame.t_ms = get_t_ms(obj);
    const auto& probs = field(obj, "probs");
    if (!probs.is_object()) {
        throw ProtocolError(error_code::kBadFrame, "probs must be an object");
    }
    if (probs.size() != story::kEmotionCount) {
        throw ProtocolError(error_code::kBadFrame, "probs must have exactly the seven emotion keys");
    }
    affect::EmotionVector::Components c{};
    for (const auto e : story::kAllEmotions) {
        c[story::index_of(e)] = get_number(probs, std::string(story::name(e)).c_str(), "probs");
    }
    const auto face_it = obj.find("face");
    try {
        msg.frame.probs = affect::EmotionVector(c);
        if (face_it != obj.end() && !face_it->is_null()) {
            if (!face_it->is_object()) {
                throw ProtocolError(error_code::kBadFrame, "face must be an object or null");
            }
            affect::FaceObservation face{get_number(*face_it, "cx", "face"), get_number(*face_it, "cy", "face"),
                                         get_number(*face_it, "frame_w", "face"),
                                         get_number(*face_it, "frame_h", "face")};
            face.validate();
            msg.frame.face = face;
        }
    } catch (const affect::InvalidObservation& e) {
        throw ProtocolError(error_code::kBadFrame, e.what());
    }
    return msg;
}

ojson profile_json(const story::UserProfile& p) {
    ojson out = ojson::object();
    if (p.orientation) out["orientation"] = std::string(story::name(*p.orientation));
    if (!p.salient_issue.empty()) out["salient_issue"] = p.salient_issue;
    if (!p.age_band.empty()) out["age_band"] = p.age_band;
    if (!p.gender.empty()) out["gender"] = p.gender;
    if (!p.race_ethnicity.empty()) out["race_ethnicity"] = p.race_ethnicity;
    return out;
}

} // namespace

ClientMessage parse_client_message(std::string_view line) {
    json obj;
    try {
        obj = json::parse(line);
    } catch (const json::parse_error& e) {
        throw ProtocolError(error_code::kBadJson, e.what());
    }
    if (!obj.is_object()) {
        bad("message must be a JSON object");
    }
    const auto type_it = obj.find("type");
    if (type_it == obj.end() || !type_it->is_string()) {
        bad("message has no string 'type'");
    }
    const auto type = type_it->get<std::string>();

    if (type == "start") {
        StartMessage msg;
        if (const auto it = obj.find("profile"); it != obj.end() && !it->is_null()) {
            msg.profile = parse_profile(*it);
        }
        msg.story_id = optional_string(obj, "story_id");
        return msg;
    }
    if (type == "utterance") {
        const auto& text = field(obj, "text");
        if (!text.is_string()) {
            bad("utterance text must be a string");
        }
        return UtteranceMessage{text.get<std::string>(), get_t_ms(obj)};
    }
    if (type == "frame") {
        return parse_frame(obj);
    }
    if (type == "segment_end") {
        return SegmentEndMessage{get_t_ms(obj)};
    }
    if (type == "end") {
        return EndMessage{};
    }
    throw ProtocolError(error_code::kUnknownType, "unknown message type '" + type + "'");
}

std::string serialize_client_message(const ClientMessage& message) {
    return std::visit(
        [](const auto& m) -> std::string {
            using T = std::decay_t<decltype(m)>;
            ojson out;
            if constexpr (std::is_same_v<T, StartMessage>) {
                out["type"] = "start";
                if (m.profile) out["profile"] = profile_json(*m.profile);
                if (m.story_id) out["story_id"] = *m.story_id;
            } else if constexpr (std::is_same_v<T, UtteranceMessage>) {
                out["type"] = "utterance";
                out["text"] = m.text;
                out["t_ms"] = m.t_ms;
            } else if constexpr (std::is_same_v<T, FrameMessage>) {
                out["type"] = "frame";
                out["t_ms"] = m.frame.t_ms;
                ojson probs;
                for (const auto e : story::kAllEmotions) {
                    probs[std::string(story::name(e))] = m.frame.probs[e];
                }
                out["probs"] = probs;
                if (m.frame.face) {
                    const auto& f = *m.frame.face;
                    out["face"] = {{"cx", f.cx}, {"cy", f.cy}, {"frame_w", f.frame_w}, {"frame_h", f.frame_h}};
                } else {
                    out["face"] = nullptr;
                }
            } else if constexpr (std::is_same_v<T, SegmentEndMessage>) {
                out["type"] = "segment_end";
                out["t_ms"] = m.t_ms;
            } else {
                out["type"] = "end";
            }
            return out.dump();
        },
        message);
}

std::string onboarding_question_message(std::string_view text) {
    return ojson{{"type", "onboarding_question"}, {"text", std::string(text)}}.dump();
}

std::string narration_message(int segment, orchestrator::NarrationMode mode, std::string_view text) {
    return ojson{{"type", "narration"},
                 {"segment", segment},
                 {"mode", std::string(orchestrator::name(mode))},
                 {"text", std::string(text)}}
        .dump();
}

std::string question_message(orchestrator::InterventionCause cause, std::string_view text) {
    return ojson{{"type", "question"}, {"cause", std::string(orchestrator::name(cause))}, {"text", std::string(text)}}
        .dump();
}

std::string segment_summary_message(std::string_view log_line) {
    // log_line is a JSON object; splice "type" in front so the fixed-precision
    // numbers are kept as written.
    if (log_line.size() < 2 || log_line.front() != '{') {
        throw std::invalid_argument("segment log line is not an object");
    }
    return std::string(R"({"type":"segment_summary",)") + std::string(log_line.substr(1));
}

std::string error_message(std::string_view code, std::string_view detail) {
    return ojson{{"type", "error"}, {"code", std::string(code)}, {"detail", std::string(detail)}}.dump();
}

std::string end_message(bool completed) {
    return ojson{{"type", "end"}, {"reason", completed ? "completed" : "aborted"}}.dump();
}

} // namespace beatline::runtime
