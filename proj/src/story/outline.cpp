// Copyright 2026 The Beatline Authors
// SPDX-License-Identifier: Apache-2.0

#include "beatline/story/outline.hpp"

#include "beatline/story/errors.hpp"
#include "beatline/story/text.hpp"

#include <charconv>
#include <stdexcept>

namespace beatline::story {

namespace {

constexpr std::string_view kSegmentKeyword = "segment";
constexpr std::string_view kLabelKey = "expected emotion";

// "Segment 12" -> 12; anything else -> nullopt.
std::optional<int> parse_segment_header(std::string_view line) {
    line = trim(line);
    if (line.size() <= kSegmentKeyword.size() ||
        !iequals(line.substr(0, kSegmentKeyword.size()), kSegmentKeyword)) {
        return std::nullopt;
    }
    auto rest = line.substr(kSegmentKeyword.size());
    if (rest.empty() || (rest.front() != ' ' && rest.front() != '\t')) {
        return std::nullopt;
    }
    rest = trim(rest);
    int value = 0;
    const auto* first = rest.data();
    const auto* last = rest.data() + rest.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last || rest.empty()) {
        return std::nullopt;
    }
    return value;
}

struct KeyValue {
    std::string_view key;
    std::string_view value;
};

std::optional<KeyValue> split_key_value(std::string_view line) {
    const auto colon = line.find(':');
    if (colon == std::string_view::npos) {
        return std::nullopt;
    }
    return KeyValue{trim(line.substr(0, colon)), trim(line.substr(colon + 1))};
}

enum class MetaKey { Narrator, Orientation, Issue, Age, Gender, Ethnicity };

std::optional<MetaKey> meta_key(std::string_view key) {
    if (iequals(key, "narrator")) return MetaKey::Narrator;
    if (iequals(key, "orientation")) return MetaKey::Orientation;
    if (iequals(key, "issue")) return MetaKey::Issue;
    if (iequals(key, "age")) return MetaKey::Age;
    if (iequals(key, "gender")) return MetaKey::Gender;
    if (iequals(key, "ethnicity")) return MetaKey::Ethnicity;
    return std::nullopt;
}

bool apply_metadata(StoryOutline& outline, std::string_view line) {
    auto kv = split_key_value(line);
    if (!kv) {
        return false;
    }
    auto key = meta_key(kv->key);
    if (!key) {
        return false;
    }
    const std::string value(kv->value);
    switch (*key) {
    case MetaKey::Narrator: outline.persona.name = value; break;
    case MetaKey::Orientation: {
        auto o = parse_orientation(value);
        if (!o) {
            return false;
        }
        outline.persona.orientation = o;
        break;
    }
    case MetaKey::Issue: outline.issue = to_lower(value); break;
    case MetaKey::Age: outline.persona.age_band = value; break;
    case MetaKey::Gender: outline.persona.gender = value; break;
    case MetaKey::Ethnicity: outline.persona.race_ethnicity = value; break;
    }
    return true;
}

std::string join_body(const std::vector<std::string_view>& lines) {
    std::size_t begin = 0;
    std::size_t end = lines.size();
    while (begin < end && trim(lines[begin]).empty()) ++begin;
    while (end > begin && trim(lines[end - 1]).empty()) --end;

    std::string body;
    bool previous_blank = false;
    for (std::size_t i = begin; i < end; ++i) {
        auto line = lines[i];
        while (!line.empty() && (line.back() == ' ' || line.back() == '\t')) {
            line.remove_suffix(1);
        }
        const bool blank = line.empty();
        if (blank && previous_blank) {
            continue;
        }
        if (i != begin) {
            body.push_back('\n');
        }
        body.append(line);
        previous_blank = blank;
    }
    return body;
}

} // namespace

std::string_view name(Orientation o) noexcept {
    switch (o) {
    case Orientation::Democrat: return "Democrat";
    case Orientation::Republican: return "Republican";
    case Orientation::Other: return "other";
    }
    return "other";
}

std::optional<Orientation> parse_orientation(std::string_view text) {
    const auto key = to_lower(trim(text));
    if (key == "democrat" || key == "democratic" || key == "dem") return Orientation::Democrat;
    if (key == "republican" || key == "gop" || key == "rep") return Orientation::Republican;
    if (key == "other" || key == "independent") return Orientation::Other;
    return std::nullopt;
}

std::vector<EmotionCategory> StoryOutline::trajectory() const {
    std::vector<EmotionCategory> out;
    out.reserve(segments.size());
    for (const auto& s : segments) {
        out.push_back(s.expected_emotion);
    }
    return out;
}

const StorySegment& StoryOutline::segment(int index) const {
    if (index < 1 || static_cast<std::size_t>(index) > segments.size()) {
        throw std::out_of_range("segment index " + std::to_string(index) + " outside 1.." +
                                std::to_string(segments.size()));
    }
    return segments[static_cast<std::size_t>(index - 1)];
}

StoryOutline parse_story_outline(std::string_view raw_text, std::string story_id) {
    StoryOutline outline;
    outline.story_id = std::move(story_id);

    int open_segment = 0;  // 0 while no segment is open
    std::vector<std::string_view> body;

    const auto lines = split_lines(raw_text);
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const auto line = lines[i];
        const int line_no = static_cast<int>(i) + 1;

        if (auto header = parse_segment_header(line)) {
            if (open_segment) {
                throw MissingEmotionLabel(open_segment);
            }
            const int expected = static_cast<int>(outline.segments.size()) + 1;
            if (*header != expected) {
                throw NonSequentialIndex(*header, expected);
            }
            open_segment = *header;
            body.clear();
            continue;
        }

        if (open_segment) {
            auto kv = split_key_value(line);
            if (kv && iequals(kv->key, kLabelKey)) {
                if (kv->value.empty()) {
                    throw MissingEmotionLabel(open_segment);
                }
                StorySegment seg;
                seg.index = open_segment;
                seg.source_text = join_body(body);
                if (seg.source_text.empty()) {
                    throw EmptySegment(seg.index);
                }
                seg.raw_label = std::string(kv->value);
                seg.expected_emotion = canonical_emotion(seg.raw_label);
                outline.segments.push_back(std::move(seg));
                open_segment = 0;
            } else {
                body.push_back(line);
            }
            continue;
        }

        if (trim(line).empty()) {
            continue;
        }
        if (outline.segments.empty() && apply_metadata(outline, line)) {
            continue;
        }
        throw UnexpectedText(line_no, std::string(trim(line)));
    }

    if (open_segment) {
        throw MissingEmotionLabel(open_segment);
    }
    if (outline.segments.empty()) {
        throw EmptyOutline();
    }
    return outline;
}

std::string serialize_outline(const StoryOutline& outline) {
    std::string out;
    const auto meta = [&out](std::string_view key, std::string_view value) {
        if (!value.empty()) {
            out.append(key).append(": ").append(value).push_back('\n');
        }
    };
    meta("Narrator", outline.persona.name);
    if (outline.persona.orientation) {
        meta("Orientation", name(*outline.persona.orientation));
    }
    meta("Issue", outline.issue);
    meta("Age", outline.persona.age_band);
    meta("Gender", outline.persona.gender);
    meta("Ethnicity", outline.persona.race_ethnicity);
    if (!out.empty()) {
        out.push_back('\n');
    }

    for (std::size_t i = 0; i < outline.segments.size(); ++i) {
        const auto& seg = outline.segments[i];
        if (i != 0) {
            out.push_back('\n');
        }
        out.append("Segment ").append(std::to_string(seg.index)).append("\n\n");
        out.append(seg.source_text).append("\n\n");
        out.append("Expected emotion: ").append(seg.raw_label).push_back('\n');
    }
    return out;
}

} // namespace beatline::story
