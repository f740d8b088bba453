// Copyright 2026 The Beatline Authors
// SPDX-License-Identifier: Apache-2.0

#include "beatline/story/lint.hpp"

#include <cctype>

namespace beatline::story {

namespace {

bool is_terminal(char c) { return c == '.' || c == '!' || c == '?'; }

} // namespace

std::string_view name(DiagnosticCode code) noexcept {
    switch (code) {
    case DiagnosticCode::SegmentLengthOutOfConvention: return "SegmentLengthOutOfConvention";
    case DiagnosticCode::MissingPersonaField: return "MissingPersonaField";
    case DiagnosticCode::MissingOrientation: return "MissingOrientation";
    case DiagnosticCode::MissingIssue: return "MissingIssue";
    }
    return "Unknown";
}

int count_sentences(std::string_view text) {
    // Terminators inside quotes are ignored, except that a quote closing right
    // after one ends the sentence unless lowercase text follows. UTF-8 curly quotes: U+201C (E2 80 9C) opens,
    // U+201D (E2 80 9D) closes.
    int count = 0;
    bool in_quote = false;
    bool in_terminator_run = false;
    bool pending_content = false;
    bool quote_tail_terminal = false;

    const auto lowercase_follows = [&](std::size_t from) {
        while (from < text.size() && std::isspace(static_cast<unsigned char>(text[from]))) ++from;
        return from < text.size() && std::islower(static_cast<unsigned char>(text[from]));
    };
    const auto toggle_quote = [&](bool opening, std::size_t next) {
        if (in_quote && !opening && quote_tail_terminal && !lowercase_follows(next)) {
            ++count;
            pending_content = false;
            in_terminator_run = true;
        } else {
            pending_content = true;
            in_terminator_run = false;
        }
        in_quote = opening;
        quote_tail_terminal = false;
    };

    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (c == '"') {
            toggle_quote(!in_quote, i + 1);
            continue;
        }
        if (static_cast<unsigned char>(c) == 0xE2 && i + 2 < text.size() &&
            static_cast<unsigned char>(text[i + 1]) == 0x80) {
            const auto third = static_cast<unsigned char>(text[i + 2]);
            if (third == 0x9C || third == 0x9D) {
                toggle_quote(third == 0x9C, i + 3);
                i += 2;
                continue;
            }
        }
        if (in_quote) {
            if (!std::isspace(static_cast<unsigned char>(c))) quote_tail_terminal = is_terminal(c);
            continue;
        }
        if (is_terminal(c)) {
            if (!in_terminator_run) {
                ++count;
                in_terminator_run = true;
            }
            pending_content = false;
            continue;
        }
        in_terminator_run = false;
        if (!std::isspace(static_cast<unsigned char>(c))) {
            pending_content = true;
        }
    }
    return count + (pending_content ? 1 : 0);
}

std::vector<Diagnostic> validate_outline(const StoryOutline& outline) {
    std::vector<Diagnostic> out;
    for (const auto& seg : outline.segments) {
        const int n = count_sentences(seg.source_text);
        if (n < kMinSentences || n > kMaxSentences) {
            out.push_back({DiagnosticCode::SegmentLengthOutOfConvention, seg.index,
                           "segment " + std::to_string(seg.index) + " has " + std::to_string(n) +
                               " sentences (convention is 2-5)"});
        }
    }
    if (!outline.narrator_orientation()) {
        out.push_back({DiagnosticCode::MissingOrientation, std::nullopt,
                       "narrator orientation is not set; the story can never be selected"});
    }
    if (outline.issue.empty()) {
        out.push_back({DiagnosticCode::MissingIssue, std::nullopt, "issue tag is empty"});
    }
    const auto persona_field = [&out](const std::string& value, std::string_view field) {
        if (value.empty()) {
            out.push_back({DiagnosticCode::MissingPersonaField, std::nullopt,
                           "persona field '" + std::string(field) + "' is empty"});
        }
    };
    persona_field(outline.persona.name, "name");
    persona_field(outline.persona.age_band, "age");
    persona_field(outline.persona.gender, "gender");
    persona_field(outline.persona.race_ethnicity, "ethnicity");
    return out;
}

} // namespace beatline::story
