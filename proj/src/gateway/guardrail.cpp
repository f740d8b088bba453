// Copyright 2026 The Beatline Authors
// SPDX-License-Identifier: Apache-2.0

#include "beatline/gateway/guardrail.hpp"

#include "beatline/story/repository.hpp"
#include "beatline/story/text.hpp"

namespace beatline::gateway {

Guardrail::Guardrail(std::vector<std::string> patterns) : patterns_(std::move(patterns)) {
    compiled_.reserve(patterns_.size());
    for (const auto& p : patterns_) {
        compiled_.emplace_back(p, std::regex::ECMAScript | std::regex::icase | std::regex::optimize);
    }
}

Guardrail Guardrail::defaults() {
    const std::string groups = "(democrats|republicans|liberals|conservatives|immigrants|leftists|right-wingers)";
    return Guardrail({
        R"(\b(libtards?|rethuglicans?|demonrats?|repugs?|snowflakes)\b)",
        R"(\ball )" + groups + R"( are\b)",
        R"(\b)" + groups + R"( are (all )?(stupid|evil|idiots|traitors|criminals|brainwashed|the enemy)\b)",
        R"(\b(typical|those) )" + groups + R"( (always|never)\b)",
    });
}

Guardrail Guardrail::from_file(const std::filesystem::path& path) {
    std::vector<std::string> patterns;
    const auto text = story::read_text_file(path);
    for (auto line : story::split_lines(text)) {
        const auto t = story::trim(line);
        if (!t.empty() && t.front() != '#') {
            patterns.emplace_back(t);
        }
    }
    return Guardrail(std::move(patterns));
}

std::optional<std::string> Guardrail::first_match(const std::string& text) const {
    for (std::size_t i = 0; i < compiled_.size(); ++i) {
        if (std::regex_search(text, compiled_[i])) {
            return patterns_[i];
        }
    }
    return std::nullopt;
}

} // namespace beatline::gateway
