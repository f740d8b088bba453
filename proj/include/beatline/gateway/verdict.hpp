// Copyright 2026 The Beatline Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace beatline::gateway {

/// The supervisor's binary call on an intervention dialogue.
struct SupervisorVerdict {
    enum class Kind : std::uint8_t { ReturnToStory, ContinueConversation };

    Kind kind = Kind::ReturnToStory;
    std::string rationale;

    [[nodiscard]] bool returns_to_story() const noexcept { return kind == Kind::ReturnToStory; }
    bool operator==(const SupervisorVerdict&) const = default;
};

[[nodiscard]] inline std::string_view name(SupervisorVerdict::Kind k) noexcept {
    return k == SupervisorVerdict::Kind::ReturnToStory ? "return_to_story" : "continue_conversation";
}

} // namespace beatline::gateway
