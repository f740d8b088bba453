// Copyright 2026 The Beatline Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "beatline/affect/aggregate.hpp"

namespace beatline::affect {

enum class Alignment : std::uint8_t { Aligned, Mismatch };

[[nodiscard]] std::string_view name(Alignment a) noexcept;

struct AlignmentVerdict {
    Alignment verdict = Alignment::Aligned;
    /// Change of the expected emotion's probability; empty for the opening
    /// segment, which has nothing to compare against.
    std::optional<double> delta;

    [[nodiscard]] bool aligned() const noexcept { return verdict == Alignment::Aligned; }
    bool operator==(const AlignmentVerdict&) const = default;
};

/// Slack applied to threshold comparisons so decimal inputs such as
/// 0.70 - 0.40 count as exactly 0.30.
inline constexpr double kThresholdSlack = 1e-9;

/// cur - prev, per category.
[[nodiscard]] EmotionDelta emotion_delta(const EmotionVector& prev, const EmotionVector& cur) noexcept;

/// If the expected emotion changes between the two segments the new one must
/// rise by at least shift_threshold; if it stays the same it may not fall by
/// more than hold_tolerance.
[[nodiscard]] AlignmentVerdict evaluate_alignment(const SegmentAffectSummary& prev, const SegmentAffectSummary& cur,
                                                  EmotionCategory expected_prev, EmotionCategory expected_cur,
                                                  const AlignmentPolicy& policy) noexcept;

/// The opening segment has no predecessor and is always aligned.
[[nodiscard]] inline AlignmentVerdict opening_verdict() noexcept { return {Alignment::Aligned, std::nullopt}; }

} // namespace beatline::affect
