// Copyright 2026 The Beatline Authors
// SPDX-License-Identifier: Apache-2.0

#include "beatline/affect/alignment.hpp"

namespace beatline::affect {

std::string_view name(Alignment a) noexcept { return a == Alignment::Aligned ? "aligned" : "mismatch"; }

EmotionDelta emotion_delta(const EmotionVector& prev, const EmotionVector& cur) noexcept {
    EmotionDelta d{};
    for (std::size_t i = 0; i < kEmotionCount; ++i) {
        d[i] = cur.components()[i] - prev.components()[i];
    }
    return d;
}

AlignmentVerdict evaluate_alignment(const SegmentAffectSummary& prev, const SegmentAffectSummary& cur,
                                    EmotionCategory expected_prev, EmotionCategory expected_cur,
                                    const AlignmentPolicy& policy) noexcept {
    const double delta = emotion_delta(prev.avg, cur.avg)[story::index_of(expected_cur)];
    const bool ok = expected_cur != expected_prev ? delta >= policy.shift_threshold - kThresholdSlack
                                                  : delta >= -policy.hold_tolerance - kThresholdSlack;
    return {ok ? Alignment::Aligned : Alignment::Mismatch, delta};
}

} // namespace beatline::affect
