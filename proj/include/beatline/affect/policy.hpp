// Copyright 2026 The Beatline Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

namespace beatline::affect {

/// Tuning knobs for alignment and attention decisions.
struct AlignmentPolicy {
    double shift_threshold = 0.30;       // required rise of a newly expected emotion, probability points
    double hold_tolerance = 0.10;        // allowed decay when the expected emotion is unchanged
    int consecutive_limit = 3;           // bad segments in a row before intervening
    double attention_radius = 0.20;      // per-axis offset from center, as a fraction of frame size
    double attention_fraction_min = 0.5; // segment is inattentive below this fraction of attentive frames
    double frame_rate_hz = 10.0;

    /// Throws std::invalid_argument when a field is out of range.
    void validate() const;

    bool operator==(const AlignmentPolicy&) const = default;
};

} // namespace beatline::affect
