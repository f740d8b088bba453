// Copyright 2026 The Beatline Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "beatline/affect/emotion_vector.hpp"
#include "beatline/affect/policy.hpp"

#include <span>

namespace beatline::affect {

class EmptyWindow : public std::runtime_error {
  public:
    explicit EmptyWindow(int segment)
        : std::runtime_error("no affect frames in the window of segment " + std::to_string(segment)) {}
};

/// The per-beat record kept in the segment log.
struct SegmentAffectSummary {
    int segment_index = 0;
    EmotionVector avg;
    double attention_fraction = 0.0;
    int frame_count = 0;

    bool operator==(const SegmentAffectSummary&) const = default;
};

/// True iff a face is present and its center is within attention_radius of the
/// frame center on each axis: |cx - w/2| <= r*w and |cy - h/2| <= r*h.
[[nodiscard]] bool attention_flag(const std::optional<FaceObservation>& face, const AlignmentPolicy& policy) noexcept;

[[nodiscard]] inline bool is_inattentive(const SegmentAffectSummary& s, const AlignmentPolicy& policy) noexcept {
    return s.attention_fraction < policy.attention_fraction_min;
}

/// Streaming mean over one narration window. O(1) per frame; uses compensated
/// summation so long windows keep full precision.
class SegmentAccumulator {
  public:
    explicit SegmentAccumulator(AlignmentPolicy policy = {}) : policy_(policy) {}

    /// Throws InvalidObservation if t_ms goes backwards.
    void add(const AffectFrame& frame);
    void reset() noexcept;

    [[nodiscard]] int frame_count() const noexcept { return count_; }
    [[nodiscard]] bool empty() const noexcept { return count_ == 0; }
    /// Throws EmptyWindow when no frame was added.
    [[nodiscard]] SegmentAffectSummary summary(int segment_index) const;

  private:
    AlignmentPolicy policy_;
    std::array<double, kEmotionCount> sum_{};
    std::array<double, kEmotionCount> compensation_{};
    int count_ = 0;
    int attentive_ = 0;
    std::optional<std::int64_t> last_t_ms_;
};

/// Summarises a complete window. Throws EmptyWindow for an empty span.
[[nodiscard]] SegmentAffectSummary aggregate_segment(std::span<const AffectFrame> frames, int segment_index,
                                                     const AlignmentPolicy& policy);

} // namespace beatline::affect
