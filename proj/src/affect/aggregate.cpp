// Copyright 2026 The Beatline Authors
// SPDX-License-Identifier: Apache-2.0

#include "beatline/affect/aggregate.hpp"

#include <algorithm>
#include <cmath>

namespace beatline::affect {

bool attention_flag(const std::optional<FaceObservation>& face, const AlignmentPolicy& policy) noexcept {
    if (!face) {
        return false;
    }
    const double dx = std::abs(face->cx - face->frame_w / 2.0);
    const double dy = std::abs(face->cy - face->frame_h / 2.0);
    return dx <= policy.attention_radius * face->frame_w && dy <= policy.attention_radius * face->frame_h;
}

void SegmentAccumulator::add(const AffectFrame& frame) {
    if (last_t_ms_ && frame.t_ms < *last_t_ms_) {
        throw InvalidObservation("frame timestamp " + std::to_string(frame.t_ms) + " precedes " +
                                 std::to_string(*last_t_ms_));
    }
    last_t_ms_ = frame.t_ms;
    const auto& p = frame.probs.components();
    for (std::size_t i = 0; i < kEmotionCount; ++i) {
        // Neumaier summation.
        const double t = sum_[i] + p[i];
        if (std::abs(sum_[i]) >= std::abs(p[i])) {
            compensation_[i] += (sum_[i] - t) + p[i];
        } else {
            compensation_[i] += (p[i] - t) + sum_[i];
        }
        sum_[i] = t;
    }
    ++count_;
    if (attention_flag(frame.face, policy_)) {
        ++attentive_;
    }
}

void SegmentAccumulator::reset() noexcept {
    sum_.fill(0.0);
    compensation_.fill(0.0);
    count_ = 0;
    attentive_ = 0;
    last_t_ms_.reset();
}

SegmentAffectSummary SegmentAccumulator::summary(int segment_index) const {
    if (count_ == 0) {
        throw EmptyWindow(segment_index);
    }
    EmotionVector::Components mean{};
    const auto n = static_cast<double>(count_);
    for (std::size_t i = 0; i < kEmotionCount; ++i) {
        mean[i] = std::clamp((sum_[i] + compensation_[i]) / n, 0.0, 1.0);
    }
    return SegmentAffectSummary{
        .segment_index = segment_index,
        .avg = EmotionVector(mean),
        .attention_fraction = static_cast<double>(attentive_) / n,
        .frame_count = count_,
    };
}

SegmentAffectSummary aggregate_segment(std::span<const AffectFrame> frames, int segment_index,
                                       const AlignmentPolicy& policy) {
    SegmentAccumulator acc(policy);
    for (const auto& f : frames) {
        acc.add(f);
    }
    return acc.summary(segment_index);
}

} // namespace beatline::affect
