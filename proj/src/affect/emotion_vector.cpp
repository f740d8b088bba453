// Copyright 2026 The Beatline Authors
// SPDX-License-Identifier: Apache-2.0

#include "beatline/affect/emotion_vector.hpp"

#include "beatline/affect/policy.hpp"

#include <cmath>
#include <string>

namespace beatline::affect {

EmotionVector::EmotionVector() noexcept {
    probs_.fill(1.0 / static_cast<double>(kEmotionCount));
}

EmotionVector::EmotionVector(const Components& probs) : probs_(probs) {
    double sum = 0.0;
    for (std::size_t i = 0; i < kEmotionCount; ++i) {
        const double p = probs_[i];
        if (!std::isfinite(p) || p < 0.0 || p > 1.0) {
            throw InvalidObservation("probability for '" + std::string(story::name(story::kAllEmotions[i])) +
                                     "' outside [0, 1]: " + std::to_string(p));
        }
        sum += p;
    }
    if (std::abs(sum - 1.0) > kSumTolerance) {
        throw InvalidObservation("emotion probabilities sum to " + std::to_string(sum) + ", expected 1");
    }
}

EmotionVector EmotionVector::one_hot(EmotionCategory c) noexcept {
    EmotionVector v;
    v.probs_.fill(0.0);
    v.probs_[story::index_of(c)] = 1.0;
    return v;
}

void FaceObservation::validate() const {
    const bool finite = std::isfinite(cx) && std::isfinite(cy) && std::isfinite(frame_w) && std::isfinite(frame_h);
    if (!finite || frame_w <= 0 || frame_h <= 0) {
        throw InvalidObservation("face observation needs positive frame dimensions");
    }
    if (cx < 0 || cx > frame_w || cy < 0 || cy > frame_h) {
        throw InvalidObservation("face center lies outside the frame");
    }
}

void AlignmentPolicy::validate() const {
    if (!(shift_threshold > 0.0 && shift_threshold <= 1.0)) {
        throw std::invalid_argument("shift_threshold must be in (0, 1]");
    }
    if (!(hold_tolerance >= 0.0 && hold_tolerance <= 1.0)) {
        throw std::invalid_argument("hold_tolerance must be in [0, 1]");
    }
    if (consecutive_limit < 1) {
        throw std::invalid_argument("consecutive_limit must be >= 1");
    }
    if (!(attention_radius > 0.0 && attention_radius <= 1.0)) {
        throw std::invalid_argument("attention_radius must be in (0, 1]");
    }
    if (!(attention_fraction_min >= 0.0 && attention_fraction_min <= 1.0)) {
        throw std::invalid_argument("attention_fraction_min must be in [0, 1]");
    }
    if (!(frame_rate_hz > 0.0)) {
        throw std::invalid_argument("frame_rate_hz must be positive");
    }
}

} // namespace beatline::affect
