// Copyright 2026 The Beatline Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "beatline/story/emotion.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>

namespace beatline::affect {

using story::EmotionCategory;
using story::kEmotionCount;

class InvalidObservation : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Probability distribution over the seven categories. Construction validates
/// that every component lies in [0, 1] and the sum is 1 within kSumTolerance.
class EmotionVector {
  public:
    static constexpr double kSumTolerance = 1e-6;
    using Components = std::array<double, kEmotionCount>;

    /// Uniform distribution.
    EmotionVector() noexcept;
    /// Throws InvalidObservation.
    explicit EmotionVector(const Components& probs);

    /// All mass on one category.
    [[nodiscard]] static EmotionVector one_hot(EmotionCategory c) noexcept;

    [[nodiscard]] double operator[](EmotionCategory c) const noexcept { return probs_[story::index_of(c)]; }
    [[nodiscard]] const Components& components() const noexcept { return probs_; }

    bool operator==(const EmotionVector&) const = default;

  private:
    Components probs_;
};

/// Signed per-category change between two vectors; components sum to ~0.
using EmotionDelta = std::array<double, kEmotionCount>;

/// Face-box center and frame size, pixels.
struct FaceObservation {
    double cx = 0;
    double cy = 0;
    double frame_w = 0;
    double frame_h = 0;

    /// Throws InvalidObservation unless 0 <= cx <= w, 0 <= cy <= h and w, h > 0.
    void validate() const;
    bool operator==(const FaceObservation&) const = default;
};

struct AffectFrame {
    std::int64_t t_ms = 0;
    EmotionVector probs;
    std::optional<FaceObservation> face;

    bool operator==(const AffectFrame&) const = default;
};

} // namespace beatline::affect
