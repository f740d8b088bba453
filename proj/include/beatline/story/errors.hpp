// Copyright 2026 The Beatline Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace beatline::story {

class StoryError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class UnknownEmotion : public StoryError {
  public:
    explicit UnknownEmotion(std::string label)
        : StoryError("unknown emotion label: '" + label + "'"), label_(std::move(label)) {}
    [[nodiscard]] const std::string& label() const noexcept { return label_; }

  private:
    std::string label_;
};

class MissingEmotionLabel : public StoryError {
  public:
    explicit MissingEmotionLabel(int segment)
        : StoryError("segment " + std::to_string(segment) + " has no 'Expected emotion' line"),
          segment_(segment) {}
    [[nodiscard]] int segment() const noexcept { return segment_; }

  private:
    int segment_;
};

class NonSequentialIndex : public StoryError {
  public:
    NonSequentialIndex(int found, int expected)
        : StoryError("segment header " + std::to_string(found) + " found where " +
                     std::to_string(expected) + " was expected"),
          found_(found), expected_(expected) {}
    [[nodiscard]] int found() const noexcept { return found_; }
    [[nodiscard]] int expected() const noexcept { return expected_; }

  private:
    int found_;
    int expected_;
};

class EmptyOutline : public StoryError {
  public:
    EmptyOutline() : StoryError("story outline contains no segments") {}
};

class EmptySegment : public StoryError {
  public:
    explicit EmptySegment(int segment)
        : StoryError("segment " + std::to_string(segment) + " has no text"), segment_(segment) {}
    [[nodiscard]] int segment() const noexcept { return segment_; }

  private:
    int segment_;
};

/// Non-blank text outside any segment block that is not a recognised metadata line.
class UnexpectedText : public StoryError {
  public:
    UnexpectedText(int line, const std::string& text)
        : StoryError("line " + std::to_string(line) + ": unexpected text outside a segment: '" + text +
                     "'"),
          line_(line) {}
    [[nodiscard]] int line() const noexcept { return line_; }

  private:
    int line_;
};

class NoEligibleStory : public StoryError {
  public:
    NoEligibleStory() : StoryError("no story in the repository is narrated from an out-group orientation") {}
};

class RepositoryError : public StoryError {
  public:
    using StoryError::StoryError;
};

} // namespace beatline::story
