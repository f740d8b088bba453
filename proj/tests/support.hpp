// Copyright 2026 The Beatline Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "beatline/affect/emotion_vector.hpp"
#include "beatline/story/outline.hpp"
#include "beatline/story/repository.hpp"

#include <filesystem>
#include <string>
#include <unistd.h>

namespace beatline::testing {

inline std::filesystem::path source_dir() { return BEATLINE_SOURCE_DIR; }
inline std::filesystem::path stories_dir() { return source_dir() / "data" / "stories"; }
inline std::filesystem::path appendix_story_path() { return stories_dir() / "taylor_rally.txt"; }
inline std::filesystem::path traces_dir() { return source_dir() / "tests" / "data" / "traces"; }
inline std::filesystem::path golden_dir() { return source_dir() / "tests" / "golden"; }

inline const story::StoryOutline& appendix_outline() {
    static const story::StoryOutline outline = story::load_story_file(appendix_story_path());
    return outline;
}

/// Expected emotion gets p, the rest share 1-p equally.
inline affect::EmotionVector peaked(story::EmotionCategory e, double p = 0.7) {
    affect::EmotionVector::Components c{};
    c.fill((1.0 - p) / 6.0);
    c[story::index_of(e)] = p;
    return affect::EmotionVector(c);
}

inline affect::FaceObservation centered_face() { return {320, 240, 640, 480}; }

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
  public:
    TempDir() {
        auto pattern = (std::filesystem::temp_directory_path() / "beatline-test-XXXXXX").string();
        if (::mkdtemp(pattern.data()) == nullptr) {
            throw std::runtime_error("mkdtemp failed");
        }
        path_ = pattern;
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;
    [[nodiscard]] const std::filesystem::path& path() const noexcept { return path_; }

  private:
    std::filesystem::path path_;
};

} // namespace beatline::testing
