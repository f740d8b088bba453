// Copyright 2026 The Beatline Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "beatline/story/outline.hpp"

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace beatline::story {

/// File name of the optional per-directory index.
inline constexpr std::string_view kManifestFileName = "stories.manifest";

/// Metadata for one story as listed in a manifest. Empty strings mean "not given".
struct ManifestEntry {
    std::optional<Orientation> orientation;
    std::string issue;
    std::string narrator;
    std::string age_band;
    std::string gender;
    std::string race_ethnicity;
};

/// Manifest format, one story per line, '#' starts a comment:
///
///     <story_id> orientation=<tag> issue=<tag> [narrator=..] [age=..] [gender=..] [ethnicity=..]
///
/// Values cannot contain whitespace. Throws RepositoryError on malformed lines.
[[nodiscard]] std::map<std::string, ManifestEntry> parse_manifest(std::string_view text);

/// Fills fields the story file left empty; fields already set in the file win.
void apply_manifest(StoryOutline& outline, const ManifestEntry& entry);

[[nodiscard]] std::string read_text_file(const std::filesystem::path& path);

/// Parses one story file (story_id = file stem) and merges the sibling manifest
/// if the directory has one.
[[nodiscard]] StoryOutline load_story_file(const std::filesystem::path& path);

/// Every *.txt in the directory, sorted by story_id.
[[nodiscard]] std::vector<StoryOutline> load_repository(const std::filesystem::path& dir);

} // namespace beatline::story
