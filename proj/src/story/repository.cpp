// Copyright 2026 The Beatline Authors
// SPDX-License-Identifier: Apache-2.0

#include "beatline/story/repository.hpp"

#include "beatline/story/errors.hpp"
#include "beatline/story/text.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace beatline::story {

namespace fs = std::filesystem;

std::map<std::string, ManifestEntry> parse_manifest(std::string_view text) {
    std::map<std::string, ManifestEntry> out;
    int line_no = 0;
    for (auto raw : split_lines(text)) {
        ++line_no;
        auto line = raw;
        if (auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        std::istringstream words{std::string(trim(line))};
        std::string story_id;
        if (!(words >> story_id)) {
            continue;
        }
        ManifestEntry entry;
        std::string field;
        while (words >> field) {
            const auto eq = field.find('=');
            if (eq == std::string::npos || eq == 0) {
                throw RepositoryError("manifest line " + std::to_string(line_no) + ": expected key=value, got '" +
                                      field + "'");
            }
            const auto key = to_lower(field.substr(0, eq));
            auto value = field.substr(eq + 1);
            if (key == "orientation") {
                entry.orientation = parse_orientation(value);
                if (!entry.orientation) {
                    throw RepositoryError("manifest line " + std::to_string(line_no) + ": unknown orientation '" +
                                          value + "'");
                }
            } else if (key == "issue") {
                entry.issue = to_lower(value);
            } else if (key == "narrator") {
                entry.narrator = value;
            } else if (key == "age") {
                entry.age_band = value;
            } else if (key == "gender") {
                entry.gender = value;
            } else if (key == "ethnicity") {
                entry.race_ethnicity = value;
            } else {
                throw RepositoryError("manifest line " + std::to_string(line_no) + ": unknown key '" + key + "'");
            }
        }
        if (!out.emplace(story_id, std::move(entry)).second) {
            throw RepositoryError("manifest line " + std::to_string(line_no) + ": duplicate story id '" + story_id +
                                  "'");
        }
    }
    return out;
}

void apply_manifest(StoryOutline& outline, const ManifestEntry& entry) {
    auto& p = outline.persona;
    if (!p.orientation) p.orientation = entry.orientation;
    if (outline.issue.empty()) outline.issue = entry.issue;
    if (p.name.empty()) p.name = entry.narrator;
    if (p.age_band.empty()) p.age_band = entry.age_band;
    if (p.gender.empty()) p.gender = entry.gender;
    if (p.race_ethnicity.empty()) p.race_ethnicity = entry.race_ethnicity;
}

std::string read_text_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw RepositoryError("cannot open '" + path.string() + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

namespace {

std::map<std::string, ManifestEntry> manifest_for(const fs::path& dir) {
    const auto path = dir / kManifestFileName;
    std::error_code ec;
    if (!fs::is_regular_file(path, ec)) {
        return {};
    }
    return parse_manifest(read_text_file(path));
}

StoryOutline load_with_manifest(const fs::path& path, const std::map<std::string, ManifestEntry>& manifest) {
    auto outline = parse_story_outline(read_text_file(path), path.stem().string());
    if (auto it = manifest.find(outline.story_id); it != manifest.end()) {
        apply_manifest(outline, it->second);
    }
    return outline;
}

} // namespace

StoryOutline load_story_file(const fs::path& path) {
    const auto dir = path.has_parent_path() ? path.parent_path() : fs::path(".");
    return load_with_manifest(path, manifest_for(dir));
}

std::vector<StoryOutline> load_repository(const fs::path& dir) {
    std::error_code ec;
    if (!fs::is_directory(dir, ec)) {
        throw RepositoryError("story repository '" + dir.string() + "' is not a directory");
    }
    const auto manifest = manifest_for(dir);
    std::vector<StoryOutline> out;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ".txt") {
            out.push_back(load_with_manifest(entry.path(), manifest));
        }
    }
    std::sort(out.begin(), out.end(),
              [](const StoryOutline& a, const StoryOutline& b) { return a.story_id < b.story_id; });
    return out;
}

} // namespace beatline::story
