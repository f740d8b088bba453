// Copyright 2026 The Beatline Authors
// SPDX-License-Identifier: Apache-2.0

#include "beatline/orchestrator/slots.hpp"

#include "beatline/affect/sentiment.hpp"

#include <algorithm>
#include <array>
#include <utility>

namespace beatline::orchestrator {

namespace {

using story::Orientation;

constexpr std::array<std::pair<std::string_view, Orientation>, 14> kOrientationWords = {{
    {"democrat", Orientation::Democrat},     {"democrats", Orientation::Democrat},
    {"democratic", Orientation::Democrat},   {"liberal", Orientation::Democrat},
    {"progressive", Orientation::Democrat},  {"republican", Orientation::Republican},
    {"republicans", Orientation::Republican}, {"conservative", Orientation::Republican},
    {"gop", Orientation::Republican},        {"independent", Orientation::Other},
    {"moderate", Orientation::Other},        {"libertarian", Orientation::Other},
    {"centrist", Orientation::Other},        {"nonpartisan", Orientation::Other},
}};

constexpr std::array<std::pair<std::string_view, std::string_view>, 22> kIssueWords = {{
    {"climate", "climate"},       {"environment", "climate"},   {"immigration", "immigration"},
    {"immigrants", "immigration"}, {"border", "immigration"},   {"healthcare", "healthcare"},
    {"health", "healthcare"},     {"guns", "guns"},             {"gun", "guns"},
    {"abortion", "abortion"},     {"economy", "economy"},       {"jobs", "economy"},
    {"taxes", "economy"},         {"education", "education"},   {"schools", "education"},
    {"elections", "elections"},   {"election", "elections"},    {"voting", "elections"},
    {"democracy", "elections"},   {"police", "policing"},       {"policing", "policing"},
    {"speech", "free_speech"},
}};

constexpr std::array<std::pair<std::string_view, std::string_view>, 6> kAgeWords = {{
    {"college", "college"}, {"university", "college"}, {"freshman", "college"},
    {"sophomore", "college"}, {"teenager", "high_school"}, {"teen", "high_school"},
}};

constexpr std::array<std::pair<std::string_view, std::string_view>, 8> kGenderWords = {{
    {"woman", "female"}, {"female", "female"}, {"girl", "female"}, {"man", "male"},
    {"male", "male"},    {"guy", "male"},      {"nonbinary", "nonbinary"}, {"non-binary", "nonbinary"},
}};

constexpr std::array<std::pair<std::string_view, std::string_view>, 7> kEthnicityWords = {{
    {"black", "black"}, {"white", "white"}, {"asian", "asian"}, {"latino", "latino"},
    {"latina", "latino"}, {"hispanic", "latino"}, {"indigenous", "indigenous"},
}};

template <typename Table>
auto lookup(const Table& table, std::string_view token) -> std::optional<decltype(table[0].second)> {
    for (const auto& [word, value] : table) {
        if (word == token) {
            return value;
        }
    }
    return std::nullopt;
}

} // namespace

SlotUpdate KeywordSlotExtractor::extract(std::string_view utterance) const {
    SlotUpdate out;
    const auto tokens = affect::tokenize(utterance);
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        const auto& t = tokens[i];
        if (!out.orientation) {
            if (auto o = lookup(kOrientationWords, t)) out.orientation = *o;
        }
        if (out.salient_issue.empty()) {
            if (auto v = lookup(kIssueWords, t)) out.salient_issue = std::string(*v);
        }
        if (out.age_band.empty()) {
            if (t == "high" && i + 1 < tokens.size() && tokens[i + 1] == "school") {
                out.age_band = "high_school";
            } else if (auto v = lookup(kAgeWords, t)) {
                out.age_band = std::string(*v);
            }
        }
        if (out.gender.empty()) {
            if (auto v = lookup(kGenderWords, t)) out.gender = std::string(*v);
        }
        if (out.race_ethnicity.empty()) {
            if (auto v = lookup(kEthnicityWords, t)) out.race_ethnicity = std::string(*v);
        }
    }
    return out;
}

void merge(story::UserProfile& profile, const SlotUpdate& update) {
    if (update.orientation) profile.orientation = update.orientation;
    if (!update.salient_issue.empty()) profile.salient_issue = update.salient_issue;
    if (!update.age_band.empty()) profile.age_band = update.age_band;
    if (!update.gender.empty()) profile.gender = update.gender;
    if (!update.race_ethnicity.empty()) profile.race_ethnicity = update.race_ethnicity;
}

bool is_affirmative_repeat(std::string_view utterance) {
    static constexpr std::array<std::string_view, 9> kVeto = {"no", "nope", "not", "don't", "dont", "continue",
                                                              "resume", "skip", "next"};
    static constexpr std::array<std::string_view, 10> kYes = {"yes", "yeah", "yep", "sure", "please",
                                                              "repeat", "again", "ok", "okay", "alright"};
    const auto tokens = affect::tokenize(utterance);
    const auto has_any = [&tokens](const auto& words) {
        return std::any_of(tokens.begin(), tokens.end(), [&words](const std::string& t) {
            return std::find(words.begin(), words.end(), t) != words.end();
        });
    };
    return !has_any(kVeto) && has_any(kYes);
}

} // namespace beatline::orchestrator
