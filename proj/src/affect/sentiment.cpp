// Copyright 2026 The Beatline Authors
// SPDX-License-Identifier: Apache-2.0

#include "beatline/affect/sentiment.hpp"

#include "beatline/story/repository.hpp"
#include "beatline/story/text.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>

namespace beatline::affect {

namespace {

constexpr std::string_view kDefaultLexicon =
    "good\t1.9\n"
    "great\t3.1\n"
    "love\t3.2\n"
    "like\t2.0\n"
    "happy\t2.7\n"
    "nice\t1.8\n"
    "interesting\t1.7\n"
    "excellent\t3.2\n"
    "fun\t2.3\n"
    "agree\t1.5\n"
    "bad\t-2.5\n"
    "hate\t-2.7\n"
    "sad\t-2.1\n"
    "terrible\t-2.1\n"
    "boring\t-1.3\n"
    "awful\t-2.0\n"
    "angry\t-2.3\n"
    "scary\t-2.2\n"
    "wrong\t-2.1\n"
    "confusing\t-1.3\n";

bool is_word_char(unsigned char c) { return std::isalnum(c) != 0 || c >= 0x80; }

} // namespace

std::vector<std::string> tokenize(std::string_view utterance) {
    // Fold U+2019 (E2 80 99) to an ASCII apostrophe first.
    std::string text;
    text.reserve(utterance.size());
    for (std::size_t i = 0; i < utterance.size(); ++i) {
        if (static_cast<unsigned char>(utterance[i]) == 0xE2 && i + 2 < utterance.size() &&
            static_cast<unsigned char>(utterance[i + 1]) == 0x80 &&
            static_cast<unsigned char>(utterance[i + 2]) == 0x99) {
            text.push_back('\'');
            i += 2;
        } else {
            text.push_back(utterance[i]);
        }
    }

    std::vector<std::string> tokens;
    std::string current;
    const auto flush = [&] {
        while (!current.empty() && current.back() == '\'') current.pop_back();
        std::size_t lead = 0;
        while (lead < current.size() && current[lead] == '\'') ++lead;
        if (lead < current.size()) {
            tokens.push_back(story::to_lower(std::string_view(current).substr(lead)));
        }
        current.clear();
    };
    for (char ch : text) {
        const auto c = static_cast<unsigned char>(ch);
        if (is_word_char(c) || ch == '\'') {
            current.push_back(ch);
        } else {
            flush();
        }
    }
    flush();
    return tokens;
}

bool is_negator(std::string_view token) noexcept {
    if (token == "not" || token == "never" || token == "no") {
        return true;
    }
    return token.size() >= 3 && token.substr(token.size() - 3) == "n't";
}

double sentiment_score(std::string_view utterance, const Lexicon& lexicon) {
    const auto tokens = tokenize(utterance);
    double sum = 0.0;
    bool matched = false;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        const auto it = lexicon.find(tokens[i]);
        if (it == lexicon.end()) {
            continue;
        }
        matched = true;
        double valence = it->second;
        const std::size_t from = i >= kNegationWindow ? i - kNegationWindow : 0;
        for (std::size_t j = from; j < i; ++j) {
            if (is_negator(tokens[j])) {
                valence *= kNegationScalar;
                break;
            }
        }
        sum += valence;
    }
    if (!matched || sum == 0.0) {
        return 0.0;
    }
    // hypot keeps s^2 from overflowing for absurd sums.
    return sum / std::hypot(sum, std::sqrt(kSentimentAlpha));
}

Lexicon parse_lexicon(std::string_view text) {
    Lexicon out;
    int line_no = 0;
    for (auto line : story::split_lines(text)) {
        ++line_no;
        const auto trimmed = story::trim(line);
        if (trimmed.empty() || trimmed.front() == '#') {
            continue;
        }
        const auto tab = line.find('\t');
        if (tab == std::string_view::npos) {
            throw MalformedLexicon("lexicon line " + std::to_string(line_no) + ": expected lexeme<TAB>valence");
        }
        const auto lexeme = story::to_lower(story::trim(line.substr(0, tab)));
        const std::string value(story::trim(line.substr(tab + 1)));
        char* end = nullptr;
        const double valence = std::strtod(value.c_str(), &end);
        if (lexeme.empty() || value.empty() || end != value.c_str() + value.size() || !std::isfinite(valence)) {
            throw MalformedLexicon("lexicon line " + std::to_string(line_no) + ": bad entry");
        }
        out[lexeme] = valence;
    }
    if (out.empty()) {
        throw MalformedLexicon("lexicon is empty");
    }
    return out;
}

Lexicon load_lexicon(const std::filesystem::path& path) { return parse_lexicon(story::read_text_file(path)); }

const Lexicon& default_lexicon() {
    static const Lexicon lexicon = parse_lexicon(kDefaultLexicon);
    return lexicon;
}

} // namespace beatline::affect
