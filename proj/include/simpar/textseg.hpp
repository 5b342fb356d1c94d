#pragma once

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "simpar/errors.hpp"

namespace simpar {

inline bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }
inline bool is_alpha(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }
inline bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }
inline bool is_upper(char c) { return std::isupper(static_cast<unsigned char>(c)) != 0; }
inline char to_lower(char c) { return static_cast<char>(std::tolower(static_cast<unsigned char>(c))); }

// Number of Unicode scalar values in a UTF-8 string, i.e. everything that is
// not a continuation byte. Invalid sequences degrade to byte counting.
inline std::size_t utf8_length(std::string_view text) {
    std::size_t n = 0;
    for (unsigned char c : text) {
        if ((c & 0xC0) != 0x80) ++n;
    }
    return n;
}

// Splits a document into paragraph blocks on newline runs. Each block is
// trimmed of trailing whitespace; blocks empty after trimming are dropped.
inline std::vector<std::string> split_paragraphs(std::string_view document_text) {
    std::vector<std::string> blocks;
    std::size_t start = 0;
    const std::size_t n = document_text.size();
    for (std::size_t i = 0; i <= n; ++i) {
        if (i == n || document_text[i] == '\n') {
            std::string_view block = document_text.substr(start, i - start);
            while (!block.empty() && is_space(block.back())) block.remove_suffix(1);
            if (!block.empty()) blocks.emplace_back(block);
            start = i + 1;
        }
    }
    return blocks;
}

struct SentenceSpan {
    std::size_t begin = 0;  // byte offset of first character
    std::size_t end = 0;    // one past the last character

    friend bool operator==(const SentenceSpan&, const SentenceSpan&) = default;
};

// Abbreviations whose trailing period does not end a sentence. Loadable from
// a plain-text resource, one entry per line; comparison is case-insensitive
// and ignores the trailing dot.
class AbbreviationList {
public:
    AbbreviationList() : entries_(kDefaults.begin(), kDefaults.end()) {}

    static AbbreviationList from_file(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw ConfigError("cannot open abbreviation list " + path);
        AbbreviationList list;
        list.entries_.clear();
        std::string line;
        while (std::getline(in, line)) {
            while (!line.empty() && (is_space(line.back()) || line.back() == '.'))
                line.pop_back();
            if (line.empty()) continue;
            for (char& c : line) c = to_lower(c);
            list.entries_.insert(line);
        }
        return list;
    }

    bool contains(std::string_view word) const {
        std::string key;
        key.reserve(word.size());
        for (char c : word) key.push_back(to_lower(c));
        while (!key.empty() && key.back() == '.') key.pop_back();
        return entries_.count(key) > 0;
    }

private:
    static constexpr const char* kDefaults[] = {
        "dr", "mr", "mrs", "ms", "prof", "rev", "hon", "st", "jr", "sr",
        "vs", "etc", "e.g", "i.e", "cf", "u.s", "u.k", "u.n", "no", "vol",
        "fig", "al", "inc", "ltd", "co", "corp", "approx", "dept", "est",
    };
    std::set<std::string, std::less<>> entries_;
};

inline const AbbreviationList& default_abbreviations() {
    static const AbbreviationList list;
    return list;
}

namespace detail {

// Word (letters and dots) immediately preceding position `i`, used for
// abbreviation lookups at a candidate split.
inline std::string_view word_before(std::string_view text, std::size_t i) {
    std::size_t k = i;
    while (k > 0 && (is_alpha(text[k - 1]) || text[k - 1] == '.')) --k;
    return text.substr(k, i - k);
}

}  // namespace detail

// Terminator-based sentence segmentation: a sentence ends after '.', '!' or
// '?' (plus any closing quotes/brackets) when followed by whitespace and a
// non-lowercase character, or by end of text. Abbreviation periods do not
// split. Spans cover every non-whitespace character in order, so the original
// text is recoverable from the spans plus the gaps between them.
inline std::vector<SentenceSpan> split_sentences(
    std::string_view text, const AbbreviationList& abbrev = default_abbreviations()) {
    static constexpr std::string_view kClosers = "\"')]}";
    std::vector<SentenceSpan> spans;
    const std::size_t n = text.size();

    std::size_t begin = 0;
    while (begin < n && is_space(text[begin])) ++begin;

    std::size_t i = begin;
    while (i < n) {
        const char c = text[i];
        if (c == '.' || c == '!' || c == '?') {
            std::size_t end = i + 1;
            while (end < n && kClosers.find(text[end]) != std::string_view::npos) ++end;

            std::size_t next = end;
            while (next < n && is_space(text[next])) ++next;

            const bool at_eot = next >= n;
            const bool gap = next > end;  // at least one whitespace char
            const bool upperish = !at_eot && !std::islower(static_cast<unsigned char>(text[next]));
            const bool suppressed =
                c == '.' && abbrev.contains(detail::word_before(text, i));

            if (!suppressed && (at_eot || (gap && upperish))) {
                spans.push_back({begin, end});
                begin = next;
                i = next;
                continue;
            }
            i = end;
            continue;
        }
        ++i;
    }

    // Trailing material without a terminator still forms a sentence.
    std::size_t tail_end = n;
    while (tail_end > begin && is_space(text[tail_end - 1])) --tail_end;
    if (tail_end > begin) spans.push_back({begin, tail_end});
    return spans;
}

inline std::size_t count_sentences(std::string_view text,
                                   const AbbreviationList& abbrev = default_abbreviations()) {
    return split_sentences(text, abbrev).size();
}

// Number of maximal non-whitespace runs.
inline std::size_t count_words(std::string_view text) {
    std::size_t count = 0;
    bool in_word = false;
    for (char c : text) {
        const bool sp = is_space(c);
        if (!sp && !in_word) ++count;
        in_word = !sp;
    }
    return count;
}

// Heuristic syllable count: groups of vowels (aeiouy) count once, a silent
// trailing 'e' is dropped unless the word ends in consonant+"le", and every
// word yields at least one syllable. Tokens with no alphabetic characters
// count as one syllable.
inline std::size_t count_syllables(std::string_view word) {
    std::string w;
    w.reserve(word.size());
    for (char c : word) {
        if (is_alpha(c)) w.push_back(to_lower(c));
    }
    if (w.empty()) return 1;

    auto is_vowel = [](char c) {
        return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u' || c == 'y';
    };

    std::size_t groups = 0;
    bool prev_vowel = false;
    for (char c : w) {
        const bool v = is_vowel(c);
        if (v && !prev_vowel) ++groups;
        prev_vowel = v;
    }

    const std::size_t len = w.size();
    if (len >= 2 && w[len - 1] == 'e' && !is_vowel(w[len - 2])) {
        const bool le_after_consonant =
            len >= 3 && w[len - 2] == 'l' && !is_vowel(w[len - 3]);
        if (!le_after_consonant && groups > 1) --groups;
    }
    return std::max<std::size_t>(groups, 1);
}

// Lowercased tokens split on runs of non-alphanumeric characters — the
// normalization shared by ROUGE, the type/entropy statistics, and the
// lexical-rank score. With normalize=false, tokens are raw whitespace runs.
inline std::vector<std::string> metric_tokens(std::string_view text, bool normalize = true) {
    std::vector<std::string> tokens;
    std::string current;
    auto flush = [&] {
        if (!current.empty()) {
            tokens.push_back(current);
            current.clear();
        }
    };
    for (char c : text) {
        const unsigned char u = static_cast<unsigned char>(c);
        const bool keep = normalize ? (std::isalnum(u) != 0 || u >= 0x80) : !is_space(c);
        if (keep) {
            current.push_back(normalize ? to_lower(c) : c);
        } else {
            flush();
        }
    }
    flush();
    return tokens;
}

}  // namespace simpar
