#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace cira {

using Json = nlohmann::ordered_json;

/// One token of a sentence. Offsets are UTF-8 byte offsets into the raw text.
struct Token {
    std::string text;
    std::size_t begin = 0;
    std::size_t end = 0;
    std::size_t index = 0;

    bool operator==(const Token&) const = default;
};

struct Sentence {
    std::string raw;
    std::vector<Token> tokens;

    std::size_t size() const { return tokens.size(); }
    bool operator==(const Sentence&) const = default;
};

/// Splits raw text into maximal runs of word characters; every other
/// non-space code point becomes a single-character token.
Sentence tokenize(std::string_view raw);

/// ASCII lowercase copy. Non-ASCII bytes are kept as-is.
std::string to_lower(std::string_view s);

/// Joins tokens [begin, end) of `s`, skipping those for which `skip(i)` is
/// true. A single space is inserted wherever the raw text had a gap.
template <typename Skip>
std::string join_tokens(const Sentence& s, std::size_t begin, std::size_t end, Skip skip) {
    std::string out;
    bool gap = false;
    std::size_t prev_end = 0;
    for (std::size_t i = begin; i < end && i < s.tokens.size(); ++i) {
        if (skip(i)) {
            gap = true;
            continue;
        }
        const Token& t = s.tokens[i];
        if (!out.empty() && (gap || t.begin != prev_end)) out += ' ';
        out += t.text;
        prev_end = t.end;
        gap = false;
    }
    return out;
}

inline std::string join_tokens(const Sentence& s, std::size_t begin, std::size_t end) {
    return join_tokens(s, begin, end, [](std::size_t) { return false; });
}

/// Number of code points in the first `byte_offset` bytes of `text`.
std::size_t char_offset(std::string_view text, std::size_t byte_offset);

/// Inverse of char_offset; returns npos when `chars` exceeds the text.
std::size_t byte_offset(std::string_view text, std::size_t chars);

/// Code point count of a UTF-8 string.
std::size_t char_length(std::string_view text);

/// Token wire form: {"text","begin","end","index"} with code point offsets.
Json token_to_json(const Sentence& s, const Token& t);
Json tokens_to_json(const Sentence& s);

}  // namespace cira
