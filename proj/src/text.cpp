#include "cira/text.hpp"

#include <cstdint>

namespace cira {
namespace {

enum class CharClass { Word, Punct, Space };

struct Decoded {
    char32_t cp;
    std::size_t len;
};

// Invalid sequences decode as a single byte so offsets stay byte-exact.
Decoded decode(std::string_view s, std::size_t i) {
    const auto b0 = static_cast<unsigned char>(s[i]);
    if (b0 < 0x80) return {b0, 1};
    std::size_t len = 0;
    char32_t cp = 0;
    if ((b0 & 0xE0) == 0xC0) {
        len = 2;
        cp = b0 & 0x1F;
    } else if ((b0 & 0xF0) == 0xE0) {
        len = 3;
        cp = b0 & 0x0F;
    } else if ((b0 & 0xF8) == 0xF0) {
        len = 4;
        cp = b0 & 0x07;
    } else {
        return {0xFFFD, 1};
    }
    if (i + len > s.size()) return {0xFFFD, 1};
    for (std::size_t k = 1; k < len; ++k) {
        const auto b = static_cast<unsigned char>(s[i + k]);
        if ((b & 0xC0) != 0x80) return {0xFFFD, 1};
        cp = (cp << 6) | (b & 0x3F);
    }
    return {cp, len};
}

CharClass classify_char(char32_t c) {
    if (c < 0x80) {
        if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f') return CharClass::Space;
        if ((c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z')) return CharClass::Word;
        if (c < 0x20 || c == 0x7F) return CharClass::Space;
        return CharClass::Punct;
    }
    if (c == 0x85 || c == 0xA0 || c == 0x1680 || (c >= 0x2000 && c <= 0x200B) || c == 0x2028 || c == 0x2029 ||
        c == 0x202F || c == 0x205F || c == 0x3000 || c == 0xFEFF)
        return CharClass::Space;
    // Latin-1 punctuation and symbols, general punctuation, CJK punctuation.
    if ((c >= 0xA1 && c <= 0xBF && c != 0xAA && c != 0xB5 && c != 0xBA) || c == 0xD7 || c == 0xF7)
        return CharClass::Punct;
    if ((c >= 0x2010 && c <= 0x2027) || (c >= 0x2030 && c <= 0x205E) || (c >= 0x3001 && c <= 0x303F) ||
        (c >= 0xFF01 && c <= 0xFF0F))
        return CharClass::Punct;
    return CharClass::Word;
}

}  // namespace

Sentence tokenize(std::string_view raw) {
    Sentence out;
    out.raw = std::string(raw);
    std::size_t i = 0;
    std::size_t word_begin = std::string_view::npos;
    auto flush_word = [&](std::size_t end) {
        if (word_begin == std::string_view::npos) return;
        out.tokens.push_back(Token{std::string(raw.substr(word_begin, end - word_begin)), word_begin, end,
                                   out.tokens.size()});
        word_begin = std::string_view::npos;
    };
    while (i < raw.size()) {
        const Decoded d = decode(raw, i);
        switch (classify_char(d.cp)) {
            case CharClass::Word:
                if (word_begin == std::string_view::npos) word_begin = i;
                break;
            case CharClass::Punct:
                flush_word(i);
                out.tokens.push_back(Token{std::string(raw.substr(i, d.len)), i, i + d.len, out.tokens.size()});
                break;
            case CharClass::Space:
                flush_word(i);
                break;
        }
        i += d.len;
    }
    flush_word(raw.size());
    return out;
}

std::string to_lower(std::string_view s) {
    std::string out(s);
    for (char& c : out) {
        if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    }
    return out;
}

std::size_t char_offset(std::string_view text, std::size_t byte_off) {
    std::size_t chars = 0;
    std::size_t i = 0;
    while (i < byte_off && i < text.size()) {
        i += decode(text, i).len;
        ++chars;
    }
    return chars;
}

std::size_t byte_offset(std::string_view text, std::size_t chars) {
    std::size_t i = 0;
    for (std::size_t n = 0; n < chars; ++n) {
        if (i >= text.size()) return std::string_view::npos;
        i += decode(text, i).len;
    }
    return i;
}

std::size_t char_length(std::string_view text) { return char_offset(text, text.size()); }

Json token_to_json(const Sentence& s, const Token& t) {
    return Json{{"text", t.text},
                {"begin", char_offset(s.raw, t.begin)},
                {"end", char_offset(s.raw, t.end)},
                {"index", t.index}};
}

Json tokens_to_json(const Sentence& s) {
    Json arr = Json::array();
    for (const auto& t : s.tokens) arr.push_back(token_to_json(s, t));
    return arr;
}

}  // namespace cira
