#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "cira/text.hpp"

namespace cira {

enum class CueKind { Conditional, Consequence, Conjunction, Disjunction, Negation };

std::string_view to_string(CueKind kind);
std::optional<CueKind> parse_cue_kind(std::string_view name);

struct Cue {
    CueKind kind;
    std::string text;                 // lowercase, as written in the lexicon
    std::vector<std::string> tokens;  // `text` run through the tokenizer
    double weight = 1.0;
};

/// A lexicon hit at one token range. A single phrase may carry several kinds
/// ("unless" is both conditional and negation).
struct CueMatch {
    std::string text;
    std::size_t token_begin = 0;
    std::size_t token_end = 0;
    std::vector<const Cue*> cues;

    bool has(CueKind kind) const;
    std::optional<double> weight(CueKind kind) const;
};

class LexiconError : public std::runtime_error {
public:
    LexiconError(std::size_t line, const std::string& what)
        : std::runtime_error("lexicon line " + std::to_string(line) + ": " + what), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

/// Immutable set of cue phrases. Text form is one cue per line,
/// `<kind>;<cue text>;<weight>`, with `#` comments and blank lines ignored.
class CueLexicon {
public:
    CueLexicon() = default;

    static const CueLexicon& builtin();
    static std::string_view builtin_text();
    static CueLexicon parse(std::string_view content);
    static CueLexicon load(const std::filesystem::path& path);

    const std::vector<Cue>& cues() const { return cues_; }

    /// Greedy left-to-right longest match, case-insensitive.
    std::vector<CueMatch> match(const Sentence& sentence) const;

    /// Cue hits restricted to tokens [begin, end).
    std::vector<CueMatch> match(const Sentence& sentence, std::size_t begin, std::size_t end) const;

private:
    void add(CueKind kind, std::string_view text, double weight, std::size_t line);

    std::vector<Cue> cues_;
};

}  // namespace cira
