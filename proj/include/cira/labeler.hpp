#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "cira/errors.hpp"
#include "cira/lexicon.hpp"
#include "cira/text.hpp"

namespace cira {

inline constexpr int kMaxEventsPerFamily = 9;

enum class LabelKind {
    Cause1, Cause2, Cause3, Cause4, Cause5, Cause6, Cause7, Cause8, Cause9,
    Effect1, Effect2, Effect3, Effect4, Effect5, Effect6, Effect7, Effect8, Effect9,
    Conjunction, Disjunction, Negation, Variable, Condition, Keyword,
};

enum class EventFamily { Cause, Effect };

std::string to_string(LabelKind kind);
std::optional<LabelKind> parse_label_kind(std::string_view name);

bool is_event(LabelKind kind);
bool is_junctor(LabelKind kind);
EventFamily family_of(LabelKind event_kind);
/// 1-based event number of a CAUSE_K/EFFECT_K label.
int event_number(LabelKind event_kind);
LabelKind event_label(EventFamily family, int number);

struct LabelSpan {
    LabelKind kind;
    std::size_t token_begin = 0;
    std::size_t token_end = 0;

    bool contains(const LabelSpan& other) const {
        return token_begin <= other.token_begin && other.token_end <= token_end;
    }
    bool overlaps(const LabelSpan& other) const {
        return token_begin < other.token_end && other.token_begin < token_end;
    }
    bool operator==(const LabelSpan&) const = default;
};

struct LabeledSentence {
    Sentence sentence;
    std::vector<LabelSpan> spans;

    std::vector<LabelSpan> spans_of(LabelKind kind) const;
    std::optional<LabelSpan> event(EventFamily family, int number) const;
    /// Whether token `index` lies in a span of `kind`.
    bool is_labeled(std::size_t index, LabelKind kind) const;

    bool operator==(const LabeledSentence&) const = default;
};

class LabelError : public std::runtime_error {
public:
    enum class Code { NotCausal, NoCause, NoEffect, TooManyEvents };

    LabelError(Code code, const std::string& what) : std::runtime_error(what), code_(code) {}
    Code code() const { return code_; }
    /// Machine-readable reason, e.g. "NOT_CAUSAL".
    std::string reason() const;

private:
    Code code_;
};

/// Seam for alternative labelers. Implementations must be deterministic and
/// safe to call concurrently.
class LabelerPort {
public:
    virtual ~LabelerPort() = default;
    virtual LabeledSentence label(const Sentence& sentence) const = 0;
};

/// Cue-lexicon driven labeler.
///
/// The first conditional cue anchors the sentence. When it opens the sentence,
/// causes run up to the consequence cue ("then") or, failing that, up to the
/// last comma not adjacent to a junctor, and effects follow. Otherwise the
/// text before the cue is the effect and the text after it the cause.
/// Regions are split into events at junctor cues; a comma is a separator
/// when not next to a junctor and takes the kind of the next junctor in its
/// region. Inside an event the CONDITION starts at the first auxiliary or
/// inflected verb-like token; everything before it is the VARIABLE.
class RuleLabeler final : public LabelerPort {
public:
    explicit RuleLabeler(const CueLexicon& lexicon = CueLexicon::builtin()) : lexicon_(&lexicon) {}

    LabeledSentence label(const Sentence& sentence) const override;

private:
    const CueLexicon* lexicon_;
};

LabeledSentence label(const Sentence& sentence, const CueLexicon& lexicon = CueLexicon::builtin());

/// Full auxiliary for the stem left behind when "n't" is split off
/// ("doesn" -> "does", "won" -> "will"); nullopt for other words.
std::optional<std::string_view> contraction_base(std::string_view lowercase_word);

/// One human-readable entry per violated structural invariant.
std::vector<std::string> validate_labels(const LabeledSentence& labeled);

/// [{"label","begin","end"}] with code point offsets into the raw text.
Json labels_to_json(const LabeledSentence& labeled);
/// {"text", "tokens", "labels"}
Json label_stage_to_json(const LabeledSentence& labeled);
/// Maps code point offsets back onto token boundaries; throws ParseError
/// when an offset does not fall on one.
LabeledSentence labels_from_json(const Sentence& sentence, const Json& labels);

}  // namespace cira
