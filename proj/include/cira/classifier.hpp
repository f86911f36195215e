#pragma once

#include <string>
#include <vector>

#include "cira/lexicon.hpp"
#include "cira/text.hpp"

namespace cira {

struct MatchedCue {
    std::string cue;
    CueKind kind;
    std::size_t token_begin = 0;
    std::size_t token_end = 0;

    bool operator==(const MatchedCue&) const = default;
};

struct Classification {
    bool causal = false;
    double confidence = 0.0;
    std::vector<MatchedCue> matched_cues;

    bool operator==(const Classification&) const = default;
};

/// Confidence reported when no cue matches at all.
inline constexpr double kNoCueConfidence = 0.95;

/// Causal iff a conditional cue occurs. Confidence for a causal verdict is
/// the noisy-OR of the matched conditional and consequence cue weights; for
/// a non-causal verdict it is 1 - max matched weight, or kNoCueConfidence
/// when nothing matched.
Classification classify(const Sentence& sentence, const CueLexicon& lexicon = CueLexicon::builtin());

/// {"causal", "confidence", "cues": [{"cue","kind","token_begin","token_end"}]}
Json classification_to_json(const Classification& c);

}  // namespace cira
