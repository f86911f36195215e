#include "cira/classifier.hpp"

#include <algorithm>

namespace cira {

Classification classify(const Sentence& sentence, const CueLexicon& lexicon) {
    Classification out;
    double miss = 1.0;
    double max_weight = 0.0;
    for (const auto& m : lexicon.match(sentence)) {
        for (CueKind kind : {CueKind::Conditional, CueKind::Consequence}) {
            const auto w = m.weight(kind);
            if (!w) continue;
            out.matched_cues.push_back(MatchedCue{m.text, kind, m.token_begin, m.token_end});
            if (kind == CueKind::Conditional) out.causal = true;
            miss *= 1.0 - *w;
            max_weight = std::max(max_weight, *w);
        }
    }
    if (out.causal) {
        out.confidence = 1.0 - miss;
    } else {
        out.confidence = out.matched_cues.empty() ? kNoCueConfidence : 1.0 - max_weight;
    }
    out.confidence = std::clamp(out.confidence, 0.0, 1.0);
    return out;
}

Json classification_to_json(const Classification& c) {
    Json cues = Json::array();
    for (const auto& m : c.matched_cues) {
        cues.push_back(Json{{"cue", m.cue},
                            {"kind", std::string(to_string(m.kind))},
                            {"token_begin", m.token_begin},
                            {"token_end", m.token_end}});
    }
    return Json{{"causal", c.causal}, {"confidence", c.confidence}, {"cues", std::move(cues)}};
}

}  // namespace cira
