#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "cira/classifier.hpp"
#include "cira/formats.hpp"
#include "cira/labeler.hpp"
#include "cira/testgen.hpp"

namespace cira {

struct StageError {
    std::string stage;   // "label" | "graph" | "suite"
    std::string reason;  // e.g. "NO_EFFECT"
    std::string message;
};

struct StageTimings {
    double classify_ms = 0;
    double label_ms = 0;
    double graph_ms = 0;
    double suite_ms = 0;
};

/// Stages are present iff reached; a non-causal sentence stops after
/// classification without an error.
struct PipelineResult {
    Sentence sentence;
    Classification classification;
    std::optional<LabeledSentence> labels;
    std::optional<CauseEffectGraph> graph;
    std::optional<TestSuite> suite;
    std::optional<StageError> error;
    StageTimings timings;
};

PipelineResult run_pipeline(std::string_view text, const CueLexicon& lexicon, const LabelerPort& labeler);
PipelineResult run_pipeline(std::string_view text, const CueLexicon& lexicon = CueLexicon::builtin());

/// {"classification", "labels", "graph", "suite", "error", "timings_ms"};
/// timings are omitted unless requested.
Json pipeline_to_json(const PipelineResult& result, bool with_timings = false);
std::string render_pipeline(const PipelineResult& result, OutputFormat format);

}  // namespace cira
