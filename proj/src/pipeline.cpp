#include "cira/pipeline.hpp"

#include <chrono>

namespace cira {
namespace {

template <typename F>
double timed(F&& f) {
    const auto start = std::chrono::steady_clock::now();
    f();
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

PipelineResult run_pipeline(std::string_view text, const CueLexicon& lexicon, const LabelerPort& labeler) {
    PipelineResult r;
    r.timings.classify_ms = timed([&] {
        r.sentence = tokenize(text);
        r.classification = classify(r.sentence, lexicon);
    });
    if (!r.classification.causal) return r;

    try {
        r.timings.label_ms = timed([&] {
            LabeledSentence ls = labeler.label(r.sentence);
            if (auto v = validate_labels(ls); !v.empty()) throw GraphError(GraphError::Code::InvalidLabels, std::move(v));
            r.labels = std::move(ls);
        });
    } catch (const LabelError& e) {
        r.error = StageError{"label", e.reason(), e.what()};
        return r;
    } catch (const GraphError& e) {
        r.error = StageError{"label", e.reason(), e.what()};
        return r;
    }

    try {
        r.timings.graph_ms = timed([&] { r.graph = build_graph(*r.labels); });
    } catch (const GraphError& e) {
        r.error = StageError{"graph", e.reason(), e.what()};
        return r;
    }

    try {
        r.timings.suite_ms = timed([&] { r.suite = generate_suite(*r.graph); });
    } catch (const GraphError& e) {
        r.error = StageError{"suite", e.reason(), e.what()};
    }
    return r;
}

PipelineResult run_pipeline(std::string_view text, const CueLexicon& lexicon) {
    return run_pipeline(text, lexicon, RuleLabeler(lexicon));
}

Json pipeline_to_json(const PipelineResult& r, bool with_timings) {
    Json j{{"text", r.sentence.raw}, {"classification", classification_to_json(r.classification)}};
    if (r.labels) j["labels"] = label_stage_to_json(*r.labels);
    if (r.graph) j["graph"] = graph_to_json(*r.graph);
    if (r.suite) j["suite"] = suite_to_json(*r.suite);
    if (r.error) j["error"] = Json{{"stage", r.error->stage}, {"reason", r.error->reason}, {"message", r.error->message}};
    if (with_timings) {
        Json t{{"classify", r.timings.classify_ms}};
        if (r.labels || r.error) t["label"] = r.timings.label_ms;
        if (r.graph) t["graph"] = r.timings.graph_ms;
        if (r.suite) t["suite"] = r.timings.suite_ms;
        j["timings_ms"] = std::move(t);
    }
    return j;
}

std::string render_pipeline(const PipelineResult& r, OutputFormat format) {
    if (format == OutputFormat::Json) return render_json(pipeline_to_json(r));
    std::string out = render_classification(r.classification, format);
    if (r.labels) out += "\n" + render_labels(*r.labels, format);
    if (r.graph) out += "\n" + render_graph(*r.graph, format);
    if (r.suite) out += "\n" + render_suite(*r.suite, format);
    if (r.error) out += "\n" + r.error->reason + ": " + r.error->message + "\n";
    return out;
}

}  // namespace cira
