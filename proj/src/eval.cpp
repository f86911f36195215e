#include "cira/eval.hpp"

#include <algorithm>
#include <cstdio>
#include <set>

#include "cira/pipeline.hpp"

namespace cira {
namespace {

double ratio(std::size_t num, std::size_t den) { return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den); }

ClassMetrics metrics(std::size_t tp, std::size_t fp, std::size_t fn) {
    ClassMetrics m;
    m.precision = ratio(tp, tp + fp);
    m.recall = ratio(tp, tp + fn);
    m.f1 = m.precision + m.recall == 0 ? 0.0 : 2 * m.precision * m.recall / (m.precision + m.recall);
    return m;
}

std::string join_ids(const std::vector<std::string>& ids) {
    std::string out;
    for (const auto& id : ids) out += (out.empty() ? "" : ", ") + id;
    return out;
}

Json metrics_json(const ClassMetrics& m) {
    return Json{{"precision", m.precision}, {"recall", m.recall}, {"f1", m.f1}};
}

std::string percent(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f%%", v * 100.0);
    return buf;
}

}  // namespace

EvalError::EvalError(Code code, std::vector<std::string> ids)
    : std::runtime_error(std::string(code == Code::IdMismatch ? "prediction ids do not match corpus ids: "
                                                              : "missing gold suite for: ") +
                         join_ids(ids)),
      code_(code),
      ids_(std::move(ids)) {}

SuiteSummary SuiteSummary::of(const TestSuite& suite) {
    SuiteSummary s;
    for (const auto& c : suite.columns) s.variables.push_back(c.variable);
    for (const auto& tc : suite.cases) {
        std::vector<bool> row;
        for (std::size_t i = 0; i < suite.columns.size(); ++i) row.push_back(suite.value(tc, i));
        s.configurations.push_back(std::move(row));
    }
    return s;
}

std::string normalize_variable(std::string_view text) {
    std::string out;
    bool space = false;
    for (char c : to_lower(text)) {
        if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
            space = !out.empty();
            continue;
        }
        if (space) out += ' ';
        space = false;
        out += c;
    }
    return out;
}

ClassificationEval evaluate_classifier(const std::vector<CorpusEntry>& entries,
                                       const std::map<std::string, bool>& predictions) {
    std::vector<std::string> mismatched;
    std::set<std::string> ids;
    for (const auto& e : entries) {
        ids.insert(e.id);
        if (!predictions.count(e.id)) mismatched.push_back(e.id);
    }
    for (const auto& [id, _] : predictions) {
        if (!ids.count(id)) mismatched.push_back(id);
    }
    if (!mismatched.empty()) throw EvalError(EvalError::Code::IdMismatch, std::move(mismatched));

    ClassificationEval r;
    for (const auto& e : entries) {
        const bool p = predictions.at(e.id);
        if (p && e.gold_causal) ++r.tp;
        else if (p && !e.gold_causal) ++r.fp;
        else if (!p && e.gold_causal) ++r.fn;
        else ++r.tn;
    }
    r.causal = metrics(r.tp, r.fp, r.fn);
    r.non_causal = metrics(r.tn, r.fn, r.fp);
    r.macro_f1 = (r.causal.f1 + r.non_causal.f1) / 2.0;
    r.accuracy = ratio(r.tp + r.tn, entries.size());
    return r;
}

SuiteEval evaluate_suites(const std::vector<CorpusEntry>& entries, const std::map<std::string, SuiteSummary>& generated) {
    std::vector<std::string> missing;
    for (const auto& e : entries) {
        if (e.gold_causal && (!e.gold_variables || !e.gold_configurations)) missing.push_back(e.id);
    }
    if (!missing.empty()) throw EvalError(EvalError::Code::MissingGold, std::move(missing));

    SuiteEval r;
    std::size_t gold_vars = 0, matched_vars = 0, gold_rows = 0, matched_rows = 0;
    for (const auto& e : entries) {
        if (!e.gold_causal) continue;
        ++r.evaluated;
        SuiteVerdict v{e.id, false, false, false};
        const auto& gv = *e.gold_variables;
        const std::set<std::vector<bool>> gold_set(e.gold_configurations->begin(), e.gold_configurations->end());
        gold_vars += gv.size();
        gold_rows += gold_set.size();

        if (const auto it = generated.find(e.id); it != generated.end()) {
            v.generated = true;
            const auto& sv = it->second.variables;
            bool all = sv.size() == gv.size();
            for (std::size_t i = 0; i < gv.size(); ++i) {
                const bool same = i < sv.size() && normalize_variable(sv[i]) == normalize_variable(gv[i]);
                if (same) ++matched_vars;
                all = all && same;
            }
            v.variables_match = all;

            const std::set<std::vector<bool>> gen_set(it->second.configurations.begin(), it->second.configurations.end());
            v.configurations_match = gen_set == gold_set;
            matched_rows += std::count_if(gold_set.begin(), gold_set.end(),
                                          [&](const std::vector<bool>& row) { return gen_set.count(row) > 0; });
        }
        if (v.variables_match) ++r.variable_matches;
        if (v.configurations_match) ++r.configuration_matches;
        r.verdicts.push_back(std::move(v));
    }
    r.variable_accuracy = ratio(r.variable_matches, r.evaluated);
    r.configuration_accuracy = ratio(r.configuration_matches, r.evaluated);
    r.variable_accuracy_per_variable = ratio(matched_vars, gold_vars);
    r.configuration_accuracy_per_row = ratio(matched_rows, gold_rows);
    return r;
}

EvalReport run_evaluation(const std::vector<CorpusEntry>& entries, const CueLexicon& lexicon, const LabelerPort& labeler) {
    EvalReport report;
    std::map<std::string, bool> predictions;
    std::map<std::string, SuiteSummary> generated;
    for (const auto& e : entries) {
        const PipelineResult r = run_pipeline(e.text, lexicon, labeler);
        predictions[e.id] = r.classification.causal;
        if (r.suite) generated[e.id] = SuiteSummary::of(*r.suite);
        EntryVerdict v{e.id, e.gold_causal, r.classification.causal, std::nullopt};
        if (r.error) v.error = r.error->reason;
        report.entries.push_back(std::move(v));
    }
    report.classification = evaluate_classifier(entries, predictions);
    report.suites = evaluate_suites(entries, generated);
    return report;
}

Json eval_report_to_json(const EvalReport& r) {
    const auto& c = r.classification;
    const auto& s = r.suites;
    Json verdicts = Json::array();
    for (const auto& v : s.verdicts) {
        verdicts.push_back(Json{{"id", v.id},
                                {"generated", v.generated},
                                {"variables_match", v.variables_match},
                                {"configurations_match", v.configurations_match}});
    }
    Json entries = Json::array();
    for (const auto& e : r.entries) {
        Json j{{"id", e.id}, {"gold_causal", e.gold_causal}, {"predicted_causal", e.predicted_causal}};
        j["error"] = e.error ? Json(*e.error) : Json(nullptr);
        entries.push_back(std::move(j));
    }
    return Json{
        {"classification",
         {{"macro_f1", c.macro_f1},
          {"accuracy", c.accuracy},
          {"causal", metrics_json(c.causal)},
          {"non_causal", metrics_json(c.non_causal)},
          {"confusion", {{"tp", c.tp}, {"fp", c.fp}, {"fn", c.fn}, {"tn", c.tn}}}}},
        {"suites",
         {{"evaluated", s.evaluated},
          {"variable_accuracy", s.variable_accuracy},
          {"configuration_accuracy", s.configuration_accuracy},
          {"variable_accuracy_per_variable", s.variable_accuracy_per_variable},
          {"configuration_accuracy_per_row", s.configuration_accuracy_per_row},
          {"verdicts", std::move(verdicts)}}},
        {"entries", std::move(entries)},
    };
}

std::string eval_summary(const EvalReport& r) {
    const auto& c = r.classification;
    const auto& s = r.suites;
    std::string out;
    out += "sentences:              " + std::to_string(r.entries.size()) + " (" + std::to_string(c.tp + c.fn) +
           " causal, " + std::to_string(c.tn + c.fp) + " non-causal)\n";
    out += "classifier macro-F1:    " + percent(c.macro_f1) + "\n";
    out += "classifier accuracy:    " + percent(c.accuracy) + "\n";
    out += "  causal     P/R/F1:    " + percent(c.causal.precision) + " / " + percent(c.causal.recall) + " / " +
           percent(c.causal.f1) + "\n";
    out += "  non-causal P/R/F1:    " + percent(c.non_causal.precision) + " / " + percent(c.non_causal.recall) + " / " +
           percent(c.non_causal.f1) + "\n";
    out += "test variables:         " + percent(s.variable_accuracy) + " of " + std::to_string(s.evaluated) +
           " causal sentences (" + percent(s.variable_accuracy_per_variable) + " per variable)\n";
    out += "test configurations:    " + percent(s.configuration_accuracy) + " of " + std::to_string(s.evaluated) +
           " causal sentences (" + percent(s.configuration_accuracy_per_row) + " per row)\n";
    return out;
}

}  // namespace cira
