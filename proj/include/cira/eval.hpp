#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cira/formats.hpp"
#include "cira/labeler.hpp"

namespace cira {

class EvalError : public std::runtime_error {
public:
    enum class Code { IdMismatch, MissingGold };

    EvalError(Code code, std::vector<std::string> ids);
    Code code() const { return code_; }
    const std::vector<std::string>& ids() const { return ids_; }

private:
    Code code_;
    std::vector<std::string> ids_;
};

struct ClassMetrics {
    double precision = 0;
    double recall = 0;
    double f1 = 0;
};

/// Counts are taken with "causal" as the positive class.
struct ClassificationEval {
    std::size_t tp = 0, fp = 0, fn = 0, tn = 0;
    ClassMetrics causal;
    ClassMetrics non_causal;
    double macro_f1 = 0;
    double accuracy = 0;
};

/// Variables and Boolean rows of one generated suite, in column order.
struct SuiteSummary {
    std::vector<std::string> variables;
    std::vector<std::vector<bool>> configurations;

    static SuiteSummary of(const TestSuite& suite);
};

struct SuiteVerdict {
    std::string id;
    bool generated = false;
    bool variables_match = false;
    bool configurations_match = false;
};

/// Headline accuracies are per sentence. The per-variable and per-row
/// figures are the finer-grained reading of the same comparison.
struct SuiteEval {
    std::size_t evaluated = 0;
    std::size_t variable_matches = 0;
    std::size_t configuration_matches = 0;
    double variable_accuracy = 0;
    double configuration_accuracy = 0;
    double variable_accuracy_per_variable = 0;
    double configuration_accuracy_per_row = 0;
    std::vector<SuiteVerdict> verdicts;
};

struct EntryVerdict {
    std::string id;
    bool gold_causal = false;
    bool predicted_causal = false;
    std::optional<std::string> error;  // pipeline failure reason, if any
};

struct EvalReport {
    ClassificationEval classification;
    SuiteEval suites;
    std::vector<EntryVerdict> entries;
};

/// Precision/recall are 0 when their denominator is 0; f1 is 0 when p + r = 0.
/// Throws EvalError(IdMismatch) unless `predictions` has exactly one value
/// per entry id.
ClassificationEval evaluate_classifier(const std::vector<CorpusEntry>& entries,
                                       const std::map<std::string, bool>& predictions);

/// Compares generated suites against gold for every gold-causal entry.
/// Variables match after lowercasing, trimming and collapsing whitespace,
/// in order; configurations match as sets of rows. An entry with no
/// generated suite counts as a miss on both. Throws EvalError(MissingGold).
SuiteEval evaluate_suites(const std::vector<CorpusEntry>& entries,
                          const std::map<std::string, SuiteSummary>& generated);

/// Runs the pipeline over every entry and scores it.
EvalReport run_evaluation(const std::vector<CorpusEntry>& entries, const CueLexicon& lexicon,
                          const LabelerPort& labeler);

std::string normalize_variable(std::string_view text);

Json eval_report_to_json(const EvalReport& report);
std::string eval_summary(const EvalReport& report);

}  // namespace cira
