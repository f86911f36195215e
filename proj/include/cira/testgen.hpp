#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cira/ceg.hpp"

namespace cira {

using Assignment = std::map<std::string, bool>;

class EvaluationError : public std::runtime_error {
public:
    explicit EvaluationError(std::string missing_id)
        : std::runtime_error("no value assigned to '" + missing_id + "'"), missing_(std::move(missing_id)) {}
    const std::string& missing_id() const { return missing_; }

private:
    std::string missing_;
};

/// Throws EvaluationError when a literal has no value.
bool evaluate(const CauseExpr& expr, const Assignment& assignment);

struct SuiteColumn {
    std::string id;
    std::string variable;
    EventFamily family;

    bool operator==(const SuiteColumn&) const = default;
};

struct TestCase {
    std::string id;
    Assignment assignment;  // cause id -> value
    bool outcome = false;   // value of the cause expression
    Assignment effects;     // effect id -> value, outcome flipped for negated effects
    std::vector<std::string> cells;

    bool operator==(const TestCase&) const = default;
};

struct TestSuite {
    std::vector<SuiteColumn> columns;  // causes, then effects
    std::vector<TestCase> cases;

    /// Truth value of column `col` in case `tc`.
    bool value(const TestCase& tc, std::size_t col) const;

    bool operator==(const TestSuite&) const = default;
};

/// Unique-cause MC/DC suite for a singular expression: n causes yield n + 1
/// cases. True-outcome cases come first, then false-outcome cases.
TestSuite generate_suite(const CauseEffectGraph& graph);

struct CauseWitness {
    std::string cause_id;
    std::optional<std::pair<std::string, std::string>> pair;  // case ids
};

struct CoverageReport {
    bool outcome_coverage = false;
    bool independence = false;
    bool minimality = false;
    std::vector<CauseWitness> witnesses;
    std::vector<std::string> problems;

    bool passed() const { return outcome_coverage && independence && minimality; }
};

/// Checks outcome coverage, per-cause independence and the n + 1 size bound.
/// Outcomes are recomputed from the graph, not read from the suite.
CoverageReport mcdc_check(const TestSuite& suite, const CauseEffectGraph& graph);

Json suite_to_json(const TestSuite& suite);
/// Throws ParseError with a JSON pointer position.
TestSuite suite_from_json(const Json& doc);

Json coverage_to_json(const CoverageReport& report);

}  // namespace cira
