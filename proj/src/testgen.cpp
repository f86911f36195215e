#include "cira/testgen.hpp"

#include <algorithm>

namespace cira {
namespace {

// Satisfying and falsifying partial assignments over a subtree's literals,
// plus the designated representative of each set.
struct Coverage {
    std::vector<Assignment> when_true;
    std::vector<Assignment> when_false;
    Assignment true_rep;
    Assignment false_rep;
};

Assignment merged(Assignment base, const Assignment& extra) {
    base.insert(extra.begin(), extra.end());
    return base;
}

void push_unique(std::vector<Assignment>& out, Assignment a) {
    if (std::find(out.begin(), out.end(), a) == out.end()) out.push_back(std::move(a));
}

Coverage cover(const CauseExpr& e) {
    if (e.kind == CauseExpr::Kind::Literal) {
        const bool sat = !e.negated;
        Coverage c;
        c.true_rep = {{e.event_id, sat}};
        c.false_rep = {{e.event_id, !sat}};
        c.when_true = {c.true_rep};
        c.when_false = {c.false_rep};
        return c;
    }

    std::vector<Coverage> kids;
    for (const auto& child : e.children) kids.push_back(cover(child));

    // For And, other children are held at their true representative; Or is
    // the dual, holding them false.
    const bool is_and = e.kind == CauseExpr::Kind::And;
    auto others = [&](std::size_t skip) {
        Assignment a;
        for (std::size_t j = 0; j < kids.size(); ++j) {
            if (j != skip) a = merged(std::move(a), is_and ? kids[j].true_rep : kids[j].false_rep);
        }
        return a;
    };

    Coverage c;
    for (std::size_t i = 0; i < kids.size(); ++i) {
        const Assignment rest = others(i);
        for (const auto& t : kids[i].when_true) push_unique(c.when_true, merged(t, rest));
        for (const auto& f : kids[i].when_false) push_unique(c.when_false, merged(f, rest));
    }
    if (is_and) {
        for (const auto& k : kids) c.true_rep = merged(std::move(c.true_rep), k.true_rep);
        c.false_rep = merged(kids.front().false_rep, others(0));
    } else {
        for (const auto& k : kids) c.false_rep = merged(std::move(c.false_rep), k.false_rep);
        c.true_rep = merged(kids.front().true_rep, others(0));
    }
    return c;
}

std::string cell(const std::string& condition, bool value) { return value ? condition : "not " + condition; }

std::string family_name(EventFamily f) { return f == EventFamily::Cause ? "cause" : "effect"; }

}  // namespace

bool evaluate(const CauseExpr& expr, const Assignment& assignment) {
    switch (expr.kind) {
        case CauseExpr::Kind::Literal: {
            const auto it = assignment.find(expr.event_id);
            if (it == assignment.end()) throw EvaluationError(expr.event_id);
            return it->second != expr.negated;
        }
        case CauseExpr::Kind::And:
            // Evaluate every child so a missing value is always reported.
            return std::count_if(expr.children.begin(), expr.children.end(),
                                 [&](const CauseExpr& c) { return evaluate(c, assignment); }) ==
                   static_cast<std::ptrdiff_t>(expr.children.size());
        case CauseExpr::Kind::Or:
            return std::count_if(expr.children.begin(), expr.children.end(),
                                 [&](const CauseExpr& c) { return evaluate(c, assignment); }) > 0;
    }
    return false;
}

bool TestSuite::value(const TestCase& tc, std::size_t col) const {
    const SuiteColumn& c = columns.at(col);
    const Assignment& src = c.family == EventFamily::Cause ? tc.assignment : tc.effects;
    return src.at(c.id);
}

TestSuite generate_suite(const CauseEffectGraph& graph) {
    if (auto v = validate_graph(graph); !v.empty()) throw GraphError(GraphError::Code::InvalidGraph, std::move(v));

    TestSuite suite;
    for (const auto& c : graph.causes) suite.columns.push_back({c.id, c.variable, EventFamily::Cause});
    for (const auto& e : graph.effects) suite.columns.push_back({e.event.id, e.event.variable, EventFamily::Effect});

    const Coverage cov = cover(graph.root);
    std::vector<Assignment> rows = cov.when_true;
    rows.insert(rows.end(), cov.when_false.begin(), cov.when_false.end());

    for (const auto& row : rows) {
        TestCase tc;
        tc.id = "TC" + std::to_string(suite.cases.size() + 1);
        tc.assignment = row;
        tc.outcome = evaluate(graph.root, row);
        for (const auto& c : graph.causes) tc.cells.push_back(cell(c.condition, row.at(c.id)));
        for (const auto& e : graph.effects) {
            const bool v = tc.outcome != e.negated;
            tc.effects[e.event.id] = v;
            tc.cells.push_back(cell(e.event.condition, v));
        }
        suite.cases.push_back(std::move(tc));
    }
    return suite;
}

CoverageReport mcdc_check(const TestSuite& suite, const CauseEffectGraph& graph) {
    CoverageReport r;
    struct Row {
        const TestCase* tc;
        bool outcome;
    };
    std::vector<Row> rows;
    for (const auto& tc : suite.cases) {
        bool complete = true;
        for (const auto& c : graph.causes) {
            if (!tc.assignment.count(c.id)) {
                r.problems.push_back(tc.id + " assigns no value to " + c.id);
                complete = false;
            }
        }
        if (!complete) continue;
        const bool outcome = evaluate(graph.root, tc.assignment);
        if (outcome != tc.outcome) r.problems.push_back(tc.id + " records the wrong outcome");
        rows.push_back({&tc, outcome});
    }

    const bool any_true = std::any_of(rows.begin(), rows.end(), [](const Row& x) { return x.outcome; });
    const bool any_false = std::any_of(rows.begin(), rows.end(), [](const Row& x) { return !x.outcome; });
    r.outcome_coverage = any_true && any_false;
    if (!any_true) r.problems.push_back("no case with a true outcome");
    if (!any_false) r.problems.push_back("no case with a false outcome");

    r.independence = true;
    for (const auto& c : graph.causes) {
        CauseWitness w{c.id, std::nullopt};
        for (std::size_t i = 0; i < rows.size() && !w.pair; ++i) {
            for (std::size_t j = i + 1; j < rows.size() && !w.pair; ++j) {
                if (rows[i].outcome == rows[j].outcome) continue;
                const Assignment& a = rows[i].tc->assignment;
                const Assignment& b = rows[j].tc->assignment;
                const bool only_c = std::all_of(graph.causes.begin(), graph.causes.end(), [&](const EventNode& o) {
                    return (a.at(o.id) != b.at(o.id)) == (o.id == c.id);
                });
                if (only_c) w.pair = std::make_pair(rows[i].tc->id, rows[j].tc->id);
            }
        }
        if (!w.pair) {
            r.independence = false;
            r.problems.push_back("no independence pair for " + c.id);
        }
        r.witnesses.push_back(std::move(w));
    }

    r.minimality = suite.cases.size() == graph.causes.size() + 1;
    if (!r.minimality) {
        r.problems.push_back("expected " + std::to_string(graph.causes.size() + 1) + " cases, found " +
                             std::to_string(suite.cases.size()));
    }
    return r;
}

Json suite_to_json(const TestSuite& suite) {
    Json columns = Json::array();
    for (const auto& c : suite.columns)
        columns.push_back(Json{{"id", c.id}, {"variable", c.variable}, {"family", family_name(c.family)}});
    Json cases = Json::array();
    for (const auto& tc : suite.cases) {
        Json values = Json::object();
        for (std::size_t i = 0; i < suite.columns.size(); ++i) values[suite.columns[i].id] = suite.value(tc, i);
        cases.push_back(Json{{"id", tc.id}, {"values", std::move(values)}, {"outcome", tc.outcome}, {"cells", tc.cells}});
    }
    return Json{{"columns", std::move(columns)}, {"cases", std::move(cases)}};
}

TestSuite suite_from_json(const Json& doc) {
    auto require = [](const Json& j, const std::string& at, const char* key, bool (Json::*is)() const noexcept,
                      const char* what) -> const Json& {
        if (!j.is_object() || !j.contains(key)) throw ParseError(at + "/" + key, std::string("missing field '") + key + "'");
        if (!(j[key].*is)()) throw ParseError(at + "/" + key, std::string("field '") + key + "' must be " + what);
        return j[key];
    };
    TestSuite s;
    const Json& cols = require(doc, "", "columns", &Json::is_array, "an array");
    for (std::size_t i = 0; i < cols.size(); ++i) {
        const std::string at = "/columns/" + std::to_string(i);
        const auto family = require(cols[i], at, "family", &Json::is_string, "a string").get<std::string>();
        if (family != "cause" && family != "effect") throw ParseError(at + "/family", "unknown family '" + family + "'");
        s.columns.push_back({require(cols[i], at, "id", &Json::is_string, "a string").get<std::string>(),
                             require(cols[i], at, "variable", &Json::is_string, "a string").get<std::string>(),
                             family == "cause" ? EventFamily::Cause : EventFamily::Effect});
    }
    const Json& cases = require(doc, "", "cases", &Json::is_array, "an array");
    for (std::size_t i = 0; i < cases.size(); ++i) {
        const std::string at = "/cases/" + std::to_string(i);
        TestCase tc;
        tc.id = require(cases[i], at, "id", &Json::is_string, "a string").get<std::string>();
        const Json& values = require(cases[i], at, "values", &Json::is_object, "an object");
        for (const auto& c : s.columns) {
            if (!values.contains(c.id) || !values[c.id].is_boolean())
                throw ParseError(at + "/values/" + c.id, "missing boolean value for column " + c.id);
            (c.family == EventFamily::Cause ? tc.assignment : tc.effects)[c.id] = values[c.id].get<bool>();
        }
        tc.outcome = require(cases[i], at, "outcome", &Json::is_boolean, "a boolean").get<bool>();
        const Json& cells = require(cases[i], at, "cells", &Json::is_array, "an array");
        if (cells.size() != s.columns.size())
            throw ParseError(at + "/cells", "expected " + std::to_string(s.columns.size()) + " cells");
        for (std::size_t k = 0; k < cells.size(); ++k) {
            if (!cells[k].is_string()) throw ParseError(at + "/cells/" + std::to_string(k), "cell must be a string");
            tc.cells.push_back(cells[k].get<std::string>());
        }
        s.cases.push_back(std::move(tc));
    }
    return s;
}

Json coverage_to_json(const CoverageReport& r) {
    Json witnesses = Json::array();
    for (const auto& w : r.witnesses) {
        witnesses.push_back(Json{{"cause", w.cause_id},
                                 {"pair", w.pair ? Json::array({w.pair->first, w.pair->second}) : Json(nullptr)}});
    }
    return Json{{"outcome_coverage", r.outcome_coverage},
                {"independence", r.independence},
                {"minimality", r.minimality},
                {"passed", r.passed()},
                {"witnesses", std::move(witnesses)},
                {"problems", r.problems}};
}

}  // namespace cira
