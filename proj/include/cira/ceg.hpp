#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "cira/errors.hpp"
#include "cira/labeler.hpp"

namespace cira {

inline constexpr const char* kDefaultCondition = "is true";
inline constexpr const char* kDefaultConditionWithoutVariable = "is fulfilled";

struct EventNode {
    std::string id;  // "C1".."C9", "E1".."E9"
    std::string variable;
    std::string condition;

    bool operator==(const EventNode&) const = default;
};

struct EffectNode {
    EventNode event;
    bool negated = false;

    bool operator==(const EffectNode&) const = default;
};

/// Boolean expression over cause events. Each cause appears in exactly one
/// literal; And/Or nodes have at least two children.
struct CauseExpr {
    enum class Kind { Literal, And, Or };

    Kind kind = Kind::Literal;
    std::string event_id;  // literals only
    bool negated = false;  // literals only
    std::vector<CauseExpr> children;

    static CauseExpr literal(std::string id, bool negated = false);
    static CauseExpr all_of(std::vector<CauseExpr> children);
    static CauseExpr any_of(std::vector<CauseExpr> children);

    /// Literal ids in left-to-right order.
    std::vector<std::string> literal_ids() const;
    /// e.g. "(C1 OR NOT C2)"
    std::string to_string() const;

    bool operator==(const CauseExpr&) const = default;
};

struct CauseEffectGraph {
    std::vector<EventNode> causes;
    std::vector<EffectNode> effects;
    CauseExpr root;

    const EventNode* cause(const std::string& id) const;
    bool operator==(const CauseEffectGraph&) const = default;
};

class GraphError : public std::runtime_error {
public:
    enum class Code { InvalidLabels, NoCause, NoEffect, InvalidGraph };

    GraphError(Code code, std::vector<std::string> violations);
    Code code() const { return code_; }
    const std::vector<std::string>& violations() const { return violations_; }
    std::string reason() const;

private:
    Code code_;
    std::vector<std::string> violations_;
};

/// One node per event label. Junctors between consecutive causes are folded
/// with conjunction binding tighter than disjunction; a missing junctor
/// counts as conjunction. A NEGATION span flips the event containing it,
/// or else the next event after it.
CauseEffectGraph build_graph(const LabeledSentence& labeled);

/// Empty when the graph satisfies all structural invariants.
std::vector<std::string> validate_graph(const CauseEffectGraph& graph);

Json expr_to_json(const CauseExpr& expr);
Json graph_to_json(const CauseEffectGraph& graph);
/// Throws ParseError; position is a JSON pointer into `doc`.
CauseEffectGraph graph_from_json(const Json& doc);
/// As above but from text; syntax errors report the byte offset.
CauseEffectGraph graph_from_json_text(std::string_view text);

}  // namespace cira
