#include "cira/ceg.hpp"

#include <algorithm>
#include <optional>
#include <set>

namespace cira {
namespace {

std::string join_lines(const std::vector<std::string>& v) {
    std::string out;
    for (const auto& s : v) out += (out.empty() ? "" : "; ") + s;
    return out;
}

// Event text without negation/keyword tokens; contraction stems are restored
// to their auxiliary ("doesn't open" -> "does open").
std::string event_text(const LabeledSentence& ls, std::size_t begin, std::size_t end) {
    auto hidden = [&](std::size_t i) {
        return ls.is_labeled(i, LabelKind::Negation) || ls.is_labeled(i, LabelKind::Keyword);
    };
    const Sentence* src = &ls.sentence;
    Sentence patched;
    for (std::size_t i = begin; i + 1 < end; ++i) {
        if (hidden(i) || !hidden(i + 1)) continue;
        const auto base = contraction_base(to_lower(ls.sentence.tokens[i].text));
        if (!base) continue;
        if (src != &patched) {
            patched = ls.sentence;
            src = &patched;
        }
        patched.tokens[i].text = std::string(*base);
    }
    return join_tokens(*src, begin, end, hidden);
}

struct EventInfo {
    LabelSpan span;
    EventNode node;
    bool negated = false;
};

std::vector<EventInfo> collect(const LabeledSentence& ls, EventFamily family) {
    std::vector<EventInfo> out;
    for (int k = 1; k <= kMaxEventsPerFamily; ++k) {
        const auto ev = ls.event(family, k);
        if (!ev) break;
        EventInfo info{*ev, {}, false};
        info.node.id = (family == EventFamily::Cause ? "C" : "E") + std::to_string(k);

        std::optional<LabelSpan> var, cond;
        for (const auto& s : ls.spans) {
            if (!ev->contains(s)) continue;
            if (s.kind == LabelKind::Variable) var = s;
            if (s.kind == LabelKind::Condition) cond = s;
        }
        std::string whole = event_text(ls, ev->token_begin, ev->token_end);
        if (whole.empty()) whole = join_tokens(ls.sentence, ev->token_begin, ev->token_end);
        const std::string var_text = var ? event_text(ls, var->token_begin, var->token_end) : std::string();
        const std::string cond_text = cond ? event_text(ls, cond->token_begin, cond->token_end) : std::string();
        if (var_text.empty()) {
            info.node.variable = whole;
            info.node.condition = kDefaultConditionWithoutVariable;
        } else {
            info.node.variable = var_text;
            info.node.condition = cond_text.empty() ? kDefaultCondition : cond_text;
        }
        out.push_back(std::move(info));
    }
    return out;
}

CauseExpr fold(const std::vector<EventInfo>& causes, const std::vector<LabelKind>& junctors) {
    std::vector<CauseExpr> groups;
    std::vector<CauseExpr> current{CauseExpr::literal(causes[0].node.id, causes[0].negated)};
    auto close_group = [&] {
        groups.push_back(current.size() == 1 ? std::move(current.front()) : CauseExpr::all_of(std::move(current)));
        current.clear();
    };
    for (std::size_t i = 1; i < causes.size(); ++i) {
        if (junctors[i - 1] == LabelKind::Disjunction) close_group();
        current.push_back(CauseExpr::literal(causes[i].node.id, causes[i].negated));
    }
    close_group();
    return groups.size() == 1 ? std::move(groups.front()) : CauseExpr::any_of(std::move(groups));
}

const char* type_name(CauseExpr::Kind k) {
    switch (k) {
        case CauseExpr::Kind::Literal: return "lit";
        case CauseExpr::Kind::And: return "and";
        case CauseExpr::Kind::Or: return "or";
    }
    return "lit";
}

void check_event(const EventNode& e, std::vector<std::string>& v) {
    auto trimmed = [](const std::string& s) {
        return !s.empty() && s.front() != ' ' && s.back() != ' ' && s.front() != '\t' && s.back() != '\t';
    };
    if (!trimmed(e.variable)) v.push_back(e.id + ": variable must be non-empty and trimmed");
    if (!trimmed(e.condition)) v.push_back(e.id + ": condition must be non-empty and trimmed");
}

void check_expr(const CauseExpr& e, std::vector<std::string>& v) {
    if (e.kind == CauseExpr::Kind::Literal) {
        if (!e.children.empty()) v.push_back("literal " + e.event_id + " has children");
        return;
    }
    if (e.children.size() < 2) v.push_back(std::string(type_name(e.kind)) + " node needs at least two children");
    for (const auto& c : e.children) check_expr(c, v);
}

// JSON reading helpers; `at` is the JSON pointer of `j`.
const Json& field(const Json& j, const std::string& at, const char* key) {
    if (!j.is_object()) throw ParseError(at, "expected an object");
    if (!j.contains(key)) throw ParseError(at + "/" + key, std::string("missing field '") + key + "'");
    return j[key];
}

std::string string_field(const Json& j, const std::string& at, const char* key) {
    const Json& f = field(j, at, key);
    if (!f.is_string()) throw ParseError(at + "/" + key, std::string("field '") + key + "' must be a string");
    return f.get<std::string>();
}

bool bool_field(const Json& j, const std::string& at, const char* key) {
    const Json& f = field(j, at, key);
    if (!f.is_boolean()) throw ParseError(at + "/" + key, std::string("field '") + key + "' must be a boolean");
    return f.get<bool>();
}

CauseExpr expr_from_json(const Json& j, const std::string& at, const std::set<std::string>& ids) {
    const std::string type = string_field(j, at, "type");
    if (type == "lit") {
        std::string id = string_field(j, at, "id");
        if (!ids.count(id)) throw ParseError(at + "/id", "unknown node id '" + id + "'");
        return CauseExpr::literal(std::move(id), j.contains("negated") ? bool_field(j, at, "negated") : false);
    }
    if (type != "and" && type != "or") throw ParseError(at + "/type", "unknown expression type '" + type + "'");
    const Json& kids = field(j, at, "children");
    if (!kids.is_array() || kids.size() < 2)
        throw ParseError(at + "/children", "'" + type + "' needs an array of at least two children");
    std::vector<CauseExpr> children;
    for (std::size_t i = 0; i < kids.size(); ++i)
        children.push_back(expr_from_json(kids[i], at + "/children/" + std::to_string(i), ids));
    return type == "and" ? CauseExpr::all_of(std::move(children)) : CauseExpr::any_of(std::move(children));
}

}  // namespace

CauseExpr CauseExpr::literal(std::string id, bool negated) {
    CauseExpr e;
    e.kind = Kind::Literal;
    e.event_id = std::move(id);
    e.negated = negated;
    return e;
}

CauseExpr CauseExpr::all_of(std::vector<CauseExpr> children) {
    CauseExpr e;
    e.kind = Kind::And;
    e.children = std::move(children);
    return e;
}

CauseExpr CauseExpr::any_of(std::vector<CauseExpr> children) {
    CauseExpr e;
    e.kind = Kind::Or;
    e.children = std::move(children);
    return e;
}

std::vector<std::string> CauseExpr::literal_ids() const {
    if (kind == Kind::Literal) return {event_id};
    std::vector<std::string> out;
    for (const auto& c : children) {
        auto ids = c.literal_ids();
        out.insert(out.end(), ids.begin(), ids.end());
    }
    return out;
}

std::string CauseExpr::to_string() const {
    if (kind == Kind::Literal) return (negated ? "NOT " : "") + event_id;
    std::string out = "(";
    for (std::size_t i = 0; i < children.size(); ++i) {
        if (i) out += kind == Kind::And ? " AND " : " OR ";
        out += children[i].to_string();
    }
    return out + ")";
}

const EventNode* CauseEffectGraph::cause(const std::string& id) const {
    for (const auto& c : causes) {
        if (c.id == id) return &c;
    }
    return nullptr;
}

GraphError::GraphError(Code code, std::vector<std::string> violations)
    : std::runtime_error(join_lines(violations)), code_(code), violations_(std::move(violations)) {}

std::string GraphError::reason() const {
    switch (code_) {
        case Code::InvalidLabels: return "INVALID_LABELS";
        case Code::NoCause: return "NO_CAUSE";
        case Code::NoEffect: return "NO_EFFECT";
        case Code::InvalidGraph: return "INVALID_GRAPH";
    }
    return "UNKNOWN";
}

CauseEffectGraph build_graph(const LabeledSentence& labeled) {
    if (!labeled.event(EventFamily::Cause, 1)) throw GraphError(GraphError::Code::NoCause, {"no CAUSE_1 span"});
    if (!labeled.event(EventFamily::Effect, 1)) throw GraphError(GraphError::Code::NoEffect, {"no EFFECT_1 span"});
    if (auto v = validate_labels(labeled); !v.empty()) throw GraphError(GraphError::Code::InvalidLabels, std::move(v));

    auto causes = collect(labeled, EventFamily::Cause);
    auto effects = collect(labeled, EventFamily::Effect);

    for (const auto& neg : labeled.spans_of(LabelKind::Negation)) {
        EventInfo* target = nullptr;
        for (auto* family : {&causes, &effects}) {
            for (auto& e : *family) {
                if (e.span.contains(neg)) target = &e;
            }
        }
        if (!target) {
            for (auto* family : {&causes, &effects}) {
                for (auto& e : *family) {
                    if (e.span.token_begin >= neg.token_end && (!target || e.span.token_begin < target->span.token_begin))
                        target = &e;
                }
            }
        }
        if (target) target->negated = !target->negated;
    }

    std::vector<LabelKind> junctors;
    for (std::size_t i = 0; i + 1 < causes.size(); ++i) {
        LabelKind j = LabelKind::Conjunction;
        for (const auto& s : labeled.spans) {
            if (is_junctor(s.kind) && s.token_begin >= causes[i].span.token_end &&
                s.token_end <= causes[i + 1].span.token_begin) {
                j = s.kind;
                break;
            }
        }
        junctors.push_back(j);
    }

    CauseEffectGraph g;
    g.root = fold(causes, junctors);
    for (auto& c : causes) g.causes.push_back(std::move(c.node));
    for (auto& e : effects) g.effects.push_back(EffectNode{std::move(e.node), e.negated});
    return g;
}

std::vector<std::string> validate_graph(const CauseEffectGraph& g) {
    std::vector<std::string> v;
    if (g.causes.empty()) v.push_back("graph has no cause");
    if (g.effects.empty()) v.push_back("graph has no effect");
    for (std::size_t i = 0; i < g.causes.size(); ++i) {
        if (g.causes[i].id != "C" + std::to_string(i + 1))
            v.push_back("cause " + std::to_string(i + 1) + " has id '" + g.causes[i].id + "', expected C" + std::to_string(i + 1));
        check_event(g.causes[i], v);
    }
    for (std::size_t i = 0; i < g.effects.size(); ++i) {
        if (g.effects[i].event.id != "E" + std::to_string(i + 1))
            v.push_back("effect " + std::to_string(i + 1) + " has id '" + g.effects[i].event.id + "', expected E" + std::to_string(i + 1));
        check_event(g.effects[i].event, v);
    }
    check_expr(g.root, v);

    std::map<std::string, int> uses;
    for (const auto& id : g.root.literal_ids()) ++uses[id];
    for (const auto& [id, n] : uses) {
        if (!g.cause(id)) v.push_back("literal references unknown cause '" + id + "'");
        if (n > 1) v.push_back("cause '" + id + "' appears in " + std::to_string(n) + " literals");
    }
    for (const auto& c : g.causes) {
        if (!uses.count(c.id)) v.push_back("cause '" + c.id + "' is not referenced by the expression");
    }
    return v;
}

Json expr_to_json(const CauseExpr& e) {
    if (e.kind == CauseExpr::Kind::Literal) return Json{{"type", "lit"}, {"id", e.event_id}, {"negated", e.negated}};
    Json kids = Json::array();
    for (const auto& c : e.children) kids.push_back(expr_to_json(c));
    return Json{{"type", type_name(e.kind)}, {"children", std::move(kids)}};
}

Json graph_to_json(const CauseEffectGraph& g) {
    Json causes = Json::array();
    for (const auto& c : g.causes) causes.push_back(Json{{"id", c.id}, {"variable", c.variable}, {"condition", c.condition}});
    Json effects = Json::array();
    for (const auto& e : g.effects) {
        effects.push_back(Json{{"id", e.event.id},
                               {"variable", e.event.variable},
                               {"condition", e.event.condition},
                               {"negated", e.negated}});
    }
    return Json{{"causes", std::move(causes)}, {"effects", std::move(effects)}, {"root", expr_to_json(g.root)}};
}

CauseEffectGraph graph_from_json(const Json& doc) {
    CauseEffectGraph g;
    std::set<std::string> ids;
    const Json& causes = field(doc, "", "causes");
    if (!causes.is_array()) throw ParseError("/causes", "'causes' must be an array");
    for (std::size_t i = 0; i < causes.size(); ++i) {
        const std::string at = "/causes/" + std::to_string(i);
        EventNode n{string_field(causes[i], at, "id"), string_field(causes[i], at, "variable"),
                    string_field(causes[i], at, "condition")};
        if (!ids.insert(n.id).second) throw ParseError(at + "/id", "duplicate node id '" + n.id + "'");
        g.causes.push_back(std::move(n));
    }
    const Json& effects = field(doc, "", "effects");
    if (!effects.is_array()) throw ParseError("/effects", "'effects' must be an array");
    for (std::size_t i = 0; i < effects.size(); ++i) {
        const std::string at = "/effects/" + std::to_string(i);
        EffectNode e{{string_field(effects[i], at, "id"), string_field(effects[i], at, "variable"),
                      string_field(effects[i], at, "condition")},
                     effects[i].contains("negated") ? bool_field(effects[i], at, "negated") : false};
        g.effects.push_back(std::move(e));
    }
    g.root = expr_from_json(field(doc, "", "root"), "/root", ids);
    if (auto v = validate_graph(g); !v.empty()) throw ParseError("/", "invalid graph: " + join_lines(v));
    return g;
}

CauseEffectGraph graph_from_json_text(std::string_view text) {
    Json doc;
    try {
        doc = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError("byte " + std::to_string(e.byte), "malformed graph document");
    }
    return graph_from_json(doc);
}

}  // namespace cira
