#include "cira/labeler.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdint>
#include <map>

namespace cira {
namespace {

constexpr std::array<std::string_view, 16> kAuxiliaries = {
    "is", "are", "was", "were", "has", "have", "had", "can", "shall", "will", "must", "does", "do", "did",
    "should", "may"};

constexpr std::array<std::string_view, 21> kDeterminers = {
    "the", "a",   "an",  "this", "that", "these", "those", "his",  "her", "its", "their",
    "our", "your", "my", "each", "every", "all",  "some",  "any",  "no",  "another"};

const std::map<std::string_view, std::string_view> kContractions = {
    {"doesn", "does"}, {"don", "do"},       {"didn", "did"},       {"isn", "is"},       {"aren", "are"},
    {"wasn", "was"},   {"weren", "were"},   {"hasn", "has"},       {"haven", "have"},   {"hadn", "had"},
    {"can", "can"},    {"won", "will"},     {"shouldn", "should"}, {"mustn", "must"},   {"couldn", "could"},
    {"wouldn", "would"}, {"shan", "shall"}, {"mightn", "might"},   {"needn", "need"},
};

template <std::size_t N>
bool contains(const std::array<std::string_view, N>& list, std::string_view word) {
    return std::find(list.begin(), list.end(), word) != list.end();
}

bool ends_with(std::string_view s, std::string_view suffix) {
    return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

bool is_word(const Token& t) {
    const auto c = static_cast<unsigned char>(t.text.front());
    return c >= 0x80 || std::isalnum(c);
}

bool is_comma(const Token& t) { return t.text == "," || t.text == "\xEF\xBC\x8C"; }

bool is_alpha_word(std::string_view w) {
    return std::all_of(w.begin(), w.end(), [](char c) { return (c >= 'a' && c <= 'z'); });
}

struct Region {
    std::size_t begin = 0;
    std::size_t end = 0;
    bool empty() const { return begin >= end; }
};

// Drops leading/trailing punctuation from a region.
Region trim_punct(const Sentence& s, Region r) {
    while (!r.empty() && !is_word(s.tokens[r.begin])) ++r.begin;
    while (!r.empty() && !is_word(s.tokens[r.end - 1])) --r.end;
    return r;
}

class Labeling {
public:
    Labeling(const Sentence& s, const CueLexicon& lex) : s_(s), lex_(lex), matches_(lex.match(s)) {}

    LabeledSentence run() {
        const auto cond = std::find_if(matches_.begin(), matches_.end(),
                                       [](const CueMatch& m) { return m.has(CueKind::Conditional); });
        if (cond == matches_.end()) throw LabelError(LabelError::Code::NotCausal, "no conditional cue in sentence");

        const Region content = trim_punct(s_, {0, s_.size()});
        Region cause, effect;
        keyword(cond->token_begin, cond->token_end);
        if (cond->has(CueKind::Negation)) add(LabelKind::Negation, cond->token_begin, cond->token_end);

        if (cond->token_begin <= content.begin) {
            const auto cons = std::find_if(std::next(cond), matches_.end(),
                                           [](const CueMatch& m) { return m.has(CueKind::Consequence); });
            if (cons != matches_.end()) {
                keyword(cons->token_begin, cons->token_end);
                cause = {cond->token_end, cons->token_begin};
                effect = {cons->token_end, content.end};
            } else if (auto comma = split_comma({cond->token_end, content.end})) {
                cause = {cond->token_end, *comma};
                effect = {*comma + 1, content.end};
            } else {
                throw LabelError(LabelError::Code::NoEffect, "no consequence region after the condition");
            }
        } else {
            effect = {content.begin, cond->token_begin};
            cause = {cond->token_end, content.end};
        }
        cause = trim_punct(s_, cause);
        effect = trim_punct(s_, effect);
        if (cause.empty()) throw LabelError(LabelError::Code::NoCause, "empty cause region");
        if (effect.empty()) throw LabelError(LabelError::Code::NoEffect, "empty effect region");

        segment(cause, EventFamily::Cause);
        segment(effect, EventFamily::Effect);
        // A region made only of cues and punctuation yields no event.
        if (causes_ == 0) throw LabelError(LabelError::Code::NoCause, "cause region has no event text");
        if (effects_ == 0) throw LabelError(LabelError::Code::NoEffect, "effect region has no event text");

        auto level = [](LabelKind k) {
            if (is_event(k)) return 0;
            if (is_junctor(k)) return 1;
            switch (k) {
                case LabelKind::Negation: return 2;
                case LabelKind::Keyword: return 3;
                case LabelKind::Variable: return 4;
                default: return 5;
            }
        };
        std::stable_sort(out_.begin(), out_.end(), [&](const LabelSpan& a, const LabelSpan& b) {
            if (a.token_begin != b.token_begin) return a.token_begin < b.token_begin;
            return level(a.kind) < level(b.kind);
        });
        return LabeledSentence{s_, std::move(out_)};
    }

private:
    void add(LabelKind kind, std::size_t b, std::size_t e) { out_.push_back(LabelSpan{kind, b, e}); }
    void keyword(std::size_t b, std::size_t e) { add(LabelKind::Keyword, b, e); }

    const CueMatch* match_at(std::size_t token, const std::vector<CueMatch>& ms) const {
        for (const auto& m : ms) {
            if (m.token_begin <= token && token < m.token_end) return &m;
        }
        return nullptr;
    }

    static bool is_junctor_match(const CueMatch* m) {
        return m && (m->has(CueKind::Conjunction) || m->has(CueKind::Disjunction));
    }

    // Last comma in `r` whose neighbours are not junctors.
    std::optional<std::size_t> split_comma(Region r) const {
        const auto ms = lex_.match(s_, r.begin, r.end);
        std::optional<std::size_t> found;
        for (std::size_t i = r.begin; i < r.end; ++i) {
            if (!is_comma(s_.tokens[i])) continue;
            const bool before = i > r.begin && is_junctor_match(match_at(i - 1, ms));
            const bool after = i + 1 < r.end && is_junctor_match(match_at(i + 1, ms));
            if (!before && !after) found = i;
        }
        return found;
    }

    struct Separator {
        std::size_t begin;
        std::size_t end;
        std::optional<LabelKind> junctor;
    };

    void segment(Region r, EventFamily family) {
        const auto ms = lex_.match(s_, r.begin, r.end);

        std::vector<Separator> seps;
        for (const auto& m : ms) {
            if (m.has(CueKind::Disjunction)) {
                seps.push_back({m.token_begin, m.token_end, LabelKind::Disjunction});
            } else if (m.has(CueKind::Conjunction)) {
                seps.push_back({m.token_begin, m.token_end, LabelKind::Conjunction});
            }
        }
        std::vector<Separator> commas;
        for (std::size_t i = r.begin; i < r.end; ++i) {
            if (!is_comma(s_.tokens[i])) continue;
            const bool before = i > r.begin && is_junctor_match(match_at(i - 1, ms));
            const bool after = i + 1 < r.end && is_junctor_match(match_at(i + 1, ms));
            if (before || after) {
                commas.push_back({i, i + 1, std::nullopt});
                continue;
            }
            // List comma: takes the kind of the next junctor in the region.
            const auto next = std::find_if(seps.begin(), seps.end(), [i](const Separator& sp) { return sp.begin > i; });
            if (next != seps.end()) commas.push_back({i, i + 1, next->junctor});
        }
        seps.insert(seps.end(), commas.begin(), commas.end());
        std::sort(seps.begin(), seps.end(), [](const Separator& a, const Separator& b) { return a.begin < b.begin; });

        // Events between separators; remember which labeled separator precedes each.
        std::optional<Separator> pending;
        bool have_event = false;
        std::size_t cursor = r.begin;
        auto close = [&](std::size_t end) {
            if (auto ev = event_in({cursor, end}, ms)) {
                if (pending && have_event) add(*pending->junctor, pending->begin, pending->end);
                emit_event(*ev, family);
                have_event = true;
                pending.reset();
            }
        };
        for (const auto& sep : seps) {
            close(sep.begin);
            if (sep.junctor && !pending) pending = sep;
            cursor = sep.end;
        }
        close(r.end);
    }

    // Strips leading negation/keyword cues and punctuation, labeling them.
    std::optional<Region> event_in(Region r, const std::vector<CueMatch>& ms) {
        bool changed = true;
        while (changed && !r.empty()) {
            changed = false;
            r = trim_punct(s_, r);
            if (r.empty()) break;
            const CueMatch* m = match_at(r.begin, ms);
            if (!m || m->token_begin != r.begin || m->token_end > r.end) break;
            if (m->has(CueKind::Conditional) || m->has(CueKind::Consequence)) {
                keyword(m->token_begin, m->token_end);
                if (m->has(CueKind::Negation)) add(LabelKind::Negation, m->token_begin, m->token_end);
                r.begin = m->token_end;
                changed = true;
            } else if (m->has(CueKind::Negation)) {
                add(LabelKind::Negation, m->token_begin, m->token_end);
                r.begin = m->token_end;
                changed = true;
            }
        }
        if (r.empty()) return std::nullopt;
        // Negations inside the event keep their own label.
        for (const auto& m : ms) {
            if (m.token_begin >= r.begin && m.token_end <= r.end && m.has(CueKind::Negation))
                add(LabelKind::Negation, m.token_begin, m.token_end);
        }
        return r;
    }

    void emit_event(Region ev, EventFamily family) {
        int& count = family == EventFamily::Cause ? causes_ : effects_;
        if (count == kMaxEventsPerFamily)
            throw LabelError(LabelError::Code::TooManyEvents, "more than 9 events in one family");
        add(event_label(family, ++count), ev.begin, ev.end);

        auto negated = [&](std::size_t i) {
            return std::any_of(out_.begin(), out_.end(), [i](const LabelSpan& sp) {
                return sp.kind == LabelKind::Negation && sp.token_begin <= i && i < sp.token_end;
            });
        };
        std::optional<std::size_t> cond;
        std::optional<std::string> prev;
        for (std::size_t i = ev.begin; i < ev.end && !cond; ++i) {
            if (negated(i)) continue;
            const std::string w = to_lower(s_.tokens[i].text);
            const bool contracted = contraction_base(w) && i + 1 < ev.end && negated(i + 1);
            if (contains(kAuxiliaries, w) || contracted) {
                cond = i;
            } else if (i > ev.begin && w.size() >= 3 && is_alpha_word(w) && !contains(kDeterminers, w) &&
                       (ends_with(w, "s") || ends_with(w, "ed") || ends_with(w, "ing")) &&
                       !(prev && contains(kDeterminers, *prev))) {
                cond = i;
            }
            prev = w;
        }
        if (!cond) {
            add(LabelKind::Variable, ev.begin, ev.end);
            return;
        }
        std::size_t c = *cond;
        while (c > ev.begin && negated(c - 1)) --c;
        if (c > ev.begin) add(LabelKind::Variable, ev.begin, c);
        add(LabelKind::Condition, c, ev.end);
    }

    const Sentence& s_;
    const CueLexicon& lex_;
    std::vector<CueMatch> matches_;
    std::vector<LabelSpan> out_;
    int causes_ = 0;
    int effects_ = 0;
};

}  // namespace

std::string to_string(LabelKind kind) {
    if (is_event(kind)) {
        return (family_of(kind) == EventFamily::Cause ? "CAUSE_" : "EFFECT_") + std::to_string(event_number(kind));
    }
    switch (kind) {
        case LabelKind::Conjunction: return "CONJUNCTION";
        case LabelKind::Disjunction: return "DISJUNCTION";
        case LabelKind::Negation: return "NEGATION";
        case LabelKind::Variable: return "VARIABLE";
        case LabelKind::Condition: return "CONDITION";
        case LabelKind::Keyword: return "KEYWORD";
        default: return "UNKNOWN";
    }
}

std::optional<LabelKind> parse_label_kind(std::string_view name) {
    for (int k = 0; k <= static_cast<int>(LabelKind::Keyword); ++k) {
        if (to_string(static_cast<LabelKind>(k)) == name) return static_cast<LabelKind>(k);
    }
    return std::nullopt;
}

bool is_event(LabelKind kind) { return kind <= LabelKind::Effect9; }
bool is_junctor(LabelKind kind) { return kind == LabelKind::Conjunction || kind == LabelKind::Disjunction; }

EventFamily family_of(LabelKind kind) { return kind <= LabelKind::Cause9 ? EventFamily::Cause : EventFamily::Effect; }

int event_number(LabelKind kind) {
    const int k = static_cast<int>(kind);
    return family_of(kind) == EventFamily::Cause ? k + 1 : k - static_cast<int>(LabelKind::Effect1) + 1;
}

LabelKind event_label(EventFamily family, int number) {
    const int base = family == EventFamily::Cause ? 0 : static_cast<int>(LabelKind::Effect1);
    return static_cast<LabelKind>(base + number - 1);
}

std::vector<LabelSpan> LabeledSentence::spans_of(LabelKind kind) const {
    std::vector<LabelSpan> out;
    std::copy_if(spans.begin(), spans.end(), std::back_inserter(out), [kind](const LabelSpan& s) { return s.kind == kind; });
    return out;
}

std::optional<LabelSpan> LabeledSentence::event(EventFamily family, int number) const {
    const LabelKind kind = event_label(family, number);
    for (const auto& s : spans) {
        if (s.kind == kind) return s;
    }
    return std::nullopt;
}

bool LabeledSentence::is_labeled(std::size_t index, LabelKind kind) const {
    return std::any_of(spans.begin(), spans.end(), [&](const LabelSpan& s) {
        return s.kind == kind && s.token_begin <= index && index < s.token_end;
    });
}

std::string LabelError::reason() const {
    switch (code_) {
        case Code::NotCausal: return "NOT_CAUSAL";
        case Code::NoCause: return "NO_CAUSE";
        case Code::NoEffect: return "NO_EFFECT";
        case Code::TooManyEvents: return "TOO_MANY_EVENTS";
    }
    return "UNKNOWN";
}

LabeledSentence RuleLabeler::label(const Sentence& sentence) const { return Labeling(sentence, *lexicon_).run(); }

LabeledSentence label(const Sentence& sentence, const CueLexicon& lexicon) { return RuleLabeler(lexicon).label(sentence); }

std::optional<std::string_view> contraction_base(std::string_view lowercase_word) {
    const auto it = kContractions.find(lowercase_word);
    if (it == kContractions.end()) return std::nullopt;
    return it->second;
}

std::vector<std::string> validate_labels(const LabeledSentence& labeled) {
    std::vector<std::string> v;
    const std::size_t n = labeled.sentence.size();
    auto describe = [](const LabelSpan& s) {
        return to_string(s.kind) + " [" + std::to_string(s.token_begin) + "," + std::to_string(s.token_end) + ")";
    };

    std::vector<LabelSpan> events;
    std::vector<LabelSpan> in_range;
    for (const auto& s : labeled.spans) {
        if (!(s.token_begin < s.token_end && s.token_end <= n)) {
            v.push_back("span " + describe(s) + " is outside the sentence's " + std::to_string(n) + " tokens");
            continue;
        }
        in_range.push_back(s);
        if (is_event(s.kind)) events.push_back(s);
    }

    for (std::size_t i = 0; i < events.size(); ++i) {
        for (std::size_t j = i + 1; j < events.size(); ++j) {
            if (events[i].kind == events[j].kind) {
                v.push_back("event label " + to_string(events[i].kind) + " is used more than once");
            } else if (events[i].overlaps(events[j])) {
                v.push_back("event spans " + describe(events[i]) + " and " + describe(events[j]) + " overlap");
            }
        }
    }

    for (auto family : {EventFamily::Cause, EventFamily::Effect}) {
        const char* name = family == EventFamily::Cause ? "CAUSE" : "EFFECT";
        int max_number = 0;
        for (const auto& e : events) {
            if (family_of(e.kind) == family) max_number = std::max(max_number, event_number(e.kind));
        }
        if (max_number == 0) {
            v.push_back(std::string("no ") + name + "_1 span");
            continue;
        }
        std::optional<LabelSpan> prev;
        for (int k = 1; k <= max_number; ++k) {
            const auto ev = labeled.event(family, k);
            if (!ev || ev->token_end > n || ev->token_begin >= ev->token_end) {
                v.push_back(std::string(name) + " numbering is not contiguous: " + name + "_" + std::to_string(k) + " missing");
                continue;
            }
            if (prev && ev->token_begin < prev->token_begin)
                v.push_back(to_string(ev->kind) + " begins before " + to_string(prev->kind));
            prev = ev;
        }
    }

    for (const auto& s : in_range) {
        if (s.kind != LabelKind::Variable && s.kind != LabelKind::Condition) continue;
        const auto holders = std::count_if(events.begin(), events.end(), [&](const LabelSpan& e) { return e.contains(s); });
        if (holders == 0) v.push_back(describe(s) + " is not contained in any event span");
        if (holders > 1) v.push_back(describe(s) + " is contained in more than one event span");
    }
    for (const auto& e : events) {
        for (auto kind : {LabelKind::Variable, LabelKind::Condition}) {
            const auto count = std::count_if(in_range.begin(), in_range.end(),
                                             [&](const LabelSpan& s) { return s.kind == kind && e.contains(s); });
            if (count > 1) v.push_back(describe(e) + " has more than one " + to_string(kind) + " span");
        }
    }

    for (const auto& j : in_range) {
        if (!is_junctor(j.kind)) continue;
        std::optional<LabelSpan> before, after;
        bool inside = false;
        for (const auto& e : events) {
            if (e.overlaps(j)) inside = true;
            if (e.token_end <= j.token_begin && (!before || e.token_end > before->token_end)) before = e;
            if (e.token_begin >= j.token_end && (!after || e.token_begin < after->token_begin)) after = e;
        }
        if (inside || !before || !after || family_of(before->kind) != family_of(after->kind))
            v.push_back(describe(j) + " does not lie between two events of the same family");
    }
    return v;
}

Json labels_to_json(const LabeledSentence& labeled) {
    const Sentence& s = labeled.sentence;
    Json arr = Json::array();
    for (const auto& sp : labeled.spans) {
        arr.push_back(Json{{"label", to_string(sp.kind)},
                           {"begin", char_offset(s.raw, s.tokens.at(sp.token_begin).begin)},
                           {"end", char_offset(s.raw, s.tokens.at(sp.token_end - 1).end)}});
    }
    return arr;
}

Json label_stage_to_json(const LabeledSentence& labeled) {
    return Json{{"text", labeled.sentence.raw},
                {"tokens", tokens_to_json(labeled.sentence)},
                {"labels", labels_to_json(labeled)}};
}

LabeledSentence labels_from_json(const Sentence& sentence, const Json& labels) {
    if (!labels.is_array()) throw ParseError("/", "labels must be an array");
    LabeledSentence out{sentence, {}};
    for (std::size_t i = 0; i < labels.size(); ++i) {
        const std::string at = "/" + std::to_string(i);
        const Json& item = labels[i];
        auto offset_ok = [&](const char* key) {
            return item.contains(key) && item[key].is_number_integer() && item[key].get<std::int64_t>() >= 0;
        };
        if (!item.is_object() || !item.contains("label") || !item["label"].is_string() || !offset_ok("begin") ||
            !offset_ok("end"))
            throw ParseError(at, "label entries need string 'label' and unsigned 'begin'/'end'");
        const auto kind = parse_label_kind(item["label"].get<std::string>());
        if (!kind) throw ParseError(at + "/label", "unknown label '" + item["label"].get<std::string>() + "'");
        const auto begin = item["begin"].get<std::size_t>();
        const auto end = item["end"].get<std::size_t>();
        std::optional<std::size_t> tb, te;
        for (const auto& t : sentence.tokens) {
            if (char_offset(sentence.raw, t.begin) == begin) tb = t.index;
            if (char_offset(sentence.raw, t.end) == end) te = t.index + 1;
        }
        if (!tb) throw ParseError(at + "/begin", "offset " + std::to_string(begin) + " is not a token start");
        if (!te) throw ParseError(at + "/end", "offset " + std::to_string(end) + " is not a token end");
        out.spans.push_back(LabelSpan{*kind, *tb, *te});
    }
    return out;
}

}  // namespace cira
