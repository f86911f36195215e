#include "cira/lexicon.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace cira {
namespace detail {
extern const std::string_view kBuiltinLexicon;
}

namespace {

std::string_view trim(std::string_view s) {
    const auto ws = " \t\r\n";
    const auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(ws);
    return s.substr(b, e - b + 1);
}

bool matches_at(const Sentence& s, std::size_t at, std::size_t end, const Cue& cue) {
    if (at + cue.tokens.size() > end) return false;
    for (std::size_t k = 0; k < cue.tokens.size(); ++k) {
        if (to_lower(s.tokens[at + k].text) != cue.tokens[k]) return false;
    }
    return true;
}

}  // namespace

std::string_view to_string(CueKind kind) {
    switch (kind) {
        case CueKind::Conditional: return "conditional";
        case CueKind::Consequence: return "consequence";
        case CueKind::Conjunction: return "conjunction";
        case CueKind::Disjunction: return "disjunction";
        case CueKind::Negation: return "negation";
    }
    return "unknown";
}

std::optional<CueKind> parse_cue_kind(std::string_view name) {
    for (auto k : {CueKind::Conditional, CueKind::Consequence, CueKind::Conjunction, CueKind::Disjunction,
                   CueKind::Negation}) {
        if (to_string(k) == name) return k;
    }
    return std::nullopt;
}

bool CueMatch::has(CueKind kind) const {
    return std::any_of(cues.begin(), cues.end(), [kind](const Cue* c) { return c->kind == kind; });
}

std::optional<double> CueMatch::weight(CueKind kind) const {
    std::optional<double> w;
    for (const Cue* c : cues) {
        if (c->kind == kind) w = std::max(w.value_or(0.0), c->weight);
    }
    return w;
}

const CueLexicon& CueLexicon::builtin() {
    static const CueLexicon lexicon = parse(detail::kBuiltinLexicon);
    return lexicon;
}

std::string_view CueLexicon::builtin_text() { return detail::kBuiltinLexicon; }

void CueLexicon::add(CueKind kind, std::string_view text, double weight, std::size_t line) {
    if (!(weight > 0.0 && weight <= 1.0)) throw LexiconError(line, "weight must be in (0,1]");
    Cue cue;
    cue.kind = kind;
    cue.text = to_lower(text);
    for (auto& t : tokenize(cue.text).tokens) cue.tokens.push_back(std::move(t.text));
    if (cue.tokens.empty()) throw LexiconError(line, "empty cue text");
    cue.weight = weight;
    cues_.push_back(std::move(cue));
}

CueLexicon CueLexicon::parse(std::string_view content) {
    CueLexicon lex;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= content.size()) {
        auto nl = content.find('\n', pos);
        if (nl == std::string_view::npos) nl = content.size();
        const std::string_view line = trim(content.substr(pos, nl - pos));
        pos = nl + 1;
        ++line_no;
        if (line.empty() || line.front() == '#') continue;

        const auto s1 = line.find(';');
        const auto s2 = s1 == std::string_view::npos ? s1 : line.find(';', s1 + 1);
        if (s2 == std::string_view::npos || line.find(';', s2 + 1) != std::string_view::npos)
            throw LexiconError(line_no, "expected <kind>;<cue text>;<weight>");
        const auto kind = parse_cue_kind(trim(line.substr(0, s1)));
        if (!kind) throw LexiconError(line_no, "unknown cue kind '" + std::string(trim(line.substr(0, s1))) + "'");
        const auto weight_text = trim(line.substr(s2 + 1));
        double weight = 0.0;
        // from_chars for double is missing in older libstdc++ builds
        std::istringstream in{std::string(weight_text)};
        if (!(in >> weight) || !in.eof()) throw LexiconError(line_no, "invalid weight '" + std::string(weight_text) + "'");
        lex.add(*kind, trim(line.substr(s1 + 1, s2 - s1 - 1)), weight, line_no);
    }
    return lex;
}

CueLexicon CueLexicon::load(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw LexiconError(0, "cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

std::vector<CueMatch> CueLexicon::match(const Sentence& sentence) const {
    return match(sentence, 0, sentence.size());
}

std::vector<CueMatch> CueLexicon::match(const Sentence& sentence, std::size_t begin, std::size_t end) const {
    std::vector<CueMatch> out;
    end = std::min(end, sentence.size());
    std::size_t i = begin;
    while (i < end) {
        std::size_t best = 0;
        for (const auto& cue : cues_) {
            if (cue.tokens.size() > best && matches_at(sentence, i, end, cue)) best = cue.tokens.size();
        }
        if (best == 0) {
            ++i;
            continue;
        }
        CueMatch m;
        m.token_begin = i;
        m.token_end = i + best;
        for (const auto& cue : cues_) {
            if (cue.tokens.size() == best && matches_at(sentence, i, end, cue)) m.cues.push_back(&cue);
        }
        m.text = m.cues.front()->text;
        out.push_back(std::move(m));
        i += best;
    }
    return out;
}

}  // namespace cira
