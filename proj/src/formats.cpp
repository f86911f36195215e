#include "cira/formats.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace cira {
namespace {

std::string pad(const std::string& s, std::size_t width) {
    const std::size_t len = char_length(s);
    return s + std::string(width > len ? width - len : 0, ' ');
}

std::string render_table(const TestSuite& suite) {
    std::vector<std::string> header{"ID"};
    for (const auto& c : suite.columns) header.push_back(c.variable);
    std::vector<std::vector<std::string>> rows;
    for (const auto& tc : suite.cases) {
        std::vector<std::string> row{tc.id};
        row.insert(row.end(), tc.cells.begin(), tc.cells.end());
        rows.push_back(std::move(row));
    }

    std::vector<std::size_t> width(header.size(), 0);
    auto widen = [&](const std::vector<std::string>& row) {
        for (std::size_t i = 0; i < row.size() && i < width.size(); ++i) width[i] = std::max(width[i], char_length(row[i]));
    };
    widen(header);
    for (const auto& r : rows) widen(r);

    std::string rule = "+";
    for (auto w : width) rule += std::string(w + 2, '-') + "+";
    rule += "\n";
    auto line = [&](const std::vector<std::string>& row) {
        std::string out = "|";
        for (std::size_t i = 0; i < width.size(); ++i) out += " " + pad(i < row.size() ? row[i] : "", width[i]) + " |";
        return out + "\n";
    };

    std::string out = rule + line(header) + rule;
    for (const auto& r : rows) out += line(r);
    return out + rule;
}

std::string render_csv(const TestSuite& suite) {
    std::string out = "ID";
    for (const auto& c : suite.columns) out += "," + csv_field(c.variable);
    out += "\n";
    for (const auto& tc : suite.cases) {
        out += csv_field(tc.id);
        for (const auto& cell : tc.cells) out += "," + csv_field(cell);
        out += "\n";
    }
    return out;
}

CorpusEntry parse_entry(const std::string& text, std::size_t line) {
    using Code = CorpusError::Code;
    Json j;
    try {
        j = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw CorpusError(Code::Parse, line, std::string("malformed JSON record: ") + e.what());
    }
    if (!j.is_object()) throw CorpusError(Code::Parse, line, "record must be a JSON object");

    auto need = [&](const char* key) -> const Json& {
        if (!j.contains(key)) throw CorpusError(Code::Parse, line, std::string("missing \"") + key + "\" field");
        return j[key];
    };
    CorpusEntry e;
    e.line = line;
    const Json& id = need("id");
    const Json& t = need("text");
    const Json& gc = need("gold_causal");
    if (!id.is_string() || id.get<std::string>().empty())
        throw CorpusError(Code::Parse, line, "\"id\" must be a non-empty string");
    if (!t.is_string()) throw CorpusError(Code::Parse, line, "\"text\" must be a string");
    if (!gc.is_boolean()) throw CorpusError(Code::Parse, line, "\"gold_causal\" must be a boolean");
    e.id = id.get<std::string>();
    e.text = t.get<std::string>();
    e.gold_causal = gc.get<bool>();

    if (j.contains("gold_variables") && !j["gold_variables"].is_null()) {
        const Json& vars = j["gold_variables"];
        if (!vars.is_array()) throw CorpusError(Code::Parse, line, "\"gold_variables\" must be an array");
        std::vector<std::string> out;
        for (const auto& v : vars) {
            if (!v.is_string()) throw CorpusError(Code::Parse, line, "\"gold_variables\" entries must be strings");
            out.push_back(v.get<std::string>());
        }
        e.gold_variables = std::move(out);
    }
    if (j.contains("gold_configurations") && !j["gold_configurations"].is_null()) {
        const Json& rows = j["gold_configurations"];
        if (!rows.is_array()) throw CorpusError(Code::Parse, line, "\"gold_configurations\" must be an array");
        std::vector<std::vector<bool>> out;
        for (const auto& r : rows) {
            if (!r.is_array()) throw CorpusError(Code::Parse, line, "configuration rows must be arrays");
            std::vector<bool> row;
            for (const auto& v : r) {
                if (!v.is_boolean()) throw CorpusError(Code::Parse, line, "configuration values must be booleans");
                row.push_back(v.get<bool>());
            }
            out.push_back(std::move(row));
        }
        e.gold_configurations = std::move(out);
    }
    if (e.gold_configurations) {
        const std::size_t width = e.gold_variables ? e.gold_variables->size() : 0;
        for (const auto& row : *e.gold_configurations) {
            if (row.size() != width) {
                throw CorpusError(Code::Validation, line,
                                  "entry '" + e.id + "': configuration row has " + std::to_string(row.size()) +
                                      " values but there are " + std::to_string(width) + " gold variables");
            }
        }
    }
    return e;
}

}  // namespace

std::optional<OutputFormat> parse_format(std::string_view name) {
    if (name == "table") return OutputFormat::Table;
    if (name == "csv") return OutputFormat::Csv;
    if (name == "json") return OutputFormat::Json;
    return std::nullopt;
}

std::string_view to_string(OutputFormat format) {
    switch (format) {
        case OutputFormat::Table: return "table";
        case OutputFormat::Csv: return "csv";
        case OutputFormat::Json: return "json";
    }
    return "table";
}

std::string render_json(const Json& doc) { return doc.dump(2) + "\n"; }

std::string csv_field(std::string_view field) {
    const bool quote = field.find_first_of(",\"\r\n") != std::string_view::npos ||
                       (!field.empty() && (field.front() == ' ' || field.back() == ' '));
    if (!quote) return std::string(field);
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string render_suite(const TestSuite& suite, OutputFormat format) {
    switch (format) {
        case OutputFormat::Table: return render_table(suite);
        case OutputFormat::Csv: return render_csv(suite);
        case OutputFormat::Json: return render_json(suite_to_json(suite));
    }
    return {};
}

std::string render_classification(const Classification& c, OutputFormat format) {
    std::ostringstream conf;
    conf.precision(4);
    conf << c.confidence;
    switch (format) {
        case OutputFormat::Json: return render_json(classification_to_json(c));
        case OutputFormat::Csv: return "causal,confidence\n" + std::string(c.causal ? "true" : "false") + "," + conf.str() + "\n";
        case OutputFormat::Table: break;
    }
    std::string out = std::string(c.causal ? "causal" : "non-causal") + " (confidence " + conf.str() + ")\n";
    for (const auto& m : c.matched_cues) {
        out += "  " + std::string(to_string(m.kind)) + " cue \"" + m.cue + "\" at tokens [" + std::to_string(m.token_begin) +
               "," + std::to_string(m.token_end) + ")\n";
    }
    return out;
}

std::string render_labels(const LabeledSentence& ls, OutputFormat format) {
    if (format == OutputFormat::Json) return render_json(label_stage_to_json(ls));
    std::string out = format == OutputFormat::Csv ? "label,begin,end,text\n" : "";
    const Json wire = labels_to_json(ls);
    std::size_t width = 0;
    for (const auto& sp : ls.spans) width = std::max(width, to_string(sp.kind).size());
    for (std::size_t i = 0; i < ls.spans.size(); ++i) {
        const auto& sp = ls.spans[i];
        const std::string text = join_tokens(ls.sentence, sp.token_begin, sp.token_end);
        const std::string name = to_string(sp.kind);
        if (format == OutputFormat::Csv) {
            out += name + "," + std::to_string(wire[i]["begin"].get<std::size_t>()) + "," +
                   std::to_string(wire[i]["end"].get<std::size_t>()) + "," + csv_field(text) + "\n";
        } else {
            out += name + std::string(width - name.size() + 2, ' ') + text + "\n";
        }
    }
    return out;
}

std::string render_graph(const CauseEffectGraph& g, OutputFormat format) {
    switch (format) {
        case OutputFormat::Json: return render_json(graph_to_json(g));
        case OutputFormat::Csv: {
            std::string out = "id,family,variable,condition,negated\n";
            for (const auto& c : g.causes)
                out += c.id + ",cause," + csv_field(c.variable) + "," + csv_field(c.condition) + ",false\n";
            for (const auto& e : g.effects) {
                out += e.event.id + ",effect," + csv_field(e.event.variable) + "," + csv_field(e.event.condition) + "," +
                       (e.negated ? "true" : "false") + "\n";
            }
            return out;
        }
        case OutputFormat::Table: break;
    }
    std::string out;
    for (const auto& c : g.causes) out += c.id + ": " + c.variable + " | " + c.condition + "\n";
    for (const auto& e : g.effects) out += e.event.id + ": " + e.event.variable + " | " + e.event.condition + "\n";
    for (const auto& e : g.effects) out += e.event.id + " <- " + (e.negated ? "NOT " : "") + g.root.to_string() + "\n";
    return out;
}

std::vector<CorpusEntry> parse_corpus(std::string_view content) {
    std::vector<CorpusEntry> out;
    std::set<std::string> seen;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos < content.size()) {
        auto nl = content.find('\n', pos);
        if (nl == std::string_view::npos) nl = content.size();
        std::string line(content.substr(pos, nl - pos));
        pos = nl + 1;
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        CorpusEntry e = parse_entry(line, line_no);
        if (!seen.insert(e.id).second)
            throw CorpusError(CorpusError::Code::DuplicateId, line_no, "duplicate entry id '" + e.id + "'");
        out.push_back(std::move(e));
    }
    return out;
}

std::vector<CorpusEntry> read_corpus(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open corpus file " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_corpus(buf.str());
}

Json corpus_entry_to_json(const CorpusEntry& e) {
    Json j{{"id", e.id}, {"text", e.text}, {"gold_causal", e.gold_causal}};
    if (e.gold_variables) j["gold_variables"] = *e.gold_variables;
    if (e.gold_configurations) j["gold_configurations"] = *e.gold_configurations;
    return j;
}

}  // namespace cira
