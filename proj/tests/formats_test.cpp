#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "cira/formats.hpp"
#include "support/oracle.hpp"

namespace {

using namespace cira;

constexpr const char* kButtonSentence =
    "When the red button is pushed or the power fails then the system shuts down.";

TestSuite button_suite() { return generate_suite(build_graph(label(tokenize(kButtonSentence)))); }

// Minimal RFC 4180 reader, enough to check quoting.
std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows(1);
    std::string field;
    bool quoted = false;
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (quoted) {
            if (c == '"' && i + 1 < text.size() && text[i + 1] == '"') {
                field += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                field += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            rows.back().push_back(field);
            field.clear();
        } else if (c == '\n') {
            rows.back().push_back(field);
            field.clear();
            rows.emplace_back();
        } else {
            field += c;
        }
    }
    if (rows.back().empty()) rows.pop_back();
    return rows;
}

TEST(Formats, ParseFormat) {
    EXPECT_EQ(parse_format("table"), OutputFormat::Table);
    EXPECT_EQ(parse_format("csv"), OutputFormat::Csv);
    EXPECT_EQ(parse_format("json"), OutputFormat::Json);
    EXPECT_FALSE(parse_format("xml"));
    EXPECT_EQ(to_string(OutputFormat::Csv), "csv");
}

TEST(RenderSuite, Table) {
    const std::string expected =
        "+-----+----------------+-----------+----------------+\n"
        "| ID  | the red button | the power | the system     |\n"
        "+-----+----------------+-----------+----------------+\n"
        "| TC1 | is pushed      | not fails | shuts down     |\n"
        "| TC2 | not is pushed  | fails     | shuts down     |\n"
        "| TC3 | not is pushed  | not fails | not shuts down |\n"
        "+-----+----------------+-----------+----------------+\n";
    EXPECT_EQ(render_suite(button_suite(), OutputFormat::Table), expected);
}

TEST(RenderSuite, Csv) {
    EXPECT_EQ(render_suite(button_suite(), OutputFormat::Csv),
              "ID,the red button,the power,the system\n"
              "TC1,is pushed,not fails,shuts down\n"
              "TC2,not is pushed,fails,shuts down\n"
              "TC3,not is pushed,not fails,not shuts down\n");
}

TEST(RenderSuite, JsonIsWireForm) {
    const auto s = button_suite();
    const std::string out = render_suite(s, OutputFormat::Json);
    EXPECT_EQ(out.back(), '\n');
    EXPECT_EQ(Json::parse(out), suite_to_json(s));
    EXPECT_EQ(out, render_json(suite_to_json(s)));
}

TEST(RenderSuite, TableAlignsUnicode) {
    auto s = button_suite();
    s.columns[0].variable = "die Tür";
    const std::string out = render_suite(s, OutputFormat::Table);
    std::istringstream in(out);
    std::string line;
    std::size_t width = 0;
    while (std::getline(in, line)) {
        if (width == 0) width = char_length(line);
        EXPECT_EQ(char_length(line), width) << line;
    }
}

TEST(CsvField, Quoting) {
    EXPECT_EQ(csv_field("plain"), "plain");
    EXPECT_EQ(csv_field("a,b"), "\"a,b\"");
    EXPECT_EQ(csv_field("say \"hi\""), "\"say \"\"hi\"\"\"");
    EXPECT_EQ(csv_field("line\nbreak"), "\"line\nbreak\"");
    EXPECT_EQ(csv_field(" padded"), "\" padded\"");
}

TEST(RenderSuite, CsvReparsesToCells) {
    std::mt19937 rng(3);
    for (int i = 0; i < 100; ++i) {
        auto g = oracle::random_graph(rng, 1 + i % 10);
        g.causes[0].condition = "is \"odd\", really";
        g.effects[0].event.variable = "x,y";
        const auto s = generate_suite(g);
        const auto rows = parse_csv(render_suite(s, OutputFormat::Csv));
        ASSERT_EQ(rows.size(), s.cases.size() + 1);
        EXPECT_EQ(rows[0][0], "ID");
        for (std::size_t c = 0; c < s.columns.size(); ++c) EXPECT_EQ(rows[0][c + 1], s.columns[c].variable);
        for (std::size_t r = 0; r < s.cases.size(); ++r) {
            EXPECT_EQ(rows[r + 1][0], s.cases[r].id);
            for (std::size_t c = 0; c < s.columns.size(); ++c) EXPECT_EQ(rows[r + 1][c + 1], s.cases[r].cells[c]);
        }
    }
}

TEST(RenderOther, StructuredOutputsParse) {
    const auto l = label(tokenize(kButtonSentence));
    EXPECT_EQ(Json::parse(render_labels(l, OutputFormat::Json)), label_stage_to_json(l));
    const auto g = build_graph(l);
    EXPECT_EQ(Json::parse(render_graph(g, OutputFormat::Json)), graph_to_json(g));
    const auto c = classify(tokenize(kButtonSentence));
    EXPECT_EQ(Json::parse(render_classification(c, OutputFormat::Json)), classification_to_json(c));
    EXPECT_EQ(render_classification(c, OutputFormat::Csv).substr(0, 18), "causal,confidence\n");
    EXPECT_EQ(parse_csv(render_labels(l, OutputFormat::Csv)).size(), l.spans.size() + 1);
    EXPECT_NE(render_graph(g, OutputFormat::Table).find("(C1 OR C2)"), std::string::npos);
}

CorpusError::Code corpus_error(const std::string& content, std::size_t expected_line) {
    try {
        parse_corpus(content);
    } catch (const CorpusError& e) {
        EXPECT_EQ(e.line(), expected_line) << content;
        return e.code();
    }
    ADD_FAILURE() << "no CorpusError for: " << content;
    return CorpusError::Code::Parse;
}

TEST(Corpus, ParsesRecords) {
    const auto entries = parse_corpus(
        "{\"id\":\"a\",\"text\":\"If x then y.\",\"gold_causal\":true,\"gold_variables\":[\"x\",\"y\"],"
        "\"gold_configurations\":[[true,true],[false,false]]}\n"
        "\n"
        "{\"id\":\"b\",\"text\":\"Blue.\",\"gold_causal\":false}\n");
    ASSERT_EQ(entries.size(), 2u);
    EXPECT_EQ(entries[0].line, 1u);
    EXPECT_EQ(entries[1].line, 3u);
    EXPECT_EQ(entries[0].gold_variables, (std::vector<std::string>{"x", "y"}));
    EXPECT_FALSE(entries[1].gold_configurations);
    EXPECT_EQ(parse_corpus(corpus_entry_to_json(entries[0]).dump()), std::vector<CorpusEntry>{entries[0]});
}

TEST(Corpus, Errors) {
    const std::string ok = "{\"id\":\"a\",\"text\":\"t\",\"gold_causal\":false}\n";
    EXPECT_EQ(corpus_error(ok + "{not json\n", 2), CorpusError::Code::Parse);
    EXPECT_EQ(corpus_error(ok + "{\"id\":\"b\",\"gold_causal\":false}\n", 2), CorpusError::Code::Parse);
    EXPECT_EQ(corpus_error(ok + "\n" + ok, 3), CorpusError::Code::DuplicateId);
    EXPECT_EQ(corpus_error("{\"id\":\"a\",\"text\":\"t\",\"gold_causal\":\"yes\"}\n", 1), CorpusError::Code::Parse);
    EXPECT_EQ(corpus_error("{\"id\":\"z\",\"text\":\"t\",\"gold_causal\":true,\"gold_variables\":[\"x\"],"
                           "\"gold_configurations\":[[true,false]]}\n",
                           1),
              CorpusError::Code::Validation);
}

TEST(Corpus, ValidationNamesEntry) {
    try {
        parse_corpus("{\"id\":\"z9\",\"text\":\"t\",\"gold_causal\":true,\"gold_variables\":[\"x\"],"
                     "\"gold_configurations\":[[true,false]]}\n");
        FAIL();
    } catch (const CorpusError& e) {
        EXPECT_NE(std::string(e.what()).find("z9"), std::string::npos);
        EXPECT_EQ(e.position(), "line 1");
    }
}

TEST(Corpus, MissingFile) { EXPECT_THROW(read_corpus("/nonexistent/corpus.jsonl"), std::runtime_error); }

TEST(Corpus, BundledFileLoads) {
    const auto entries = read_corpus(std::string(CIRA_DATA_DIR) + "/corpus.jsonl");
    EXPECT_EQ(entries.size(), 20u);
}

}  // namespace
