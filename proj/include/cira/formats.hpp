#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cira/classifier.hpp"
#include "cira/errors.hpp"
#include "cira/testgen.hpp"

namespace cira {

enum class OutputFormat { Table, Csv, Json };

/// "table" | "csv" | "json"
std::optional<OutputFormat> parse_format(std::string_view name);
std::string_view to_string(OutputFormat format);

/// Table: bordered text table with an ID column and one column per variable.
/// Csv: header row plus one row per case, RFC 4180 quoting.
/// Json: the suite wire form, two-space indented, trailing newline.
std::string render_suite(const TestSuite& suite, OutputFormat format);

std::string render_classification(const Classification& c, OutputFormat format);
std::string render_labels(const LabeledSentence& labeled, OutputFormat format);
std::string render_graph(const CauseEffectGraph& graph, OutputFormat format);

/// Indented JSON with a trailing newline; the one serializer every
/// structured output goes through.
std::string render_json(const Json& doc);

/// Quotes a CSV field when it contains a comma, quote, line break or
/// leading/trailing space.
std::string csv_field(std::string_view field);

struct CorpusEntry {
    std::string id;
    std::string text;
    bool gold_causal = false;
    std::optional<std::vector<std::string>> gold_variables;
    // Rows are test cases, columns follow gold_variables (causes, then effects).
    std::optional<std::vector<std::vector<bool>>> gold_configurations;
    std::size_t line = 0;

    bool operator==(const CorpusEntry&) const = default;
};

class CorpusError : public ParseError {
public:
    enum class Code { Parse, DuplicateId, Validation };

    CorpusError(Code code, std::size_t line, const std::string& what)
        : ParseError("line " + std::to_string(line), what), code_(code), line_(line) {}
    Code code() const { return code_; }
    std::size_t line() const { return line_; }

private:
    Code code_;
    std::size_t line_;
};

/// One JSON record per line; blank lines are skipped. Line numbers are
/// 1-based and recorded on each entry.
std::vector<CorpusEntry> parse_corpus(std::string_view content);
std::vector<CorpusEntry> read_corpus(const std::filesystem::path& path);

Json corpus_entry_to_json(const CorpusEntry& entry);

}  // namespace cira
