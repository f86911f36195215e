#include "cira/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"

#include "cira/eval.hpp"
#include "cira/pipeline.hpp"
#include "cira/service.hpp"

namespace cira {
namespace {

struct StageOptions {
    std::string text;
    std::string file;
    std::string format = "table";
    std::string out;
    std::string lexicon;
};

struct EvalOptions {
    std::string corpus;
    std::string report;
    std::string format = "table";
    std::string out;
    std::string lexicon;
};

struct ServeOptions {
    std::string host;
    int port = 0;
    std::string lexicon;
};

struct Outcome {
    int code = kExitOk;
    std::string output;
    std::string diagnostic;
};

Outcome process(const std::string& command, std::string_view text, const CueLexicon& lexicon, OutputFormat format) {
    const PipelineResult r = run_pipeline(text, lexicon, RuleLabeler(lexicon));
    if (command == "classify") return {kExitOk, render_classification(r.classification, format), {}};
    if (command == "pipeline") return {kExitOk, render_pipeline(r, format), {}};

    if (!r.classification.causal) return {kExitNotCausal, {}, "NOT_CAUSAL"};
    if (command == "label" && r.labels) return {kExitOk, render_labels(*r.labels, format), {}};
    if (command == "graph" && r.graph) return {kExitOk, render_graph(*r.graph, format), {}};
    if (command == "testsuite" && r.suite) return {kExitOk, render_suite(*r.suite, format), {}};
    const StageError e = r.error.value_or(StageError{"", "INTERNAL", "pipeline stopped early"});
    return {kExitUnparsed, {}, e.reason + ": " + e.message};
}

std::optional<CueLexicon> load_lexicon(const std::string& path, std::ostream& err) {
    if (path.empty()) return CueLexicon::builtin();
    try {
        return CueLexicon::load(path);
    } catch (const LexiconError& e) {
        err << "error: " << e.what() << "\n";
        return std::nullopt;
    }
}

// Writes to --out when given, else to `out`.
bool emit(const std::string& path, const std::string& content, std::ostream& out, std::ostream& err) {
    if (path.empty()) {
        out << content;
        return true;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        err << "error: cannot write " << path << "\n";
        return false;
    }
    f << content;
    return true;
}

int run_stage(const std::string& command, const StageOptions& o, std::ostream& out, std::ostream& err) {
    if (o.text.empty() == o.file.empty()) {
        err << "error: give exactly one of a sentence argument or --file\n";
        return kExitUsage;
    }
    const auto lexicon = load_lexicon(o.lexicon, err);
    if (!lexicon) return kExitUsage;
    const OutputFormat format = *parse_format(o.format);

    if (!o.file.empty()) {
        std::ifstream in(o.file, std::ios::binary);
        if (!in) {
            err << "error: cannot open " << o.file << ": file not found\n";
            return kExitUsage;
        }
        std::string content;
        int code = kExitOk;
        std::string line;
        std::size_t line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (line.find_first_not_of(" \t") == std::string::npos) continue;
            const Outcome r = process(command, line, *lexicon, format);
            content += "# line " + std::to_string(line_no) + "\n";
            content += r.code == kExitOk ? r.output : r.diagnostic + "\n";
            if (!r.diagnostic.empty()) err << "line " << line_no << ": " << r.diagnostic << "\n";
            code = std::max(code, r.code);
        }
        return emit(o.out, content, out, err) ? code : kExitUsage;
    }

    const Outcome r = process(command, o.text, *lexicon, format);
    if (!r.diagnostic.empty()) err << r.diagnostic << "\n";
    if (r.code != kExitOk) return r.code;
    return emit(o.out, r.output, out, err) ? kExitOk : kExitUsage;
}

int run_eval(const EvalOptions& o, std::ostream& out, std::ostream& err) {
    const auto lexicon = load_lexicon(o.lexicon, err);
    if (!lexicon) return kExitUsage;
    std::vector<CorpusEntry> entries;
    try {
        entries = read_corpus(o.corpus);
    } catch (const CorpusError& e) {
        err << "error: " << o.corpus << ": " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::runtime_error& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    EvalReport report;
    try {
        report = run_evaluation(entries, *lexicon, RuleLabeler(*lexicon));
    } catch (const EvalError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    const std::string json = render_json(eval_report_to_json(report));
    if (!o.report.empty()) {
        std::ofstream f(o.report, std::ios::binary);
        if (!f) {
            err << "error: cannot write " << o.report << "\n";
            return kExitUsage;
        }
        f << json;
    }
    const std::string text = *parse_format(o.format) == OutputFormat::Json ? json : eval_summary(report);
    return emit(o.out, text, out, err) ? kExitOk : kExitUsage;
}

int run_serve(const ServeOptions& o, std::ostream& err) {
    const auto lexicon = load_lexicon(o.lexicon, err);
    if (!lexicon) return kExitUsage;
    std::string host = o.host;
    if (host.empty()) host = std::getenv("CIRA_HOST") ? std::getenv("CIRA_HOST") : "127.0.0.1";
    int port = o.port;
    if (port == 0) {
        const char* env = std::getenv("CIRA_PORT");
        port = env ? std::atoi(env) : 8080;
    }
    if (port <= 0 || port > 65535) {
        err << "error: invalid port " << port << "\n";
        return kExitUsage;
    }
    const RuleLabeler labeler(*lexicon);
    const Service service(*lexicon, labeler, ServiceOptions::from_env());
    HttpServer server(service);
    if (server.bind(host, port) < 0) {
        err << "error: cannot bind " << host << ":" << port << "\n";
        return kExitFailure;
    }
    err << "cira " << version() << " listening on http://" << host << ":" << port << "\n";
    return server.listen() ? kExitOk : kExitFailure;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Turns conditional requirement sentences into cause-effect graphs and test case descriptions", "cira"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(version()));

    const std::vector<std::string> formats{"table", "csv", "json"};
    StageOptions stage;
    std::vector<std::pair<std::string, CLI::App*>> stage_commands;
    for (const auto& [name, help] : std::vector<std::pair<std::string, std::string>>{
             {"classify", "Decide whether a sentence is causal"},
             {"label", "Label events, junctors and sub-events"},
             {"graph", "Build the cause-effect graph"},
             {"testsuite", "Generate the test case descriptions"},
             {"pipeline", "Run every stage"}}) {
        CLI::App* sub = app.add_subcommand(name, help);
        sub->add_option("sentence", stage.text, "Requirement sentence");
        sub->add_option("--file", stage.file, "File with one requirement per line");
        sub->add_option("--format", stage.format, "Output format")->check(CLI::IsMember(formats));
        sub->add_option("--out", stage.out, "Write output to this file");
        sub->add_option("--lexicon", stage.lexicon, "Cue lexicon file");
        stage_commands.emplace_back(name, sub);
    }

    EvalOptions eval;
    CLI::App* eval_cmd = app.add_subcommand("eval", "Score the pipeline against an annotated corpus");
    eval_cmd->add_option("--corpus", eval.corpus, "Corpus file (one JSON record per line)")->required();
    eval_cmd->add_option("--report", eval.report, "Write the JSON report to this file");
    eval_cmd->add_option("--format", eval.format, "Format of the stdout summary")->check(CLI::IsMember(formats));
    eval_cmd->add_option("--out", eval.out, "Write the summary to this file");
    eval_cmd->add_option("--lexicon", eval.lexicon, "Cue lexicon file");

    ServeOptions serve;
    CLI::App* serve_cmd = app.add_subcommand("serve", "Run the HTTP service");
    serve_cmd->add_option("--port", serve.port, "Port (default $CIRA_PORT or 8080)");
    serve_cmd->add_option("--host", serve.host, "Host (default $CIRA_HOST or 127.0.0.1)");
    serve_cmd->add_option("--lexicon", serve.lexicon, "Cue lexicon file");

    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        for (const auto& [name, sub] : stage_commands) {
            if (sub->parsed()) return run_stage(name, stage, out, err);
        }
        if (eval_cmd->parsed()) return run_eval(eval, out, err);
        if (serve_cmd->parsed()) return run_serve(serve, err);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitFailure;
    }
    return kExitUsage;
}

}  // namespace cira
