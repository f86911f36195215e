// Thin bindings: every call takes and returns JSON text; the Python package
// decodes it.
#include <pybind11/pybind11.h>

#include "cira/formats.hpp"
#include "cira/pipeline.hpp"
#include "cira/service.hpp"

namespace py = pybind11;
using namespace cira;

namespace {

std::string dump(const Json& j) { return j.dump(); }

LabeledSentence label_or_throw(const std::string& text) {
    const Sentence s = tokenize(text);
    LabeledSentence l = label(s);
    if (auto v = validate_labels(l); !v.empty()) throw GraphError(GraphError::Code::InvalidLabels, std::move(v));
    return l;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Conditional requirement sentences to cause-effect graphs and test cases";

    static py::exception<std::runtime_error> error(m, "CiraError", PyExc_ValueError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const LabelError& e) {
            PyErr_SetString(error.ptr(), (e.reason() + ": " + e.what()).c_str());
        } catch (const GraphError& e) {
            PyErr_SetString(error.ptr(), (e.reason() + ": " + e.what()).c_str());
        } catch (const ParseError& e) {
            PyErr_SetString(error.ptr(), e.what());
        } catch (const EvaluationError& e) {
            PyErr_SetString(error.ptr(), e.what());
        }
    });

    m.def("version", [] { return std::string(version()); });
    m.def("tokenize", [](const std::string& text) {
        const Sentence s = tokenize(text);
        return dump(tokens_to_json(s));
    });
    m.def("classify", [](const std::string& text) { return dump(classification_to_json(classify(tokenize(text)))); });
    m.def("label", [](const std::string& text) { return dump(label_stage_to_json(label_or_throw(text))); });
    m.def("build_graph", [](const std::string& text) { return dump(graph_to_json(build_graph(label_or_throw(text)))); });
    m.def("generate_suite", [](const std::string& graph_json) {
        return dump(suite_to_json(generate_suite(graph_from_json_text(graph_json))));
    });
    m.def("mcdc_check", [](const std::string& suite_json, const std::string& graph_json) {
        const Json doc = Json::parse(suite_json, nullptr, false);
        if (doc.is_discarded()) throw ParseError("byte 0", "suite is not valid JSON");
        return dump(coverage_to_json(mcdc_check(suite_from_json(doc), graph_from_json_text(graph_json))));
    });
    m.def("render_suite", [](const std::string& suite_json, const std::string& format) {
        const auto f = parse_format(format);
        if (!f) throw py::value_error("unknown format '" + format + "'");
        const Json doc = Json::parse(suite_json, nullptr, false);
        if (doc.is_discarded()) throw ParseError("byte 0", "suite is not valid JSON");
        return render_suite(suite_from_json(doc), *f);
    });
    m.def("run_pipeline", [](const std::string& text) { return dump(pipeline_to_json(run_pipeline(text), false)); });
}
