#include "cira/service.hpp"

#include <algorithm>
#include <cstdlib>
#include <exception>

#include "httplib.h"

#include "cira/pipeline.hpp"

#ifndef CIRA_VERSION
#define CIRA_VERSION "0.0.0"
#endif

namespace cira {
namespace {

HttpResponse json_response(int status, const Json& body) { return HttpResponse{status, render_json(body), "application/json", {}}; }

HttpResponse error_response(int status, std::string code, std::string message) {
    return json_response(status, Json{{"error", std::move(code)}, {"message", std::move(message)}});
}

struct TextRequest {
    std::string text;
    std::optional<HttpResponse> error;
};

TextRequest read_text(std::string_view body) {
    Json doc;
    try {
        doc = Json::parse(body);
    } catch (const nlohmann::json::parse_error&) {
        return {{}, error_response(400, "BAD_REQUEST", "request body must be a JSON object")};
    }
    if (!doc.is_object() || !doc.contains("text") || !doc["text"].is_string())
        return {{}, error_response(400, "BAD_REQUEST", "request body needs a string field \"text\"")};
    std::string text = doc["text"].get<std::string>();
    if (text.find_first_not_of(" \t\r\n") == std::string::npos)
        return {{}, error_response(400, "BAD_REQUEST", "\"text\" must not be empty")};
    if (char_length(text) > kMaxTextChars)
        return {{}, error_response(413, "TEXT_TOO_LONG",
                                   "\"text\" exceeds " + std::to_string(kMaxTextChars) + " characters")};
    return {std::move(text), std::nullopt};
}

std::vector<std::string> split_origins(std::string_view list) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (pos <= list.size()) {
        auto comma = list.find(',', pos);
        if (comma == std::string_view::npos) comma = list.size();
        std::string_view item = list.substr(pos, comma - pos);
        while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
        while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
        if (!item.empty()) out.emplace_back(item);
        pos = comma + 1;
    }
    return out;
}

}  // namespace

std::string_view version() { return CIRA_VERSION; }

std::string HttpResponse::header(std::string_view name) const {
    for (const auto& [k, v] : headers) {
        if (k == name) return v;
    }
    return {};
}

ServiceOptions ServiceOptions::from_env() {
    ServiceOptions o;
    if (const char* env = std::getenv("CIRA_ALLOWED_ORIGINS"); env && *env) o.allowed_origins = env;
    return o;
}

Service::Service(const CueLexicon& lexicon, const LabelerPort& labeler, ServiceOptions options)
    : lexicon_(&lexicon), labeler_(&labeler), options_(std::move(options)) {}

HttpResponse Service::handle(std::string_view method, std::string_view path, std::string_view body,
                             std::string_view origin) const {
    HttpResponse r;
    try {
        r = dispatch(method, path, body);
    } catch (const std::exception& e) {
        r = error_response(500, "INTERNAL", e.what());
    }
    apply_cors(r, origin);
    return r;
}

void Service::apply_cors(HttpResponse& r, std::string_view origin) const {
    const auto allowed = split_origins(options_.allowed_origins);
    if (std::find(allowed.begin(), allowed.end(), "*") != allowed.end()) {
        r.headers.emplace_back("Access-Control-Allow-Origin", "*");
    } else if (!origin.empty() && std::find(allowed.begin(), allowed.end(), origin) != allowed.end()) {
        r.headers.emplace_back("Access-Control-Allow-Origin", std::string(origin));
        r.headers.emplace_back("Vary", "Origin");
    }
}

HttpResponse Service::dispatch(std::string_view method, std::string_view path, std::string_view body) const {
    static constexpr std::string_view kPostRoutes[] = {"/api/classify", "/api/label", "/api/graph", "/api/testsuite",
                                                       "/api/pipeline"};
    const bool post_route = std::find(std::begin(kPostRoutes), std::end(kPostRoutes), path) != std::end(kPostRoutes);

    if (method == "OPTIONS" && (post_route || path == "/api/health")) {
        HttpResponse r{204, "", "text/plain", {}};
        r.headers.emplace_back("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
        r.headers.emplace_back("Access-Control-Allow-Headers", "Content-Type");
        return r;
    }
    if (path == "/api/health") {
        if (method != "GET") return error_response(405, "METHOD_NOT_ALLOWED", "use GET");
        return json_response(200, Json{{"status", "ok"}, {"version", std::string(version())}});
    }
    if (!post_route) return error_response(404, "NOT_FOUND", "no route " + std::string(path));
    if (method != "POST") return error_response(405, "METHOD_NOT_ALLOWED", "use POST");

    TextRequest req = read_text(body);
    if (req.error) return *req.error;

    if (path == "/api/classify") return json_response(200, classification_to_json(classify(tokenize(req.text), *lexicon_)));

    const PipelineResult result = run_pipeline(req.text, *lexicon_, *labeler_);
    if (path == "/api/pipeline") return json_response(200, pipeline_to_json(result, true));

    if (!result.classification.causal) {
        Json j{{"error", "NOT_CAUSAL"},
               {"message", "the sentence is not a conditional requirement"},
               {"classification", classification_to_json(result.classification)}};
        return json_response(422, j);
    }
    if (path == "/api/label" && result.labels) return json_response(200, label_stage_to_json(*result.labels));
    if (path == "/api/graph" && result.graph) return json_response(200, graph_to_json(*result.graph));
    if (path == "/api/testsuite" && result.suite) return HttpResponse{200, render_suite(*result.suite, OutputFormat::Json), "application/json", {}};
    const StageError err = result.error.value_or(StageError{"", "INTERNAL", "pipeline stopped early"});
    return json_response(422, Json{{"error", err.reason}, {"stage", err.stage}, {"message", err.message}});
}

struct HttpServer::Impl {
    const Service* service;
    httplib::Server server;
};

HttpServer::HttpServer(const Service& service) : impl_(std::make_unique<Impl>()) {
    impl_->service = &service;
    auto handler = [this](const httplib::Request& req, httplib::Response& res) {
        const HttpResponse r =
            impl_->service->handle(req.method, req.path, req.body, req.get_header_value("Origin"));
        res.status = r.status;
        for (const auto& [k, v] : r.headers) res.set_header(k, v);
        res.set_content(r.body, r.content_type);
    };
    impl_->server.Get(".*", handler);
    impl_->server.Post(".*", handler);
    impl_->server.Options(".*", handler);
    impl_->server.Put(".*", handler);
    impl_->server.Delete(".*", handler);
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(const std::string& host, int port) {
    if (port == 0) return impl_->server.bind_to_any_port(host);
    return impl_->server.bind_to_port(host, port) ? port : -1;
}

bool HttpServer::listen() { return impl_->server.listen_after_bind(); }

void HttpServer::stop() {
    if (impl_) impl_->server.stop();
}

bool HttpServer::running() const { return impl_->server.is_running(); }

}  // namespace cira
