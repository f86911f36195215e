#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cira/labeler.hpp"
#include "cira/lexicon.hpp"

namespace cira {

/// Library version, taken from the build.
std::string_view version();

inline constexpr std::size_t kMaxTextChars = 10000;

struct HttpResponse {
    int status = 200;
    std::string body;
    std::string content_type = "application/json";
    std::vector<std::pair<std::string, std::string>> headers;

    std::string header(std::string_view name) const;
};

struct ServiceOptions {
    /// Comma-separated list of allowed origins, or "*".
    std::string allowed_origins = "*";

    /// Reads CIRA_ALLOWED_ORIGINS, falling back to the defaults.
    static ServiceOptions from_env();
};

/// Transport-independent request handling for the /api routes. Holds only
/// immutable state, so one instance serves concurrent requests.
class Service {
public:
    Service(const CueLexicon& lexicon, const LabelerPort& labeler, ServiceOptions options = {});

    HttpResponse handle(std::string_view method, std::string_view path, std::string_view body,
                        std::string_view origin = {}) const;

private:
    HttpResponse dispatch(std::string_view method, std::string_view path, std::string_view body) const;
    void apply_cors(HttpResponse& response, std::string_view origin) const;

    const CueLexicon* lexicon_;
    const LabelerPort* labeler_;
    ServiceOptions options_;
};

/// cpp-httplib front end for a Service.
class HttpServer {
public:
    explicit HttpServer(const Service& service);
    ~HttpServer();
    HttpServer(const HttpServer&) = delete;
    HttpServer& operator=(const HttpServer&) = delete;

    /// Binds to host:port; port 0 picks a free port. Returns the bound port,
    /// or -1 on failure.
    int bind(const std::string& host, int port);
    /// Blocks until stop() is called.
    bool listen();
    void stop();
    bool running() const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace cira
