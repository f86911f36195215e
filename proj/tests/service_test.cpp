#include <gtest/gtest.h>

#include <atomic>
#include <chrono>
#include <future>
#include <random>
#include <thread>

#include "httplib.h"

#include "cira/formats.hpp"
#include "cira/pipeline.hpp"
#include "cira/service.hpp"

namespace {

using namespace cira;

constexpr const char* kButtonSentence =
    "When the red button is pushed or the power fails then the system shuts down.";

std::string body_for(const std::string& text) { return Json{{"text", text}}.dump(); }

class ServiceTest : public ::testing::Test {
protected:
    const CueLexicon& lexicon = CueLexicon::builtin();
    RuleLabeler labeler{lexicon};
    Service service{lexicon, labeler};

    HttpResponse post(const std::string& path, const std::string& body) const {
        return service.handle("POST", path, body);
    }
};

TEST_F(ServiceTest, Health) {
    const auto r = service.handle("GET", "/api/health", "");
    EXPECT_EQ(r.status, 200);
    EXPECT_EQ(Json::parse(r.body), (Json{{"status", "ok"}, {"version", std::string(version())}}));
}

TEST_F(ServiceTest, TestsuiteMatchesRenderer) {
    const auto r = post("/api/testsuite", body_for(kButtonSentence));
    EXPECT_EQ(r.status, 200);
    EXPECT_EQ(r.content_type, "application/json");
    const auto suite = generate_suite(build_graph(label(tokenize(kButtonSentence))));
    EXPECT_EQ(r.body, render_suite(suite, OutputFormat::Json));
}

TEST_F(ServiceTest, EveryStageRoute) {
    EXPECT_EQ(Json::parse(post("/api/classify", body_for(kButtonSentence)).body)["causal"], true);
    EXPECT_EQ(Json::parse(post("/api/label", body_for(kButtonSentence)).body)["labels"].size(), 12u);
    EXPECT_EQ(Json::parse(post("/api/graph", body_for(kButtonSentence)).body)["root"]["type"], "or");
    const Json p = Json::parse(post("/api/pipeline", body_for(kButtonSentence)).body);
    EXPECT_EQ(p["suite"]["cases"].size(), 3u);
    EXPECT_TRUE(p.contains("timings_ms"));
}

TEST_F(ServiceTest, NotCausal) {
    const auto r = post("/api/testsuite", body_for("The system shall be blue."));
    EXPECT_EQ(r.status, 422);
    const Json j = Json::parse(r.body);
    EXPECT_EQ(j["error"], "NOT_CAUSAL");
    EXPECT_EQ(j["classification"]["causal"], false);
    // classify and pipeline still answer 200 for non-causal input
    EXPECT_EQ(post("/api/classify", body_for("The system shall be blue.")).status, 200);
    EXPECT_EQ(post("/api/pipeline", body_for("The system shall be blue.")).status, 200);
}

TEST_F(ServiceTest, LabelerFailureIs422WithStage) {
    const auto r = post("/api/graph", body_for("If the door opens."));
    EXPECT_EQ(r.status, 422);
    const Json j = Json::parse(r.body);
    EXPECT_EQ(j["error"], "NO_EFFECT");
    EXPECT_EQ(j["stage"], "label");
}

TEST_F(ServiceTest, PipelineStageOrder) {
    const Json full = Json::parse(post("/api/pipeline", body_for(kButtonSentence)).body);
    std::vector<std::string> keys;
    for (auto it = full.begin(); it != full.end(); ++it) keys.push_back(it.key());
    EXPECT_EQ(keys, (std::vector<std::string>{"text", "classification", "labels", "graph", "suite", "timings_ms"}));

    const Json truncated = Json::parse(post("/api/pipeline", body_for("The system shall be blue.")).body);
    EXPECT_EQ(truncated["classification"]["causal"], false);
    EXPECT_FALSE(truncated.contains("labels"));
    EXPECT_FALSE(truncated.contains("graph"));
    EXPECT_FALSE(truncated.contains("suite"));
}

TEST_F(ServiceTest, EmptyTextIs400) { EXPECT_EQ(post("/api/classify", "{\"text\":\"\"}").status, 400); }

TEST_F(ServiceTest, NeverInternalErrorOnValidText) {
    const std::vector<std::string> words = {"if", "when", "then", "and", "or", "not", "unless", ",", ".", "the",
                                            "door", "opens", "is", "closed", "doesn't", "Tür", "—", "after", "no"};
    std::mt19937 rng(31);
    for (int i = 0; i < 400; ++i) {
        std::string text;
        const int n = std::uniform_int_distribution<int>(1, 16)(rng);
        for (int k = 0; k < n; ++k) text += words[rng() % words.size()] + " ";
        for (const char* route : {"/api/classify", "/api/label", "/api/graph", "/api/testsuite", "/api/pipeline"}) {
            const auto r = post(route, body_for(text));
            EXPECT_TRUE(r.status == 200 || r.status == 422) << route << " " << r.status << " " << text << " " << r.body;
            EXPECT_FALSE(Json::parse(r.body, nullptr, false).is_discarded());
        }
    }
}

TEST_F(ServiceTest, BadRequests) {
    EXPECT_EQ(post("/api/testsuite", "not json").status, 400);
    EXPECT_EQ(post("/api/testsuite", "[1,2]").status, 400);
    EXPECT_EQ(post("/api/testsuite", "{\"text\": 5}").status, 400);
    EXPECT_EQ(post("/api/testsuite", "{\"txt\": \"a\"}").status, 400);
    EXPECT_EQ(post("/api/testsuite", "{\"text\": \"   \"}").status, 400);
    EXPECT_EQ(Json::parse(post("/api/testsuite", "x").body)["error"], "BAD_REQUEST");
}

TEST_F(ServiceTest, TextLengthLimitCountsCodePoints) {
    std::string ok;
    for (std::size_t i = 0; i < kMaxTextChars; ++i) ok += "ü";
    EXPECT_NE(post("/api/classify", body_for(ok)).status, 413);
    const auto r = post("/api/classify", body_for(ok + "x"));
    EXPECT_EQ(r.status, 413);
    EXPECT_EQ(Json::parse(r.body)["error"], "TEXT_TOO_LONG");
}

TEST_F(ServiceTest, RoutingErrors) {
    EXPECT_EQ(service.handle("GET", "/api/nope", "").status, 404);
    EXPECT_EQ(service.handle("GET", "/api/testsuite", "").status, 405);
    EXPECT_EQ(service.handle("POST", "/api/health", "").status, 405);
    const auto pre = service.handle("OPTIONS", "/api/testsuite", "", "http://example.org");
    EXPECT_EQ(pre.status, 204);
    EXPECT_NE(pre.header("Access-Control-Allow-Methods").find("POST"), std::string::npos);
}

TEST_F(ServiceTest, CorsWildcardByDefault) {
    EXPECT_EQ(service.handle("GET", "/api/health", "", "http://a.test").header("Access-Control-Allow-Origin"), "*");
}

TEST_F(ServiceTest, CorsAllowList) {
    const Service restricted(lexicon, labeler, ServiceOptions{"http://a.test, http://b.test"});
    const auto ok = restricted.handle("GET", "/api/health", "", "http://b.test");
    EXPECT_EQ(ok.header("Access-Control-Allow-Origin"), "http://b.test");
    EXPECT_EQ(ok.header("Vary"), "Origin");
    EXPECT_EQ(restricted.handle("GET", "/api/health", "", "http://evil.test").header("Access-Control-Allow-Origin"), "");
}

TEST_F(ServiceTest, Stateless) {
    const auto first = post("/api/testsuite", body_for(kButtonSentence));
    post("/api/testsuite", body_for("If A then B."));
    post("/api/testsuite", body_for("garbage"));
    EXPECT_EQ(post("/api/testsuite", body_for(kButtonSentence)).body, first.body);
}

TEST_F(ServiceTest, RealServerConcurrentClients) {
    HttpServer server(service);
    const int port = server.bind("127.0.0.1", 0);
    ASSERT_GT(port, 0);
    std::thread loop([&] { server.listen(); });
    for (int i = 0; i < 200 && !server.running(); ++i) std::this_thread::sleep_for(std::chrono::milliseconds(5));
    ASSERT_TRUE(server.running());

    const std::vector<std::string> texts = {kButtonSentence, "If A then B.", "The system shall be blue.",
                                            "If the door doesn't close then the alarm is not armed."};
    std::vector<std::string> expected;
    for (const auto& t : texts) expected.push_back(post("/api/testsuite", body_for(t)).body);

    std::atomic<int> mismatches{0};
    std::vector<std::future<void>> workers;
    for (int w = 0; w < 8; ++w) {
        workers.push_back(std::async(std::launch::async, [&, w] {
            httplib::Client cli("127.0.0.1", port);
            for (int i = 0; i < 10; ++i) {
                const std::size_t k = (w + i) % texts.size();
                auto res = cli.Post("/api/testsuite", body_for(texts[k]), "application/json");
                if (!res || res->body != expected[k]) ++mismatches;
            }
        }));
    }
    for (auto& f : workers) f.get();

    httplib::Client cli("127.0.0.1", port);
    httplib::Headers h{{"Origin", "http://x.test"}};
    auto health = cli.Get("/api/health", h);
    ASSERT_TRUE(health);
    EXPECT_EQ(health->status, 200);
    EXPECT_EQ(health->get_header_value("Access-Control-Allow-Origin"), "*");

    server.stop();
    loop.join();
    EXPECT_EQ(mismatches.load(), 0);
}

}  // namespace
