#include "classify/http_backend.hpp"

#include <chrono>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "util/url.hpp"

namespace adtrace::classify {

namespace {

using nlohmann::json;

std::string build_request_body(const ZeroShotRequest& request) {
    json j;
    j["text"] = request.text;
    j["hypothesis_template"] = request.hypothesis_template;
    j["candidate_labels"] = request.candidate_labels;
    return j.dump();
}

RawScores parse_response_body(const std::string& body) {
    json j = json::parse(body, nullptr, false);
    if (j.is_discarded())
        throw ProtocolError("backend returned malformed JSON: " + body.substr(0, 512));
    if (!j.contains("labels") || !j.contains("scores") || !j["labels"].is_array() ||
        !j["scores"].is_array() || j["labels"].size() != j["scores"].size())
        throw ProtocolError("backend response missing parallel labels/scores arrays: " +
                            body.substr(0, 512));
    RawScores raw;
    for (size_t i = 0; i < j["labels"].size(); ++i) {
        if (!j["labels"][i].is_string() || !j["scores"][i].is_number())
            throw ProtocolError("backend response has non-string label or non-numeric score: " +
                                body.substr(0, 512));
        raw.scores.emplace_back(j["labels"][i].get<std::string>(),
                                j["scores"][i].get<double>());
    }
    return raw;
}

}  // namespace

HttpClassifierBackend::HttpClassifierBackend(std::string endpoint_url, HttpBackendOptions options)
    : options_(options) {
    auto url = util::parse_url(endpoint_url);
    if (!url) throw std::invalid_argument("backend endpoint is not a valid URL: " + endpoint_url);
    scheme_host_port_ = url->scheme + "://" + url->host;
    if (!url->port.empty()) scheme_host_port_ += ":" + url->port;
    path_ = url->path.empty() ? "/" : url->path;
    if (url->has_query) path_ += "?" + url->query;
}

RawScores HttpClassifierBackend::classify_raw(const ZeroShotRequest& request) {
    std::string body = build_request_body(request);
    std::string last_error;
    for (int attempt = 0; attempt < options_.max_attempts; ++attempt) {
        if (attempt > 0) {
            std::this_thread::sleep_for(
                std::chrono::milliseconds(options_.backoff_base_ms * (1 << (attempt - 1))));
        }
        httplib::Client client(scheme_host_port_);
        client.set_connection_timeout(0, options_.timeout_ms * 1000LL);
        client.set_read_timeout(options_.timeout_ms / 1000, (options_.timeout_ms % 1000) * 1000);
        auto res = client.Post(path_, body, "application/json");
        if (!res) {
            last_error = httplib::to_string(res.error());
            continue;
        }
        if (res->status != 200)
            throw ProtocolError("backend returned HTTP " + std::to_string(res->status) + ": " +
                                res->body.substr(0, 512));
        return parse_response_body(res->body);
    }
    throw TransportError("backend unreachable after " + std::to_string(options_.max_attempts) +
                         " attempts: " + last_error);
}

}  // namespace adtrace::classify
