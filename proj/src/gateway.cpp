#include "radstruct/gateway.hpp"

#include <chrono>
#include <stdexcept>

#include "httplib.h"
#include "json.hpp"

namespace radstruct {

void validate_request(const CompletionRequest& request) {
    if (request.temperature != 0.0)
        throw std::invalid_argument("completion request: temperature must be 0.0");
    if (request.stream)
        throw std::invalid_argument("completion request: streaming is not supported");
}

HttpGateway::HttpGateway(HttpGatewayOptions options) : options_(std::move(options)) {}

std::string HttpGateway::request_body(const CompletionRequest& request) {
    nlohmann::ordered_json body;
    body["model"] = request.model;
    body["prompt"] = request.prompt;
    body["temperature"] = request.temperature;
    body["stream"] = false;
    if (request.seed) body["options"] = {{"seed", *request.seed}};
    return body.dump();
}

namespace {

// One client per call: no shared mutable state, so concurrent workers can
// hold a single gateway object.
httplib::Client make_client(const HttpGatewayOptions& options) {
    httplib::Client client(options.endpoint);
    const auto secs = options.timeout.count();
    client.set_connection_timeout(secs, 0);
    client.set_read_timeout(secs, 0);
    client.set_write_timeout(secs, 0);
    return client;
}

TransportError map_httplib_error(httplib::Error error, const std::string& endpoint) {
    using Kind = TransportError::Kind;
    switch (error) {
        case httplib::Error::ConnectionTimeout:
        case httplib::Error::Read:
        case httplib::Error::Write:
            return {Kind::Timeout, "request to " + endpoint + " timed out (" +
                                       httplib::to_string(error) + ")"};
        default:
            return {Kind::ConnectionRefused, "cannot reach " + endpoint + " (" +
                                                 httplib::to_string(error) + ")"};
    }
}

}  // namespace

CompletionResponse HttpGateway::complete(const CompletionRequest& request) {
    validate_request(request);

    auto client = make_client(options_);
    const auto started = std::chrono::steady_clock::now();
    httplib::Result result = client.Post("/api/generate", request_body(request), "application/json");
    const auto latency = std::chrono::duration_cast<std::chrono::milliseconds>(
        std::chrono::steady_clock::now() - started);

    if (!result) throw map_httplib_error(result.error(), options_.endpoint);
    if (result->status < 200 || result->status >= 300)
        throw TransportError(TransportError::Kind::HttpStatus,
                             options_.endpoint + " returned HTTP " + std::to_string(result->status),
                             result->status);

    nlohmann::json body;
    try {
        body = nlohmann::json::parse(result->body);
    } catch (const nlohmann::json::exception& e) {
        throw TransportError(TransportError::Kind::MalformedBody,
                             "malformed response body from " + options_.endpoint + ": " + e.what());
    }
    if (!body.contains("response") || !body["response"].is_string())
        throw TransportError(TransportError::Kind::MalformedBody,
                             "response body from " + options_.endpoint + " lacks a 'response' string");

    CompletionResponse response;
    response.text = body["response"].get<std::string>();
    response.latency = latency;
    response.model = body.value("model", request.model);
    return response;
}

bool HttpGateway::health_check() {
    auto client = make_client(options_);
    httplib::Result result = client.Get("/");
    return result && result->status >= 200 && result->status < 300;
}

}  // namespace radstruct
