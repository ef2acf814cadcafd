#pragma once

#include "radstruct/errors.hpp"

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>

namespace radstruct {

// One non-streaming completion request. Temperature is pinned to zero for
// the whole pipeline; any other value is rejected before send.
struct CompletionRequest {
    std::string model;
    std::string prompt;
    double temperature = 0.0;
    std::optional<std::int64_t> seed;
    bool stream = false;
};

struct CompletionResponse {
    std::string text;  // may be empty; callers must handle
    std::chrono::milliseconds latency{0};
    std::string model;  // echoed model id
};

// Shared, thread-safe handle to a completion backend. Implementations must
// tolerate concurrent complete() calls from the worker pool.
class CompletionGateway {
public:
    virtual ~CompletionGateway() = default;

    // Throws TransportError on network-level failures and
    // std::invalid_argument when the request violates the temperature or
    // streaming invariants.
    virtual CompletionResponse complete(const CompletionRequest& request) = 0;

    virtual bool health_check() = 0;
};

struct HttpGatewayOptions {
    std::string endpoint = "http://127.0.0.1:11434";
    std::chrono::seconds timeout{300};
};

// JSON-over-HTTP client for a local completion server. Wire schema
// (docs/wire.md): POST /api/generate
//   {"model", "prompt", "temperature", "stream": false, "options": {"seed"}}
// -> {"response": "<text>"}
// Compatible with an Ollama-style generate endpoint.
class HttpGateway final : public CompletionGateway {
public:
    explicit HttpGateway(HttpGatewayOptions options);

    CompletionResponse complete(const CompletionRequest& request) override;
    bool health_check() override;

    const HttpGatewayOptions& options() const { return options_; }

    // Request body serialization, exposed for wire tests.
    static std::string request_body(const CompletionRequest& request);

private:
    HttpGatewayOptions options_;
};

// Throws std::invalid_argument unless temperature == 0 and stream == false.
void validate_request(const CompletionRequest& request);

}  // namespace radstruct
