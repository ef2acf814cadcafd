#pragma once

#include "radstruct/gateway.hpp"
#include "radstruct/report_template.hpp"

#include <optional>
#include <string>
#include <string_view>

namespace radstruct {

// Deterministic rule-based test backends mirroring the observed model
// behaviors:
//   Faithful           always produces well-formed output
//   Garbage            free prose, no headers, never parses
//   LetterImpressions  valid sections, impressions one letter per line
//   FailThenFix        garbage on a stage's first call, faithful on the fix
enum class MockBehavior { Faithful, Garbage, LetterImpressions, FailThenFix };

const char* mock_behavior_id(MockBehavior behavior);
std::optional<MockBehavior> mock_behavior_from_id(std::string_view id);

// Stateless and shareable: the response is a pure function of the prompt,
// so retries are idempotent and any worker interleaving yields identical
// batch results. Rewrite rules are documented in docs/formats.md.
class MockGateway final : public CompletionGateway {
public:
    explicit MockGateway(MockBehavior behavior, TemplateSpec tpl = TemplateSpec::v1());

    CompletionResponse complete(const CompletionRequest& request) override;
    bool health_check() override { return true; }

    MockBehavior behavior() const { return behavior_; }

    // Published rewrite rule of the faithful backend: case-insensitive
    // whole-word removal of the redundant phrases, then of an orphaned
    // sentence-leading article, then whitespace collapse. Returns the input
    // unchanged when removal would empty it.
    static std::string remove_redundant_phrases(std::string_view text);

private:
    std::string respond(std::string_view prompt) const;
    std::string faithful(std::string_view prompt) const;

    MockBehavior behavior_;
    TemplateSpec tpl_;
};

}  // namespace radstruct
