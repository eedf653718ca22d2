#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace tes {

// Error with a stable machine-readable code ("case1_claim1_failed", ...) so
// callers and the CLI can branch on failure kind without parsing prose.
class construction_error : public std::runtime_error {
public:
    construction_error(std::string code, const std::string& message)
        : std::runtime_error(message), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

} // namespace tes
