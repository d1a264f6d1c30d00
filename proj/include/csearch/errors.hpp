#pragma once

#include <stdexcept>
#include <string>

namespace csearch {

// Thrown when inputs that must jointly satisfy a cross-equation identity fail
// to do so. Carries the offending residual for diagnostics.
class InconsistencyError : public std::runtime_error {
public:
    InconsistencyError(const std::string& what, double residual)
        : std::runtime_error(what), residual_(residual) {}

    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

} // namespace csearch
