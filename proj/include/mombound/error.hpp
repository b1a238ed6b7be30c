#pragma once

#include <stdexcept>
#include <string>

namespace mombound {

/// Broad classification of library failures. The CLI maps these onto its
/// exit-code contract (invalid_argument/precondition -> 2, infeasible -> 3).
enum class Errc {
    invalid_argument,  // malformed or out-of-domain input
    precondition,      // valid input, but outside the operation's hypotheses
    infeasible,        // no distribution can have these moments
};

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

}  // namespace mombound
