#pragma once

#include <stdexcept>
#include <string>

namespace zonoid
{

/// Invalid input: malformed law, violated precondition, bad configuration.
class ConfigError : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

/// A numerical check failed at run time (divergent estimator, sampled
/// negativity where positivity was required, inconsistent verdicts).
class DiagnosticError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

inline void require(bool condition, const std::string& message)
{
    if (!condition)
        throw ConfigError(message);
}

}  // namespace zonoid
