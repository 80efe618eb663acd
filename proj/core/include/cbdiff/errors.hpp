#pragma once

#include <stdexcept>
#include <string>

namespace cbd {

/// A result the model guarantees did not hold on a computed trace.
class ModelInconsistencyError : public std::logic_error {
public:
    explicit ModelInconsistencyError(const std::string& what) : std::logic_error(what) {}
};

/// Threshold characterization does not apply to this network/trace.
class ThresholdsUndefinedError : public std::domain_error {
public:
    explicit ThresholdsUndefinedError(const std::string& what) : std::domain_error(what) {}
};

}  // namespace cbd
