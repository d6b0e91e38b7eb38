#pragma once

#include <stdexcept>
#include <string>

namespace losrnet {

/// A requested object would exceed the configured dense-storage budget.
struct CapacityError : std::runtime_error {
    explicit CapacityError(const std::string& what) : std::runtime_error(what) {}
};

/// A structural invariant of an input object does not hold (e.g. a grid
/// that is not an exact cover, or a file that does not parse).
struct ValidationError : std::runtime_error {
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

/// A numerical routine produced a non-finite or otherwise unusable value.
struct NumericalError : std::runtime_error {
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace losrnet
