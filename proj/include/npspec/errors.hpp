#pragma once

#include <stdexcept>
#include <string>

namespace npspec {

/// Malformed input: bad geometry, parameters outside their domain.
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A numerical step failed (eigen-solver, singular linear system, indefinite form).
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The spectral parameter sits on (or numerically next to) the discrete NP spectrum.
class ResonanceError : public NumericalError {
public:
    ResonanceError(const std::string& what, double distance)
        : NumericalError(what), distance_(distance) {}

    double distance() const noexcept { return distance_; }

private:
    double distance_;
};

}  // namespace npspec
