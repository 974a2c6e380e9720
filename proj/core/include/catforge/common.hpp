#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace catforge {

using cdouble = std::complex<double>;

inline constexpr const char* kVersion = "0.1.0";
inline constexpr double kPi = 3.14159265358979323846;

/// Thrown when a requested Fock truncation cannot hold the state to tolerance.
class TruncationError : public std::runtime_error {
public:
    explicit TruncationError(const std::string& what) : std::runtime_error(what) {}
};

/// Thrown when an operation produces (or is asked for) a zero-norm state,
/// e.g. an odd cat at alpha = 0 or a herald pattern with vanishing amplitude.
class DegenerateStateError : public std::runtime_error {
public:
    explicit DegenerateStateError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace catforge
