#ifndef QBOUNCER_CORE_ERRORS_HPP
#define QBOUNCER_CORE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qbouncer {

// Bad input: out-of-range level, non-positive constant, mismatched grids...
class ValidationError : public std::runtime_error {
public:
  explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

// A numerical routine failed to reach its tolerance (quadrature subdivision
// limit, root bracketing failure, epsilon-robustness breakdown).
class ConvergenceError : public std::runtime_error {
public:
  explicit ConvergenceError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace qbouncer

#endif
