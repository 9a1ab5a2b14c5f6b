#ifndef KNOTFIELD_ERRORS_HPP
#define KNOTFIELD_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace knotfield {

// Bad labels, out-of-range parameters, malformed run configurations.
class ValidationError : public std::domain_error {
  public:
    explicit ValidationError(const std::string& what) : std::domain_error(what) {}
};

// Runtime numerical failures: stiffness, NaN propagation, degenerate
// landscapes or seeds.
class NumericalError : public std::runtime_error {
  public:
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

// Named preset requested but not available.
class MissingPresetError : public std::runtime_error {
  public:
    explicit MissingPresetError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace knotfield

#endif
