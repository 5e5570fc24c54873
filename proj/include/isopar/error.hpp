#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace isopar {

// Precondition violations on arithmetic and classification inputs.
class DomainError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

// A construction produced something that fails its own invariants.
class InvariantViolation : public std::logic_error {
  public:
    using std::logic_error::logic_error;
};

enum class GeometryErrorKind { NonConvergence, IrregularPoint, AmbiguousClustering, InconsistentSpectrum };

class GeometryError : public std::runtime_error {
  public:
    GeometryError(GeometryErrorKind kind, std::size_t index, const std::string& what)
        : std::runtime_error(what), kind_(kind), index_(index) {}

    GeometryErrorKind kind() const noexcept { return kind_; }
    // Sample index at which the failure happened.
    std::size_t index() const noexcept { return index_; }

  private:
    GeometryErrorKind kind_;
    std::size_t index_;
};

} // namespace isopar
