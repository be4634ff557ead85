#ifndef WEGNERLAB_ERRORS_HPP
#define WEGNERLAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace wegnerlab {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// The symbol of a coefficient sequence dips below the numerical floor on an
/// evaluation grid, so Wiener inversion is meaningless in double precision.
class SymbolVanishes : public Error {
 public:
  using Error::Error;
};

/// Grid/truncation doubling failed to reach the requested tolerance.
class NoConvergence : public Error {
 public:
  using Error::Error;
};

/// A circulant eigenvalue is below the singularity floor.
class SingularCirculant : public Error {
 public:
  using Error::Error;
};

/// Box sizes, support radii, or index sets do not fit together.
class InvalidGeometry : public Error {
 public:
  using Error::Error;
};

/// Energy interval with E1 > E2.
class InvalidInterval : public Error {
 public:
  using Error::Error;
};

/// Adaptive quadrature could not bound its error below tolerance.
class QuadratureFailure : public Error {
 public:
  using Error::Error;
};

/// Malformed or incomplete configuration file.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace wegnerlab

#endif  // WEGNERLAB_ERRORS_HPP
