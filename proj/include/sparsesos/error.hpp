#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sparsesos {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed polynomial text. `position` is a byte offset into the input.
struct SyntaxError : Error {
  SyntaxError(std::size_t pos, const std::string& msg)
      : Error("syntax error at offset " + std::to_string(pos) + ": " + msg), position(pos) {}
  std::size_t position;
};

struct NegativeExponent : SyntaxError {
  using SyntaxError::SyntaxError;
};

struct DimensionMismatch : Error {
  using Error::Error;
};

// Newton-polytope vertex with an odd coordinate; the polynomial cannot be nonnegative.
struct OddVertex : Error {
  using Error::Error;
};

struct LatticeTooLarge : Error {
  using Error::Error;
};

// A nonzero coefficient that no Gram entry of any block can produce.
struct StructuralInfeasible : Error {
  using Error::Error;
};

struct NotPerfectElimination : Error {
  using Error::Error;
};

struct EigenFailure : Error {
  using Error::Error;
};

struct DegenerateDraw : Error {
  using Error::Error;
};

}  // namespace sparsesos
