#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lyapna {

// Base class for all library errors. Every error carries a stable `code()`
// string that the CLI emits in machine-readable error records.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& what)
      : std::runtime_error(what), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

struct PrecisionExhausted : Error {
  explicit PrecisionExhausted(const std::string& what)
      : Error("PrecisionExhausted", what) {}
};

struct ZeroDivision : Error {
  explicit ZeroDivision(const std::string& what) : Error("ZeroDivision", what) {}
};

struct CoefficientNotASquare : Error {
  explicit CoefficientNotASquare(const std::string& what)
      : Error("CoefficientNotASquare", what) {}
};

struct InexactSeries : Error {
  explicit InexactSeries(const std::string& what) : Error("InexactSeries", what) {}
};

struct NotHyperbolic : Error {
  explicit NotHyperbolic(const std::string& what) : Error("NotHyperbolic", what) {}
};

struct NormOne : Error {
  explicit NormOne(const std::string& what) : Error("NormOne", what) {}
};

struct DetDrift : Error {
  explicit DetDrift(const std::string& what) : Error("DetDrift", what) {}
};

struct NotLoxodromic : Error {
  explicit NotLoxodromic(const std::string& what) : Error("NotLoxodromic", what) {}
};

// Parse error with the byte offset of the offending token and a short
// description of what was expected there.
struct SyntaxError : Error {
  SyntaxError(std::size_t offset, const std::string& expected)
      : Error("SyntaxError",
              "syntax error at byte " + std::to_string(offset) + ": expected " + expected),
        offset(offset),
        expected(expected) {}
  std::size_t offset;
  std::string expected;
};

struct NonMonomialDivision : Error {
  explicit NonMonomialDivision(std::size_t offset)
      : Error("NonMonomialDivision",
              "division at byte " + std::to_string(offset) +
                  " is not by a monomial; only exactly invertible divisors are allowed"),
        offset(offset) {}
  std::size_t offset;
};

struct DetNotOne : Error {
  explicit DetNotOne(const std::string& generator)
      : Error("DetNotOne", "generator '" + generator + "' does not have determinant 1"),
        generator(generator) {}
  std::string generator;
};

struct WeightsNotNormalized : Error {
  explicit WeightsNotNormalized(const std::string& what)
      : Error("WeightsNotNormalized", what) {}
};

struct CapExceeded : Error {
  explicit CapExceeded(const std::string& what) : Error("CapExceeded", what) {}
};

struct TooFewHyperbolic : Error {
  explicit TooFewHyperbolic(const std::string& what)
      : Error("TooFewHyperbolic", what) {}
};

struct NotAffine : Error {
  explicit NotAffine(const std::string& what) : Error("NotAffine", what) {}
};

struct NoSwapElement : Error {
  explicit NoSwapElement(const std::string& what) : Error("NoSwapElement", what) {}
};

struct EllipticUnresolved : Error {
  explicit EllipticUnresolved(const std::string& what)
      : Error("EllipticUnresolved", what) {}
};

struct UnmatchedMass : Error {
  explicit UnmatchedMass(const std::string& what) : Error("UnmatchedMass", what) {}
};

struct ConfigError : Error {
  explicit ConfigError(const std::string& what) : Error("ConfigError", what) {}
};

}  // namespace lyapna
