#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pencils {

// Base class for every error raised by the library. The CLI maps these to
// exit code 1 with a one-line diagnostic naming the concrete type.
class Error : public std::runtime_error {
public:
  Error(std::string name, const std::string& what)
      : std::runtime_error(name + ": " + what), name_(std::move(name)) {}
  const std::string& name() const { return name_; }

private:
  std::string name_;
};

#define PENCILS_DEFINE_ERROR(Type)                                        \
  class Type : public Error {                                             \
  public:                                                                 \
    explicit Type(const std::string& what) : Error(#Type, what) {}        \
  }

PENCILS_DEFINE_ERROR(DivisionByZero);
PENCILS_DEFINE_ERROR(FieldMismatch);
PENCILS_DEFINE_ERROR(UnsupportedPrime);
PENCILS_DEFINE_ERROR(NotPrime);
PENCILS_DEFINE_ERROR(CoefficientNotInField);
PENCILS_DEFINE_ERROR(DegreeTooSmall);
PENCILS_DEFINE_ERROR(ZeroPolynomial);
PENCILS_DEFINE_ERROR(CharacteristicTooSmall);
PENCILS_DEFINE_ERROR(NuTooSmall);
PENCILS_DEFINE_ERROR(DegreeLeakage);
PENCILS_DEFINE_ERROR(InconsistentDegrees);
PENCILS_DEFINE_ERROR(FactorsNotCoprime);
PENCILS_DEFINE_ERROR(EnvelopeAssertionFailed);
PENCILS_DEFINE_ERROR(EdgeNotGood);
PENCILS_DEFINE_ERROR(PolygonMismatch);
PENCILS_DEFINE_ERROR(WitnessContainmentFailed);
PENCILS_DEFINE_ERROR(CompositeOrNonReduced);
PENCILS_DEFINE_ERROR(InsufficientSamplePoints);
PENCILS_DEFINE_ERROR(KeyEquationMismatch);
PENCILS_DEFINE_ERROR(DegreeDropPersistent);
PENCILS_DEFINE_ERROR(InternalError);

#undef PENCILS_DEFINE_ERROR

// Parse failure carrying the byte offset of the offending character.
class SyntaxError : public Error {
public:
  SyntaxError(std::size_t position, const std::string& what)
      : Error("SyntaxError",
              "at position " + std::to_string(position) + ": " + what),
        position_(position) {}
  std::size_t position() const { return position_; }

private:
  std::size_t position_;
};

}  // namespace pencils
