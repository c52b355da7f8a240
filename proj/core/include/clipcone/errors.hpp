#pragma once

#include <stdexcept>
#include <string>

namespace clipcone {

// Base class for all domain errors raised by the library.  Each subclass has a
// stable name() used in CLI reports and exit-code mapping.
class Error : public std::runtime_error {
public:
  Error(std::string name, const std::string& what_arg)
      : std::runtime_error(name + ": " + what_arg), name_(std::move(name)) {}
  const std::string& name() const { return name_; }

private:
  std::string name_;
};

#define CLIPCONE_DEFINE_ERROR(NAME)                         \
  class NAME : public Error {                               \
  public:                                                   \
    explicit NAME(const std::string& what_arg)              \
        : Error(#NAME, what_arg) {}                         \
  }

CLIPCONE_DEFINE_ERROR(CapExceeded);
CLIPCONE_DEFINE_ERROR(NotLatticePreserving);
CLIPCONE_DEFINE_ERROR(DegenerateInput);
CLIPCONE_DEFINE_ERROR(NotSimplicial);
CLIPCONE_DEFINE_ERROR(DimensionMismatch);
CLIPCONE_DEFINE_ERROR(SignatureAnomaly);
CLIPCONE_DEFINE_ERROR(NotAutomorphism);
CLIPCONE_DEFINE_ERROR(NotInterior);
CLIPCONE_DEFINE_ERROR(NotInPlusCone);
CLIPCONE_DEFINE_ERROR(IterationCap);
CLIPCONE_DEFINE_ERROR(PreconditionFailure);
CLIPCONE_DEFINE_ERROR(PsdOrbitUnsupported);
CLIPCONE_DEFINE_ERROR(BlockStructureViolation);
CLIPCONE_DEFINE_ERROR(StabilizerNontrivial);
CLIPCONE_DEFINE_ERROR(DegenerateB);
CLIPCONE_DEFINE_ERROR(Unsupported);
CLIPCONE_DEFINE_ERROR(ParseError);

#undef CLIPCONE_DEFINE_ERROR

}  // namespace clipcone
