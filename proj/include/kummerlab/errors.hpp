#pragma once

#include <stdexcept>
#include <string>

namespace kummerlab {

// Base of all library errors. `kind()` is the stable machine-readable name
// used by the CLI for exit-code-2 diagnostics.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& what)
        : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}

    const std::string& kind() const { return kind_; }

private:
    std::string kind_;
};

#define KUMMERLAB_DEFINE_ERROR(Name)                                          \
    class Name : public Error {                                               \
    public:                                                                   \
        explicit Name(const std::string& what) : Error(#Name, what) {}        \
    }

KUMMERLAB_DEFINE_ERROR(PrimeMismatch);
KUMMERLAB_DEFINE_ERROR(NotDivisible);
KUMMERLAB_DEFINE_ERROR(PrecisionExhausted);
KUMMERLAB_DEFINE_ERROR(NotAUnit);
KUMMERLAB_DEFINE_ERROR(InsufficientValues);
KUMMERLAB_DEFINE_ERROR(NotKummer);
KUMMERLAB_DEFINE_ERROR(DivisionByP);
KUMMERLAB_DEFINE_ERROR(NonzeroConstant);
KUMMERLAB_DEFINE_ERROR(InsufficientEntries);
KUMMERLAB_DEFINE_ERROR(NotInWKS0);
KUMMERLAB_DEFINE_ERROR(NotInWKSd);
KUMMERLAB_DEFINE_ERROR(NotInKS2);
KUMMERLAB_DEFINE_ERROR(NoZeroModP);
KUMMERLAB_DEFINE_ERROR(DoubleRootModP);
KUMMERLAB_DEFINE_ERROR(RelationViolated);
KUMMERLAB_DEFINE_ERROR(ParityMismatch);
KUMMERLAB_DEFINE_ERROR(NotPIntegral);
KUMMERLAB_DEFINE_ERROR(UnsupportedCase);
KUMMERLAB_DEFINE_ERROR(BackendOutOfRange);
KUMMERLAB_DEFINE_ERROR(DigitDepthExceeded);
KUMMERLAB_DEFINE_ERROR(InvalidDiscriminant);
KUMMERLAB_DEFINE_ERROR(ParseError);

#undef KUMMERLAB_DEFINE_ERROR

} // namespace kummerlab
