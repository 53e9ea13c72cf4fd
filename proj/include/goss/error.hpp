#pragma once

#include <stdexcept>
#include <string>

namespace goss {

/// Base class of every error raised by the library. `kind()` is the stable
/// machine-readable name used in CLI error objects.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& what)
        : std::runtime_error(what), kind_(std::move(kind)) {}

    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

#define GOSS_DEFINE_ERROR(Name)                                              \
    class Name : public Error {                                              \
    public:                                                                  \
        explicit Name(const std::string& what) : Error(#Name, what) {}       \
    }

GOSS_DEFINE_ERROR(ZeroElement);
GOSS_DEFINE_ERROR(ZeroToPrecision);
GOSS_DEFINE_ERROR(ParseError);
GOSS_DEFINE_ERROR(Unsupported);
GOSS_DEFINE_ERROR(NotIrreducible);
GOSS_DEFINE_ERROR(InsufficientField);
GOSS_DEFINE_ERROR(NoConvergence);
GOSS_DEFINE_ERROR(MultipleRoot);
GOSS_DEFINE_ERROR(NoRootInField);
GOSS_DEFINE_ERROR(RamificationNeeded);
GOSS_DEFINE_ERROR(PrecisionExhausted);
GOSS_DEFINE_ERROR(DivergentInput);
GOSS_DEFINE_ERROR(MethodDisagreement);
GOSS_DEFINE_ERROR(IntegralityViolation);
GOSS_DEFINE_ERROR(NoStabilization);
GOSS_DEFINE_ERROR(SingularSystem);
GOSS_DEFINE_ERROR(FieldMismatch);

#undef GOSS_DEFINE_ERROR

}  // namespace goss
