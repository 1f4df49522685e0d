#pragma once

#include <stdexcept>
#include <string>

namespace quadcert {

/// Base of every exception thrown by the library. `kind()` is a stable,
/// machine-friendly name used in CLI diagnostics.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
    virtual const char* kind() const noexcept = 0;
};

#define QUADCERT_DEFINE_ERROR(Name)                                   \
    class Name : public Error {                                       \
    public:                                                           \
        using Error::Error;                                           \
        const char* kind() const noexcept override { return #Name; }  \
    }

QUADCERT_DEFINE_ERROR(DegenerateInterval);
QUADCERT_DEFINE_ERROR(InvalidExponent);
QUADCERT_DEFINE_ERROR(InvalidArgument);
QUADCERT_DEFINE_ERROR(DomainError);
QUADCERT_DEFINE_ERROR(ToleranceNotMet);
QUADCERT_DEFINE_ERROR(NonFiniteIntegrand);
QUADCERT_DEFINE_ERROR(NonFiniteValue);

#undef QUADCERT_DEFINE_ERROR

}  // namespace quadcert
