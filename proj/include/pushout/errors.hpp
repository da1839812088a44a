#pragma once

#include <stdexcept>
#include <string>

namespace pushout {

// Domain errors carry a stable short name so the CLI can report which
// contract failed without parsing message text.
class DomainError : public std::runtime_error {
public:
    DomainError(std::string name, const std::string& msg)
        : std::runtime_error(msg), name_(std::move(name)) {}
    const std::string& name() const { return name_; }

private:
    std::string name_;
};

#define PUSHOUT_DEFINE_ERROR(Name)                            \
    class Name : public DomainError {                         \
    public:                                                   \
        explicit Name(const std::string& msg)                 \
            : DomainError(#Name, msg) {}                      \
    }

PUSHOUT_DEFINE_ERROR(BadSpec);
PUSHOUT_DEFINE_ERROR(NonImmersion);
PUSHOUT_DEFINE_ERROR(ShootingFailed);
PUSHOUT_DEFINE_ERROR(NoFocalData);
PUSHOUT_DEFINE_ERROR(NonUnitTangent);
PUSHOUT_DEFINE_ERROR(OpenCurve);
PUSHOUT_DEFINE_ERROR(GridMismatch);
PUSHOUT_DEFINE_ERROR(NotClosedError);
PUSHOUT_DEFINE_ERROR(InvalidFiber);

#undef PUSHOUT_DEFINE_ERROR

}  // namespace pushout
