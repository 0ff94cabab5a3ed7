#ifndef QSALG_ERRORS_HPP
#define QSALG_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qsalg {

/// Base of every library error. Two families exist: validation errors
/// (bad input, recoverable, CLI exit code 1) and invariant violations
/// (a bug or a broken internal guarantee, CLI exit code 2).
class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class validation_error : public error {
public:
    using error::error;
};

class invariant_violation : public error {
public:
    using error::error;
};

#define QSALG_DEFINE_ERROR(name, base)                                         \
    class name : public base {                                                 \
    public:                                                                    \
        using base::base;                                                      \
    };

QSALG_DEFINE_ERROR(UnknownLetter, validation_error)
QSALG_DEFINE_ERROR(NoCoordinateForm, validation_error)
QSALG_DEFINE_ERROR(MomentUnavailable, validation_error)
QSALG_DEFINE_ERROR(NotPositiveSemidefinite, validation_error)
QSALG_DEFINE_ERROR(NotInSpan, validation_error)
QSALG_DEFINE_ERROR(TruncationExceeded, validation_error)
QSALG_DEFINE_ERROR(InconsistentSpec, validation_error)
QSALG_DEFINE_ERROR(UnsupportedSpec, validation_error)
QSALG_DEFINE_ERROR(MissingGrid, validation_error)
QSALG_DEFINE_ERROR(ParseError, validation_error)

#undef QSALG_DEFINE_ERROR

} // namespace qsalg

#endif
