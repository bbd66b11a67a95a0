#ifndef PISOT_ERRORS_HPP
#define PISOT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace pisot {

// Every failure raised by the library carries a stable machine-readable code
// (used verbatim in CLI reports) next to the human-readable message.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& what)
        : std::runtime_error(what), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

#define PISOT_DEFINE_ERROR(Name)                                              \
    class Name : public Error {                                               \
    public:                                                                   \
        explicit Name(const std::string& what) : Error(#Name, what) {}        \
    };

PISOT_DEFINE_ERROR(NonExactDivision)
PISOT_DEFINE_ERROR(DegreeMismatch)
PISOT_DEFINE_ERROR(InvalidParameters)
PISOT_DEFINE_ERROR(NotMonic)
PISOT_DEFINE_ERROR(ZeroConstantTerm)
PISOT_DEFINE_ERROR(ExactHalfInteger)
PISOT_DEFINE_ERROR(PrecisionExhausted)
PISOT_DEFINE_ERROR(NotPisot)
PISOT_DEFINE_ERROR(NoRecurrenceFound)
PISOT_DEFINE_ERROR(RecurrenceUnavailable)
PISOT_DEFINE_ERROR(IndexBelowOnset)
PISOT_DEFINE_ERROR(IncomparableMagnitudes)
PISOT_DEFINE_ERROR(VariantInapplicable)
PISOT_DEFINE_ERROR(NoRootInInterval)
PISOT_DEFINE_ERROR(ResidualTooLarge)
PISOT_DEFINE_ERROR(IncomparableAdjacent)

#undef PISOT_DEFINE_ERROR

} // namespace pisot

#endif
