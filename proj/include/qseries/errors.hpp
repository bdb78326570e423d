#pragma once
#include <stdexcept>
#include <string>

namespace qs {

// Every failure carries a short machine-readable kind plus a human message.
struct error : std::runtime_error {
    std::string kind;
    error(std::string k, const std::string& msg) : std::runtime_error(msg), kind(std::move(k)) {}
};

#define QS_ERROR(name)                                                              \
    struct name : error {                                                           \
        explicit name(const std::string& msg) : error(#name, msg) {}               \
    }

QS_ERROR(ZeroLeadingCoefficient);
QS_ERROR(ParameterError);
QS_ERROR(RootMismatch);
QS_ERROR(DivergentProduct);
QS_ERROR(DegenerateSpec);
QS_ERROR(VanishingDenominatorFactor);
QS_ERROR(RegularizationCancellation);
QS_ERROR(NonmonotoneValuation);
QS_ERROR(ExactDivisionFailed);
QS_ERROR(NoBisection);
QS_ERROR(AmbiguousSign);
QS_ERROR(DegenerateTerm);
QS_ERROR(PoleError);
QS_ERROR(ParseError);
QS_ERROR(CatalogError);
QS_ERROR(DomainError);

#undef QS_ERROR

} // namespace qs
