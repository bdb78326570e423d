#include "qseries/inversion.hpp"

namespace qs {

LaurentSeries jackson_lhs(const WellPoisedParams& p, long n, long order, int root) {
    return jackson_lhs_t(SeriesField{order, root}, p, n);
}

LaurentSeries jackson_rhs(const WellPoisedParams& p, long n, long order, int root) {
    return jackson_rhs_t(SeriesField{order, root}, p, n).truncated(order);
}

Rat jackson_lhs_rational(const WellPoisedParams& p, long n, const Rat& t, int root) {
    return jackson_lhs_t(RatField{t, root}, p, n);
}

Rat jackson_rhs_rational(const WellPoisedParams& p, long n, const Rat& t, int root) {
    return jackson_rhs_t(RatField{t, root}, p, n);
}

std::string variant_name(InversionVariant v) {
    switch (v) {
    case InversionVariant::gould_hsu: return "gould-hsu";
    case InversionVariant::carlitz: return "carlitz";
    case InversionVariant::extended: return "extended";
    case InversionVariant::reformulated: return "reformulated";
    }
    return "?";
}

bool gould_hsu_roundtrip(const InversionSpec& s, const std::vector<LaurentSeries>& g, long N, long order, int root) {
    return inversion_roundtrip_t(SeriesField{order, root}, s, g, N);
}

bool gould_hsu_roundtrip_rational(const InversionSpec& s, const std::vector<Rat>& g, long N, const Rat& t, int root) {
    return inversion_roundtrip_t(RatField{t, root}, s, g, N);
}

LaurentSeries lemma_H_value(const WellPoisedParams& p, const PartitionPattern& pat, long n, long order, int root) {
    return lemma_H_t(SeriesField{order, root}, pat, p, n).truncated(order);
}

bool lemma_H_verify(const WellPoisedParams& p, const PartitionPattern& pat, long n, long order, int root) {
    SeriesField f{order, root};
    return !first_difference(lemma_H_lhs_t(f, p, n), lemma_H_rhs_t(f, pat, p, n)).has_value();
}

bool lemma_H_verify_rational(const WellPoisedParams& p, const PartitionPattern& pat, long n, const Rat& t, int root) {
    RatField f{t, root};
    return lemma_H_lhs_t(f, p, n) == lemma_H_rhs_t(f, pat, p, n);
}

LaurentSeries dual_series_term(const DualTheoremSpec& s, long n, long i, long order, int root) {
    return dual_series_term_t(SeriesField{order, root}, s, n, i).truncated(order);
}

} // namespace qs
