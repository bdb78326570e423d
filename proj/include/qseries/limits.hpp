#pragma once
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qseries/bigfloat.hpp"
#include "qseries/registry.hpp"

namespace qs {

inline constexpr unsigned default_digits = 60;
inline constexpr long default_terms = 40;

// Working precision for one evaluation. Values are trusted to
// digits - guard decimal places.
struct BigFloatCtx {
    unsigned digits = default_digits;
    unsigned guard = 10;

    BigFloat tolerance() const;
};

// value = lead + sign * sum_{n >= start} term(n), term exact rational in n
struct SeriesSpec {
    Expr lead;
    int sign = 1;
    long start = 0;
    Expr term;
    std::optional<Rat> base;

    static SeriesSpec from(const ClassicalLimit& c);
};

Rat series_term(const SeriesSpec& s, long n);

BigFloat gamma_hp(const Rat& x, const BigFloatCtx& ctx = {});

struct SeriesValue {
    BigFloat value;
    BigFloat tail_bound;  // estimate of |value - limit|
    long terms = 0;
};

// partial sum of M terms; every term is exact before it is floated
SeriesValue eval_series(const SeriesSpec& s, long M, const BigFloatCtx& ctx = {});
BigFloat eval_closed_form(const Expr& value, const BigFloatCtx& ctx = {});

struct RateMeasurement {
    std::vector<Rat> ratios;  // term(n+1)/term(n) for n = start .. start+M-2
    double last_ratio = 0;
    double fitted = 0;        // Richardson extrapolation of the ratios
    std::optional<Rat> declared;
    double rel_error() const;  // |fitted - declared| / |declared|, or -1 without a declared base
};

RateMeasurement measure_rate(const SeriesSpec& s, long M);

// limit as q -> 1 of prod (q^a;q)_inf / prod (q^c;q)_inf with sum a = sum c,
// which is prod Gamma(c) / prod Gamma(a)
BigFloat balanced_limit(const std::vector<Rat>& a, const std::vector<Rat>& c, const BigFloatCtx& ctx = {});
// exponents of a product side whose factors are all (q^x;q)_inf
std::vector<Rat> product_exponents(const std::vector<ProductFactor>& v, int root = default_root);
// direct double evaluation of the same quotient at a numeric q in (0, 1)
double q_product_numeric(const std::vector<Rat>& a, const std::vector<Rat>& c, double q);

struct LimitReport {
    std::string id;
    BigFloat series_value, closed_form_value, abs_diff, tail_bound, tolerance;
    std::optional<Rat> declared_base;
    double fitted_base = 0;
    long terms = 0;
    unsigned digits = 0;
    bool within() const;  // abs_diff within tail bound plus working tolerance
};

LimitReport check_limit(const IdentityRecord& r, long M = default_terms, const BigFloatCtx& ctx = {});
nlohmann::json limit_json(const LimitReport& r);

std::string format_float(const BigFloat& x, unsigned digits);

} // namespace qs
