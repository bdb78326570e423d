#pragma once
#include <array>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qseries/expr.hpp"
#include "qseries/theorems.hpp"

namespace qs {

// (arg; base)_inf
struct ProductFactor {
    Expr arg;
    Expr base;
};

// q -> 1 limit: value = lead + sign * Σ_{n >= start} term(n)
struct ClassicalLimit {
    Expr value;
    Expr lead;
    int sign = 1;
    long start = 0;
    Expr term;
    std::optional<Rat> rate;  // expected term-ratio base
};

struct IdentityRecord {
    std::string id;
    int section = 3;
    Theorem theorem = Theorem::T2U;
    std::string form = "direct";  // direct | bisected
    std::array<Rat, 4> params;
    std::optional<Rat> e;
    int root = default_root;
    std::vector<ProductFactor> lhs_num, lhs_den;
    Expr rhs_lead;
    int rhs_sign = 1;
    long rhs_start = 0;
    Expr rhs;
    std::optional<ClassicalLimit> classical;
    std::string note;
    int line = 0;
};

// inputs of the reverse bisection for one specialization; every entry is an
// expression in q and y (y = q^n)
struct BisectionCaseData {
    std::string id;
    std::string source;  // record id of the triplicate example it reduces
    Theorem theorem = Theorem::T3U;
    std::array<Rat, 4> params;
    std::vector<ProductFactor> lhs_num, lhs_den;  // product side of the bisection series
    Expr weight_scale;   // multiplies the theorem weight so the prefactor clears it
    Expr prefactor;
    Expr A, B;           // multipliers of Q(y) and Q(q^{1/2} y)
    Expr shift;          // monomial in front of B
    Expr term;           // T_n of the reduced alternating series, an expression in n and q
    long degree = 6;
    int line = 0;
};

struct Catalog {
    std::vector<IdentityRecord> records;
    std::vector<BisectionCaseData> bisections;

    const IdentityRecord* find(const std::string& id) const;
    const BisectionCaseData* find_bisection(const std::string& id) const;
};

std::string default_catalog_path();
Catalog load_catalog(const std::string& path);
Catalog parse_catalog(std::istream& in, const std::string& source = "<catalog>");
std::string serialize_catalog(const Catalog& c);

// exact q-monomial value of a product argument or base
QMonomial factor_monomial(const Expr& e, int root = default_root);

// series of the displayed sides
WellPoisedParams record_params(const IdentityRecord& r, bool perturb = false);
LaurentSeries product_series(const std::vector<ProductFactor>& num, const std::vector<ProductFactor>& den, long order,
                             int root = default_root);
LaurentSeries display_lhs(const IdentityRecord& r, long order);
LaurentSeries display_rhs(const IdentityRecord& r, long order, SumResult* info = nullptr);

enum class Status { verified, mismatch, unverified };
std::string status_name(Status s);

struct VerificationReport {
    std::string id;
    Status status = Status::unverified;
    std::optional<long> first_diff_exp;  // t-exponent, q = t^root
    std::string lhs_coeff, rhs_coeff;
    std::string check;   // which comparison produced the verdict: display or theorem
    std::string cause;   // for unverified records
    long terms_used = 0;
    long order = 0;
    int root = default_root;
    double elapsed_ms = 0;
};

VerificationReport verify_identity(const IdentityRecord& r, long order = 200);
std::vector<VerificationReport> verify_all(const std::vector<IdentityRecord>& recs, long order = 200,
                                           bool parallel = true);
std::vector<VerificationReport> verify_all_serial(const std::vector<IdentityRecord>& recs, long order = 200);

nlohmann::json report_json(const VerificationReport& r, bool with_elapsed = true);
nlohmann::json summary_json(const std::vector<VerificationReport>& reps, bool with_elapsed = true);

} // namespace qs
