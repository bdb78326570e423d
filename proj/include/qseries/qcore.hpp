#pragma once
#include <array>
#include <string>

#include "qseries/bigfloat.hpp"
#include "qseries/laurent.hpp"
#include "qseries/rat.hpp"

namespace qs {

constexpr int default_root = 12;

// q^{num/root}; q = t^root so the exponent is num in t-units
struct QExp {
    long num = 0;
    int root = default_root;
    static QExp from_rat(const Rat& x, int root = default_root);  // RootMismatch unless x*root is integral
    Rat value() const { return Rat(num) / root; }
};

// coeff * t^e * y^ypow, where y stands for q^n in the bisection domain.
// eps is the weight of the generic perturbation used to resolve factors
// that vanish at the exact specialization (see RegField).
struct QMonomial {
    Rat coeff = 1;
    long e = 0;
    long eps = 0;
    int ypow = 0;

    static QMonomial q_power(const Rat& x, int root = default_root, const Rat& coeff = 1);
    static QMonomial q(int root = default_root) { return QMonomial{1, root, 0, 0}; }

    QMonomial inverse() const;
    QMonomial pow(long k) const;
    bool is_one() const { return coeff == 1 && e == 0 && ypow == 0; }
    bool operator==(const QMonomial& o) const {
        return coeff == o.coeff && e == o.e && eps == o.eps && ypow == o.ypow;
    }
    LaurentSeries series() const;  // y must not appear
    std::string str(int root = default_root) const;
};

QMonomial operator*(const QMonomial& a, const QMonomial& b);
QMonomial operator/(const QMonomial& a, const QMonomial& b);

// Λ, ε and λ of a partition pattern, slots ordered b, c, d, e
struct PartitionPattern {
    int Lambda = 1;
    std::array<int, 4> eps{};
    std::array<int, 4> lam{};
    std::string name;

    bool valid(int n_check = 200) const;
    static PartitionPattern duplicate();   // Λ=2
    static PartitionPattern triplicate();  // Λ=3
    static PartitionPattern mixed();       // Λ=3 with λ_d = 2
};

std::array<long, 4> partition_indices(const PartitionPattern& p, long n);

struct WellPoisedParams {
    QMonomial a, b, c, d;
};

QMonomial theta(const PartitionPattern& p, const WellPoisedParams& w, long m, int root = default_root);

LaurentSeries poch_finite(const QMonomial& x, long n, long order, int root = default_root);
LaurentSeries poch_infinite(const QMonomial& x, long order, int root = default_root);
LaurentSeries gauss_binom(long m, long n, long order = LaurentSeries::exact, int root = default_root);

// Γ_q(x) = (1-q)^{1-x} (q;q)∞/(q^x;q)∞ evaluated at the current BigFloat precision
BigFloat q_gamma_numeric(const Rat& x, const BigFloat& q);

} // namespace qs
