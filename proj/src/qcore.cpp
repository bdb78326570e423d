#include "qseries/qcore.hpp"

#include <sstream>

#include "qseries/errors.hpp"
#include "qseries/field.hpp"

namespace qs {

QExp QExp::from_rat(const Rat& x, int root) {
    Rat s = x * root;
    if (!is_integer(s))
        throw RootMismatch("exponent " + x.get_str() + " is not a multiple of 1/" + std::to_string(root));
    return QExp{to_long(s), root};
}

QMonomial QMonomial::q_power(const Rat& x, int root, const Rat& coeff) {
    if (coeff == 0) throw ParameterError("q-monomial with zero coefficient");
    return QMonomial{coeff, QExp::from_rat(x, root).num, 0, 0};
}

QMonomial QMonomial::inverse() const {
    if (coeff == 0) throw DomainError("inverse of a zero monomial");
    return QMonomial{1 / coeff, -e, -eps, -ypow};
}

QMonomial QMonomial::pow(long k) const {
    if (k < 0) return inverse().pow(-k);
    return QMonomial{rat_pow(coeff, k), e * k, eps * k, static_cast<int>(ypow * k)};
}

QMonomial operator*(const QMonomial& a, const QMonomial& b) {
    return QMonomial{a.coeff * b.coeff, a.e + b.e, a.eps + b.eps, a.ypow + b.ypow};
}

QMonomial operator/(const QMonomial& a, const QMonomial& b) { return a * b.inverse(); }

LaurentSeries QMonomial::series() const {
    if (ypow != 0) throw DomainError("monomial still depends on y");
    return LaurentSeries::monomial(coeff, e);
}

std::string QMonomial::str(int root) const {
    std::ostringstream os;
    Rat x(e, root);
    x.canonicalize();
    bool bare = true;
    if (coeff != 1) {
        os << coeff;
        bare = false;
    }
    if (x != 0) {
        if (!bare) os << "*";
        os << "q";
        if (x != 1) os << "^" << (is_integer(x) ? x.get_str() : "(" + x.get_str() + ")");
        bare = false;
    }
    if (ypow != 0) {
        if (!bare) os << "*";
        os << "y";
        if (ypow != 1) os << "^" << ypow;
        bare = false;
    }
    if (bare) os << "1";
    return os.str();
}

bool PartitionPattern::valid(int n_check) const {
    if (Lambda <= 0) return false;
    int s = 0;
    for (int i = 0; i < 4; ++i) {
        if (eps[i] < 0 || lam[i] < 0) return false;
        s += lam[i];
    }
    if (s != Lambda) return false;
    for (int n = 0; n <= n_check; ++n) {
        auto ix = partition_indices(*this, n);
        if (ix[0] + ix[1] + ix[2] + ix[3] != n) return false;
    }
    return true;
}

PartitionPattern PartitionPattern::duplicate() { return {2, {0, 0, 1, 0}, {1, 0, 1, 0}, "duplicate"}; }
PartitionPattern PartitionPattern::triplicate() { return {3, {0, 1, 2, 0}, {1, 1, 1, 0}, "triplicate"}; }
PartitionPattern PartitionPattern::mixed() { return {3, {1, 0, 1, 0}, {1, 0, 2, 0}, "mixed"}; }

std::array<long, 4> partition_indices(const PartitionPattern& p, long n) {
    std::array<long, 4> out{};
    for (int i = 0; i < 4; ++i) out[i] = floor_div(p.eps[i] + n * p.lam[i], p.Lambda);
    return out;
}

QMonomial theta(const PartitionPattern& p, const WellPoisedParams& w, long m, int root) {
    auto ix = partition_indices(p, m);
    long qe = binom2(m);
    for (long k : ix) qe -= binom2(k);
    QMonomial q = QMonomial::q(root);
    QMonomial out = q.pow(qe);
    out = out * (w.a / w.b).pow(ix[0]);
    out = out * (w.a / w.c).pow(ix[1]);
    out = out * (w.a / w.d).pow(ix[2]);
    out = out * (w.b * w.c * w.d / (q * w.a)).pow(ix[3]);
    return out;
}

LaurentSeries poch_finite(const QMonomial& x, long n, long order, int root) {
    if (n < 0) throw DomainError("poch_finite needs n >= 0");
    SeriesField f{order, root};
    return poch(f, x, QMonomial::q(root), n);
}

LaurentSeries poch_infinite(const QMonomial& x, long order, int root) {
    SeriesField f{order, root};
    return apply_poch_inf(f, f.one(), x, QMonomial::q(root), false);
}

LaurentSeries gauss_binom(long m, long n, long order, int root) {
    if (n < 0 || n > m) return LaurentSeries::zero(order);
    // (q^{m-n+1};q)_n / (q;q)_n is a polynomial, so exact division is available
    QMonomial q = QMonomial::q(root);
    LaurentSeries num(1), den(1);
    for (long k = 0; k < n; ++k) {
        num = ls_mul(num, LaurentSeries(1) - (q.pow(m - n + 1 + k)).series());
        den = ls_mul(den, LaurentSeries(1) - (q.pow(1 + k)).series());
    }
    LaurentSeries r = ls_div(num, den);
    return r.truncated(order);
}

BigFloat q_gamma_numeric(const Rat& x, const BigFloat& q) {
    if (q <= 0 || q >= 1) throw DomainError("q_gamma_numeric needs 0 < q < 1");
    if (is_integer(x) && x <= 0) throw PoleError("Γ_q has a pole at " + x.get_str());
    unsigned digits = BigFloat::default_precision();
    BigFloat tol = pow(BigFloat(10), -static_cast<long>(digits + 10));
    BigFloat xf = BigFloat(x.get_num().get_str()) / BigFloat(x.get_den().get_str());
    BigFloat qx = pow(q, xf);
    BigFloat num = 1, den = 1, qk = q, qxk = qx;
    // both products converge geometrically; stop once each factor is 1 to working precision
    while (abs(qk) > tol || abs(qxk) > tol) {
        num *= 1 - qk;
        den *= 1 - qxk;
        qk *= q;
        qxk *= q;
    }
    return pow(1 - q, 1 - xf) * num / den;
}

} // namespace qs
