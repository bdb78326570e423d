#include "qseries/poly.hpp"

#include <sstream>

#include "qseries/errors.hpp"

namespace qs {

Poly::Poly(const Rat& c) {
    if (c != 0) c_.push_back(c);
}

Poly::Poly(std::vector<Rat> c) : c_(std::move(c)) { trim(); }

Poly Poly::monomial(const Rat& c, long deg) {
    if (c == 0) return Poly();
    std::vector<Rat> v(static_cast<std::size_t>(deg + 1));
    v[deg] = c;
    return Poly(std::move(v));
}

void Poly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Rat Poly::coeff(long d) const {
    if (d < 0 || d > degree()) return 0;
    return c_[d];
}

long Poly::low_degree() const {
    for (std::size_t i = 0; i < c_.size(); ++i)
        if (c_[i] != 0) return static_cast<long>(i);
    return -1;
}

Poly Poly::operator-() const {
    Poly r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
}

Poly& Poly::operator+=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
}

Poly& Poly::operator*=(const Poly& o) {
    *this = *this * o;
    return *this;
}

Poly operator+(Poly a, const Poly& b) { return a += b; }
Poly operator-(Poly a, const Poly& b) { return a -= b; }

Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    std::vector<Rat> out(a.coeffs().size() + b.coeffs().size() - 1);
    Rat tmp;
    for (std::size_t i = 0; i < a.coeffs().size(); ++i) {
        if (a.coeffs()[i] == 0) continue;
        for (std::size_t j = 0; j < b.coeffs().size(); ++j) {
            if (b.coeffs()[j] == 0) continue;
            mpq_mul(tmp.get_mpq_t(), a.coeffs()[i].get_mpq_t(), b.coeffs()[j].get_mpq_t());
            out[i + j] += tmp;
        }
    }
    return Poly(std::move(out));
}

Rat Poly::eval(const Rat& x) const {
    Rat acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

Poly Poly::monic() const {
    if (is_zero()) return *this;
    Poly r = *this;
    Rat l = lead();
    for (auto& x : r.c_) x /= l;
    return r;
}

std::string Poly::str(const char* var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (long d = degree(); d >= 0; --d) {
        const Rat& c = c_[d];
        if (c == 0) continue;
        os << (first ? (c < 0 ? "-" : "") : (c < 0 ? " - " : " + "));
        first = false;
        Rat ac = abs(c);
        if (d == 0) os << ac;
        else {
            if (ac != 1) os << ac << "*";
            os << var;
            if (d > 1) os << "^" << d;
        }
    }
    return os.str();
}

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw DomainError("polynomial division by zero");
    std::vector<Rat> r = a.coeffs();
    long db = b.degree();
    long dq = a.degree() - db;
    if (dq < 0) return {Poly(), a};
    std::vector<Rat> q(static_cast<std::size_t>(dq + 1));
    Rat inv = 1 / b.lead(), tmp;
    for (long k = dq; k >= 0; --k) {
        Rat c = r[k + db] * inv;
        if (c == 0) continue;
        q[k] = c;
        for (long j = 0; j <= db; ++j) {
            if (b.coeffs()[j] == 0) continue;
            mpq_mul(tmp.get_mpq_t(), c.get_mpq_t(), b.coeffs()[j].get_mpq_t());
            r[k + j] -= tmp;
        }
    }
    return {Poly(std::move(q)), Poly(std::move(r))};
}

Poly exact_div(const Poly& a, const Poly& b) {
    auto [q, r] = divmod(a, b);
    if (!r.is_zero()) throw ExactDivisionFailed("(" + b.str() + ") does not divide (" + a.str() + ")");
    return q;
}

Poly gcd(const Poly& a, const Poly& b) {
    Poly x = a, y = b;
    while (!y.is_zero()) {
        Poly r = divmod(x, y).second;
        x = std::move(y);
        y = r.monic();
    }
    return x.monic();
}

RatFunc::RatFunc(const Poly& num, const Poly& den) {
    if (den.is_zero()) throw DomainError("rational function with zero denominator");
    if (num.is_zero()) {
        num_ = Poly();
        den_ = Poly(Rat(1));
        return;
    }
    Poly g = gcd(num, den);
    Poly n = exact_div(num, g), d = exact_div(den, g);
    Rat l = d.lead();
    num_ = n * Poly(1 / l);
    den_ = d * Poly(1 / l);
}

std::string RatFunc::str(const char* var) const {
    if (den_.degree() == 0) return num_.str(var);
    return "(" + num_.str(var) + ")/(" + den_.str(var) + ")";
}

RatFunc operator+(const RatFunc& a, const RatFunc& b) {
    return RatFunc(a.num() * b.den() + b.num() * a.den(), a.den() * b.den());
}
RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }
RatFunc operator*(const RatFunc& a, const RatFunc& b) { return RatFunc(a.num() * b.num(), a.den() * b.den()); }
RatFunc operator/(const RatFunc& a, const RatFunc& b) {
    if (b.is_zero()) throw DomainError("rational function division by zero");
    return RatFunc(a.num() * b.den(), a.den() * b.num());
}

} // namespace qs
