#pragma once
#include <string>
#include <utility>
#include <vector>

#include "qseries/rat.hpp"

namespace qs {

// Dense univariate polynomial over Q; trailing zeros are trimmed.
class Poly {
public:
    Poly() = default;
    Poly(const Rat& c);
    explicit Poly(std::vector<Rat> c);
    static Poly monomial(const Rat& c, long deg);

    long degree() const { return static_cast<long>(c_.size()) - 1; }  // -1 for zero
    bool is_zero() const { return c_.empty(); }
    const std::vector<Rat>& coeffs() const { return c_; }
    Rat coeff(long d) const;
    const Rat& lead() const { return c_.back(); }
    long low_degree() const;  // lowest degree with a nonzero coefficient

    Poly operator-() const;
    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    Poly& operator*=(const Poly& o);
    bool operator==(const Poly& o) const { return c_ == o.c_; }

    Rat eval(const Rat& x) const;
    Poly monic() const;
    std::string str(const char* var = "t") const;

private:
    void trim();
    std::vector<Rat> c_;
};

Poly operator+(Poly a, const Poly& b);
Poly operator-(Poly a, const Poly& b);
Poly operator*(const Poly& a, const Poly& b);

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);
// throws ExactDivisionFailed when b does not divide a
Poly exact_div(const Poly& a, const Poly& b);
Poly gcd(const Poly& a, const Poly& b);  // monic, gcd(0,0) = 0

// num/den with gcd(num, den) = 1 and den monic
class RatFunc {
public:
    RatFunc() : num_(), den_(Rat(1)) {}
    RatFunc(const Poly& p) : num_(p), den_(Rat(1)) {}
    RatFunc(const Poly& num, const Poly& den);

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }

    RatFunc operator-() const { return RatFunc(-num_, den_); }
    bool operator==(const RatFunc& o) const { return num_ == o.num_ && den_ == o.den_; }
    std::string str(const char* var = "t") const;

private:
    Poly num_, den_;
};

RatFunc operator+(const RatFunc& a, const RatFunc& b);
RatFunc operator-(const RatFunc& a, const RatFunc& b);
RatFunc operator*(const RatFunc& a, const RatFunc& b);
RatFunc operator/(const RatFunc& a, const RatFunc& b);

} // namespace qs
