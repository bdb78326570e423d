#include "qseries/laurent.hpp"

#include <algorithm>
#include <sstream>

#include <omp.h>

#include "qseries/errors.hpp"

namespace qs {

Rat parse_rat(std::string_view s) {
    std::string t;
    for (char ch : s)
        if (ch != ' ' && ch != '\t') t += ch;
    if (t.empty()) throw ParseError("empty rational");
    if (t[0] == '+') t.erase(0, 1);
    for (std::size_t i = 0; i < t.size(); ++i) {
        char ch = t[i];
        bool ok = (ch >= '0' && ch <= '9') || ch == '/' || (ch == '-' && i == 0);
        if (!ok) throw ParseError("bad rational '" + std::string(s) + "'");
    }
    Rat r;
    if (r.set_str(t, 10) != 0) throw ParseError("bad rational '" + std::string(s) + "'");
    if (r.get_den() == 0) throw ParseError("zero denominator in '" + std::string(s) + "'");
    r.canonicalize();
    return r;
}

std::string to_string(const Rat& r) { return r.get_str(); }

Rat rat_pow(const Rat& base, long e) {
    Rat out = 1, b = base;
    if (e < 0) {
        if (b == 0) throw DomainError("zero to a negative power");
        b = 1 / b;
        e = -e;
    }
    while (e) {
        if (e & 1) out *= b;
        e >>= 1;
        if (e) b *= b;
    }
    return out;
}

bool is_integer(const Rat& r) { return r.get_den() == 1; }

long to_long(const Rat& r) {
    if (!is_integer(r) || !r.get_num().fits_slong_p()) throw DomainError("not a machine integer: " + r.get_str());
    return r.get_num().get_si();
}

long floor_div(long a, long b) {
    long q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

long binom2(long m) { return m * (m - 1) / 2; }

long ord_add(long a, long b) {
    if (a >= LaurentSeries::exact || b >= LaurentSeries::exact) return LaurentSeries::exact;
    long s = a + b;
    return s >= LaurentSeries::exact ? LaurentSeries::exact - 1 : s;
}

LaurentSeries::LaurentSeries(const Rat& c) {
    if (c != 0) {
        lo_ = 0;
        c_.push_back(c);
    }
}

LaurentSeries LaurentSeries::monomial(const Rat& c, long e, long order) {
    LaurentSeries s;
    s.order_ = order;
    s.lo_ = order;
    if (c != 0 && e < order) {
        s.lo_ = e;
        s.c_.push_back(c);
    }
    return s;
}

LaurentSeries LaurentSeries::zero(long order) {
    LaurentSeries s;
    s.order_ = order;
    s.lo_ = order;
    return s;
}

LaurentSeries LaurentSeries::from_coeffs(long first_exp, std::vector<Rat> c, long order) {
    LaurentSeries s;
    s.order_ = order;
    s.lo_ = first_exp;
    s.c_ = std::move(c);
    s.normalize();
    return s;
}

void LaurentSeries::normalize() {
    if (!c_.empty() && order_ < exact) {
        long keep = order_ - lo_;
        if (keep <= 0) c_.clear();
        else if (static_cast<long>(c_.size()) > keep) c_.resize(keep);
    }
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
    std::size_t k = 0;
    while (k < c_.size() && c_[k] == 0) ++k;
    if (k == c_.size()) {
        c_.clear();
        lo_ = order_;
        return;
    }
    if (k) {
        c_.erase(c_.begin(), c_.begin() + static_cast<long>(k));
        lo_ += static_cast<long>(k);
    }
}

bool LaurentSeries::is_monomial() const { return c_.size() == 1; }

std::size_t LaurentSeries::nnz() const {
    std::size_t n = 0;
    for (const auto& x : c_)
        if (x != 0) ++n;
    return n;
}

Rat LaurentSeries::coeff(long e) const {
    if (c_.empty() || e < lo_ || e > top_exp()) return 0;
    return c_[e - lo_];
}

LaurentSeries LaurentSeries::truncated(long order) const {
    if (order >= order_) return *this;
    LaurentSeries s = *this;
    s.order_ = order;
    s.normalize();
    return s;
}

LaurentSeries LaurentSeries::shifted(long k) const {
    LaurentSeries s = *this;
    s.order_ = ord_add(order_, k);
    if (s.c_.empty()) s.lo_ = s.order_;
    else s.lo_ += k;
    return s;
}

LaurentSeries LaurentSeries::scaled(const Rat& f) const {
    if (f == 0) return zero(order_);
    LaurentSeries s = *this;
    for (auto& x : s.c_) x *= f;
    return s;
}

LaurentSeries LaurentSeries::operator-() const { return scaled(-1); }

LaurentSeries& LaurentSeries::operator+=(const LaurentSeries& o) {
    long ord = std::min(order_, o.order_);
    if (o.c_.empty()) {
        order_ = ord;
        normalize();
        if (c_.empty()) lo_ = order_;
        return *this;
    }
    if (c_.empty()) {
        *this = o.truncated(ord);
        order_ = ord;
        if (c_.empty()) lo_ = order_;
        return *this;
    }
    long lo = std::min(lo_, o.lo_);
    long hi = std::max(top_exp(), o.top_exp());
    if (ord < exact) hi = std::min(hi, ord - 1);
    if (hi < lo) {
        c_.clear();
        order_ = ord;
        lo_ = ord;
        return *this;
    }
    std::vector<Rat> out(static_cast<std::size_t>(hi - lo + 1));
    for (std::size_t i = 0; i < c_.size(); ++i) {
        long e = lo_ + static_cast<long>(i);
        if (e <= hi) out[e - lo] = c_[i];
    }
    for (std::size_t i = 0; i < o.c_.size(); ++i) {
        long e = o.lo_ + static_cast<long>(i);
        if (e <= hi) out[e - lo] += o.c_[i];
    }
    c_ = std::move(out);
    lo_ = lo;
    order_ = ord;
    normalize();
    return *this;
}

LaurentSeries& LaurentSeries::operator-=(const LaurentSeries& o) { return *this += -o; }

bool LaurentSeries::operator==(const LaurentSeries& o) const {
    return order_ == o.order_ && lo_ == o.lo_ && c_ == o.c_;
}

std::string LaurentSeries::str(int root) const {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        long e = lo_ + static_cast<long>(i);
        Rat c = c_[i];
        if (!first) os << (c < 0 ? " - " : " + ");
        else if (c < 0) os << "-";
        Rat ac = abs(c);
        first = false;
        if (e == 0) {
            os << ac;
            continue;
        }
        if (ac != 1) os << ac << "*";
        Rat ex(e, root);
        ex.canonicalize();
        const char* var = root == 1 ? "t" : "q";
        if (ex == 1) os << var;
        else if (is_integer(ex) && ex > 0) os << var << "^" << ex;
        else os << var << "^(" << ex << ")";
    }
    if (first) os << "0";
    if (!is_exact()) {
        Rat ex(order_, root);
        ex.canonicalize();
        os << " + O(" << (root == 1 ? "t" : "q") << "^" << (is_integer(ex) ? ex.get_str() : "(" + ex.get_str() + ")") << ")";
    }
    return os.str();
}

LaurentSeries operator+(LaurentSeries a, const LaurentSeries& b) { return a += b; }
LaurentSeries operator-(LaurentSeries a, const LaurentSeries& b) { return a -= b; }
LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b) { return ls_mul(a, b); }

namespace {

long product_order(const LaurentSeries& a, const LaurentSeries& b) {
    return std::min(ord_add(a.order(), b.valuation()), ord_add(b.order(), a.valuation()));
}

} // namespace

LaurentSeries ls_mul_serial(const LaurentSeries& a, const LaurentSeries& b) {
    long ord = product_order(a, b);
    if (a.is_zero() || b.is_zero()) return LaurentSeries::zero(ord);
    const LaurentSeries& sparse = a.nnz() <= b.nnz() ? a : b;
    const LaurentSeries& dense = a.nnz() <= b.nnz() ? b : a;
    long lo = a.lo_ + b.lo_;
    long hi = a.top_exp() + b.top_exp();
    if (ord < LaurentSeries::exact) hi = std::min(hi, ord - 1);
    if (hi < lo) return LaurentSeries::zero(ord);
    std::vector<Rat> out(static_cast<std::size_t>(hi - lo + 1));
    Rat tmp;
    for (std::size_t i = 0; i < sparse.c_.size(); ++i) {
        const Rat& x = sparse.c_[i];
        if (x == 0) continue;
        long ei = sparse.lo_ + static_cast<long>(i);
        long jmax = std::min<long>(static_cast<long>(dense.c_.size()) - 1, hi - ei - dense.lo_);
        long base = ei + dense.lo_ - lo;
        for (long j = 0; j <= jmax; ++j) {
            const Rat& y = dense.c_[j];
            if (y == 0) continue;
            mpq_mul(tmp.get_mpq_t(), x.get_mpq_t(), y.get_mpq_t());
            out[base + j] += tmp;
        }
    }
    return LaurentSeries::from_coeffs(lo, std::move(out), ord);
}

LaurentSeries ls_mul_parallel(const LaurentSeries& a, const LaurentSeries& b) {
    long ord = product_order(a, b);
    if (a.is_zero() || b.is_zero()) return LaurentSeries::zero(ord);
    long lo = a.lo_ + b.lo_;
    long hi = a.top_exp() + b.top_exp();
    if (ord < LaurentSeries::exact) hi = std::min(hi, ord - 1);
    if (hi < lo) return LaurentSeries::zero(ord);
    long n = hi - lo + 1;
    long na = static_cast<long>(a.c_.size()), nb = static_cast<long>(b.c_.size());
    std::vector<Rat> out(static_cast<std::size_t>(n));
    // each output coefficient is an independent dot product
#pragma omp parallel for schedule(dynamic, 8)
    for (long k = 0; k < n; ++k) {
        Rat acc, tmp;
        long i0 = std::max(0L, k - (nb - 1)), i1 = std::min(k, na - 1);
        for (long i = i0; i <= i1; ++i) {
            const Rat& x = a.c_[i];
            const Rat& y = b.c_[k - i];
            if (x == 0 || y == 0) continue;
            mpq_mul(tmp.get_mpq_t(), x.get_mpq_t(), y.get_mpq_t());
            acc += tmp;
        }
        out[k] = std::move(acc);
    }
    return LaurentSeries::from_coeffs(lo, std::move(out), ord);
}

LaurentSeries ls_mul(const LaurentSeries& a, const LaurentSeries& b) {
    std::size_t sa = a.nnz(), sb = b.nnz();
    if (std::min(sa, sb) > 64 && sa * sb > 200000 && !omp_in_parallel() && omp_get_max_threads() > 1)
        return ls_mul_parallel(a, b);
    return ls_mul_serial(a, b);
}

LaurentSeries ls_div(const LaurentSeries& a, const LaurentSeries& b, long order_if_exact) {
    if (b.is_zero()) throw ZeroLeadingCoefficient("division by a series that is zero to order " + std::to_string(b.order()));
    long vb = b.valuation();
    if (b.is_monomial() && b.is_exact()) {
        LaurentSeries r = a.scaled(1 / b.lead()).shifted(-vb);
        return r;
    }
    long va = a.valuation();
    long ord;
    bool try_exact = false;
    if (a.is_exact() && b.is_exact()) {
        if (order_if_exact >= LaurentSeries::exact) {
            if (a.is_zero()) return LaurentSeries();
            // attempt exact Laurent-polynomial division
            ord = a.top_exp() - b.top_exp() + 1;
            try_exact = true;
        } else {
            ord = order_if_exact;
        }
    } else {
        ord = std::min(ord_add(a.order(), -vb), ord_add(b.order(), va - 2 * vb));
    }
    if (a.is_zero()) return LaurentSeries::zero(ord);
    long lo = va - vb;
    if (ord <= lo) {
        if (try_exact) throw ExactDivisionFailed("Laurent polynomial division leaves a remainder");
        return LaurentSeries::zero(ord);
    }
    long n = ord - lo;
    std::vector<Rat> y(static_cast<std::size_t>(n));
    Rat inv_lead = 1 / b.lead();
    std::vector<std::pair<long, const Rat*>> tail;  // (offset from vb, coeff)
    for (std::size_t j = 1; j < b.c_.size(); ++j)
        if (b.c_[j] != 0) tail.emplace_back(static_cast<long>(j), &b.c_[j]);
    Rat tmp;
    for (long k = 0; k < n; ++k) {
        Rat acc = a.coeff(va + k);
        for (const auto& [off, bc] : tail) {
            if (off > k) break;
            const Rat& yy = y[k - off];
            if (yy == 0) continue;
            mpq_mul(tmp.get_mpq_t(), bc->get_mpq_t(), yy.get_mpq_t());
            acc -= tmp;
        }
        y[k] = acc * inv_lead;
    }
    if (try_exact) {
        LaurentSeries q = LaurentSeries::from_coeffs(lo, std::move(y), LaurentSeries::exact);
        if (!(ls_mul_serial(q, b) == a)) throw ExactDivisionFailed("Laurent polynomial division leaves a remainder");
        return q;
    }
    return LaurentSeries::from_coeffs(lo, std::move(y), ord);
}

LaurentSeries ls_inv(const LaurentSeries& a, long order_if_exact) {
    if (a.is_zero()) throw ZeroLeadingCoefficient("series is zero to order " + std::to_string(a.order()));
    if (a.is_exact() && !a.is_monomial() && order_if_exact >= LaurentSeries::exact)
        throw ZeroLeadingCoefficient("inverse of a non-monomial polynomial needs a truncation order");
    return ls_div(LaurentSeries(1), a, order_if_exact);
}

LaurentSeries ls_pow(const LaurentSeries& a, long k, long order_if_exact) {
    if (k < 0) return ls_inv(ls_pow(a, -k, order_if_exact), order_if_exact);
    LaurentSeries out(1), b = a;
    while (k) {
        if (k & 1) out = ls_mul(out, b);
        k >>= 1;
        if (k) b = ls_mul(b, b);
        if (order_if_exact < LaurentSeries::exact) {
            out = out.truncated(order_if_exact);
            b = b.truncated(order_if_exact);
        }
    }
    return out;
}

std::optional<long> first_difference(const LaurentSeries& a, const LaurentSeries& b) {
    long ord = std::min(a.order(), b.order());
    long lo = std::min(a.valuation(), b.valuation());
    long hi = std::max(a.is_zero() ? lo : a.top_exp(), b.is_zero() ? lo : b.top_exp());
    if (ord < LaurentSeries::exact) hi = std::min(hi, ord - 1);
    for (long e = lo; e <= hi; ++e)
        if (a.coeff(e) != b.coeff(e)) return e;
    return std::nullopt;
}

} // namespace qs
