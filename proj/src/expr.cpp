#include "qseries/expr.hpp"

#include <cctype>
#include <functional>

#include <boost/math/constants/constants.hpp>
#include <mpfr.h>

#include "qseries/errors.hpp"

namespace qs {

namespace {

enum class Tok { num, ident, sym, end };

struct token {
    Tok kind;
    std::string text;
    std::size_t pos;
};

std::vector<token> lex(std::string_view s) {
    std::vector<token> out;
    std::size_t i = 0;
    while (i < s.size()) {
        char ch = s[i];
        if (std::isspace(static_cast<unsigned char>(ch))) {
            ++i;
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(ch))) {
            std::size_t j = i;
            while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
            out.push_back({Tok::num, std::string(s.substr(i, j - i)), i});
            i = j;
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(ch))) {
            std::size_t j = i;
            while (j < s.size() && std::isalpha(static_cast<unsigned char>(s[j]))) ++j;
            std::string w(s.substr(i, j - i));
            // "2n", "nq" style runs: single-letter variables split apart
            bool split = w.size() > 1;
            for (const char* kw : {"pi", "sqrt", "cbrt", "Gamma"})
                if (w == kw) split = false;
            if (split) {
                for (std::size_t k = 0; k < w.size(); ++k)
                    out.push_back({Tok::ident, std::string(1, w[k]), i + k});
            } else {
                out.push_back({Tok::ident, w, i});
            }
            i = j;
            continue;
        }
        if (std::string_view("+-*/^(),;_!{}").find(ch) != std::string_view::npos) {
            out.push_back({Tok::sym, std::string(1, ch), i});
            ++i;
            continue;
        }
        throw ParseError("unexpected character '" + std::string(1, ch) + "' at " + std::to_string(i) + " in: " +
                         std::string(s));
    }
    out.push_back({Tok::end, "", s.size()});
    return out;
}

NodePtr make(Op op, std::vector<NodePtr> kids = {}) {
    auto n = std::make_shared<Node>();
    n->op = op;
    n->kids = std::move(kids);
    return n;
}

class parser {
public:
    parser(std::string_view src) : src_(src), toks_(lex(src)) {}

    NodePtr parse_all() {
        NodePtr e = sum();
        if (peek().kind != Tok::end) fail("trailing input");
        return e;
    }

private:
    const token& peek() const { return toks_[pos_]; }
    bool is_sym(const char* s) const { return peek().kind == Tok::sym && peek().text == s; }
    void expect(const char* s) {
        if (!is_sym(s)) fail(std::string("expected '") + s + "'");
        ++pos_;
    }
    [[noreturn]] void fail(const std::string& why) const {
        throw ParseError(why + " at position " + std::to_string(peek().pos) + " in: " + std::string(src_));
    }

    NodePtr sum() {
        NodePtr lhs = product();
        while (is_sym("+") || is_sym("-")) {
            Op op = is_sym("+") ? Op::add : Op::sub;
            ++pos_;
            lhs = make(op, {lhs, product()});
        }
        return lhs;
    }

    bool starts_primary() const {
        const token& t = peek();
        if (t.kind == Tok::num || t.kind == Tok::ident) return true;
        return t.kind == Tok::sym && (t.text == "(" || t.text == "{");
    }

    NodePtr product() {
        NodePtr lhs = unary();
        for (;;) {
            if (is_sym("*") || is_sym("/")) {
                Op op = is_sym("*") ? Op::mul : Op::div;
                ++pos_;
                lhs = make(op, {lhs, unary()});
            } else if (starts_primary()) {
                lhs = make(Op::mul, {lhs, power()});
            } else {
                return lhs;
            }
        }
    }

    NodePtr unary() {
        if (is_sym("-")) {
            ++pos_;
            return make(Op::neg, {unary()});
        }
        if (is_sym("+")) {
            ++pos_;
            return unary();
        }
        return power();
    }

    NodePtr power() {
        NodePtr base = postfix();
        if (is_sym("^")) {
            ++pos_;
            NodePtr ex;
            if (is_sym("-")) {
                ++pos_;
                ex = make(Op::neg, {power()});
            } else {
                ex = power();
            }
            return make(Op::pow, {base, ex});
        }
        return base;
    }

    NodePtr subscript() {
        if (is_sym("(") || is_sym("{")) {
            const char* close = is_sym("(") ? ")" : "}";
            ++pos_;
            NodePtr e = sum();
            expect(close);
            return e;
        }
        if (is_sym("-")) {
            ++pos_;
            return make(Op::neg, {subscript()});
        }
        const token t = peek();
        NodePtr out;
        if (t.kind == Tok::num) {
            auto n = std::make_shared<Node>();
            n->op = Op::num;
            n->value = parse_rat(t.text);
            out = n;
        } else if (t.kind == Tok::ident && t.text == "n") {
            out = make(Op::var_n);
        } else {
            fail("bad subscript");
        }
        ++pos_;
        // "_2n" would silently mean "(..)_2 * n"
        if (peek().pos == t.pos + t.text.size() && (peek().kind == Tok::ident || peek().kind == Tok::num))
            fail("compound subscript needs parentheses");
        return out;
    }

    NodePtr postfix() {
        NodePtr e = primary();
        for (;;) {
            if (is_sym("!")) {
                ++pos_;
                e = make(Op::fact, {e});
            } else {
                return e;
            }
        }
    }

    NodePtr group(const char* close) {
        std::vector<NodePtr> args{sum()};
        while (is_sym(",")) {
            ++pos_;
            args.push_back(sum());
        }
        NodePtr base;
        if (is_sym(";")) {
            ++pos_;
            base = sum();
        }
        expect(close);
        if (is_sym("_")) {
            ++pos_;
            NodePtr len = subscript();
            auto n = std::make_shared<Node>();
            n->op = base ? Op::poch : Op::rising;
            n->nargs = static_cast<int>(args.size());
            n->kids = args;
            if (base) n->kids.push_back(base);
            n->kids.push_back(len);
            return n;
        }
        if (base || args.size() > 1) fail("argument list needs a subscript");
        return args[0];
    }

    NodePtr primary() {
        const token t = peek();
        if (t.kind == Tok::num) {
            ++pos_;
            auto n = std::make_shared<Node>();
            n->op = Op::num;
            n->value = parse_rat(t.text);
            return n;
        }
        if (t.kind == Tok::ident) {
            ++pos_;
            if (t.text == "n") return make(Op::var_n);
            if (t.text == "q") return make(Op::var_q);
            if (t.text == "y") return make(Op::var_y);
            if (t.text == "pi") return make(Op::pi);
            if (t.text == "sqrt" || t.text == "cbrt" || t.text == "Gamma") {
                expect("(");
                auto n = std::make_shared<Node>();
                n->op = Op::call;
                n->name = t.text;
                n->kids.push_back(sum());
                expect(")");
                return n;
            }
            --pos_;
            fail("unknown name '" + t.text + "'");
        }
        if (is_sym("(")) {
            ++pos_;
            return group(")");
        }
        if (is_sym("{")) {
            ++pos_;
            return group("}");
        }
        fail("unexpected token '" + t.text + "'");
    }

    std::string_view src_;
    std::vector<token> toks_;
    std::size_t pos_ = 0;
};

// ---- evaluation ----

// exponents and lengths: exact rational in n
Rat scalar(const Node& nd, const Rat& n);

Rat scalar_pow(const Rat& b, const Rat& e) {
    if (!is_integer(e)) throw DomainError("non-integer exponent " + e.get_str() + " in exact arithmetic");
    return rat_pow(b, to_long(e));
}

Rat rising_rat(const Rat& x, long len) {
    Rat out = 1;
    if (len >= 0) {
        for (long k = 0; k < len; ++k) out *= x + k;
        return out;
    }
    for (long k = 1; k <= -len; ++k) out *= x - k;
    if (out == 0) throw DegenerateTerm("rising factorial with negative length hits zero");
    return 1 / out;
}

Rat factorial(const Rat& x) {
    if (!is_integer(x) || x < 0) throw DomainError("factorial of " + x.get_str());
    Int f;
    mpz_fac_ui(f.get_mpz_t(), to_long(x));
    return Rat(f);
}

long as_length(const Rat& r) {
    if (!is_integer(r)) throw DomainError("subscript " + r.get_str() + " is not an integer");
    return to_long(r);
}

Rat scalar(const Node& nd, const Rat& n) {
    switch (nd.op) {
    case Op::num: return nd.value;
    case Op::var_n: return n;
    case Op::add: return scalar(*nd.kids[0], n) + scalar(*nd.kids[1], n);
    case Op::sub: return scalar(*nd.kids[0], n) - scalar(*nd.kids[1], n);
    case Op::mul: return scalar(*nd.kids[0], n) * scalar(*nd.kids[1], n);
    case Op::div: {
        Rat d = scalar(*nd.kids[1], n);
        if (d == 0) throw DegenerateTerm("division by zero");
        return scalar(*nd.kids[0], n) / d;
    }
    case Op::neg: return -scalar(*nd.kids[0], n);
    case Op::pow: return scalar_pow(scalar(*nd.kids[0], n), scalar(*nd.kids[1], n));
    case Op::rising: {
        Rat out = 1;
        long len = as_length(scalar(*nd.kids.back(), n));
        for (int i = 0; i < nd.nargs; ++i) out *= rising_rat(scalar(*nd.kids[i], n), len);
        return out;
    }
    case Op::fact: return factorial(scalar(*nd.kids[0], n));
    case Op::var_q:
    case Op::var_y:
    case Op::pi:
    case Op::poch:
    case Op::call: break;
    }
    throw DomainError("expression is not an exact rational");
}

// --- series ---

bool exact_monomial(const LaurentSeries& s) { return s.is_exact() && s.is_monomial(); }

QMonomial to_mono(const LaurentSeries& s) {
    if (!exact_monomial(s)) throw DomainError("expected a q-monomial, got " + s.str());
    return QMonomial{s.lead(), s.valuation(), 0, 0};
}

struct series_eval {
    SeriesField f;
    Rat n;

    LaurentSeries eval(const Node& nd) const {
        switch (nd.op) {
        case Op::num: return LaurentSeries(nd.value);
        case Op::var_n: return LaurentSeries(n);
        case Op::var_q: return LaurentSeries::monomial(1, f.root);
        case Op::add: return f.add(eval(*nd.kids[0]), eval(*nd.kids[1]));
        case Op::sub: return f.sub(eval(*nd.kids[0]), eval(*nd.kids[1]));
        case Op::neg: return -eval(*nd.kids[0]);
        case Op::mul:
        case Op::div:
        case Op::poch: return chain(nd);
        case Op::pow: {
            Rat e = scalar(*nd.kids[1], n);
            LaurentSeries b = eval(*nd.kids[0]);
            if (exact_monomial(b)) {
                Rat ex = e * b.valuation();
                if (!is_integer(ex)) throw RootMismatch("power lands off the t-grid");
                Rat c;
                if (is_integer(e)) c = rat_pow(b.lead(), to_long(e));
                else if (b.lead() == 1) c = 1;
                else throw DomainError("fractional power of a non-unit coefficient");
                return LaurentSeries::monomial(c, to_long(ex)).truncated(LaurentSeries::exact);
            }
            if (!is_integer(e)) throw DomainError("fractional power of a series");
            return power(f, b, to_long(e));
        }
        case Op::var_y:
        case Op::pi:
        case Op::rising:
        case Op::fact:
        case Op::call: break;
        }
        if (nd.op == Op::rising || nd.op == Op::fact) return LaurentSeries(scalar(nd, n));
        throw DomainError("expression cannot be evaluated as a q-series");
    }

    void flatten(const Node& nd, bool divide, std::vector<std::pair<const Node*, bool>>& out) const {
        if (nd.op == Op::mul) {
            flatten(*nd.kids[0], divide, out);
            flatten(*nd.kids[1], divide, out);
        } else if (nd.op == Op::div) {
            flatten(*nd.kids[0], divide, out);
            flatten(*nd.kids[1], !divide, out);
        } else {
            out.emplace_back(&nd, divide);
        }
    }

    // Monomial factors are gathered first so the remaining product can be
    // computed at an order reduced by their exponent.
    LaurentSeries chain(const Node& root) const {
        std::vector<std::pair<const Node*, bool>> fs;
        flatten(root, false, fs);
        QMonomial mono{1, 0, 0, 0};
        std::vector<std::pair<LaurentSeries, bool>> others;
        std::vector<std::pair<const Node*, bool>> pochs;
        for (const auto& [nd, divide] : fs) {
            if (nd->op == Op::poch) {
                pochs.emplace_back(nd, divide);
                continue;
            }
            LaurentSeries v = eval(*nd);
            if (exact_monomial(v)) {
                QMonomial m = to_mono(v);
                mono = divide ? mono / m : mono * m;
            } else {
                if (divide && v.is_zero()) throw DegenerateTerm("division by zero");
                others.emplace_back(std::move(v), divide);
            }
        }
        series_eval inner{f.with_order(f.order - mono.e), n};
        LaurentSeries v(1);
        for (const auto& [nd, divide] : pochs) v = inner.apply_poch_node(v, *nd, divide);
        for (const auto& [w, divide] : others) v = divide ? inner.f.div(v, w) : inner.f.mul(v, w);
        if (!pochs.empty() || !others.empty()) v = inner.f.mul(v, inner.f.one());
        return ls_mul(v, mono.series()).truncated(f.order);
    }

    LaurentSeries apply_poch_node(LaurentSeries v, const Node& nd, bool divide) const {
        long len = as_length(scalar(*nd.kids.back(), n));
        QMonomial base = to_mono(eval(*nd.kids[nd.nargs]));
        for (int i = 0; i < nd.nargs; ++i) {
            LaurentSeries x = eval(*nd.kids[i]);
            if (exact_monomial(x)) {
                v = apply_poch(f, std::move(v), to_mono(x), base, len, divide);
                continue;
            }
            if (len < 0) throw DomainError("negative length with a non-monomial argument");
            LaurentSeries bk(1);
            for (long k = 0; k < len; ++k) {
                LaurentSeries fac = f.sub(f.one(), f.mul(x, bk));
                if (divide) {
                    if (fac.is_zero()) throw VanishingDenominatorFactor("pochhammer factor vanishes");
                    v = f.div(v, fac);
                } else {
                    v = f.mul(v, fac);
                }
                bk = f.mul(bk, base.series());
            }
        }
        return v;
    }
};

// --- rational functions in (t, y) ---

bool y_monomial(const YRat& v) {
    return v.num.terms().size() == 1 && v.den.terms().size() == 1 && v.num.terms().begin()->second.is_monomial() &&
           v.den.terms().begin()->second.is_monomial();
}

QMonomial y_to_mono(const YRat& v) {
    if (!y_monomial(v)) throw DomainError("expected a monomial in q and y");
    const auto& [kn, sn] = *v.num.terms().begin();
    const auto& [kd, sd] = *v.den.terms().begin();
    return QMonomial{sn.lead() / sd.lead(), sn.valuation() - sd.valuation(), 0, static_cast<int>(kn - kd)};
}

struct y_eval {
    YField f;

    YRat eval(const Node& nd) const {
        switch (nd.op) {
        case Op::num: return f.constant(nd.value);
        case Op::var_q: return f.mono(QMonomial::q(f.root));
        case Op::var_y: return f.mono(QMonomial{1, 0, 0, 1});
        case Op::add: return f.add(eval(*nd.kids[0]), eval(*nd.kids[1]));
        case Op::sub: return f.sub(eval(*nd.kids[0]), eval(*nd.kids[1]));
        case Op::neg: return f.neg(eval(*nd.kids[0]));
        case Op::mul: return f.mul(eval(*nd.kids[0]), eval(*nd.kids[1]));
        case Op::div: return f.div(eval(*nd.kids[0]), eval(*nd.kids[1]));
        case Op::pow: {
            Rat e = scalar(*nd.kids[1], 0);
            YRat b = eval(*nd.kids[0]);
            if (y_monomial(b)) {
                QMonomial m = y_to_mono(b);
                if (is_integer(e)) return f.mono(m.pow(to_long(e)));
                Rat te = e * m.e, ye = e * m.ypow;
                if (m.coeff != 1 || !is_integer(te) || !is_integer(ye)) throw RootMismatch("power lands off the grid");
                return f.mono(QMonomial{1, to_long(te), 0, static_cast<int>(to_long(ye))});
            }
            if (!is_integer(e)) throw DomainError("fractional power of a polynomial");
            return power(f, b, to_long(e));
        }
        case Op::poch: {
            long len = as_length(scalar(*nd.kids.back(), 0));
            QMonomial base = y_to_mono(eval(*nd.kids[nd.nargs]));
            YRat v = f.one();
            for (int i = 0; i < nd.nargs; ++i) v = apply_poch(f, v, y_to_mono(eval(*nd.kids[i])), base, len, false);
            return v;
        }
        case Op::var_n:
        case Op::pi:
        case Op::rising:
        case Op::fact:
        case Op::call: break;
        }
        if (nd.op == Op::rising || nd.op == Op::fact) return f.constant(scalar(nd, 0));
        throw DomainError("expression cannot be evaluated in q and y");
    }
};

// --- floating point ---

BigFloat call_fn(const std::string& name, const BigFloat& x) {
    if (name == "sqrt") return sqrt(x);
    if (name == "cbrt") return cbrt(x);
    if (name == "Gamma") {
        BigFloat r;
        mpfr_gamma(r.backend().data(), x.backend().data(), MPFR_RNDN);
        return r;
    }
    throw DomainError("unknown function " + name);
}

BigFloat flt(const Node& nd, const Rat& n) {
    switch (nd.op) {
    case Op::num: return to_bigfloat(nd.value);
    case Op::var_n: return to_bigfloat(n);
    case Op::pi: return boost::math::constants::pi<BigFloat>();
    case Op::add: return flt(*nd.kids[0], n) + flt(*nd.kids[1], n);
    case Op::sub: return flt(*nd.kids[0], n) - flt(*nd.kids[1], n);
    case Op::mul: return flt(*nd.kids[0], n) * flt(*nd.kids[1], n);
    case Op::div: return flt(*nd.kids[0], n) / flt(*nd.kids[1], n);
    case Op::neg: return -flt(*nd.kids[0], n);
    case Op::pow: {
        BigFloat b = flt(*nd.kids[0], n);
        BigFloat e = flt(*nd.kids[1], n);
        return pow(b, e);
    }
    case Op::call: return call_fn(nd.name, flt(*nd.kids[0], n));
    case Op::rising: {
        BigFloat out = 1;
        long len = as_length(scalar(*nd.kids.back(), n));
        for (int i = 0; i < nd.nargs; ++i) {
            BigFloat x = flt(*nd.kids[i], n);
            if (len >= 0)
                for (long k = 0; k < len; ++k) out *= x + k;
            else
                for (long k = 1; k <= -len; ++k) out /= x - k;
        }
        return out;
    }
    case Op::fact: return to_bigfloat(factorial(scalar(*nd.kids[0], n)));
    case Op::var_q:
    case Op::var_y:
    case Op::poch: break;
    }
    throw DomainError("expression cannot be evaluated numerically");
}

bool contains(const Node& nd, Op op) {
    if (nd.op == op) return true;
    for (const auto& k : nd.kids)
        if (contains(*k, op)) return true;
    return false;
}

} // namespace

Expr Expr::parse(std::string_view text) {
    Expr e;
    e.text_ = std::string(text);
    parser p(text);
    e.root_ = p.parse_all();
    return e;
}

bool Expr::uses(Op op) const { return root_ && contains(*root_, op); }

Rat eval_rat(const Expr& e, const Rat& n) { return scalar(*e.root(), n); }

LaurentSeries eval_series(const Expr& e, long n, const SeriesField& f) {
    series_eval ev{f, Rat(n)};
    return ev.eval(*e.root()).truncated(f.order);
}

YRat eval_yrat(const Expr& e, const YField& f) { return y_eval{f}.eval(*e.root()); }

BigFloat eval_bigfloat(const Expr& e, const Rat& n) { return flt(*e.root(), n); }

BigFloat to_bigfloat(const Rat& r) {
    BigFloat num(r.get_num().get_str()), den(r.get_den().get_str());
    return num / den;
}

} // namespace qs
