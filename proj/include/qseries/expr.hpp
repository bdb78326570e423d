#pragma once
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "qseries/bigfloat.hpp"
#include "qseries/field.hpp"
#include "qseries/laurent.hpp"
#include "qseries/rat.hpp"

namespace qs {

// Small expression language used by the catalog:
//   numbers, n, q, y, pi, + - * / ^, unary minus, implicit products (2n, n(9n+7), (..)(..)),
//   (x1,x2,...;base)_len   q-shifted factorial product, negative len allowed
//   (x1,x2,...)_len        rising factorial product
//   x!                     factorial
//   sqrt(x) cbrt(x) Gamma(x)
// Subscripts are a single token (_n, _3) or a group (_(2n+1), _{2n+1}).
enum class Op { num, var_n, var_q, var_y, pi, add, sub, mul, div, neg, pow, poch, rising, fact, call };

struct Node {
    Op op;
    Rat value;             // num
    std::string name;      // call
    std::vector<std::shared_ptr<const Node>> kids;
    int nargs = 0;         // poch / rising: leading kids are the arguments
};
using NodePtr = std::shared_ptr<const Node>;

class Expr {
public:
    Expr() = default;
    static Expr parse(std::string_view text);
    const std::string& text() const { return text_; }
    const NodePtr& root() const { return root_; }
    bool empty() const { return !root_; }
    bool uses(Op op) const;

private:
    std::string text_;
    NodePtr root_;
};

// exact rational value at integer-or-rational n; q, y and pi are rejected
Rat eval_rat(const Expr& e, const Rat& n = 0);
// truncated series at the field's order, q = t^root
LaurentSeries eval_series(const Expr& e, long n, const SeriesField& f);
// rational function in (t, y); n is rejected
YRat eval_yrat(const Expr& e, const YField& f);
// floating value at the current BigFloat precision
BigFloat eval_bigfloat(const Expr& e, const Rat& n = 0);

BigFloat to_bigfloat(const Rat& r);

} // namespace qs
