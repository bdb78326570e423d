#include "qseries/registry.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace qs {

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

// split at `sep` outside parentheses
std::vector<std::string> split_top(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    int depth = 0;
    for (char c : s) {
        if (c == '(' || c == '{') ++depth;
        if (c == ')' || c == '}') --depth;
        if (c == sep && depth == 0) {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(trim(cur));
    return out;
}

struct Block {
    std::string header;
    int line = 0;
    std::vector<std::pair<std::string, std::pair<std::string, int>>> kv;  // key -> (value, line)
};

class BlockReader {
public:
    BlockReader(const Block& b, const std::string& source) : b_(b), source_(source) {
        for (const auto& [k, v] : b.kv) {
            if (map_.count(k)) fail("duplicate key '" + k + "'", v.second);
            map_[k] = v;
        }
    }
    [[noreturn]] void fail(const std::string& msg, int line = 0) const {
        throw CatalogError(source_ + ":" + std::to_string(line ? line : b_.line) + ": record '" + b_.header + "': " + msg);
    }
    bool has(const std::string& k) const { return map_.count(k) != 0; }
    std::string get(const std::string& k) const {
        auto it = map_.find(k);
        if (it == map_.end()) fail("missing key '" + k + "'");
        used_.insert(k);
        return it->second.first;
    }
    std::string get_or(const std::string& k, const std::string& def) const { return has(k) ? get(k) : def; }
    int line_of(const std::string& k) const { return has(k) ? map_.at(k).second : b_.line; }
    Expr expr(const std::string& k) const {
        std::string v = get(k);
        try {
            return Expr::parse(v);
        } catch (const error& e) {
            fail("field '" + k + "': " + e.what(), line_of(k));
        }
    }
    Expr expr_or(const std::string& k) const { return has(k) ? expr(k) : Expr(); }
    Rat rat(const std::string& k) const {
        try {
            return parse_rat(get(k));
        } catch (const error& e) {
            fail("field '" + k + "': " + e.what(), line_of(k));
        }
    }
    long integer(const std::string& k, long def) const {
        if (!has(k)) return def;
        Rat r = rat(k);
        if (!is_integer(r)) fail("field '" + k + "' must be an integer", line_of(k));
        return to_long(r);
    }
    void check_unused() const {
        for (const auto& [k, v] : map_)
            if (!used_.count(k)) fail("unknown key '" + k + "'", v.second);
    }

private:
    const Block& b_;
    std::string source_;
    std::map<std::string, std::pair<std::string, int>> map_;
    mutable std::set<std::string> used_;
};

std::array<Rat, 4> parse_params(const BlockReader& r) {
    std::istringstream in(r.get("params"));
    std::array<Rat, 4> p;
    std::string tok;
    int k = 0;
    while (in >> tok) {
        if (k == 4) r.fail("params needs exactly four exponents", r.line_of("params"));
        try {
            p[k++] = parse_rat(tok);
        } catch (const error& e) {
            r.fail(std::string("params: ") + e.what(), r.line_of("params"));
        }
    }
    if (k != 4) r.fail("params needs exactly four exponents", r.line_of("params"));
    return p;
}

std::vector<ProductFactor> parse_factors(const BlockReader& r, const std::string& key) {
    std::vector<ProductFactor> out;
    std::string v = trim(r.get_or(key, ""));
    if (v.empty()) return out;
    for (const auto& item : split_top(v, ',')) {
        auto parts = split_top(item, ';');
        if (parts.size() > 2 || parts[0].empty()) r.fail("bad product factor '" + item + "'", r.line_of(key));
        try {
            out.push_back({Expr::parse(parts[0]), Expr::parse(parts.size() == 2 ? parts[1] : "q")});
        } catch (const error& e) {
            r.fail(key + ": " + e.what(), r.line_of(key));
        }
    }
    return out;
}


int parse_sign(const BlockReader& r, const std::string& key) {
    std::string s = r.get_or(key, "+");
    if (s == "+") return 1;
    if (s == "-") return -1;
    r.fail(key + " must be + or -", r.line_of(key));
}

IdentityRecord parse_record(const Block& b, const std::string& source) {
    BlockReader r(b, source);
    IdentityRecord rec;
    rec.id = b.header;
    rec.line = b.line;
    rec.section = static_cast<int>(r.integer("section", 3));
    try {
        rec.theorem = parse_theorem(r.get("theorem"));
    } catch (const ParseError& e) {
        r.fail(e.what(), r.line_of("theorem"));
    }
    rec.form = r.get_or("form", "direct");
    if (rec.form != "direct" && rec.form != "bisected") r.fail("form must be direct or bisected", r.line_of("form"));
    rec.params = parse_params(r);
    rec.root = static_cast<int>(r.integer("root", default_root));
    if (rec.root <= 0) r.fail("root must be positive", r.line_of("root"));
    if (r.has("e")) rec.e = r.rat("e");
    rec.lhs_num = parse_factors(r, "lhs_num");
    rec.lhs_den = parse_factors(r, "lhs_den");
    rec.rhs_lead = r.expr_or("rhs_lead");
    rec.rhs_sign = parse_sign(r, "rhs_sign");
    rec.rhs_start = r.integer("rhs_start", 0);
    rec.rhs = r.expr("rhs");
    if (r.has("classical_value") || r.has("classical_term")) {
        ClassicalLimit c;
        c.value = r.expr("classical_value");
        c.term = r.expr("classical_term");
        c.lead = r.expr_or("classical_lead");
        c.sign = parse_sign(r, "classical_sign");
        c.start = r.integer("classical_start", 0);
        if (r.has("classical_rate")) c.rate = r.rat("classical_rate");
        rec.classical = c;
    }
    rec.note = r.get_or("note", "");
    r.check_unused();

    // invariants: exponents on the root lattice, side condition, monomial product arguments
    for (int i = 0; i < 4; ++i) {
        try {
            QExp::from_rat(rec.params[i], rec.root);
        } catch (const RootMismatch&) {
            r.fail("parameter exponent " + to_string(rec.params[i]) + " is not a multiple of 1/" +
                       std::to_string(rec.root), r.line_of("params"));
        }
    }
    if (rec.e) {
        Rat lhs = 1 + 2 * rec.params[0];
        Rat rhs = rec.params[1] + rec.params[2] + rec.params[3] + *rec.e;
        if (lhs != rhs) r.fail("side condition q a^2 = b c d e fails", r.line_of("e"));
    }
    for (const auto* side : {&rec.lhs_num, &rec.lhs_den}) {
        for (const auto& f : *side) {
            try {
                factor_monomial(f.arg, rec.root);
                if (factor_monomial(f.base, rec.root).e <= 0) r.fail("product base '" + f.base.text() + "' must be a positive q-power");
            } catch (const CatalogError&) {
                throw;
            } catch (const error& e) {
                r.fail(e.what(), r.line_of("lhs_num"));
            }
        }
    }
    return rec;
}

BisectionCaseData parse_bisection(const Block& b, const std::string& source) {
    BlockReader r(b, source);
    BisectionCaseData c;
    c.id = b.header.substr(std::string("bisect ").size());
    c.line = b.line;
    c.source = r.get("source");
    try {
        c.theorem = parse_theorem(r.get("theorem"));
    } catch (const ParseError& e) {
        r.fail(e.what(), r.line_of("theorem"));
    }
    c.params = parse_params(r);
    c.lhs_num = parse_factors(r, "lhs_num");
    c.lhs_den = parse_factors(r, "lhs_den");
    c.weight_scale = r.expr("weight_scale");
    c.prefactor = r.expr("prefactor");
    c.A = r.expr("A");
    c.B = r.expr("B");
    c.shift = r.expr("shift");
    c.term = r.expr("term");
    c.degree = r.integer("degree", 6);
    r.check_unused();
    return c;
}

std::string rat_list(const std::array<Rat, 4>& p) {
    std::string s;
    for (int i = 0; i < 4; ++i) s += (i ? " " : "") + to_string(p[i]);
    return s;
}

std::string factor_list(const std::vector<ProductFactor>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ", ";
        s += v[i].arg.text();
        if (v[i].base.text() != "q") s += ";" + v[i].base.text();
    }
    return s;
}

} // namespace

const IdentityRecord* Catalog::find(const std::string& id) const {
    for (const auto& r : records)
        if (r.id == id) return &r;
    return nullptr;
}

const BisectionCaseData* Catalog::find_bisection(const std::string& id) const {
    for (const auto& b : bisections)
        if (b.id == id) return &b;
    return nullptr;
}

std::string default_catalog_path() {
    if (const char* env = std::getenv("QSERIES_CATALOG"); env && *env) return env;
    return QSERIES_CATALOG_DEFAULT;
}

Catalog parse_catalog(std::istream& in, const std::string& source) {
    std::vector<Block> blocks;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        if (t.front() == '[') {
            if (t.back() != ']') throw CatalogError(source + ":" + std::to_string(lineno) + ": unterminated record header");
            blocks.push_back({trim(t.substr(1, t.size() - 2)), lineno, {}});
            if (blocks.back().header.empty())
                throw CatalogError(source + ":" + std::to_string(lineno) + ": empty record id");
            continue;
        }
        auto eq = t.find('=');
        if (eq == std::string::npos)
            throw CatalogError(source + ":" + std::to_string(lineno) + ": expected 'key = value'");
        if (blocks.empty())
            throw CatalogError(source + ":" + std::to_string(lineno) + ": field outside of a record");
        blocks.back().kv.push_back({trim(t.substr(0, eq)), {trim(t.substr(eq + 1)), lineno}});
    }
    Catalog c;
    std::set<std::string> ids;
    for (const auto& b : blocks) {
        if (b.header.rfind("bisect ", 0) == 0) {
            c.bisections.push_back(parse_bisection(b, source));
            continue;
        }
        if (!ids.insert(b.header).second)
            throw CatalogError(source + ":" + std::to_string(b.line) + ": duplicate record id '" + b.header + "'");
        c.records.push_back(parse_record(b, source));
    }
    return c;
}

Catalog load_catalog(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CatalogError("cannot open catalog '" + path + "'");
    return parse_catalog(in, path);
}

std::string serialize_catalog(const Catalog& c) {
    std::ostringstream out;
    for (const auto& r : c.records) {
        out << "[" << r.id << "]\n";
        out << "section = " << r.section << "\n";
        out << "theorem = " << theorem_name(r.theorem) << "\n";
        out << "form = " << r.form << "\n";
        out << "params = " << rat_list(r.params) << "\n";
        if (r.e) out << "e = " << to_string(*r.e) << "\n";
        if (r.root != default_root) out << "root = " << r.root << "\n";
        out << "lhs_num = " << factor_list(r.lhs_num) << "\n";
        out << "lhs_den = " << factor_list(r.lhs_den) << "\n";
        if (!r.rhs_lead.empty()) out << "rhs_lead = " << r.rhs_lead.text() << "\n";
        if (r.rhs_sign < 0) out << "rhs_sign = -\n";
        if (r.rhs_start) out << "rhs_start = " << r.rhs_start << "\n";
        out << "rhs = " << r.rhs.text() << "\n";
        if (r.classical) {
            const auto& k = *r.classical;
            out << "classical_value = " << k.value.text() << "\n";
            if (!k.lead.empty()) out << "classical_lead = " << k.lead.text() << "\n";
            if (k.sign < 0) out << "classical_sign = -\n";
            if (k.start) out << "classical_start = " << k.start << "\n";
            out << "classical_term = " << k.term.text() << "\n";
            if (k.rate) out << "classical_rate = " << to_string(*k.rate) << "\n";
        }
        if (!r.note.empty()) out << "note = " << r.note << "\n";
        out << "\n";
    }
    for (const auto& b : c.bisections) {
        out << "[bisect " << b.id << "]\n";
        out << "source = " << b.source << "\n";
        out << "theorem = " << theorem_name(b.theorem) << "\n";
        out << "params = " << rat_list(b.params) << "\n";
        out << "lhs_num = " << factor_list(b.lhs_num) << "\n";
        out << "lhs_den = " << factor_list(b.lhs_den) << "\n";
        out << "weight_scale = " << b.weight_scale.text() << "\n";
        out << "prefactor = " << b.prefactor.text() << "\n";
        out << "A = " << b.A.text() << "\n";
        out << "B = " << b.B.text() << "\n";
        out << "shift = " << b.shift.text() << "\n";
        out << "term = " << b.term.text() << "\n";
        out << "degree = " << b.degree << "\n\n";
    }
    return out.str();
}

QMonomial factor_monomial(const Expr& e, int root) {
    LaurentSeries v = eval_series(e, 0, SeriesField{LaurentSeries::exact, root});
    if (!v.is_monomial()) throw CatalogError("'" + e.text() + "' is not a monomial in q");
    return QMonomial{v.lead(), v.valuation(), 0, 0};
}

WellPoisedParams record_params(const IdentityRecord& r, bool perturb) { return make_params(r.params, r.root, perturb); }

LaurentSeries product_series(const std::vector<ProductFactor>& num, const std::vector<ProductFactor>& den, long order,
                             int root) {
    return at_full_order(SeriesField{order, root}, [&](const SeriesField& f) {
        LaurentSeries v = f.one();
        for (const auto& x : num) v = apply_poch_inf(f, v, factor_monomial(x.arg, root), factor_monomial(x.base, root), false);
        for (const auto& x : den) v = apply_poch_inf(f, v, factor_monomial(x.arg, root), factor_monomial(x.base, root), true);
        return v;
    });
}

LaurentSeries display_lhs(const IdentityRecord& r, long order) { return product_series(r.lhs_num, r.lhs_den, order, r.root); }

LaurentSeries display_rhs(const IdentityRecord& r, long order, SumResult* info) {
    SeriesField f{order, r.root};
    auto term = [&](const SeriesField& g, long n) { return eval_series(r.rhs, n, g); };
    LaurentSeries s = sum_to_order(f, r.rhs_start, term, info);
    if (r.rhs_sign < 0) s = -s;
    if (!r.rhs_lead.empty()) s = f.add(s, eval_series(r.rhs_lead, 0, f));
    return s.truncated(order);
}

std::string status_name(Status s) {
    switch (s) {
    case Status::verified: return "verified";
    case Status::mismatch: return "mismatch";
    case Status::unverified: return "unverified";
    }
    return "?";
}

VerificationReport verify_identity(const IdentityRecord& r, long order) {
    auto t0 = std::chrono::steady_clock::now();
    VerificationReport rep;
    rep.id = r.id;
    rep.order = order;
    rep.root = r.root;
    auto finish = [&]() {
        rep.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        return rep;
    };
    try {
        // the displayed equality
        SumResult info;
        LaurentSeries lhs = display_lhs(r, order);
        LaurentSeries rhs = display_rhs(r, order, &info);
        rep.terms_used = info.terms_used;
        if (auto d = first_difference(lhs, rhs)) {
            rep.status = Status::mismatch;
            rep.check = "display";
            rep.first_diff_exp = *d;
            rep.lhs_coeff = to_string(lhs.coeff(*d));
            rep.rhs_coeff = to_string(rhs.coeff(*d));
            return finish();
        }
        // the header specialization of the theorem, perturbed where factors coincide
        RegField f{order, r.root};
        WellPoisedParams p = record_params(r, true);
        RegValue tl = lhs_product_t(f, r.theorem, p);
        RegValue ts = theorem_series_t(f, r.theorem, p);
        if (tl.coeff.is_zero() || ts.coeff.is_zero()) {
            // a coefficient that vanishes to order only bounds its perturbation order
            const RegValue& z = tl.coeff.is_zero() ? tl : ts;
            const RegValue& o = tl.coeff.is_zero() ? ts : tl;
            if (!o.coeff.is_zero() && o.eps < z.eps) {
                rep.status = Status::mismatch;
                rep.check = "theorem";
                rep.cause = "perturbation orders differ: " + std::to_string(tl.eps) + " vs " + std::to_string(ts.eps);
                return finish();
            }
            rep.status = Status::verified;
            rep.check = "display";
            rep.cause = "theorem check inconclusive: leading coefficient vanishes to order";
            return finish();
        }
        if (tl.eps != ts.eps) {
            rep.status = Status::mismatch;
            rep.check = "theorem";
            rep.cause = "perturbation orders differ: " + std::to_string(tl.eps) + " vs " + std::to_string(ts.eps);
            return finish();
        }
        if (auto d = first_difference(tl.coeff, ts.coeff)) {
            rep.status = Status::mismatch;
            rep.check = "theorem";
            rep.first_diff_exp = *d;
            rep.lhs_coeff = to_string(tl.coeff.coeff(*d));
            rep.rhs_coeff = to_string(ts.coeff.coeff(*d));
            return finish();
        }
        rep.status = Status::verified;
        rep.check = "display+theorem";
    } catch (const error& e) {
        rep.status = Status::unverified;
        rep.cause = e.kind + ": " + e.what();
    }
    return finish();
}

std::vector<VerificationReport> verify_all_serial(const std::vector<IdentityRecord>& recs, long order) {
    std::vector<VerificationReport> out;
    out.reserve(recs.size());
    for (const auto& r : recs) out.push_back(verify_identity(r, order));
    return out;
}

std::vector<VerificationReport> verify_all(const std::vector<IdentityRecord>& recs, long order, bool parallel) {
    if (!parallel) return verify_all_serial(recs, order);
    std::vector<VerificationReport> out(recs.size());
    const long n = static_cast<long>(recs.size());
#pragma omp parallel for schedule(dynamic, 1)
    for (long i = 0; i < n; ++i) out[i] = verify_identity(recs[i], order);
    return out;
}

nlohmann::json report_json(const VerificationReport& r, bool with_elapsed) {
    nlohmann::json j;
    j["id"] = r.id;
    j["status"] = status_name(r.status);
    j["first_diff_exp"] = r.first_diff_exp ? nlohmann::json(*r.first_diff_exp) : nlohmann::json(nullptr);
    j["lhs_coeff"] = r.first_diff_exp ? nlohmann::json(r.lhs_coeff) : nlohmann::json(nullptr);
    j["rhs_coeff"] = r.first_diff_exp ? nlohmann::json(r.rhs_coeff) : nlohmann::json(nullptr);
    j["terms_used"] = r.terms_used;
    j["order"] = r.order;
    j["root"] = r.root;
    j["check"] = r.check;
    if (!r.cause.empty()) j["cause"] = r.cause;
    if (with_elapsed) j["elapsed_ms"] = r.elapsed_ms;
    return j;
}

nlohmann::json summary_json(const std::vector<VerificationReport>& reps, bool with_elapsed) {
    nlohmann::json j;
    std::map<std::string, long> counts{{"verified", 0}, {"mismatch", 0}, {"unverified", 0}};
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : reps) {
        ++counts[status_name(r.status)];
        arr.push_back(report_json(r, with_elapsed));
    }
    j["records"] = arr;
    j["counts"] = counts;
    j["total"] = reps.size();
    return j;
}

} // namespace qs
