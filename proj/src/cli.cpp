#include "qseries/cli.hpp"

#include <chrono>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "qseries/bisect.hpp"
#include "qseries/errors.hpp"
#include "qseries/inversion.hpp"
#include "qseries/limits.hpp"
#include "qseries/registry.hpp"

namespace qs {

namespace {

constexpr int exit_ok = 0, exit_fail = 1, exit_usage = 2;

struct Options {
    bool json = false;
    std::string catalog;
    long order = 200;
    bool parallel = false;
    std::string id;
    int section = 0;
    long terms = default_terms;
    unsigned digits = default_digits;
    long max_deg = -1;
    long n = 0;
    std::string r = "2/3";
    std::vector<std::string> params{"3:5", "2:3", "-1:7", "5:2"};
};

class Session {
public:
    Session(const Options& o, std::ostream& out, std::ostream& err) : o_(o), out_(out), err_(err) {}

    int verify();
    int verify_all();
    int list();
    int limit();
    int bisect();
    int jackson();

    int fail(const std::string& kind, const std::string& msg, int code) {
        if (o_.json) {
            nlohmann::json j;
            j["error"] = {{"kind", kind}, {"message", msg}};
            out_ << j.dump(2) << "\n";
        }
        err_ << "error: " << kind << ": " << msg << "\n";
        return code;
    }

private:
    const Catalog& catalog() {
        if (!cat_) cat_ = load_catalog(o_.catalog.empty() ? default_catalog_path() : o_.catalog);
        return *cat_;
    }
    void emit(const nlohmann::json& j) { out_ << j.dump(2) << "\n"; }
    void elapsed(std::chrono::steady_clock::time_point t0) {
        double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        err_ << "elapsed_ms: " << std::fixed << std::setprecision(1) << ms << "\n";
    }

    const Options& o_;
    std::ostream& out_;
    std::ostream& err_;
    std::optional<Catalog> cat_;
};

int Session::verify() {
    const IdentityRecord* r = catalog().find(o_.id);
    if (!r) return fail("UnknownId", "no record '" + o_.id + "' in the catalog", exit_usage);
    auto t0 = std::chrono::steady_clock::now();
    VerificationReport rep = verify_identity(*r, o_.order);
    elapsed(t0);
    if (o_.json) {
        emit(report_json(rep, false));
    } else {
        out_ << rep.id << ": " << status_name(rep.status) << " to t^" << rep.order << " (q = t^" << rep.root << ", "
             << rep.check << " check)\n";
        if (rep.first_diff_exp)
            out_ << "  first difference at t^" << *rep.first_diff_exp << ": lhs " << rep.lhs_coeff << ", rhs "
                 << rep.rhs_coeff << "\n";
        if (!rep.cause.empty()) out_ << "  " << rep.cause << "\n";
    }
    return rep.status == Status::verified ? exit_ok : exit_fail;
}

int Session::verify_all() {
    auto t0 = std::chrono::steady_clock::now();
    std::vector<VerificationReport> reps = qs::verify_all(catalog().records, o_.order, o_.parallel);
    elapsed(t0);
    long bad = 0;
    for (const auto& r : reps) bad += r.status != Status::verified;
    if (o_.json) {
        emit(summary_json(reps, false));
    } else {
        for (const auto& r : reps) {
            out_ << std::left << std::setw(12) << r.id << std::setw(12) << status_name(r.status);
            if (r.first_diff_exp) out_ << "first difference at t^" << *r.first_diff_exp;
            if (!r.cause.empty()) out_ << r.cause;
            out_ << "\n";
        }
        out_ << reps.size() - bad << "/" << reps.size() << " verified to t^" << o_.order << "\n";
    }
    return bad == 0 ? exit_ok : exit_fail;
}

int Session::list() {
    if (o_.section != 0 && o_.section != 3 && o_.section != 4)
        return fail("UsageError", "--section must be 3 or 4", exit_usage);
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : catalog().records) {
        if (o_.section && r.section != o_.section) continue;
        if (o_.json) {
            arr.push_back({{"id", r.id},
                           {"section", r.section},
                           {"theorem", theorem_name(r.theorem)},
                           {"form", r.form},
                           {"root", r.root},
                           {"classical_limit", r.classical.has_value()}});
        } else {
            out_ << std::left << std::setw(12) << r.id << std::setw(4) << r.section << std::setw(6)
                 << theorem_name(r.theorem) << std::setw(10) << r.form << std::setw(4) << r.root
                 << (r.classical ? "limit" : "-") << "\n";
        }
    }
    if (o_.json) emit(arr);
    return exit_ok;
}

int Session::limit() {
    const IdentityRecord* r = catalog().find(o_.id);
    if (!r) return fail("UnknownId", "no record '" + o_.id + "' in the catalog", exit_usage);
    if (!r->classical) return fail("NoClassicalLimit", "record '" + o_.id + "' has no classical limit", exit_fail);
    if (o_.terms < 3 || o_.digits <= 10) return fail("UsageError", "--terms must be >= 3 and --digits > 10", exit_usage);
    auto t0 = std::chrono::steady_clock::now();
    LimitReport rep = check_limit(*r, o_.terms, BigFloatCtx{o_.digits, 10});
    elapsed(t0);
    if (o_.json) {
        emit(limit_json(rep));
    } else {
        nlohmann::json j = limit_json(rep);
        out_ << rep.id << "\n"
             << "  series       " << j["series_value"].get<std::string>() << "\n"
             << "  closed form  " << j["closed_form_value"].get<std::string>() << "\n"
             << "  difference   " << j["abs_diff"].get<std::string>() << " (tail bound "
             << j["tail_bound"].get<std::string>() << ")\n"
             << "  rate         " << j["fitted_base"].get<std::string>() << " fitted, "
             << (rep.declared_base ? rep.declared_base->get_str() : std::string("none")) << " declared\n";
    }
    return rep.within() ? exit_ok : exit_fail;
}

int Session::bisect() {
    const BisectionCaseData* c = catalog().find_bisection(o_.id);
    if (!c) return fail("UnknownId", "no bisection case '" + o_.id + "' in the catalog", exit_usage);
    auto t0 = std::chrono::steady_clock::now();
    BisectionResult res = o_.max_deg >= 0 ? degree_search(*c, o_.max_deg) : solve_Q(*c, c->degree);
    elapsed(t0);
    if (o_.json) {
        emit(bisection_json(*c, res));
    } else {
        const SignSolution& s = res.chosen();
        out_ << c->id << ": sign " << (res.sign > 0 ? '+' : '-') << ", degree " << s.degree << "\n"
             << "  Q = " << q_polynomial_text(s.Q) << "\n"
             << "  + system " << (res.plus.consistent ? "consistent" : "inconsistent") << ", - system "
             << (res.minus.consistent ? "consistent" : "inconsistent") << "\n";
    }
    return exit_ok;
}

QMonomial parse_monomial_arg(const std::string& s) {
    auto colon = s.find(':');
    if (colon == std::string::npos) throw ParameterError("parameter '" + s + "' is not coeff:exponent");
    Rat coeff = parse_rat(s.substr(0, colon));
    Rat e = parse_rat(s.substr(colon + 1));
    if (!is_integer(e)) throw ParameterError("exponent in '" + s + "' is not an integer");
    return QMonomial{coeff, to_long(e), 0, 0};
}

int Session::jackson() {
    if (o_.n < 0) return fail("UsageError", "--n must be >= 0", exit_usage);
    if (o_.params.size() != 4) return fail("UsageError", "--params takes four coeff:exponent entries", exit_usage);
    Rat t;
    WellPoisedParams p;
    try {
        t = parse_rat(o_.r);
        p = WellPoisedParams{parse_monomial_arg(o_.params[0]), parse_monomial_arg(o_.params[1]),
                             parse_monomial_arg(o_.params[2]), parse_monomial_arg(o_.params[3])};
    } catch (const error& e) {
        return fail("UsageError", e.what(), exit_usage);
    }
    if (t == 0) return fail("UsageError", "--r must be nonzero", exit_usage);
    auto t0 = std::chrono::steady_clock::now();
    Rat lhs = jackson_lhs_rational(p, o_.n, t), rhs = jackson_rhs_rational(p, o_.n, t);
    elapsed(t0);
    bool equal = lhs == rhs;
    if (o_.json) {
        nlohmann::json j;
        j["oracle"] = "jackson";
        j["n"] = o_.n;
        j["r"] = to_string(t);
        j["q"] = to_string(rat_pow(t, default_root));
        j["params"] = o_.params;
        j["lhs"] = to_string(lhs);
        j["rhs"] = to_string(rhs);
        j["equal"] = equal;
        emit(j);
    } else {
        out_ << "jackson n=" << o_.n << " q=(" << to_string(t) << ")^" << default_root << "\n"
             << "  lhs " << to_string(lhs) << "\n"
             << "  rhs " << to_string(rhs) << "\n"
             << "  " << (equal ? "equal" : "DIFFERENT") << "\n";
    }
    return equal ? exit_ok : exit_fail;
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Exact q-series identity verifier"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_flag("--json", o.json, "print JSON on stdout");
    app.add_option("--catalog", o.catalog, "catalog file (default: $QSERIES_CATALOG or the bundled file)");

    auto* verify = app.add_subcommand("verify", "verify one catalog record");
    verify->add_option("id", o.id, "record id")->required();
    verify->add_option("--order", o.order, "truncation order in t")->check(CLI::PositiveNumber);

    auto* all = app.add_subcommand("verify-all", "verify every catalog record");
    all->add_option("--order", o.order, "truncation order in t")->check(CLI::PositiveNumber);
    all->add_flag("--parallel", o.parallel, "spread records over OpenMP threads");

    auto* list = app.add_subcommand("list", "list catalog records");
    list->add_option("--section", o.section, "only records of section 3 or 4");

    auto* limit = app.add_subcommand("limit", "evaluate a classical limit series against its closed form");
    limit->add_option("id", o.id, "record id")->required();
    limit->add_option("--terms", o.terms, "number of series terms");
    limit->add_option("--digits", o.digits, "working precision in decimal digits");

    auto* bisect = app.add_subcommand("bisect", "solve the reverse bisection of a case");
    bisect->add_option("case", o.id, "bisection case id")->required();
    bisect->add_option("--max-deg", o.max_deg, "search degrees 0..K instead of the catalogued degree")
        ->check(CLI::NonNegativeNumber);

    auto* oracle = app.add_subcommand("oracle", "exact rational oracles");
    oracle->require_subcommand(1);
    auto* jackson = oracle->add_subcommand("jackson", "Jackson's terminating sum at q = r^12");
    jackson->add_option("--n", o.n, "summation length")->required();
    jackson->add_option("--r", o.r, "rational r with q = r^12")->required();
    jackson->add_option("--params", o.params, "a b c d as coeff:exponent in r")->expected(4);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_usage;
    }

    Session s(o, out, err);
    try {
        if (*verify) return s.verify();
        if (*all) return s.verify_all();
        if (*list) return s.list();
        if (*limit) return s.limit();
        if (*bisect) return s.bisect();
        if (*jackson) return s.jackson();
    } catch (const CatalogError& e) {
        return s.fail(e.kind, e.what(), exit_usage);
    } catch (const error& e) {
        return s.fail(e.kind, e.what(), exit_fail);
    } catch (const std::exception& e) {
        return s.fail("InternalError", e.what(), exit_fail);
    }
    return exit_usage;
}

} // namespace qs
