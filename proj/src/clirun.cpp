#include "orbitstar/clirun.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <memory>
#include <random>
#include <sstream>

#include "orbitstar/algstar.hpp"
#include "orbitstar/glue.hpp"
#include "orbitstar/kontsevich.hpp"
#include "orbitstar/lie.hpp"
#include "orbitstar/orbit.hpp"
#include "orbitstar/parse.hpp"
#include "orbitstar/pbw.hpp"
#include "orbitstar/weyl.hpp"

namespace orbitstar::cli {

namespace {

constexpr unsigned long long kDefaultSeed = 20240817ULL;

unsigned long long env_seed() {
    if (const char* s = std::getenv("ORBITSTAR_SEED")) {
        try {
            return std::stoull(s);
        } catch (...) {
        }
    }
    return kDefaultSeed;
}

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

LieAlgebra resolve_algebra(const std::string& spec) {
    LieAlgebra A = catalog_has(spec) ? catalog_algebra(spec) : load_algebra_file(spec);
    ValidationReport rep = validate_algebra(A);
    if (!rep.ok()) throw UsageError("algebra '" + spec + "' is invalid: " + rep.summary());
    return A;
}

std::vector<std::string> names_of(const LieAlgebra& A) {
    if (!A.var_names.empty()) return A.var_names;
    std::vector<std::string> v;
    for (int i = 1; i <= A.n; ++i) v.push_back("x" + std::to_string(i));
    return v;
}

Rational parse_rational(const std::string& s) {
    try {
        return Rational(s);
    } catch (...) {
        throw UsageError("cannot parse rational constant '" + s + "'");
    }
}

std::vector<Rational> parse_c0(const std::vector<std::string>& raw, const LieAlgebra& A) {
    std::vector<Rational> c0;
    for (const std::string& chunk : raw) {
        std::istringstream in(chunk);
        std::string item;
        while (std::getline(in, item, ',')) c0.push_back(parse_rational(item));
    }
    if (static_cast<int>(c0.size()) != A.rank())
        throw UsageError("--c0 needs " + std::to_string(A.rank()) +
                         " value(s) for algebra " + A.name);
    return c0;
}

HPoly parse_hpoly(const std::string& text) {
    Poly p = parse_expr(text, 0);
    return p.is_zero() ? HPoly() : p.terms().begin()->second;
}

std::vector<HPoly> parse_ch(const std::vector<std::string>& raw, const LieAlgebra& A) {
    if (raw.empty()) return {};
    std::vector<HPoly> ch;
    for (const std::string& s : raw) ch.push_back(parse_hpoly(s));
    if (static_cast<int>(ch.size()) != A.rank())
        throw UsageError("--ch needs " + std::to_string(A.rank()) + " polynomial(s)");
    return ch;
}

Order2Weights universal_weights() {
    // pinned by any single structure that sees both graphs; su2 does
    return solve_order2_weights({from_lie(catalog_algebra("su2"))});
}

// A star product together with whatever contexts keep it alive.
struct ProductBundle {
    StarHandle star;
    std::shared_ptr<QuantizationData> quant;  // only for P-type products
};

ProductBundle make_product(const std::string& product, const LieAlgebra& A,
                           const std::vector<std::string>& c0_raw,
                           const std::vector<std::string>& ch_raw) {
    if (product == "S") {
        auto pbw = std::make_shared<PBWContext>(A);
        auto sym = std::make_shared<SymContext>(*pbw);
        return {[pbw, sym](const Poly& f, const Poly& g) { return sym->star_s(f, g); }, {}};
    }
    if (product == "P") {
        if (c0_raw.empty()) throw UsageError("--product P requires --c0");
        OrbitIdeal I = make_orbit_ideal(A, parse_c0(c0_raw, A));
        auto Q = std::make_shared<QuantizationData>(std::move(I), parse_ch(ch_raw, A));
        return {[Q](const Poly& f, const Poly& g) { return star_p(f, g, *Q); }, Q};
    }
    if (product == "K2") {
        auto P = std::make_shared<PoissonStructure>(from_lie(A));
        auto W = std::make_shared<Order2Weights>(universal_weights());
        return {[P, W](const Poly& f, const Poly& g) { return star_k2(f, g, *P, *W); }, {}};
    }
    throw UsageError("unknown product '" + product + "' (expected S, P or K2)");
}

Poly random_poly(std::mt19937_64& rng, int nvars, int maxdeg) {
    std::uniform_int_distribution<int> coef(-3, 3);
    std::uniform_int_distribution<int> deg(0, maxdeg);
    Poly f(nvars);
    for (int t = 0; t < 3; ++t) {
        Monomial m(nvars, 0);
        int d = deg(rng);
        std::uniform_int_distribution<int> var(0, nvars - 1);
        for (int k = 0; k < d; ++k) ++m[var(rng)];
        int c = coef(rng);
        if (c != 0) f += Poly::monomial(nvars, m, HPoly(Rational(c)));
    }
    return f;
}

void report_line(std::ostream& out, const std::string& property, bool pass,
                 const std::string& witness) {
    out << property << '\t' << (pass ? "PASS" : "FAIL") << '\t'
        << (pass ? "-" : witness) << '\n';
}

// ------------------------------------------------------------ subcommands

int cmd_check_algebra(const std::string& spec, std::ostream& out) {
    LieAlgebra A = catalog_has(spec) ? catalog_algebra(spec) : load_algebra_file(spec);
    ValidationReport rep = validate_algebra(A);
    report_line(out, "antisymmetry", rep.antisymmetry_errors.empty(),
                rep.antisymmetry_errors.empty() ? "" : rep.antisymmetry_errors.front());
    std::string jw;
    if (!rep.jacobi_violations.empty()) {
        const auto& v = rep.jacobi_violations.front();
        jw = "jacobi(" + std::to_string(v.i) + "," + std::to_string(v.j) + "," +
             std::to_string(v.k) + ") defect " + v.defect.str();
    }
    report_line(out, "jacobi", rep.jacobi_violations.empty(), jw);
    report_line(out, "centrality", rep.centrality_errors.empty(),
                rep.centrality_errors.empty() ? "" : rep.centrality_errors.front());
    return rep.ok() ? 0 : 1;
}

int cmd_star_mul(const std::string& product, const std::string& algebra,
                 const std::vector<std::string>& c0_raw,
                 const std::vector<std::string>& ch_raw, const std::string& ftext,
                 const std::string& gtext, std::ostream& out) {
    LieAlgebra A = resolve_algebra(algebra);
    std::vector<std::string> names = names_of(A);
    Poly f = parse_expr(ftext, A.n, names);
    Poly g = parse_expr(gtext, A.n, names);
    ProductBundle B = make_product(product, A, c0_raw, ch_raw);
    out << B.star(f, g).to_string(names) << '\n';
    return 0;
}

int cmd_orbit_reduce(const std::string& algebra, const std::vector<std::string>& c0_raw,
                     const std::string& ftext, std::ostream& out) {
    LieAlgebra A = resolve_algebra(algebra);
    if (c0_raw.empty()) throw UsageError("orbit-reduce requires --c0");
    std::vector<std::string> names = names_of(A);
    OrbitIdeal I = make_orbit_ideal(A, parse_c0(c0_raw, A));
    Poly f = parse_expr(ftext, A.n, names);
    out << normal_form(f, I).to_string(names) << '\n';
    return 0;
}

struct VerifyArgs {
    std::string property, product = "S", algebra;
    std::vector<std::string> c0_raw, ch_raw;
    int degree = 3, order = 2, cases = 20;
    unsigned long long seed = env_seed();
};

int cmd_verify(const VerifyArgs& a, std::ostream& out) {
    LieAlgebra A = resolve_algebra(a.algebra);
    std::vector<std::string> names = names_of(A);
    out << "# seed " << a.seed << '\n';
    std::mt19937_64 rng(a.seed);

    if (a.property == "assoc" || a.property == "first-order") {
        ProductBundle B = make_product(a.product, A, a.c0_raw, a.ch_raw);
        // an order-2 truncated product is only associative mod h^3
        int trunc = (a.product == "K2") ? 2 : -1;
        for (int k = 0; k < a.cases; ++k) {
            Poly f = random_poly(rng, A.n, a.degree);
            Poly g = random_poly(rng, A.n, a.degree);
            if (a.property == "assoc") {
                Poly h = random_poly(rng, A.n, a.degree);
                Poly defect = B.star(B.star(f, g), h) - B.star(f, B.star(g, h));
                if (trunc >= 0) defect = defect.h_truncated(trunc);
                if (!defect.is_zero()) {
                    report_line(out, a.property, false,
                                "case " + std::to_string(k) + ": " + defect.to_string(names));
                    return 1;
                }
            } else {
                Poly defect = (B.star(f, g) - B.star(g, f) -
                               poisson_bracket(f, g, A).mul_h(1))
                                  .h_truncated(1);
                if (!defect.is_zero()) {
                    report_line(out, a.property, false,
                                "case " + std::to_string(k) + ": " + defect.to_string(names));
                    return 1;
                }
            }
        }
        report_line(out, a.property, true, "");
        return 0;
    }

    if (a.property == "tangential") {
        if (a.c0_raw.empty()) throw UsageError("--property tangential requires --c0");
        OrbitIdeal I = make_orbit_ideal(A, parse_c0(a.c0_raw, A));
        ProductBundle B = make_product(a.product, A, a.c0_raw, a.ch_raw);
        std::vector<Poly> samples;
        for (const Monomial& m : monomial_basis(I, std::min(a.degree, 2)).flat())
            samples.push_back(Poly::monomial(A.n, m, HPoly(Rational(1))));
        TangentialityReport rep = tangentiality_check(B.star, I, samples);
        report_line(out, "tangential", rep.pass,
                    rep.pass ? "" : rep.residue.to_string(names));
        return rep.pass ? 0 : 1;
    }

    if (a.property == "eta-generators") {
        if (a.c0_raw.empty()) throw UsageError("--property eta-generators requires --c0");
        OrbitIdeal I = make_orbit_ideal(A, parse_c0(a.c0_raw, A));
        QuantizationData Q(std::move(I), parse_ch(a.ch_raw, A));
        bool pass = true;
        std::string witness;
        for (std::size_t i = 0; i < Q.ideal().generators.size(); ++i) {
            Poly expect = Q.ideal().generators[i] +
                          Poly::constant(A.n, HPoly(Q.ideal().c0[i]) - Q.c_h()[i]);
            Poly got = eta(Q.ideal().generators[i], Q);
            if (got != expect) {
                pass = false;
                witness = "generator " + std::to_string(i + 1) + ": " +
                          (got - expect).to_string(names);
                break;
            }
        }
        report_line(out, "eta-generators", pass, witness);
        return pass ? 0 : 1;
    }

    if (a.property == "equivalence") {
        if (a.product == "S")
            throw UsageError("--property equivalence needs --product P or K2 "
                             "(compared against the symmetrizer product)");
        ProductBundle lhs = make_product(a.product, A, a.c0_raw, a.ch_raw);
        ProductBundle rhs = make_product("S", A, {}, {});
        EquivalenceResult res =
            equivalence_solver(lhs.star, rhs.star, A.n, a.degree, a.order);
        report_line(out, "equivalence", res.success,
                    res.success ? "" : "order " + std::to_string(res.fail_order) + ": " +
                                           res.message);
        return res.success ? 0 : 1;
    }

    throw UsageError("unknown property '" + a.property + "'");
}

int cmd_glue_verify(const std::string& fixture, const std::string& check, int points,
                    unsigned long long seed, std::ostream& out) {
    glue::ChartCover cover;
    try {
        cover = glue::builtin_cover(fixture);
    } catch (const std::invalid_argument&) {
        cover = glue::load_cover_file(fixture);
    }
    auto pts = glue::sample_points(cover, points, seed);
    out << "# seed " << seed << '\n';
    glue::GlueReport rep;
    if (check == "cocycle") {
        rep = glue::cocycle_check(cover, pts, 1e-10);
        glue::GlueReport part = glue::partition_check(cover, pts, 1e-12);
        if (!part.pass) rep = part;
    } else if (check == "consistency") {
        rep = glue::chart_consistency_check(cover, pts, 1e-10);
    } else if (check == "assoc") {
        rep = glue::associativity_check(cover, pts, 1e-8);
    } else if (check == "tangential") {
        rep = glue::tangentiality_probe(cover, pts, 1e-10);
    } else {
        throw UsageError("unknown glue check '" + check + "'");
    }
    std::ostringstream w;
    w << "max defect " << rep.max_defect;
    if (!rep.detail.empty()) w << " (" << rep.detail << ")";
    out << check << '\t' << (rep.pass ? "PASS" : "FAIL") << '\t' << w.str() << '\n';
    return rep.pass ? 0 : 1;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out,
                std::ostream& err) {
    CLI::App app{"exact star-product engine for duals of Lie algebras"};
    app.require_subcommand(1);

    std::string algebra_spec;
    auto* check = app.add_subcommand("check-algebra", "validate an algebra description");
    check->add_option("algebra", algebra_spec, "catalog name or file path")->required();

    std::string product = "S", ftext, gtext;
    std::vector<std::string> c0_raw, ch_raw;
    auto* mul = app.add_subcommand("star-mul", "multiply two expressions");
    mul->add_option("--product", product)->check(CLI::IsMember({"S", "P", "K2"}));
    mul->add_option("--algebra", algebra_spec)->required();
    mul->add_option("--c0", c0_raw, "orbit constants (comma separated or repeated)");
    mul->add_option("--ch", ch_raw, "deformed constants c_i(h)");
    mul->add_option("f", ftext)->required();
    mul->add_option("g", gtext)->required();

    auto* reduce = app.add_subcommand("orbit-reduce", "normal form modulo the orbit ideal");
    reduce->add_option("--algebra", algebra_spec)->required();
    reduce->add_option("--c0", c0_raw)->required();
    reduce->add_option("f", ftext)->required();

    VerifyArgs va;
    auto* verify = app.add_subcommand("verify", "run a property suite");
    verify->add_option("--property", va.property)
        ->required()
        ->check(CLI::IsMember(
            {"assoc", "tangential", "equivalence", "eta-generators", "first-order"}));
    verify->add_option("--product", va.product)->check(CLI::IsMember({"S", "P", "K2"}));
    verify->add_option("--algebra", va.algebra)->required();
    verify->add_option("--c0", va.c0_raw);
    verify->add_option("--ch", va.ch_raw);
    verify->add_option("--degree", va.degree)->check(CLI::PositiveNumber);
    verify->add_option("--order", va.order)->check(CLI::PositiveNumber);
    verify->add_option("--cases", va.cases)->check(CLI::PositiveNumber);
    verify->add_option("--seed", va.seed);

    std::string fixture, glue_check;
    int points = 20;
    unsigned long long glue_seed = env_seed();
    auto* gv = app.add_subcommand("glue-verify", "numeric checks on a chart cover");
    gv->add_option("--fixture", fixture, "builtin name or fixture file")->required();
    gv->add_option("--check", glue_check)
        ->required()
        ->check(CLI::IsMember({"cocycle", "consistency", "assoc", "tangential"}));
    gv->add_option("--points", points)->check(CLI::PositiveNumber);
    gv->add_option("--seed", glue_seed);

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);  // CLI11 consumes reversed argument lists
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }

    try {
        if (check->parsed()) return cmd_check_algebra(algebra_spec, out);
        if (mul->parsed())
            return cmd_star_mul(product, algebra_spec, c0_raw, ch_raw, ftext, gtext, out);
        if (reduce->parsed()) return cmd_orbit_reduce(algebra_spec, c0_raw, ftext, out);
        if (verify->parsed()) return cmd_verify(va, out);
        if (gv->parsed())
            return cmd_glue_verify(fixture, glue_check, points, glue_seed, out);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}

int run_command(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return run_command(args, out, err);
}

}  // namespace orbitstar::cli
