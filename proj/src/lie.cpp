#include "orbitstar/lie.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "orbitstar/parse.hpp"

namespace orbitstar {

Poly poisson_bracket(const Poly& f, const Poly& g, const LieAlgebra& A) {
    if (f.nvars() != A.n || g.nvars() != A.n)
        throw std::invalid_argument("poisson_bracket: variable count mismatch");
    Poly out(A.n);
    std::vector<Poly> df(A.n, Poly(A.n)), dg(A.n, Poly(A.n));
    for (int i = 1; i <= A.n; ++i) {
        df[i - 1] = f.partial(i);
        dg[i - 1] = g.partial(i);
    }
    for (int i = 1; i <= A.n; ++i) {
        if (df[i - 1].is_zero()) continue;
        for (int j = 1; j <= A.n; ++j) {
            if (dg[j - 1].is_zero()) continue;
            for (int k = 1; k <= A.n; ++k) {
                Rational ck = A.structure(i, j, k);
                if (ck == 0) continue;
                out += ck * (Poly::variable(A.n, k) * df[i - 1] * dg[j - 1]);
            }
        }
    }
    return out;
}

std::vector<JacobiViolation> jacobi_report(const LieAlgebra& A) {
    std::vector<JacobiViolation> out;
    for (int i = 1; i <= A.n; ++i)
        for (int j = 1; j <= A.n; ++j)
            for (int k = 1; k <= A.n; ++k)
                for (int m = 1; m <= A.n; ++m) {
                    Rational s(0);
                    for (int l = 1; l <= A.n; ++l)
                        s += A.structure(i, j, l) * A.structure(l, k, m) +
                             A.structure(j, k, l) * A.structure(l, i, m) +
                             A.structure(k, i, l) * A.structure(l, j, m);
                    if (s != 0) out.push_back({i, j, k, m, s});
                }
    return out;
}

ValidationReport validate_algebra(const LieAlgebra& A) {
    ValidationReport rep;
    for (int i = 1; i <= A.n; ++i)
        for (int j = 1; j <= A.n; ++j)
            for (int k = 1; k <= A.n; ++k)
                if (A.structure(i, j, k) != -A.structure(j, i, k)) {
                    std::ostringstream os;
                    os << "antisymmetry violated at c_" << i << j << "^" << k << ": "
                       << A.structure(i, j, k) << " vs " << -A.structure(j, i, k);
                    rep.antisymmetry_errors.push_back(os.str());
                }
    rep.jacobi_violations = jacobi_report(A);
    for (std::size_t p = 0; p < A.invariants.size(); ++p) {
        if (!A.invariants[p].h_free()) {
            rep.centrality_errors.push_back("invariant p" + std::to_string(p + 1) +
                                            " depends on h");
            continue;
        }
        for (int j = 1; j <= A.n; ++j) {
            Poly b = poisson_bracket(A.invariants[p], Poly::variable(A.n, j), A);
            if (!b.is_zero()) {
                rep.centrality_errors.push_back(
                    "invariant p" + std::to_string(p + 1) + " not central: {p" +
                    std::to_string(p + 1) + ", x" + std::to_string(j) +
                    "} = " + b.to_string(A.var_names));
            }
        }
    }
    for (const auto& oc : A.orbit_constants)
        if (oc.values.size() != A.invariants.size())
            rep.centrality_errors.push_back("orbit constant arity mismatch");
    return rep;
}

std::string ValidationReport::summary() const {
    if (ok()) return "valid";
    std::ostringstream os;
    for (const auto& e : antisymmetry_errors) os << e << "\n";
    for (const auto& v : jacobi_violations)
        os << "jacobi violated at (i,j,k,m)=(" << v.i << "," << v.j << "," << v.k << ","
           << v.m << "), defect " << v.defect << "\n";
    for (const auto& e : centrality_errors) os << e << "\n";
    return os.str();
}

bool orbit_constant_regular(const LieAlgebra& A, const std::vector<Rational>& c0) {
    if (A.name == "heisenberg") return c0.size() == 1 && c0[0] != 0;
    if (A.name == "su2") return c0.size() == 1 && c0[0] > 0;
    if (A.name == "su3") {
        // p2 = 8*sum(mu^2), p3 = -72*sum(mu^3) on the orbit through
        // -i*diag(mu1,mu2,mu3); regular iff the mu's are pairwise distinct,
        // i.e. the discriminant of t^3 + e2 t - e3 is nonzero.
        if (c0.size() != 2) return false;
        Rational s2 = c0[0] / 8, s3 = -c0[1] / 72;
        Rational e2 = -s2 / 2, e3 = s3 / 3;
        Rational disc = -4 * e2 * e2 * e2 - 27 * e3 * e3;
        return disc != 0;
    }
    // unknown algebra: trust the catalog/file flag by rejecting nothing
    return true;
}

namespace {

void set_bracket(LieAlgebra& A, int i, int j, int k, const Rational& v) {
    A.c[i - 1][j - 1][k - 1] = v;
    A.c[j - 1][i - 1][k - 1] = -v;
}

LieAlgebra make_shell(const std::string& name, int n) {
    LieAlgebra A;
    A.name = name;
    A.n = n;
    A.c.assign(n, std::vector<std::vector<Rational>>(n, std::vector<Rational>(n, Rational(0))));
    return A;
}

LieAlgebra make_heisenberg() {
    LieAlgebra A = make_shell("heisenberg", 3);
    set_bracket(A, 1, 2, 3, 1);
    A.invariants.push_back(Poly::variable(3, 3));
    A.orbit_constants = {{{Rational(1)}, true},
                         {{Rational(2)}, true},
                         {{Rational(-1)}, true},
                         {{Rational(0)}, false}};
    A.var_names = {"q", "p", "e"};
    return A;
}

LieAlgebra make_su2() {
    LieAlgebra A = make_shell("su2", 3);
    set_bracket(A, 1, 2, 3, 1);
    set_bracket(A, 2, 3, 1, 1);
    set_bracket(A, 3, 1, 2, 1);
    Poly p(3);
    for (int i = 1; i <= 3; ++i) p += Poly::variable(3, i) * Poly::variable(3, i);
    A.invariants.push_back(p);
    A.orbit_constants = {{{Rational(1)}, true},
                         {{Rational(4)}, true},
                         {{Rational(0)}, false},
                         {{Rational(-1)}, false}};
    A.var_names = {"x", "y", "z"};
    return A;
}

// su(3) in the basis X_a = -i*lambda_a/2 (a=1..7), X_8 = -i*sqrt(3)*lambda_8/2;
// the sqrt(3) rescale of the eighth generator makes every structure constant
// and invariant coefficient rational. Data generated and cross-checked
// (Jacobi, centrality) with an independent computer-algebra run.
LieAlgebra make_su3() {
    LieAlgebra A = make_shell("su3", 8);
    struct E {
        int i, j, k;
        Rational v;
    };
    const std::vector<E> entries = {
        {1, 2, 3, Rational(1)},      {1, 3, 2, Rational(-1)},
        {1, 4, 7, Rational(1, 2)},   {1, 5, 6, Rational(-1, 2)},
        {1, 6, 5, Rational(1, 2)},   {1, 7, 4, Rational(-1, 2)},
        {2, 3, 1, Rational(1)},      {2, 4, 6, Rational(1, 2)},
        {2, 5, 7, Rational(1, 2)},   {2, 6, 4, Rational(-1, 2)},
        {2, 7, 5, Rational(-1, 2)},  {3, 4, 5, Rational(1, 2)},
        {3, 5, 4, Rational(-1, 2)},  {3, 6, 7, Rational(-1, 2)},
        {3, 7, 6, Rational(1, 2)},   {4, 5, 3, Rational(1, 2)},
        {4, 5, 8, Rational(1, 2)},   {4, 6, 2, Rational(1, 2)},
        {4, 7, 1, Rational(1, 2)},   {4, 8, 5, Rational(-3, 2)},
        {5, 6, 1, Rational(-1, 2)},  {5, 7, 2, Rational(1, 2)},
        {5, 8, 4, Rational(3, 2)},   {6, 7, 3, Rational(-1, 2)},
        {6, 7, 8, Rational(1, 2)},   {6, 8, 7, Rational(-3, 2)},
        {7, 8, 6, Rational(3, 2)}};
    for (const auto& e : entries) set_bracket(A, e.i, e.j, e.k, e.v);

    // quadratic Casimir, normalized so p2 = 8*sum(mu^2) on Cartan points
    Poly p2(8);
    for (int i = 1; i <= 7; ++i)
        p2 += Rational(4) * (Poly::variable(8, i) * Poly::variable(8, i));
    p2 += Rational(4, 3) * (Poly::variable(8, 8) * Poly::variable(8, 8));
    // cubic Casimir from the symmetric d-tensor, p3 = -72*sum(mu^3) on Cartan
    struct T {
        Monomial m;
        Rational v;
    };
    const std::vector<T> cubic = {
        {{2, 0, 0, 0, 0, 0, 0, 1}, Rational(-18)},
        {{1, 0, 0, 1, 0, 1, 0, 0}, Rational(-54)},
        {{1, 0, 0, 0, 1, 0, 1, 0}, Rational(-54)},
        {{0, 2, 0, 0, 0, 0, 0, 1}, Rational(-18)},
        {{0, 1, 0, 1, 0, 0, 1, 0}, Rational(54)},
        {{0, 1, 0, 0, 1, 1, 0, 0}, Rational(-54)},
        {{0, 0, 2, 0, 0, 0, 0, 1}, Rational(-18)},
        {{0, 0, 1, 2, 0, 0, 0, 0}, Rational(-27)},
        {{0, 0, 1, 0, 2, 0, 0, 0}, Rational(-27)},
        {{0, 0, 1, 0, 0, 2, 0, 0}, Rational(27)},
        {{0, 0, 1, 0, 0, 0, 2, 0}, Rational(27)},
        {{0, 0, 0, 2, 0, 0, 0, 1}, Rational(9)},
        {{0, 0, 0, 0, 2, 0, 0, 1}, Rational(9)},
        {{0, 0, 0, 0, 0, 2, 0, 1}, Rational(9)},
        {{0, 0, 0, 0, 0, 0, 2, 1}, Rational(9)},
        {{0, 0, 0, 0, 0, 0, 0, 3}, Rational(2)}};
    Poly p3(8);
    for (const auto& t : cubic) p3.add_term(t.m, HPoly(t.v));
    A.invariants = {p2, p3};
    // orbits through -i*diag(1,0,-1) and -i*diag(2,1,-3) are regular,
    // -i*diag(1,1,-2) is not
    A.orbit_constants = {{{Rational(16), Rational(0)}, true},
                         {{Rational(112), Rational(1296)}, true},
                         {{Rational(48), Rational(432)}, false}};
    return A;
}

}  // namespace

bool catalog_has(const std::string& name) {
    return name == "heisenberg" || name == "su2" || name == "su3";
}

LieAlgebra catalog_algebra(const std::string& name) {
    if (name == "heisenberg") return make_heisenberg();
    if (name == "su2") return make_su2();
    if (name == "su3") return make_su3();
    throw std::invalid_argument("unknown catalog algebra '" + name + "'");
}

LieAlgebra parse_algebra_text(const std::string& text, const std::string& origin) {
    LieAlgebra A;
    A.n = -1;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    auto fail = [&](const std::string& msg) {
        throw std::runtime_error(origin + ":" + std::to_string(lineno) + ": " + msg);
    };
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string key;
        if (!(ls >> key)) continue;
        if (key == "name") {
            if (!(ls >> A.name)) fail("expected algebra name");
        } else if (key == "dim") {
            if (!(ls >> A.n) || A.n < 1) fail("expected positive dimension");
            A.c.assign(A.n, std::vector<std::vector<Rational>>(
                                A.n, std::vector<Rational>(A.n, Rational(0))));
        } else if (key == "alias") {
            std::string v;
            while (ls >> v) A.var_names.push_back(v);
        } else if (key == "bracket") {
            if (A.n < 0) fail("'dim' must come before 'bracket'");
            int i, j;
            std::string arrow;
            if (!(ls >> i >> j >> arrow) || arrow != "->")
                fail("expected 'bracket i j -> k coeff [k coeff ...]'");
            if (i < 1 || i > A.n || j < 1 || j > A.n) fail("bracket index out of range");
            int k;
            std::string coeff;
            bool any = false;
            while (ls >> k >> coeff) {
                if (k < 1 || k > A.n) fail("bracket target index out of range");
                Rational v;
                try {
                    v = Rational(coeff);
                } catch (...) {
                    fail("bad rational '" + coeff + "'");
                }
                A.c[i - 1][j - 1][k - 1] = v;
                A.c[j - 1][i - 1][k - 1] = -v;
                any = true;
            }
            if (!any) fail("bracket entry lists no targets");
        } else if (key == "invariant") {
            if (A.n < 0) fail("'dim' must come before 'invariant'");
            std::string rest;
            std::getline(ls, rest);
            try {
                A.invariants.push_back(parse_expr(rest, A.n, A.var_names));
            } catch (const ParseError& e) {
                fail(std::string("invariant: ") + e.what());
            }
        } else if (key == "orbit") {
            OrbitConstant oc;
            std::string tok;
            while (ls >> tok) {
                if (tok == "regular") {
                    oc.regular = true;
                } else if (tok == "singular") {
                    oc.regular = false;
                } else {
                    try {
                        oc.values.emplace_back(tok);
                    } catch (...) {
                        fail("bad rational '" + tok + "'");
                    }
                }
            }
            A.orbit_constants.push_back(std::move(oc));
        } else {
            fail("unknown key '" + key + "'");
        }
    }
    if (A.n < 0) throw std::runtime_error(origin + ": missing 'dim'");
    return A;
}

LieAlgebra load_algebra_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open algebra file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_algebra_text(buf.str(), path);
}

}  // namespace orbitstar
