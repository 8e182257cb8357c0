#pragma once

#include <optional>
#include <string>
#include <vector>

#include "orbitstar/poly.hpp"

namespace orbitstar {

struct OrbitConstant {
    std::vector<Rational> values;  // one per invariant
    bool regular = false;
};

// Lie algebra data: structure constants, invariant polynomials, example
// orbit constants. Immutable after load; validate() must be run on any
// externally supplied description.
struct LieAlgebra {
    std::string name;
    int n = 0;  // dimension
    // c[i][j][k] with 0-based storage, [X_i, X_j] = sum_k c_ij^k X_k
    std::vector<std::vector<std::vector<Rational>>> c;
    std::vector<Poly> invariants;          // the p_i, h-free
    std::vector<OrbitConstant> orbit_constants;
    std::vector<std::string> var_names;    // print/parse aliases, may be empty

    Rational structure(int i, int j, int k) const {  // 1-based
        return c[i - 1][j - 1][k - 1];
    }
    int rank() const { return static_cast<int>(invariants.size()); }
    Poly bracket_xi_xj(int i, int j) const {
        Poly r(n);
        for (int k = 1; k <= n; ++k) {
            Rational v = structure(i, j, k);
            if (v != 0) r += v * Poly::variable(n, k);
        }
        return r;
    }
};

struct JacobiViolation {
    int i, j, k, m;
    Rational defect;
};

struct ValidationReport {
    std::vector<std::string> antisymmetry_errors;
    std::vector<JacobiViolation> jacobi_violations;
    std::vector<std::string> centrality_errors;
    bool ok() const {
        return antisymmetry_errors.empty() && jacobi_violations.empty() &&
               centrality_errors.empty();
    }
    std::string summary() const;
};

// The Kirillov Poisson bracket {f,g} = sum_{ijk} c_ij^k x_k d_i f d_j g.
Poly poisson_bracket(const Poly& f, const Poly& g, const LieAlgebra& A);

ValidationReport validate_algebra(const LieAlgebra& A);
std::vector<JacobiViolation> jacobi_report(const LieAlgebra& A);

// Per-algebra regularity predicate for a vector of orbit constants.
bool orbit_constant_regular(const LieAlgebra& A, const std::vector<Rational>& c0);

// Built-in catalog: "heisenberg", "su2", "su3". Throws on unknown name.
LieAlgebra catalog_algebra(const std::string& name);
bool catalog_has(const std::string& name);

// Structured-text loader (see docs/ or the README for the format). Throws
// std::runtime_error with a line-numbered diagnostic on parse errors; the
// returned algebra is NOT yet validated.
LieAlgebra load_algebra_file(const std::string& path);
LieAlgebra parse_algebra_text(const std::string& text, const std::string& origin);

}  // namespace orbitstar
