#pragma once

#include <functional>
#include <memory>
#include <string>

#include "orbitstar/orbit.hpp"
#include "orbitstar/weyl.hpp"

namespace orbitstar {

// Orbit ideal plus a choice of deformed constants c_i(h) with c_i(0) = c_i^0.
// Owns the rewrite/symmetrizer contexts; not copyable because the contexts
// hold references into the ideal.
class QuantizationData {
public:
    // empty c_h means the undeformed choice c_i(h) = c_i^0
    explicit QuantizationData(OrbitIdeal ideal, std::vector<HPoly> c_h = {});
    QuantizationData(const QuantizationData&) = delete;
    QuantizationData& operator=(const QuantizationData&) = delete;

    const OrbitIdeal& ideal() const { return ideal_; }
    const std::vector<HPoly>& c_h() const { return c_h_; }
    // Delta_i with c_i(h) = c_i^0 + h*Delta_i(h)
    const std::vector<HPoly>& delta() const { return delta_; }

    PBWContext& pbw() { return *pbw_; }
    SymContext& sym() { return *sym_; }
    // sym(p_i), the central Casimir images
    const PBWElement& invariant_image(std::size_t i) { return P_[i]; }

private:
    OrbitIdeal ideal_;
    std::vector<HPoly> c_h_;
    std::vector<HPoly> delta_;
    std::unique_ptr<PBWContext> pbw_;
    std::unique_ptr<SymContext> sym_;
    std::vector<PBWElement> P_;
};

// Quantization map: each Kostant term (p-c0)^alpha (x) b goes to the product
// of (P_i - c_i(h)) factors times the plain ordered word of b.
PBWElement psi(const Poly& f, QuantizationData& Q);
// unique preimage, by descending filtration degree
Poly psi_inv(const PBWElement& u, QuantizationData& Q);

// f *_P g = psi_inv(psi(f) psi(g)); satisfies f *_P p_i = f p_i exactly
Poly star_p(const Poly& f, const Poly& g, QuantizationData& Q);
// the induced product on the quotient: normal_form(star_p(f,g)); inputs
// must already be in normal form
Poly star_p_orbit(const Poly& f, const Poly& g, QuantizationData& Q);

// equivalence eta = sym_inv o psi from *_P to *_S; eta(p_i - c_i^0) = p_i - c_i(h)
Poly eta(const Poly& f, QuantizationData& Q);

using StarHandle = std::function<Poly(const Poly&, const Poly&)>;

// Does the product preserve the orbit ideal? Checks two-sided products of
// each generator against every sample, reduced to normal form.
struct TangentialityReport {
    bool pass = true;
    Poly generator, sample, residue;  // witness when pass is false
};
TangentialityReport tangentiality_check(const StarHandle& star, const OrbitIdeal& I,
                                        const std::vector<Poly>& sample);

// Shift data z_i(p, h): polynomials in the m invariant values, coefficients
// may involve h. claimed_delta is optional reference data to cross-check.
struct GeneratorShift {
    std::vector<Poly> z;
    std::vector<HPoly> claimed_delta;
};

struct DeltaResult {
    std::vector<HPoly> delta;         // Delta_i(h) = z_i(c^0, h)
    std::vector<std::vector<Poly>> b; // z_i - Delta_i = sum_j b_ij (y_j - c_j^0)
    bool det_unit_at_h0 = false;      // det(delta_ij + h b_ij)|_{h=0} == 1
    bool matches_claimed = true;      // claimed_delta (if given) == delta
};
DeltaResult compute_delta(const QuantizationData& Q, const GeneratorShift& shift);

// One linear operator on polynomials: column map on monomials, absent
// columns act as zero.
struct LinearOp {
    std::map<Monomial, Poly, GrevlexLess> columns;
    Poly apply(const Poly& f) const;
};

// Gauge equivalence T = Id + sum h^n T_n with T(f *_A g) = T(f) *_B T(g)
// mod h^{r+1}, solved order by order on monomials of degree <= d.
struct EquivalenceResult {
    bool success = false;
    int fail_order = -1;
    std::string message;
    std::vector<LinearOp> T;  // T[n-1] is T_n
    Poly apply(const Poly& f) const;
};
EquivalenceResult equivalence_solver(const StarHandle& star_a, const StarHandle& star_b,
                                     int nvars, int d, int r);

}  // namespace orbitstar
