#pragma once

#include <vector>

#include "orbitstar/lie.hpp"

namespace orbitstar {

// Polynomial Poisson structure on flat n-space: antisymmetric matrix of
// h-free Poly entries satisfying the Jacobi identity.
struct PoissonStructure {
    int n = 0;
    std::vector<std::vector<Poly>> alpha;
};

// antisymmetry + polynomial Jacobi identity
bool validate_poisson(const PoissonStructure& P);

// Kirillov structure alpha^{ij} = sum_k c_ij^k x_k
PoissonStructure from_lie(const LieAlgebra& A);

// Weights of the two order-2 bidifferential graphs.
struct Order2Weights {
    Rational w_sym2;
    Rational w_loop;
};

// The unique weights making the order-2 product associative mod h^3 across
// the given nonabelian test structures. Throws if the linear system is
// inconsistent or underdetermined.
Order2Weights solve_order2_weights(const std::vector<PoissonStructure>& test_set);

// f g + h B_1(f,g) + h^2 B_2(f,g), truncated at h^2:
//   B_1 = (1/2) a^{ij} d_i f d_j g
//   B_2 = w_sym2 a^{ij} a^{kl} d_i d_k f d_j d_l g
//       + w_loop a^{ij} d_j a^{kl} (d_i d_k f d_l g - d_k f d_i d_l g)
Poly star_k2(const Poly& f, const Poly& g, const PoissonStructure& P,
             const Order2Weights& W);

}  // namespace orbitstar
