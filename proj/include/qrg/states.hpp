#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "qrg/qcore.hpp"

namespace qrg {

// The four Bell states, k = 0..3 -> Phi+, Phi-, Psi+, Psi-.
DensityOperator bell_state(int k);

// |Psi+> = sum_i |ii> / sqrt(d) as a density operator on d x d.
DensityOperator maximally_entangled(int d);

// rho_W(w) = w |Psi-><Psi-| + (1-w) 1/4. PPT exactly for w <= 1/3.
DensityOperator werner_state(double w);

// Transpose on one factor of a bipartite operator; subsystem is 0 or 1.
CMatrix partial_transpose(const DensityOperator& rho, int subsystem);
CMatrix partial_transpose(const CMatrix& m, const std::vector<int>& dims,
                          int subsystem);

struct ProductTerm {
    double weight;
    CVector ket_a;
    CVector ket_b;
};

struct SeparableSample {
    DensityOperator state; // dims {2, 2}
    std::vector<ProductTerm> decomposition;
};

// Random two-qubit separable state with its product-state certificate.
SeparableSample random_separable(std::uint64_t seed, int n_terms);
SeparableSample random_separable(Rng& rng, int n_terms);

} // namespace qrg
