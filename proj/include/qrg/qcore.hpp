#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qrg/rng.hpp"

namespace qrg {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

// Numerical tolerances shared across the library.
namespace tol {
inline constexpr double hermitian = 1e-10;
inline constexpr double positive = 1e-10;
inline constexpr double trace_one = 1e-10;
inline constexpr double completeness = 1e-9;
inline constexpr double equality = 1e-12;
} // namespace tol

double max_abs(const CMatrix& m);
bool is_hermitian(const CMatrix& m, double eps = tol::hermitian);
double min_eigenvalue(const CMatrix& hermitian_m);

CMatrix identity(int dim);

// Kronecker product, left factor varying slowest.
CMatrix tensor(const CMatrix& a, const CMatrix& b);
CMatrix tensor(const std::vector<CMatrix>& factors);

// Reorders tensor factors: slot i of the result carries subsystem perm[i]
// of the input. perm must be a permutation of 0..dims.size()-1.
CMatrix permute_subsystems(const CMatrix& m, const std::vector<int>& dims,
                           const std::vector<int>& perm);

// Traces out every subsystem not listed in keep; kept subsystems retain
// their relative order. keep must be strictly increasing.
CMatrix partial_trace(const CMatrix& m, const std::vector<int>& dims,
                      const std::vector<int>& keep);

struct Spectrum {
    Eigen::VectorXd eigenvalues; // sorted descending
    CMatrix eigenvectors;        // orthonormal columns, matching order
};

// Hermitian eigendecomposition. Throws if the input is not Hermitian
// within 1e-9.
Spectrum spectral_decompose(const CMatrix& h);

// A trace-one positive Hermitian operator together with the tensor
// factorization of the space it lives on.
class DensityOperator {
  public:
    DensityOperator(CMatrix m, std::vector<int> dims);

    const CMatrix& matrix() const { return m_; }
    const std::vector<int>& dims() const { return dims_; }
    int dim() const { return static_cast<int>(m_.rows()); }

  private:
    CMatrix m_;
    std::vector<int> dims_;
};

// A finite list of positive effects summing to the identity.
class Povm {
  public:
    explicit Povm(std::vector<CMatrix> effects);

    int outcomes() const { return static_cast<int>(effects_.size()); }
    int dim() const { return static_cast<int>(effects_[0].rows()); }
    const CMatrix& effect(int i) const { return effects_.at(i); }
    const std::vector<CMatrix>& effects() const { return effects_; }

  private:
    std::vector<CMatrix> effects_;
};

// Kraus representation of a completely positive trace-preserving map.
class KrausChannel {
  public:
    explicit KrausChannel(std::vector<CMatrix> kraus);

    int in_dim() const { return static_cast<int>(kraus_[0].cols()); }
    int out_dim() const { return static_cast<int>(kraus_[0].rows()); }
    const std::vector<CMatrix>& kraus() const { return kraus_; }

    static KrausChannel identity(int dim);
    // Discards the input and prepares the given state.
    static KrausChannel prepare(const CMatrix& state, int in_dim);

  private:
    std::vector<CMatrix> kraus_;
};

DensityOperator apply_channel(const KrausChannel& ch,
                              const DensityOperator& rho);

// Heisenberg-picture action on effects: sum_k K^dag E K, the adjoint of
// apply_channel under the Hilbert-Schmidt pairing.
CMatrix dual_apply(const KrausChannel& ch, const CMatrix& effect);

DensityOperator random_density(Rng& rng, int dim, int rank);
DensityOperator random_density(std::uint64_t seed, int dim, int rank);
CMatrix random_unitary(Rng& rng, int dim);
CMatrix random_unitary(std::uint64_t seed, int dim);
CVector random_ket(Rng& rng, int dim);
Povm random_povm(Rng& rng, int dim, int outcomes);
Povm random_povm(std::uint64_t seed, int dim, int outcomes);
KrausChannel random_channel(Rng& rng, int in_dim, int out_dim,
                            int kraus_count);

} // namespace qrg
