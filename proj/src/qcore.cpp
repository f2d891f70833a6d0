#include "qrg/qcore.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace qrg {

namespace {

std::vector<int> check_dims(const std::vector<int>& dims, int total,
                            const char* who) {
    long prod = 1;
    for (int d : dims) {
        if (d < 1) throw std::invalid_argument(std::string(who) + ": subsystem dimension must be positive");
        prod *= d;
    }
    if (prod != total)
        throw std::invalid_argument(std::string(who) + ": product of dims " + std::to_string(prod) +
                                    " does not match matrix dimension " + std::to_string(total));
    return dims;
}

// Row-major digit decomposition of a flat index over the given dims.
void to_digits(long flat, const std::vector<int>& dims, std::vector<int>& out) {
    for (int k = static_cast<int>(dims.size()) - 1; k >= 0; --k) {
        out[k] = static_cast<int>(flat % dims[k]);
        flat /= dims[k];
    }
}

long from_digits(const std::vector<int>& digits, const std::vector<int>& dims) {
    long flat = 0;
    for (std::size_t k = 0; k < dims.size(); ++k) flat = flat * dims[k] + digits[k];
    return flat;
}

} // namespace

double max_abs(const CMatrix& m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

bool is_hermitian(const CMatrix& m, double eps) {
    if (m.rows() != m.cols()) return false;
    return max_abs(m - m.adjoint().eval()) <= eps;
}

double min_eigenvalue(const CMatrix& hermitian_m) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian_m, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

CMatrix identity(int dim) { return CMatrix::Identity(dim, dim); }

CMatrix tensor(const CMatrix& a, const CMatrix& b) {
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

CMatrix tensor(const std::vector<CMatrix>& factors) {
    if (factors.empty()) throw std::invalid_argument("tensor: no factors");
    CMatrix out = factors[0];
    for (std::size_t k = 1; k < factors.size(); ++k) out = tensor(out, factors[k]);
    return out;
}

CMatrix permute_subsystems(const CMatrix& m, const std::vector<int>& dims,
                           const std::vector<int>& perm) {
    if (m.rows() != m.cols())
        throw std::invalid_argument("permute_subsystems: matrix must be square");
    check_dims(dims, static_cast<int>(m.rows()), "permute_subsystems");
    const std::size_t n = dims.size();
    if (perm.size() != n)
        throw std::invalid_argument("permute_subsystems: perm size mismatch");
    std::vector<int> seen(n, 0);
    for (int p : perm) {
        if (p < 0 || static_cast<std::size_t>(p) >= n || seen[p]++)
            throw std::invalid_argument("permute_subsystems: invalid permutation");
    }

    std::vector<int> new_dims(n);
    for (std::size_t k = 0; k < n; ++k) new_dims[k] = dims[perm[k]];

    // Flat index map: digit t of the new index is digit perm[t] of the old.
    const long total = m.rows();
    std::vector<long> new_of_old(total);
    std::vector<int> digits(n), nd(n);
    for (long i = 0; i < total; ++i) {
        to_digits(i, dims, digits);
        for (std::size_t t = 0; t < n; ++t) nd[t] = digits[perm[t]];
        new_of_old[i] = from_digits(nd, new_dims);
    }

    CMatrix out(total, total);
    for (long r = 0; r < total; ++r)
        for (long c = 0; c < total; ++c)
            out(new_of_old[r], new_of_old[c]) = m(r, c);
    return out;
}

CMatrix partial_trace(const CMatrix& m, const std::vector<int>& dims,
                      const std::vector<int>& keep) {
    if (m.rows() != m.cols())
        throw std::invalid_argument("partial_trace: matrix must be square");
    check_dims(dims, static_cast<int>(m.rows()), "partial_trace");
    const std::size_t n = dims.size();
    for (std::size_t k = 0; k < keep.size(); ++k) {
        if (keep[k] < 0 || static_cast<std::size_t>(keep[k]) >= n)
            throw std::invalid_argument("partial_trace: keep index out of range");
        if (k > 0 && keep[k] <= keep[k - 1])
            throw std::invalid_argument("partial_trace: keep must be strictly increasing");
    }

    std::vector<int> traced;
    for (std::size_t k = 0; k < n; ++k)
        if (std::find(keep.begin(), keep.end(), static_cast<int>(k)) == keep.end())
            traced.push_back(static_cast<int>(k));

    long keep_total = 1, trace_total = 1;
    std::vector<int> keep_dims, trace_dims;
    for (int k : keep) { keep_dims.push_back(dims[k]); keep_total *= dims[k]; }
    for (int k : traced) { trace_dims.push_back(dims[k]); trace_total *= dims[k]; }

    CMatrix out = CMatrix::Zero(keep_total, keep_total);
    std::vector<int> kr(keep.size()), kc(keep.size()), tr(traced.size());
    std::vector<int> full_r(n), full_c(n);
    for (long r = 0; r < keep_total; ++r) {
        to_digits(r, keep_dims, kr);
        for (long c = 0; c < keep_total; ++c) {
            to_digits(c, keep_dims, kc);
            Complex acc = 0.0;
            for (long t = 0; t < trace_total; ++t) {
                to_digits(t, trace_dims, tr);
                for (std::size_t k = 0; k < keep.size(); ++k) {
                    full_r[keep[k]] = kr[k];
                    full_c[keep[k]] = kc[k];
                }
                for (std::size_t k = 0; k < traced.size(); ++k) {
                    full_r[traced[k]] = tr[k];
                    full_c[traced[k]] = tr[k];
                }
                acc += m(from_digits(full_r, dims), from_digits(full_c, dims));
            }
            out(r, c) = acc;
        }
    }
    return out;
}

Spectrum spectral_decompose(const CMatrix& h) {
    if (!is_hermitian(h, 1e-9))
        throw std::invalid_argument("spectral_decompose: input is not Hermitian");
    Eigen::SelfAdjointEigenSolver<CMatrix> es((h + h.adjoint().eval()) / 2.0);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("spectral_decompose: eigensolver failed");
    const Eigen::Index n = h.rows();
    Spectrum s;
    s.eigenvalues.resize(n);
    s.eigenvectors.resize(n, n);
    // Eigen sorts ascending; the contract is descending.
    for (Eigen::Index i = 0; i < n; ++i) {
        s.eigenvalues(i) = es.eigenvalues()(n - 1 - i);
        s.eigenvectors.col(i) = es.eigenvectors().col(n - 1 - i);
    }
    return s;
}

DensityOperator::DensityOperator(CMatrix m, std::vector<int> dims)
    : m_(std::move(m)), dims_(std::move(dims)) {
    if (m_.rows() != m_.cols())
        throw std::invalid_argument("DensityOperator: matrix must be square");
    check_dims(dims_, static_cast<int>(m_.rows()), "DensityOperator");
    if (!is_hermitian(m_, tol::hermitian))
        throw std::invalid_argument("DensityOperator: not Hermitian");
    if (std::abs(m_.trace().real() - 1.0) > tol::trace_one || std::abs(m_.trace().imag()) > tol::trace_one)
        throw std::invalid_argument("DensityOperator: trace is not 1");
    if (min_eigenvalue(m_) < -tol::positive)
        throw std::invalid_argument("DensityOperator: not positive semidefinite");
}

Povm::Povm(std::vector<CMatrix> effects) : effects_(std::move(effects)) {
    if (effects_.empty()) throw std::invalid_argument("Povm: no effects");
    const Eigen::Index d = effects_[0].rows();
    CMatrix sum = CMatrix::Zero(d, d);
    for (const CMatrix& e : effects_) {
        if (e.rows() != d || e.cols() != d)
            throw std::invalid_argument("Povm: effects must be square and of equal dimension");
        if (!is_hermitian(e, tol::hermitian))
            throw std::invalid_argument("Povm: effect not Hermitian");
        if (min_eigenvalue(e) < -tol::positive)
            throw std::invalid_argument("Povm: effect not positive semidefinite");
        sum += e;
    }
    if (max_abs(sum - CMatrix::Identity(d, d)) > tol::completeness)
        throw std::invalid_argument("Povm: effects do not sum to the identity");
}

KrausChannel::KrausChannel(std::vector<CMatrix> kraus) : kraus_(std::move(kraus)) {
    if (kraus_.empty()) throw std::invalid_argument("KrausChannel: no Kraus operators");
    const Eigen::Index rows = kraus_[0].rows(), cols = kraus_[0].cols();
    CMatrix sum = CMatrix::Zero(cols, cols);
    for (const CMatrix& k : kraus_) {
        if (k.rows() != rows || k.cols() != cols)
            throw std::invalid_argument("KrausChannel: Kraus operators must share one shape");
        sum += k.adjoint() * k;
    }
    if (max_abs(sum - CMatrix::Identity(cols, cols)) > tol::completeness)
        throw std::invalid_argument("KrausChannel: not trace preserving");
}

KrausChannel KrausChannel::identity(int dim) {
    return KrausChannel({CMatrix::Identity(dim, dim)});
}

KrausChannel KrausChannel::prepare(const CMatrix& state, int in_dim) {
    // K_{k,i} = sqrt(lambda_k) |v_k><i| so that sum_k K rho K^dag = state.
    Spectrum s = spectral_decompose(state);
    std::vector<CMatrix> ks;
    for (Eigen::Index k = 0; k < s.eigenvalues.size(); ++k) {
        const double lam = std::max(0.0, s.eigenvalues(k));
        if (lam < 1e-15) continue;
        for (int i = 0; i < in_dim; ++i) {
            CMatrix op = CMatrix::Zero(state.rows(), in_dim);
            op.col(i) = std::sqrt(lam) * s.eigenvectors.col(k);
            ks.push_back(op);
        }
    }
    return KrausChannel(std::move(ks));
}

DensityOperator apply_channel(const KrausChannel& ch, const DensityOperator& rho) {
    if (ch.in_dim() != rho.dim())
        throw std::invalid_argument("apply_channel: dimension mismatch");
    CMatrix out = CMatrix::Zero(ch.out_dim(), ch.out_dim());
    for (const CMatrix& k : ch.kraus()) out += k * rho.matrix() * k.adjoint();
    return DensityOperator(std::move(out), {ch.out_dim()});
}

CMatrix dual_apply(const KrausChannel& ch, const CMatrix& effect) {
    if (effect.rows() != ch.out_dim() || effect.cols() != ch.out_dim())
        throw std::invalid_argument("dual_apply: dimension mismatch");
    CMatrix out = CMatrix::Zero(ch.in_dim(), ch.in_dim());
    for (const CMatrix& k : ch.kraus()) out += k.adjoint() * effect * k;
    return out;
}

CVector random_ket(Rng& rng, int dim) {
    CVector v(dim);
    for (int i = 0; i < dim; ++i) v(i) = Complex(rng.gaussian(), rng.gaussian());
    v /= v.norm();
    return v;
}

CMatrix random_unitary(Rng& rng, int dim) {
    if (dim < 1) throw std::invalid_argument("random_unitary: dim must be positive");
    // Modified Gram-Schmidt on a Ginibre matrix; normalization keeps the
    // implicit R diagonal positive, which makes the result Haar.
    CMatrix g(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) g(i, j) = Complex(rng.gaussian(), rng.gaussian());
    CMatrix u(dim, dim);
    for (int j = 0; j < dim; ++j) {
        CVector v = g.col(j);
        for (int pass = 0; pass < 2; ++pass)
            for (int k = 0; k < j; ++k) v -= u.col(k).dot(v) * u.col(k);
        u.col(j) = v / v.norm();
    }
    return u;
}

CMatrix random_unitary(std::uint64_t seed, int dim) {
    Rng rng(seed);
    return random_unitary(rng, dim);
}

DensityOperator random_density(Rng& rng, int dim, int rank) {
    if (dim < 1 || rank < 1 || rank > dim)
        throw std::invalid_argument("random_density: need 1 <= rank <= dim");
    CMatrix a(dim, rank);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < rank; ++j) a(i, j) = Complex(rng.gaussian(), rng.gaussian());
    CMatrix m = a * a.adjoint();
    m /= m.trace().real();
    return DensityOperator(std::move(m), {dim});
}

DensityOperator random_density(std::uint64_t seed, int dim, int rank) {
    Rng rng(seed);
    return random_density(rng, dim, rank);
}

Povm random_povm(Rng& rng, int dim, int outcomes) {
    if (outcomes < 2) throw std::invalid_argument("random_povm: need at least 2 outcomes");
    // G_i = A_i A_i^dag, then E_i = S^{-1/2} G_i S^{-1/2} with S = sum G_i.
    std::vector<CMatrix> g(outcomes);
    CMatrix s = CMatrix::Zero(dim, dim);
    for (int i = 0; i < outcomes; ++i) {
        CMatrix a(dim, dim);
        for (int r = 0; r < dim; ++r)
            for (int c = 0; c < dim; ++c) a(r, c) = Complex(rng.gaussian(), rng.gaussian());
        g[i] = a * a.adjoint();
        s += g[i];
    }
    Spectrum sp = spectral_decompose(s);
    CMatrix inv_sqrt = CMatrix::Zero(dim, dim);
    for (int k = 0; k < dim; ++k)
        inv_sqrt += (1.0 / std::sqrt(sp.eigenvalues(k))) * sp.eigenvectors.col(k) *
                    sp.eigenvectors.col(k).adjoint();
    std::vector<CMatrix> effects(outcomes);
    for (int i = 0; i < outcomes; ++i) {
        effects[i] = inv_sqrt * g[i] * inv_sqrt;
        effects[i] = (effects[i] + effects[i].adjoint().eval()) / 2.0;
    }
    return Povm(std::move(effects));
}

Povm random_povm(std::uint64_t seed, int dim, int outcomes) {
    Rng rng(seed);
    return random_povm(rng, dim, outcomes);
}

KrausChannel random_channel(Rng& rng, int in_dim, int out_dim, int kraus_count) {
    if (kraus_count < 1) throw std::invalid_argument("random_channel: need at least one Kraus operator");
    if (out_dim * kraus_count < in_dim)
        throw std::invalid_argument("random_channel: environment too small for an isometry");
    // First in_dim columns of a Haar unitary on out_dim * kraus_count form
    // an isometry; slicing it row-blocks gives the Kraus operators.
    CMatrix u = random_unitary(rng, out_dim * kraus_count);
    std::vector<CMatrix> ks(kraus_count);
    for (int k = 0; k < kraus_count; ++k)
        ks[k] = u.block(k * out_dim, 0, out_dim, in_dim);
    return KrausChannel(std::move(ks));
}

} // namespace qrg
