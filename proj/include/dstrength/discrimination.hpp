#pragma once

// Two-state discrimination: quantum Chernoff overlap, Uhlmann fidelity, trace norm,
// and the equal-prior Helstrom error for n copies.

#include <cmath>
#include <limits>
#include <vector>

#include "dstrength/core.hpp"
#include "dstrength/optimize.hpp"

namespace dstrength {

/// Largest Hilbert-space dimension the n-copy Helstrom computation will build.
inline constexpr Eigen::Index kMaxTensorDim = 4096;

/// Q = min_s Tr[rho0^s rho1^(1-s)] with the minimizing s and xi = -ln Q.
/// xi is +infinity when Q < 1e-300 (perfectly distinguishable states).
struct ChernoffResult {
    double q;
    double s_star;
    double xi;
};

namespace detail {

/// Squared overlaps below this are roundoff from exactly orthogonal eigenvectors.
inline constexpr double kOverlapFloor = 1e-28;

/// g(s) = sum_ij a_i^s b_j^(1-s) |<u_i|v_j>|^2 restricted to both supports, which is
/// Tr[rho0^s rho1^(1-s)] under the support-projector convention.
class ChernoffKernel {
public:
    ChernoffKernel(const RVector& a, const CMatrix& u, const RVector& b, const CMatrix& v) {
        const Eigen::Index ra = (a.array() > kSupportCutoff).count();
        const Eigen::Index rb = (b.array() > kSupportCutoff).count();
        log_a_.resize(ra);
        log_b_.resize(rb);
        for (Eigen::Index i = 0; i < ra; ++i) log_a_(i) = std::log(a(i));
        for (Eigen::Index j = 0; j < rb; ++j) log_b_(j) = std::log(b(j));
        overlap_ = (u.leftCols(ra).adjoint() * v.leftCols(rb)).cwiseAbs2();
        overlap_ = (overlap_.array() < kOverlapFloor).select(0.0, overlap_);
    }

    double operator()(double s) const {
        double total = 0.0;
        for (Eigen::Index i = 0; i < log_a_.size(); ++i)
            for (Eigen::Index j = 0; j < log_b_.size(); ++j) {
                const double w = overlap_(i, j);
                if (w != 0.0) total += w * std::exp(s * log_a_(i) + (1.0 - s) * log_b_(j));
            }
        return total;
    }

private:
    RVector log_a_;
    RVector log_b_;
    RMatrix overlap_;
};

inline ChernoffResult minimize_chernoff(const ChernoffKernel& g) {
    // g is convex in s (a positive combination of exponentials)
    const ScalarMinimum m = minimize_unit_interval(g, 21, 1e-10);
    const double q = std::clamp(m.value, 0.0, 1.0);
    const double xi = q < 1e-300 ? std::numeric_limits<double>::infinity() : std::max(0.0, -std::log(q));
    return {q, m.x, xi};
}

inline void require_same_dim(Eigen::Index a, Eigen::Index b, const char* what) {
    if (a != b) throw DimensionMismatch(std::string(what) + ": states have different dimensions");
}

}  // namespace detail

inline ChernoffResult chernoff_overlap(const DensityMatrix& rho0, const DensityMatrix& rho1) {
    detail::require_same_dim(rho0.dim(), rho1.dim(), "chernoff_overlap");
    const auto& e0 = rho0.spectral();
    const auto& e1 = rho1.spectral();
    return detail::minimize_chernoff(detail::ChernoffKernel(e0.values, e0.vectors, e1.values, e1.vectors));
}

/// Uhlmann fidelity (Tr sqrt(sqrt(rho0) rho1 sqrt(rho0)))^2.
inline double fidelity(const DensityMatrix& rho0, const DensityMatrix& rho1) {
    detail::require_same_dim(rho0.dim(), rho1.dim(), "fidelity");
    const CMatrix s = sqrtm(rho0);
    const EigenDecomposition e = detail::eigh(s * rho1.matrix() * s);
    double root_sum = 0.0;
    for (Eigen::Index k = 0; k < e.values.size(); ++k) root_sum += std::sqrt(support_pow(e.values(k), 1.0));
    return std::clamp(root_sum * root_sum, 0.0, 1.0);
}

/// Sum of absolute eigenvalues of a Hermitian matrix.
inline double trace_norm(const CMatrix& m) {
    if (m.rows() != m.cols()) throw ContractViolation("trace_norm: matrix is not square");
    if (hermiticity_defect(m) > kHermitianTol) throw ContractViolation("trace_norm: matrix is not Hermitian");
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(0.5 * (m + m.adjoint()), Eigen::EigenvaluesOnly);
    return solver.eigenvalues().cwiseAbs().sum();
}

namespace detail {

inline Eigen::Index checked_power(Eigen::Index d, int n) {
    Eigen::Index out = 1;
    for (int k = 0; k < n; ++k) {
        if (out > kMaxTensorDim / d + 1) return kMaxTensorDim + 1;
        out *= d;
    }
    return out;
}

/// ||rho0^{(x)n} - rho1^{(x)n}||_1 through the Gram matrix of the two supports.
/// With A_k = U_k sqrt(diag w_k) restricted to the support, the difference is X J X^dagger,
/// X = [A_0^{(x)n}, A_1^{(x)n}], J = diag(I, -I); its nonzero spectrum equals that of
/// G^{1/2} J G^{1/2} with G = X^dagger X, whose blocks are Kronecker powers of A_i^dagger A_j.
inline double tensor_power_difference_norm_lowrank(const DensityMatrix& rho0, const DensityMatrix& rho1,
                                                   int n) {
    auto factor = [](const DensityMatrix& rho) {
        const auto& e = rho.spectral();
        const Eigen::Index r = rho.rank();
        CMatrix a = e.vectors.leftCols(r);
        for (Eigen::Index k = 0; k < r; ++k) a.col(k) *= std::sqrt(e.values(k));
        return a;
    };
    const CMatrix a0 = factor(rho0);
    const CMatrix a1 = factor(rho1);
    const CMatrix g00 = kron_power(a0.adjoint() * a0, n);
    const CMatrix g01 = kron_power(a0.adjoint() * a1, n);
    const CMatrix g11 = kron_power(a1.adjoint() * a1, n);
    const Eigen::Index k0 = g00.rows();
    const Eigen::Index k1 = g11.rows();
    CMatrix gram(k0 + k1, k0 + k1);
    gram.topLeftCorner(k0, k0) = g00;
    gram.topRightCorner(k0, k1) = g01;
    gram.bottomLeftCorner(k1, k0) = g01.adjoint();
    gram.bottomRightCorner(k1, k1) = g11;
    const CMatrix root = spectral_apply(eigh(gram), [](double w) { return std::sqrt(std::max(w, 0.0)); });
    RVector signs(k0 + k1);
    signs.head(k0).setOnes();
    signs.tail(k1).setConstant(-1.0);
    const CMatrix core = root * signs.cast<Complex>().asDiagonal() * root;
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(0.5 * (core + core.adjoint()), Eigen::EigenvaluesOnly);
    return solver.eigenvalues().cwiseAbs().sum();
}

inline double tensor_power_difference_norm_dense(const DensityMatrix& rho0, const DensityMatrix& rho1,
                                                 int n) {
    return trace_norm(kron_power(rho0.matrix(), n) - kron_power(rho1.matrix(), n));
}

}  // namespace detail

/// Which algebraic route helstrom_error uses for the n-copy trace norm.
enum class HelstromRoute { automatic, dense, low_rank };

/// Minimum error probability for equal priors, (1/2)(1 - (1/2)||rho0^{(x)n} - rho1^{(x)n}||_1).
/// Throws CapacityError when dim^n exceeds 4096.
inline double helstrom_error(const DensityMatrix& rho0, const DensityMatrix& rho1, int n = 1,
                             HelstromRoute route = HelstromRoute::automatic) {
    detail::require_same_dim(rho0.dim(), rho1.dim(), "helstrom_error");
    if (n < 1) throw RangeError("helstrom_error needs at least one copy");
    const Eigen::Index full = detail::checked_power(rho0.dim(), n);
    if (full > kMaxTensorDim)
        throw CapacityError("helstrom_error: dim^n exceeds " + std::to_string(kMaxTensorDim));
    if (route == HelstromRoute::automatic) {
        const Eigen::Index k = detail::checked_power(rho0.rank(), n) + detail::checked_power(rho1.rank(), n);
        route = k < full ? HelstromRoute::low_rank : HelstromRoute::dense;
    }
    const double norm = route == HelstromRoute::low_rank
                            ? detail::tensor_power_difference_norm_lowrank(rho0, rho1, n)
                            : detail::tensor_power_difference_norm_dense(rho0, rho1, n);
    double p = 0.5 * (1.0 - 0.5 * norm);
    // trace-norm roundoff floor
    if (p < 1e-13) p = 0.0;
    return std::clamp(p, 0.0, 0.5);
}

struct DecayRow {
    int n;
    double p_err;
    /// -ln(P_err)/n, +infinity when P_err = 0
    double exponent;
    double xi;
    /// (1/2) Q^n
    double bound;
    bool within_bound;
};

struct DecayTable {
    ChernoffResult chernoff;
    std::vector<DecayRow> rows;
    bool bound_holds;
};

/// Finite-n Helstrom exponents next to the asymptotic Chernoff exponent, checking
/// P_err^(n) <= (1/2) Q^n for every n (1e-10 slack).
inline DecayTable chernoff_decay_check(const DensityMatrix& rho0, const DensityMatrix& rho1, int n_max) {
    if (n_max < 1) throw RangeError("chernoff_decay_check needs n_max >= 1");
    DecayTable table{chernoff_overlap(rho0, rho1), {}, true};
    for (int n = 1; n <= n_max; ++n) {
        const double p = helstrom_error(rho0, rho1, n);
        const double exponent = p > 0.0 ? -std::log(p) / n : std::numeric_limits<double>::infinity();
        const double bound = 0.5 * std::pow(table.chernoff.q, n);
        const bool ok = p <= bound + 1e-10;
        table.bound_holds = table.bound_holds && ok;
        table.rows.push_back({n, p, exponent, table.chernoff.xi, bound, ok});
    }
    return table;
}

}  // namespace dstrength
