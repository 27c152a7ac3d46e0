#pragma once

// Complex Hermitian linear algebra and the quantum-state value types shared by
// the rest of the library. Everything here is a pure function of its inputs;
// the value types are immutable after construction.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "dstrength/errors.hpp"

namespace dstrength {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kTraceTol = 1e-10;
inline constexpr double kPsdTol = 1e-10;
inline constexpr double kUnitaryTol = 1e-10;
inline constexpr double kNormTol = 1e-12;
/// Eigenvalues of a state below this are treated as exactly zero.
inline constexpr double kSupportCutoff = 1e-12;

inline constexpr Complex kI{0.0, 1.0};

// ---------------------------------------------------------------------------
// small matrix helpers

inline CMatrix identity(Eigen::Index d) { return CMatrix::Identity(d, d); }

inline CMatrix pauli_x() {
    CMatrix m(2, 2);
    m << 0.0, 1.0, 1.0, 0.0;
    return m;
}

inline CMatrix pauli_y() {
    CMatrix m(2, 2);
    m << 0.0, -kI, kI, 0.0;
    return m;
}

inline CMatrix pauli_z() {
    CMatrix m(2, 2);
    m << 1.0, 0.0, 0.0, -1.0;
    return m;
}

/// Pauli operator by index 0 (x), 1 (y), 2 (z).
inline CMatrix pauli(int axis) {
    switch (axis) {
        case 0: return pauli_x();
        case 1: return pauli_y();
        case 2: return pauli_z();
        default: throw RangeError("pauli axis must be 0, 1 or 2");
    }
}

/// Largest |m_ij - conj(m_ji)|.
inline double hermiticity_defect(const CMatrix& m) {
    if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

inline bool is_unitary(const CMatrix& u, double tol = kUnitaryTol) {
    if (u.rows() != u.cols()) return false;
    return (u.adjoint() * u - identity(u.rows())).cwiseAbs().maxCoeff() <= tol;
}

/// Standard Kronecker product; dimensions multiply.
template <typename DerivedA, typename DerivedB>
auto kron(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
    using Scalar = typename Eigen::ScalarBinaryOpTraits<typename DerivedA::Scalar,
                                                         typename DerivedB::Scalar>::ReturnType;
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> out(a.rows() * b.rows(),
                                                              a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) =
                Scalar(a(i, j)) * b.template cast<Scalar>();
        }
    }
    return out;
}

/// n-fold Kronecker power; n >= 1.
inline CMatrix kron_power(const CMatrix& m, int n) {
    if (n < 1) throw RangeError("kron_power needs n >= 1");
    CMatrix out = m;
    for (int k = 1; k < n; ++k) out = kron(out, m);
    return out;
}

// ---------------------------------------------------------------------------
// Hermitian eigendecomposition

/// Eigenvalues sorted descending (ties keep solver order) with matching columns.
struct EigenDecomposition {
    RVector values;
    CMatrix vectors;
};

namespace detail {

inline EigenDecomposition eigh(const CMatrix& m) {
    const CMatrix h = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(h);
    if (solver.info() != Eigen::Success) throw Error("Hermitian eigensolver failed to converge");
    const Eigen::Index n = h.rows();
    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    const RVector& w = solver.eigenvalues();
    // solver output is ascending; reverse first so the stable sort keeps a fixed tie order
    std::reverse(order.begin(), order.end());
    std::stable_sort(order.begin(), order.end(),
                     [&](Eigen::Index a, Eigen::Index b) { return w(a) > w(b); });
    EigenDecomposition out{RVector(n), CMatrix(n, n)};
    for (Eigen::Index k = 0; k < n; ++k) {
        out.values(k) = w(order[static_cast<std::size_t>(k)]);
        out.vectors.col(k) = solver.eigenvectors().col(order[static_cast<std::size_t>(k)]);
    }
    return out;
}

}  // namespace detail

/// Eigendecomposition of a Hermitian matrix, eigenvalues descending.
/// Throws ContractViolation when m is not Hermitian within 1e-10.
inline EigenDecomposition eig_hermitian(const CMatrix& m) {
    if (m.rows() != m.cols()) throw ContractViolation("eig_hermitian: matrix is not square");
    if (hermiticity_defect(m) > kHermitianTol)
        throw ContractViolation("eig_hermitian: matrix is not Hermitian");
    return detail::eigh(m);
}

/// Real symmetric eigenproblem, descending.
struct RealEigenDecomposition {
    RVector values;
    RMatrix vectors;
};

inline RealEigenDecomposition eig_symmetric(const RMatrix& m) {
    Eigen::SelfAdjointEigenSolver<RMatrix> solver(0.5 * (m + m.transpose()));
    if (solver.info() != Eigen::Success) throw Error("symmetric eigensolver failed to converge");
    const Eigen::Index n = m.rows();
    RealEigenDecomposition out{RVector(n), RMatrix(n, n)};
    for (Eigen::Index k = 0; k < n; ++k) {
        out.values(k) = solver.eigenvalues()(n - 1 - k);
        out.vectors.col(k) = solver.eigenvectors().col(n - 1 - k);
    }
    return out;
}

/// Applies f to the eigenvalues: V diag(f(w)) V^dagger.
template <typename F>
CMatrix spectral_apply(const EigenDecomposition& e, F&& f) {
    RVector mapped(e.values.size());
    for (Eigen::Index k = 0; k < e.values.size(); ++k) mapped(k) = f(e.values(k));
    return e.vectors * mapped.asDiagonal() * e.vectors.adjoint();
}

/// w^s with the support convention: w below the cutoff maps to 0 for every s, s = 0 included.
inline double support_pow(double w, double s) {
    return w > kSupportCutoff ? std::pow(w, s) : 0.0;
}

// ---------------------------------------------------------------------------
// DensityMatrix

/// Complex Hermitian, PSD, unit-trace matrix. The spectral decomposition is
/// computed once on construction and kept alongside the matrix.
class DensityMatrix {
public:
    explicit DensityMatrix(const CMatrix& m) {
        if (m.rows() == 0 || m.rows() != m.cols())
            throw InvariantViolation("density matrix must be square and non-empty");
        if (!m.allFinite()) throw InvariantViolation("density matrix has non-finite entries");
        if (hermiticity_defect(m) > kHermitianTol)
            throw InvariantViolation("density matrix is not Hermitian");
        matrix_ = 0.5 * (m + m.adjoint());
        const double tr = matrix_.trace().real();
        if (std::abs(tr - 1.0) > kTraceTol)
            throw InvariantViolation("density matrix trace is " + std::to_string(tr) + ", not 1");
        spectral_ = detail::eigh(matrix_);
        if (spectral_.values(spectral_.values.size() - 1) < -kPsdTol)
            throw InvariantViolation("density matrix is not positive semidefinite");
    }

    Eigen::Index dim() const { return matrix_.rows(); }
    const CMatrix& matrix() const { return matrix_; }
    /// Eigenvalues descending with eigenvectors as columns.
    const EigenDecomposition& spectral() const { return spectral_; }

    Eigen::Index rank() const {
        return (spectral_.values.array() > kSupportCutoff).count();
    }
    double purity() const { return (matrix_ * matrix_).trace().real(); }

private:
    CMatrix matrix_;
    EigenDecomposition spectral_;
};

inline DensityMatrix maximally_mixed(Eigen::Index d) {
    return DensityMatrix(identity(d) / static_cast<double>(d));
}

/// |i><i| in dimension d.
inline DensityMatrix basis_projector(Eigen::Index d, Eigen::Index i) {
    CMatrix m = CMatrix::Zero(d, d);
    m(i, i) = 1.0;
    return DensityMatrix(m);
}

/// rho^s for s in [0, 1]; eigenvalues below the support cutoff map to 0 (rho^0 is the
/// support projector).
inline CMatrix mat_pow(const DensityMatrix& rho, double s) {
    if (!(s >= 0.0 && s <= 1.0)) throw RangeError("mat_pow: exponent must lie in [0, 1]");
    return spectral_apply(rho.spectral(), [s](double w) { return support_pow(w, s); });
}

inline CMatrix sqrtm(const DensityMatrix& rho) { return mat_pow(rho, 0.5); }

// ---------------------------------------------------------------------------
// Bipartite and pure states

/// A density matrix on H_A (x) H_B with A the major (left) tensor factor.
class BipartiteState {
public:
    BipartiteState(DensityMatrix rho, Eigen::Index dim_a, Eigen::Index dim_b)
        : rho_(std::move(rho)), dim_a_(dim_a), dim_b_(dim_b) {
        if (dim_a < 2 || dim_b < 1)
            throw DimensionMismatch("bipartite state needs dimA >= 2 and dimB >= 1");
        if (dim_a * dim_b != rho_.dim())
            throw DimensionMismatch("dimA * dimB does not match the density matrix size");
    }

    const DensityMatrix& rho() const { return rho_; }
    const CMatrix& matrix() const { return rho_.matrix(); }
    Eigen::Index dim_a() const { return dim_a_; }
    Eigen::Index dim_b() const { return dim_b_; }
    Eigen::Index dim() const { return rho_.dim(); }

private:
    DensityMatrix rho_;
    Eigen::Index dim_a_;
    Eigen::Index dim_b_;
};

inline CMatrix partial_trace_b(const CMatrix& m, Eigen::Index dim_a, Eigen::Index dim_b) {
    if (m.rows() != dim_a * dim_b || m.cols() != dim_a * dim_b)
        throw DimensionMismatch("partial_trace_b: dims do not match matrix size");
    CMatrix out = CMatrix::Zero(dim_a, dim_a);
    for (Eigen::Index i = 0; i < dim_a; ++i)
        for (Eigen::Index j = 0; j < dim_a; ++j)
            out(i, j) = m.block(i * dim_b, j * dim_b, dim_b, dim_b).trace();
    return out;
}

inline CMatrix partial_trace_a(const CMatrix& m, Eigen::Index dim_a, Eigen::Index dim_b) {
    if (m.rows() != dim_a * dim_b || m.cols() != dim_a * dim_b)
        throw DimensionMismatch("partial_trace_a: dims do not match matrix size");
    CMatrix out = CMatrix::Zero(dim_b, dim_b);
    for (Eigen::Index i = 0; i < dim_a; ++i) out += m.block(i * dim_b, i * dim_b, dim_b, dim_b);
    return out;
}

/// Reduced state on A.
inline DensityMatrix partial_trace_b(const BipartiteState& state) {
    return DensityMatrix(partial_trace_b(state.matrix(), state.dim_a(), state.dim_b()));
}

inline DensityMatrix partial_trace_a(const BipartiteState& state) {
    return DensityMatrix(partial_trace_a(state.matrix(), state.dim_a(), state.dim_b()));
}

/// Product state rho_A (x) rho_B.
inline BipartiteState product_state(const DensityMatrix& a, const DensityMatrix& b) {
    return BipartiteState(DensityMatrix(kron(a.matrix(), b.matrix())), a.dim(), b.dim());
}

/// Unit vector, optionally carrying a bipartite split (dim_b = 1 for a single system).
class PureState {
public:
    PureState(CVector amplitudes, Eigen::Index dim_a, Eigen::Index dim_b = 1)
        : amplitudes_(std::move(amplitudes)), dim_a_(dim_a), dim_b_(dim_b) {
        if (dim_a * dim_b != amplitudes_.size())
            throw DimensionMismatch("pure state: dims do not match vector length");
        if (std::abs(amplitudes_.squaredNorm() - 1.0) > kNormTol)
            throw ContractViolation("pure state must have unit norm");
    }

    /// Rescales v to unit norm first.
    static PureState normalized(const CVector& v, Eigen::Index dim_a, Eigen::Index dim_b = 1) {
        const double n = v.norm();
        if (n == 0.0) throw ContractViolation("cannot normalize the zero vector");
        return PureState(v / n, dim_a, dim_b);
    }

    const CVector& amplitudes() const { return amplitudes_; }
    Eigen::Index dim_a() const { return dim_a_; }
    Eigen::Index dim_b() const { return dim_b_; }
    Eigen::Index dim() const { return amplitudes_.size(); }

    DensityMatrix density() const { return DensityMatrix(amplitudes_ * amplitudes_.adjoint()); }
    BipartiteState bipartite() const { return BipartiteState(density(), dim_a_, dim_b_); }

private:
    CVector amplitudes_;
    Eigen::Index dim_a_;
    Eigen::Index dim_b_;
};

/// Squared Schmidt coefficients q_j, descending, zero-padded to dimA.
class SchmidtCoefficients {
public:
    explicit SchmidtCoefficients(RVector q) : q_(std::move(q)) {
        if (q_.size() == 0) throw ContractViolation("Schmidt coefficients cannot be empty");
        if ((q_.array() < 0.0).any())
            throw ContractViolation("Schmidt coefficients must be non-negative");
        if (std::abs(q_.sum() - 1.0) > kNormTol)
            throw ContractViolation("Schmidt coefficients must sum to 1");
    }
    const RVector& values() const { return q_; }
    Eigen::Index size() const { return q_.size(); }
    double operator[](Eigen::Index i) const { return q_(i); }

private:
    RVector q_;
};

struct SchmidtDecomposition {
    SchmidtCoefficients coefficients;
    CMatrix basis_a;  ///< dimA x dimA unitary; column j pairs with coefficient j
    CMatrix basis_b;  ///< dimB x min(dimA, dimB) isometry
};

/// psi = sum_j sqrt(q_j) |a_j>|b_j>. Each A basis vector has its first nonzero
/// amplitude real-positive; the B partner absorbs the compensating phase.
inline SchmidtDecomposition schmidt_decompose(const PureState& psi) {
    const Eigen::Index da = psi.dim_a();
    const Eigen::Index db = psi.dim_b();
    CMatrix amp(da, db);
    for (Eigen::Index i = 0; i < da; ++i)
        for (Eigen::Index j = 0; j < db; ++j) amp(i, j) = psi.amplitudes()(i * db + j);

    Eigen::JacobiSVD<CMatrix> svd(amp, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const Eigen::Index k = std::min(da, db);
    RVector q = RVector::Zero(da);
    for (Eigen::Index j = 0; j < k; ++j) q(j) = svd.singularValues()(j) * svd.singularValues()(j);
    q /= q.sum();

    CMatrix basis_a = svd.matrixU();
    CMatrix basis_b = svd.matrixV().leftCols(k).conjugate();
    for (Eigen::Index j = 0; j < da; ++j) {
        Eigen::Index lead = 0;
        while (lead < da && std::abs(basis_a(lead, j)) < 1e-12) ++lead;
        if (lead == da) continue;
        const Complex phase = basis_a(lead, j) / std::abs(basis_a(lead, j));
        basis_a.col(j) *= std::conj(phase);
        if (j < k) basis_b.col(j) *= phase;
    }
    return {SchmidtCoefficients(std::move(q)), std::move(basis_a), std::move(basis_b)};
}

// ---------------------------------------------------------------------------
// Spectrum and local Hamiltonians

/// Non-degenerate eigenvalues of the encoding Hamiltonian, strictly descending,
/// spread below 2*pi.
class Spectrum {
public:
    explicit Spectrum(std::vector<double> lambdas) : lambdas_(std::move(lambdas)) {
        if (lambdas_.size() < 2) throw SpectrumError("spectrum needs at least two eigenvalues");
        for (double l : lambdas_)
            if (!std::isfinite(l)) throw SpectrumError("spectrum entries must be finite");
        for (std::size_t k = 1; k < lambdas_.size(); ++k) {
            if (lambdas_[k] == lambdas_[k - 1])
                throw SpectrumError("spectrum must be non-degenerate");
            if (lambdas_[k] > lambdas_[k - 1])
                throw SpectrumError("spectrum must be sorted in strictly descending order");
        }
        if (lambdas_.front() - lambdas_.back() >= 2.0 * std::numbers::pi)
            throw SpectrumError("spectrum spread must be below 2*pi");
    }

    /// {lambda, -lambda} for a qubit; in general evenly spaced from +lambda to -lambda.
    static Spectrum symmetric(Eigen::Index dim, double lambda) {
        if (dim < 2) throw SpectrumError("spectrum needs dimension >= 2");
        std::vector<double> l(static_cast<std::size_t>(dim));
        for (Eigen::Index k = 0; k < dim; ++k)
            l[static_cast<std::size_t>(k)] =
                lambda * static_cast<double>(dim - 1 - 2 * k) / static_cast<double>(dim - 1);
        return Spectrum(std::move(l));
    }

    /// Harmonic ladder (k - floor((d+1)/2)) * omega, k = 1..d, listed descending.
    static Spectrum harmonic(Eigen::Index dim, double omega) {
        const Eigen::Index half = (dim + 1) / 2;
        std::vector<double> l;
        for (Eigen::Index k = dim; k >= 1; --k) l.push_back(static_cast<double>(k - half) * omega);
        return Spectrum(std::move(l));
    }

    Spectrum shifted(double b) const {
        std::vector<double> l = lambdas_;
        for (double& x : l) x += b;
        return Spectrum(std::move(l));
    }

    Eigen::Index size() const { return static_cast<Eigen::Index>(lambdas_.size()); }
    double operator[](Eigen::Index k) const { return lambdas_[static_cast<std::size_t>(k)]; }
    const std::vector<double>& values() const { return lambdas_; }
    double spread() const { return lambdas_.front() - lambdas_.back(); }

private:
    std::vector<double> lambdas_;
};

/// H = U Lambda U^dagger acting on factor A.
class LocalHamiltonian {
public:
    LocalHamiltonian(Spectrum spectrum, CMatrix basis)
        : spectrum_(std::move(spectrum)), basis_(std::move(basis)) {
        if (basis_.rows() != spectrum_.size())
            throw DimensionMismatch("Hamiltonian basis size does not match the spectrum");
        if (!is_unitary(basis_)) throw ContractViolation("Hamiltonian basis must be unitary");
    }

    const Spectrum& spectrum() const { return spectrum_; }
    const CMatrix& basis() const { return basis_; }
    Eigen::Index dim() const { return spectrum_.size(); }

    CMatrix matrix() const {
        RVector l(dim());
        for (Eigen::Index k = 0; k < dim(); ++k) l(k) = spectrum_[k];
        return basis_ * l.cast<Complex>().asDiagonal() * basis_.adjoint();
    }

    /// R = U exp(i Lambda) U^dagger.
    CMatrix rotation() const {
        CVector phases(dim());
        for (Eigen::Index k = 0; k < dim(); ++k) phases(k) = std::exp(kI * spectrum_[k]);
        return basis_ * phases.asDiagonal() * basis_.adjoint();
    }

private:
    Spectrum spectrum_;
    CMatrix basis_;
};

// ---------------------------------------------------------------------------
// Bloch sphere

struct BlochVector {
    double x;
    double y;
    double z;

    BlochVector(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {
        if (std::abs(x * x + y * y + z * z - 1.0) > kNormTol)
            throw ContractViolation("Bloch vector must have unit length");
    }
    explicit BlochVector(const Eigen::Vector3d& v) : BlochVector(v.x(), v.y(), v.z()) {}

    /// Polar angle theta in [0, pi], azimuth phi.
    static BlochVector from_angles(double theta, double phi) {
        const double st = std::sin(theta);
        return BlochVector(Eigen::Vector3d(st * std::cos(phi), st * std::sin(phi), std::cos(theta))
                               .normalized());
    }

    static BlochVector normalized(const Eigen::Vector3d& v) {
        const double n = v.norm();
        if (n == 0.0) throw ContractViolation("cannot normalize the zero Bloch vector");
        return BlochVector(v / n);
    }

    Eigen::Vector3d vec() const { return {x, y, z}; }
    double dot(const BlochVector& o) const { return x * o.x + y * o.y + z * o.z; }
};

/// n . sigma
inline CMatrix pauli_along(const Eigen::Vector3d& n) {
    return n.x() * pauli_x() + n.y() * pauli_y() + n.z() * pauli_z();
}

/// Projector (I + n . sigma) / 2.
inline DensityMatrix bloch_to_state(const BlochVector& n) {
    return DensityMatrix(0.5 * (identity(2) + pauli_along(n.vec())));
}

/// cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>.
inline PureState bloch_to_pure(const BlochVector& n) {
    const double theta = std::acos(std::clamp(n.z, -1.0, 1.0));
    const double phi = std::atan2(n.y, n.x);
    CVector v(2);
    v << std::cos(theta / 2.0), std::exp(kI * phi) * std::sin(theta / 2.0);
    return PureState::normalized(v, 2);
}

/// Bloch vector of a qubit density matrix, r_a = Tr[rho sigma_a].
inline Eigen::Vector3d bloch_of(const CMatrix& rho) {
    return {(rho * pauli_x()).trace().real(), (rho * pauli_y()).trace().real(),
            (rho * pauli_z()).trace().real()};
}

}  // namespace dstrength
