#pragma once

// Discriminating strength (worst-case Chernoff distinguishability of a state from its
// image under a fixed-spectrum local rotation on A), local quantum uncertainty, and the
// Wigner-Yanase skew information they are built on.

#include <algorithm>
#include <cstdint>
#include <numbers>
#include <string_view>
#include <vector>

#include "dstrength/core.hpp"
#include "dstrength/discrimination.hpp"
#include "dstrength/optimize.hpp"
#include "dstrength/parallel.hpp"
#include "dstrength/random.hpp"

namespace dstrength {

enum class DsMethod { general, pure_permutation, qubit_closed_form, pqc_closed_form };

inline std::string_view to_string(DsMethod m) {
    switch (m) {
        case DsMethod::general: return "general";
        case DsMethod::pure_permutation: return "pure_permutation";
        case DsMethod::qubit_closed_form: return "qubit_closed_form";
        case DsMethod::pqc_closed_form: return "pqc_closed_form";
    }
    return "unknown";
}

/// Value of an optimized measure together with the Hamiltonian that attains it.
struct MeasureResult {
    double value;
    LocalHamiltonian optimal_hamiltonian;
    DsMethod method;
};

using DsResult = MeasureResult;
using LquResult = MeasureResult;

/// Settings for the multi-restart Nelder-Mead search over U(dimA).
struct OptimizerOptions {
    int restarts = 20;
    std::uint64_t seed = 0;
    /// Restart points are uniform in [-scale, scale]^(dimA^2 - 1).
    double coordinate_scale = std::numbers::pi;
    double initial_step = 0.5;
    double f_tol = 1e-8;
    int max_evaluations = 20000;
    /// Skip the qubit closed form and run the optimizer for dimA = 2 as well.
    bool force_general = false;
    unsigned threads = 1;
};

// ---------------------------------------------------------------------------
// unitary-group parametrization

/// Generalized Gell-Mann matrices: d^2 - 1 traceless Hermitian generators.
inline std::vector<CMatrix> gell_mann_basis(Eigen::Index d) {
    std::vector<CMatrix> basis;
    for (Eigen::Index j = 0; j < d; ++j)
        for (Eigen::Index k = j + 1; k < d; ++k) {
            CMatrix s = CMatrix::Zero(d, d);
            s(j, k) = s(k, j) = 1.0;
            basis.push_back(s);
            CMatrix a = CMatrix::Zero(d, d);
            a(j, k) = -kI;
            a(k, j) = kI;
            basis.push_back(a);
        }
    for (Eigen::Index l = 1; l < d; ++l) {
        CMatrix diag = CMatrix::Zero(d, d);
        const double norm = std::sqrt(2.0 / static_cast<double>(l * (l + 1)));
        for (Eigen::Index j = 0; j < l; ++j) diag(j, j) = norm;
        diag(l, l) = -norm * static_cast<double>(l);
        basis.push_back(diag);
    }
    return basis;
}

/// exp(i sum_k x_k G_k).
inline CMatrix unitary_from_coordinates(const Eigen::VectorXd& x, const std::vector<CMatrix>& generators) {
    const Eigen::Index d = generators.front().rows();
    CMatrix a = CMatrix::Zero(d, d);
    for (std::size_t k = 0; k < generators.size(); ++k) a += x(static_cast<Eigen::Index>(k)) * generators[k];
    const EigenDecomposition e = detail::eigh(a);
    CVector phases(d);
    for (Eigen::Index k = 0; k < d; ++k) phases(k) = std::exp(kI * e.values(k));
    return e.vectors * phases.asDiagonal() * e.vectors.adjoint();
}

/// op_A (x) I_B
inline CMatrix lift_a(const CMatrix& op_a, Eigen::Index dim_b) { return kron(op_a, identity(dim_b)); }

inline LocalHamiltonian hamiltonian_from_unitary(const Spectrum& spectrum, const CMatrix& u) {
    return LocalHamiltonian(spectrum, u);
}

// ---------------------------------------------------------------------------
// rotations and the inner Chernoff overlap

/// (R (x) I) rho (R (x) I)^dagger with R = exp(i H_A).
inline BipartiteState rotate_local(const BipartiteState& state, const LocalHamiltonian& h) {
    if (h.dim() != state.dim_a()) throw DimensionMismatch("rotate_local: Hamiltonian does not act on A");
    const CMatrix r = lift_a(h.rotation(), state.dim_b());
    return BipartiteState(DensityMatrix(r * state.matrix() * r.adjoint()), state.dim_a(), state.dim_b());
}

/// Q(rho, R rho R^dagger) for R = r_a (x) I, reusing the spectral data of rho.
inline ChernoffResult rotated_overlap(const BipartiteState& state, const CMatrix& r_a) {
    const auto& e = state.rho().spectral();
    const CMatrix rotated = lift_a(r_a, state.dim_b()) * e.vectors;
    return detail::minimize_chernoff(detail::ChernoffKernel(e.values, e.vectors, e.values, rotated));
}

/// Q(rho, e^{iH} rho e^{-iH}) for a local Hamiltonian.
inline ChernoffResult rotated_overlap(const BipartiteState& state, const LocalHamiltonian& h) {
    if (h.dim() != state.dim_a()) throw DimensionMismatch("rotated_overlap: Hamiltonian does not act on A");
    return rotated_overlap(state, h.rotation());
}

// ---------------------------------------------------------------------------
// generic multi-restart search over U(dimA)

namespace detail {

struct GroupSearchResult {
    double value;
    CMatrix unitary;
};

/// Minimizes objective(U) over U(d) from opts.restarts random starts; ties go to the
/// lowest restart index.
template <typename Objective>
GroupSearchResult minimize_over_unitaries(Eigen::Index d, const OptimizerOptions& opts, Objective&& objective) {
    if (opts.restarts < 1) throw RangeError("optimizer needs at least one restart");
    const std::vector<CMatrix> generators = gell_mann_basis(d);
    const auto m = static_cast<Eigen::Index>(generators.size());
    std::vector<NelderMeadResult> results(static_cast<std::size_t>(opts.restarts));
    parallel_for(results.size(), opts.threads, [&](std::size_t r) {
        std::seed_seq seq{static_cast<std::uint32_t>(opts.seed), static_cast<std::uint32_t>(opts.seed >> 32),
                          static_cast<std::uint32_t>(r)};
        Rng rng(seq);
        std::uniform_real_distribution<double> coord(-opts.coordinate_scale, opts.coordinate_scale);
        Eigen::VectorXd x0(m);
        for (Eigen::Index k = 0; k < m; ++k) x0(k) = coord(rng);
        auto f = [&](const Eigen::VectorXd& x) { return objective(unitary_from_coordinates(x, generators)); };
        NelderMeadOptions nm;
        nm.initial_step = opts.initial_step;
        nm.f_tol = opts.f_tol;
        nm.max_evaluations = opts.max_evaluations;
        results[r] = nelder_mead(f, x0, nm);
    });
    std::size_t best = 0;
    for (std::size_t r = 1; r < results.size(); ++r)
        if (results[r].value < results[best].value) best = r;
    return {results[best].value, unitary_from_coordinates(results[best].x, generators)};
}

inline void require_spectrum_matches(const BipartiteState& state, const Spectrum& spectrum) {
    if (spectrum.size() != state.dim_a())
        throw DimensionMismatch("spectrum length must equal dimA");
}

/// Basis whose first column is the +1 eigenvector of n . sigma.
inline CMatrix qubit_basis_along(const Eigen::Vector3d& n) {
    return detail::eigh(pauli_along(n)).vectors;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// qubit closed form

/// W_ab = Tr[sqrt(rho) (sigma_a (x) I) sqrt(rho) (sigma_b (x) I)], real symmetric 3x3.
struct WMatrix {
    Eigen::Matrix3d w;

    double xi_max() const { return eig_symmetric(w).values(0); }
    /// Eigenvector of the largest eigenvalue: the Bloch axis of the worst-case Hamiltonian.
    Eigen::Vector3d top_direction() const { return eig_symmetric(w).vectors.col(0); }
};

inline WMatrix w_matrix(const BipartiteState& state) {
    if (state.dim_a() != 2) throw DimensionMismatch("w_matrix requires dimA = 2");
    const CMatrix s = sqrtm(state.rho());
    std::array<CMatrix, 3> t;
    for (int a = 0; a < 3; ++a) t[static_cast<std::size_t>(a)] = s * lift_a(pauli(a), state.dim_b());
    Eigen::Matrix3d w;
    double residue = 0.0;
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
            const Complex v =
                (t[static_cast<std::size_t>(a)].array() * t[static_cast<std::size_t>(b)].transpose().array()).sum();
            w(a, b) = v.real();
            residue = std::max(residue, std::abs(v.imag()));
        }
    if (residue > 1e-9) throw ContractViolation("w_matrix: imaginary residue above 1e-9");
    return {0.5 * (w + w.transpose())};
}

/// DS for a qubit A with Lambda = {lambda, -lambda}: (1 - xi_max(W)) sin^2 lambda.
inline DsResult ds_qubit_qudit(const BipartiteState& state, double lambda) {
    if (state.dim_a() != 2) throw DimensionMismatch("ds_qubit_qudit requires dimA = 2");
    if (!(lambda > 0.0 && lambda < std::numbers::pi)) throw RangeError("lambda must lie in (0, pi)");
    const auto e = eig_symmetric(w_matrix(state).w);
    const double s2 = std::sin(lambda) * std::sin(lambda);
    const double value = std::clamp(1.0 - e.values(0), 0.0, 1.0) * s2;
    return {value, LocalHamiltonian(Spectrum({lambda, -lambda}), detail::qubit_basis_along(e.vectors.col(0))),
            DsMethod::qubit_closed_form};
}

// ---------------------------------------------------------------------------
// general DS

/// D = 1 - max_U Q(rho, R rho R^dagger), R = U e^{i Lambda} U^dagger on A.
/// For dimA = 2 the closed form is used unless opts.force_general.
inline DsResult ds_general(const BipartiteState& state, const Spectrum& spectrum, const OptimizerOptions& opts = {}) {
    detail::require_spectrum_matches(state, spectrum);
    if (state.dim_a() == 2 && !opts.force_general) {
        // shift invariance: only the half-spread matters
        const DsResult closed = ds_qubit_qudit(state, 0.5 * spectrum.spread());
        return {closed.value, LocalHamiltonian(spectrum, closed.optimal_hamiltonian.basis()), closed.method};
    }
    CVector phases(spectrum.size());
    for (Eigen::Index k = 0; k < spectrum.size(); ++k) phases(k) = std::exp(kI * spectrum[k]);
    const auto search = detail::minimize_over_unitaries(state.dim_a(), opts, [&](const CMatrix& u) {
        return -rotated_overlap(state, u * phases.asDiagonal() * u.adjoint()).q;
    });
    return {std::clamp(1.0 + search.value, 0.0, 1.0), LocalHamiltonian(spectrum, search.unitary), DsMethod::general};
}

// ---------------------------------------------------------------------------
// pure states

namespace detail {

inline double phase_sum_norm2(const RVector& q, const std::vector<int>& perm, const Spectrum& spectrum) {
    Complex total = 0.0;
    for (std::size_t k = 0; k < perm.size(); ++k)
        total += q(perm[k]) * std::exp(kI * spectrum[static_cast<Eigen::Index>(k)]);
    return std::norm(total);
}

/// Column k is the Schmidt vector assigned to eigenvalue lambda_k.
inline CMatrix permutation_basis(const std::vector<int>& perm) {
    const auto d = static_cast<Eigen::Index>(perm.size());
    CMatrix p = CMatrix::Zero(d, d);
    for (Eigen::Index k = 0; k < d; ++k) p(perm[static_cast<std::size_t>(k)], k) = 1.0;
    return p;
}

}  // namespace detail

inline constexpr Eigen::Index kMaxPermutationDim = 9;

/// Pure-state DS: 1 - max over permutations pi of |sum_k q_pi[k] e^{i lambda_k}|^2, by
/// exhaustive enumeration. The returned basis is expressed in the Schmidt basis of A.
inline DsResult ds_pure(const SchmidtCoefficients& q, const Spectrum& spectrum) {
    if (q.size() != spectrum.size()) throw DimensionMismatch("ds_pure: q must be padded to the spectrum length");
    if (q.size() > kMaxPermutationDim)
        throw CapacityError("ds_pure: dimA above 9; use ds_general instead");
    std::vector<int> perm(static_cast<std::size_t>(q.size()));
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<int> best_perm = perm;
    double best = -1.0;
    do {
        const double v = detail::phase_sum_norm2(q.values(), perm, spectrum);
        if (v > best) {
            best = v;
            best_perm = perm;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return {std::clamp(1.0 - best, 0.0, 1.0), LocalHamiltonian(spectrum, detail::permutation_basis(best_perm)),
            DsMethod::pure_permutation};
}

/// Pure-state DS with the optimal Hamiltonian expressed in the computational basis of A.
inline DsResult ds_pure(const PureState& psi, const Spectrum& spectrum) {
    const SchmidtDecomposition sd = schmidt_decompose(psi);
    DsResult r = ds_pure(sd.coefficients, spectrum);
    return {r.value, LocalHamiltonian(spectrum, sd.basis_a * r.optimal_hamiltonian.basis()), r.method};
}

/// Harmonic spectrum with fundamental frequency omega: q_1 -> 0, q_2 -> +omega,
/// q_3 -> -omega, q_4 -> +2 omega, ... (q sorted descending).
inline DsResult ds_pure_harmonic(const SchmidtCoefficients& q, double omega) {
    const Eigen::Index d = q.size();
    if (d < 2) throw DimensionMismatch("ds_pure_harmonic needs dimA >= 2");
    if (!(omega > 0.0 && omega <= 2.0 * std::numbers::pi / static_cast<double>(d) + 1e-15))
        throw RangeError("omega must lie in (0, 2*pi/dimA]");
    for (Eigen::Index j = 1; j < d; ++j)
        if (q[j] > q[j - 1] + 1e-15) throw PreconditionError("ds_pure_harmonic: q must be sorted descending");
    const Spectrum spectrum = Spectrum::harmonic(d, omega);
    const Eigen::Index half = (d + 1) / 2;
    Complex total = 0.0;
    CMatrix basis = CMatrix::Zero(d, d);
    for (Eigen::Index j = 1; j <= d; ++j) {
        const Eigen::Index m = (j % 2 == 0) ? j / 2 : -(j - 1) / 2;
        total += q[j - 1] * std::exp(kI * (static_cast<double>(m) * omega));
        basis(j - 1, d - m - half) = 1.0;
    }
    return {std::clamp(1.0 - std::norm(total), 0.0, 1.0), LocalHamiltonian(spectrum, basis),
            DsMethod::pure_permutation};
}

// ---------------------------------------------------------------------------
// skew information and LQU

/// Wigner-Yanase skew information Tr[h rho h - sqrt(rho) h sqrt(rho) h].
inline double skew_information(const DensityMatrix& rho, const CMatrix& h) {
    if (h.rows() != rho.dim() || h.cols() != rho.dim())
        throw DimensionMismatch("skew_information: operator and state dimensions differ");
    const CMatrix s = sqrtm(rho);
    const Complex v = (h * rho.matrix() * h).trace() - (s * h * s * h).trace();
    return std::max(v.real(), 0.0);
}

/// min over H = U Lambda U^dagger of the skew information of rho with H (x) I.
/// dimA = 2 uses lambda^2 (1 - xi_max(W)) with lambda the half-spread.
inline LquResult lqu(const BipartiteState& state, const Spectrum& spectrum, const OptimizerOptions& opts = {}) {
    detail::require_spectrum_matches(state, spectrum);
    if (state.dim_a() == 2 && !opts.force_general) {
        const double half = 0.5 * spectrum.spread();
        const auto e = eig_symmetric(w_matrix(state).w);
        const double value = half * half * std::max(1.0 - e.values(0), 0.0);
        return {value, LocalHamiltonian(spectrum, detail::qubit_basis_along(e.vectors.col(0))),
                DsMethod::qubit_closed_form};
    }
    const CMatrix s = sqrtm(state.rho());
    const CMatrix& rho = state.matrix();
    RVector l(spectrum.size());
    for (Eigen::Index k = 0; k < spectrum.size(); ++k) l(k) = spectrum[k];
    const auto search = detail::minimize_over_unitaries(state.dim_a(), opts, [&](const CMatrix& u) {
        const CMatrix h = lift_a(u * l.cast<Complex>().asDiagonal() * u.adjoint(), state.dim_b());
        return ((h * rho * h).trace() - (s * h * s * h).trace()).real();
    });
    return {std::max(search.value, 0.0), LocalHamiltonian(spectrum, search.unitary), DsMethod::general};
}

// ---------------------------------------------------------------------------
// numerical checks

struct Lemma1Scan {
    std::vector<double> s;
    std::vector<double> values;
    double argmin;
};

/// Scans f(s) = Tr[rho^s theta rho^(1-s) theta] on a 101-point grid. Grid points within
/// 1e-12 (relative) of the minimum are ties, resolved toward s = 1/2.
inline Lemma1Scan lemma1_check(const DensityMatrix& rho, const CMatrix& theta) {
    if (theta.rows() != rho.dim() || theta.cols() != rho.dim())
        throw DimensionMismatch("lemma1_check: operator and state dimensions differ");
    if (hermiticity_defect(theta) > kHermitianTol) throw ContractViolation("lemma1_check: theta must be Hermitian");
    const auto& e = rho.spectral();
    if (e.values(e.values.size() - 1) <= 1e-10)
        throw PreconditionError("lemma1_check: rho must have full support");
    const RMatrix t2 = (e.vectors.adjoint() * theta * e.vectors).cwiseAbs2();
    Lemma1Scan scan;
    for (int k = 0; k <= 100; ++k) {
        const double s = k / 100.0;
        double f = 0.0;
        for (Eigen::Index i = 0; i < t2.rows(); ++i)
            for (Eigen::Index j = 0; j < t2.cols(); ++j)
                f += std::pow(e.values(i), s) * std::pow(e.values(j), 1.0 - s) * t2(i, j);
        scan.s.push_back(s);
        scan.values.push_back(f);
    }
    const double fmin = *std::min_element(scan.values.begin(), scan.values.end());
    const double tie = 1e-12 * std::max(1.0, std::abs(fmin));
    scan.argmin = scan.s.front();
    double best_distance = 2.0;
    for (std::size_t k = 0; k < scan.s.size(); ++k) {
        const double distance = std::abs(scan.s[k] - 0.5);
        if (scan.values[k] <= fmin + tie && distance < best_distance) {
            best_distance = distance;
            scan.argmin = scan.s[k];
        }
    }
    return scan;
}

struct GapRow {
    double lambda;
    double ds;
    double lqu;
    double gap;
};

/// DS and LQU side by side for the symmetric spectrum of half-spread lambda.
inline std::vector<GapRow> lqu_ds_small_lambda_check(const BipartiteState& state,
                                                     const std::vector<double>& lambdas,
                                                     const OptimizerOptions& opts = {}) {
    std::vector<GapRow> rows;
    for (double lambda : lambdas) {
        if (lambda == 0.0) {
            rows.push_back({0.0, 0.0, 0.0, 0.0});
            continue;
        }
        const Spectrum spectrum = Spectrum::symmetric(state.dim_a(), lambda);
        const double ds = ds_general(state, spectrum, opts).value;
        const double u = lqu(state, spectrum, opts).value;
        rows.push_back({lambda, ds, u, std::abs(ds - u)});
    }
    return rows;
}

}  // namespace dstrength
