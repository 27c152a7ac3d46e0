#pragma once

// Constructors for the separable state families (CQ, pQC, B92, GB92, uniform pQC,
// QC qubit-qubit, generic N-term ensembles) and their closed-form DS values.

#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include "dstrength/core.hpp"
#include "dstrength/measures.hpp"

namespace dstrength {

namespace detail {

inline void require_weights(const std::vector<double>& w, bool strictly_positive) {
    if (w.empty()) throw ContractViolation("weights cannot be empty");
    double total = 0.0;
    for (double p : w) {
        if (!std::isfinite(p) || p < 0.0 || (strictly_positive && p == 0.0))
            throw ContractViolation(strictly_positive ? "weights must be strictly positive"
                                                      : "weights must be non-negative");
        total += p;
    }
    if (std::abs(total - 1.0) > kNormTol) throw ContractViolation("weights must sum to 1");
}

}  // namespace detail

/// rho = sum_j p_j |psi_j><psi_j|_A (x) rho_B^(j).
struct SeparableEnsemble {
    std::vector<double> weights;
    std::vector<PureState> a_states;
    std::vector<DensityMatrix> b_states;

    std::size_t size() const { return weights.size(); }

    BipartiteState assemble() const {
        detail::require_weights(weights, true);
        if (a_states.size() != weights.size() || b_states.size() != weights.size())
            throw DimensionMismatch("ensemble lists have different lengths");
        const Eigen::Index da = a_states.front().dim();
        const Eigen::Index db = b_states.front().dim();
        CMatrix rho = CMatrix::Zero(da * db, da * db);
        for (std::size_t j = 0; j < weights.size(); ++j) {
            if (a_states[j].dim() != da || b_states[j].dim() != db)
                throw DimensionMismatch("ensemble members have different dimensions");
            const CVector& a = a_states[j].amplitudes();
            rho += weights[j] * kron(CMatrix(a * a.adjoint()), b_states[j].matrix());
        }
        return BipartiteState(DensityMatrix(rho), da, db);
    }
};

/// sum_i p_i |i><i|_A (x) rho_B^(i) in the computational basis of A. dimA is padded
/// to 2 when a single block is given.
inline BipartiteState cq_state(const std::vector<double>& probs, const std::vector<DensityMatrix>& b_states) {
    detail::require_weights(probs, false);
    if (probs.size() != b_states.size()) throw DimensionMismatch("cq_state: probs and b_states differ in length");
    const auto da = static_cast<Eigen::Index>(std::max<std::size_t>(probs.size(), 2));
    const Eigen::Index db = b_states.front().dim();
    CMatrix rho = CMatrix::Zero(da * db, da * db);
    for (std::size_t i = 0; i < probs.size(); ++i) {
        if (b_states[i].dim() != db) throw DimensionMismatch("cq_state: B blocks differ in dimension");
        const auto k = static_cast<Eigen::Index>(i);
        rho.block(k * db, k * db, db, db) = probs[i] * b_states[i].matrix();
    }
    return BipartiteState(DensityMatrix(rho), da, db);
}

struct PqcState {
    SeparableEnsemble ensemble;
    BipartiteState state;
};

/// sum_k p_k |psi_k><psi_k|_A (x) |k><k|_B with qubit A states given by Bloch vectors.
inline PqcState pqc_state(const std::vector<double>& probs, const std::vector<BlochVector>& a_bloch,
                          Eigen::Index dim_b = 0) {
    detail::require_weights(probs, true);
    if (probs.size() != a_bloch.size()) throw DimensionMismatch("pqc_state: probs and Bloch lists differ");
    const auto n = static_cast<Eigen::Index>(probs.size());
    if (dim_b == 0) dim_b = n;
    if (n > dim_b) throw DimensionMismatch("pqc_state: needs dimB >= number of terms");
    SeparableEnsemble e{probs, {}, {}};
    for (Eigen::Index k = 0; k < n; ++k) {
        e.a_states.push_back(bloch_to_pure(a_bloch[static_cast<std::size_t>(k)]));
        e.b_states.push_back(basis_projector(dim_b, k));
    }
    BipartiteState s = e.assemble();
    return {std::move(e), std::move(s)};
}

/// M = sum_j p_j r_j r_j^T.
inline Eigen::Matrix3d second_moment(const std::vector<double>& probs, const std::vector<BlochVector>& a_bloch) {
    if (probs.size() != a_bloch.size()) throw DimensionMismatch("second_moment: lengths differ");
    Eigen::Matrix3d m = Eigen::Matrix3d::Zero();
    for (std::size_t j = 0; j < probs.size(); ++j) m += probs[j] * a_bloch[j].vec() * a_bloch[j].vec().transpose();
    return m;
}

/// pQC closed form (1 - xi_max(M)) sin^2 lambda.
inline DsResult ds_pqc_closed(const std::vector<double>& probs, const std::vector<BlochVector>& a_bloch,
                              double lambda) {
    detail::require_weights(probs, true);
    if (!(lambda > 0.0 && lambda < std::numbers::pi)) throw RangeError("lambda must lie in (0, pi)");
    const auto e = eig_symmetric(second_moment(probs, a_bloch));
    const double s2 = std::sin(lambda) * std::sin(lambda);
    return {std::clamp(1.0 - e.values(0), 0.0, 1.0) * s2,
            LocalHamiltonian(Spectrum({lambda, -lambda}), detail::qubit_basis_along(e.vectors.col(0))),
            DsMethod::pqc_closed_form};
}

/// |0>, |+>, |+i> (Bloch z, x, y) with weights p0, p1, p2 and orthogonal flags on B.
inline BipartiteState gb92_state(double p0, double p1, double p2, Eigen::Index dim_b = 3) {
    if (dim_b < 3) throw DimensionMismatch("gb92_state needs dimB >= 3");
    return pqc_state({p0, p1, p2}, {BlochVector(0, 0, 1), BlochVector(1, 0, 0), BlochVector(0, 1, 0)}, dim_b)
        .state;
}

/// (1/2)(|0><0| (x) |0><0| + |+><+| (x) |1><1|).
inline BipartiteState b92_state() {
    return pqc_state({0.5, 0.5}, {BlochVector(0, 0, 1), BlochVector(1, 0, 0)}, 2).state;
}

// ---------------------------------------------------------------------------
// uniform pQC

namespace detail {

inline std::vector<Eigen::Vector3d> signed_permutations(const std::vector<Eigen::Vector3d>& seeds,
                                                        bool cyclic) {
    std::vector<Eigen::Vector3d> out;
    for (const auto& s : seeds) {
        const int shifts = cyclic ? 3 : 1;
        for (int c = 0; c < shifts; ++c) {
            const Eigen::Vector3d base(s((0 + c) % 3), s((1 + c) % 3), s((2 + c) % 3));
            for (int mask = 0; mask < 8; ++mask) {
                Eigen::Vector3d v = base;
                bool skip = false;
                for (int k = 0; k < 3; ++k)
                    if (mask & (1 << k)) {
                        if (v(k) == 0.0) skip = true;
                        v(k) = -v(k);
                    }
                if (!skip) out.push_back(v);
            }
        }
    }
    return out;
}

}  // namespace detail

/// Bloch directions spread evenly over the sphere: polyhedron vertices for
/// d in {2, 3, 4, 6, 8, 12, 20}, Fibonacci-lattice points otherwise.
inline std::vector<BlochVector> uniform_pqc_directions(int d) {
    if (d < 2) throw RangeError("uniform_pqc needs d >= 2");
    constexpr double phi = std::numbers::phi;
    std::vector<Eigen::Vector3d> pts;
    switch (d) {
        case 2: pts = {{0, 0, 1}, {0, 0, -1}}; break;
        case 3:
            for (int k = 0; k < 3; ++k) {
                const double t = 2.0 * std::numbers::pi * k / 3.0;
                pts.emplace_back(std::sin(t), 0.0, std::cos(t));
            }
            break;
        case 4: pts = {{1, 1, 1}, {1, -1, -1}, {-1, 1, -1}, {-1, -1, 1}}; break;
        case 6: pts = {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}}; break;
        case 8: pts = detail::signed_permutations({{1, 1, 1}}, false); break;
        case 12: pts = detail::signed_permutations({{0, 1, phi}}, true); break;
        case 20: pts = detail::signed_permutations({{1, 1, 1}}, false);
            for (const auto& v : detail::signed_permutations({{0, 1 / phi, phi}}, true)) pts.push_back(v);
            break;
        default: {
            const double golden_angle = std::numbers::pi * (3.0 - std::sqrt(5.0));
            for (int k = 0; k < d; ++k) {
                const double z = 1.0 - (2.0 * k + 1.0) / d;
                const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
                const double a = golden_angle * k;
                pts.emplace_back(r * std::cos(a), r * std::sin(a), z);
            }
        }
    }
    std::vector<BlochVector> out;
    out.reserve(pts.size());
    for (const auto& p : pts) out.push_back(BlochVector::normalized(p));
    return out;
}

/// (1/d) sum_j |psi_j><psi_j| (x) |j><j| over uniform_pqc_directions(d).
inline BipartiteState uniform_pqc(int d, Eigen::Index dim_b = 0) {
    const auto dirs = uniform_pqc_directions(d);
    if (dim_b == 0) dim_b = d;
    if (dim_b < d) throw DimensionMismatch("uniform_pqc needs dimB >= d");
    return pqc_state(std::vector<double>(static_cast<std::size_t>(d), 1.0 / d), dirs, dim_b).state;
}

// ---------------------------------------------------------------------------
// QC qubit-qubit family

/// p tau0 (x) |0><0| + (1-p) tau1 (x) |1><1|, tau0 = (I + s0 sz)/2,
/// tau1 = (I + s1 (sin phi sx + cos phi sz))/2.
struct QcQubitParams {
    double p;
    double s0;
    double s1;
    double phi;

    void validate() const {
        auto in = [](double x, double lo, double hi) { return x >= lo && x <= hi; };
        if (!in(p, 0.0, 1.0) || !in(s0, 0.0, 1.0) || !in(s1, 0.0, 1.0))
            throw RangeError("QC parameters p, s0, s1 must lie in [0, 1]");
        if (!in(phi, 0.0, std::numbers::pi)) throw RangeError("QC parameter phi must lie in [0, pi]");
    }
};

inline BipartiteState qc_qubit_qubit(const QcQubitParams& q) {
    q.validate();
    const CMatrix tau0 = 0.5 * (identity(2) + q.s0 * pauli_z());
    const CMatrix tau1 = 0.5 * (identity(2) + q.s1 * (std::sin(q.phi) * pauli_x() + std::cos(q.phi) * pauli_z()));
    const CMatrix rho = q.p * kron(tau0, basis_projector(2, 0).matrix()) +
                        (1.0 - q.p) * kron(tau1, basis_projector(2, 1).matrix());
    return BipartiteState(DensityMatrix(rho), 2, 2);
}

/// The W matrix of a QC state from its element formulas.
inline Eigen::Matrix3d qc_w_matrix(const QcQubitParams& q) {
    q.validate();
    const double r0 = std::sqrt(std::max(0.0, 1.0 - q.s0 * q.s0));
    const double r1 = std::sqrt(std::max(0.0, 1.0 - q.s1 * q.s1));
    const double c2 = std::cos(2.0 * q.phi);
    Eigen::Matrix3d w = Eigen::Matrix3d::Zero();
    w(1, 1) = q.p * r0 + (1.0 - q.p) * r1;
    w(0, 0) = q.p * r0 + 0.5 * (1.0 - q.p) * (1.0 - c2 + r1 * (1.0 + c2));
    w(0, 2) = w(2, 0) = (1.0 - q.p) * (1.0 - r1) * std::sin(q.phi) * std::cos(q.phi);
    w(2, 2) = 0.5 * (1.0 + q.p) + 0.5 * (1.0 - q.p) * (c2 + r1 * (1.0 - c2));
    return w;
}

/// D = f_W sin^2(lambda) / 2 with f_W = 1 - W22 - sqrt((W11 - W33)^2 + 4 W13^2), clipped at 0.
inline DsResult ds_qc_closed(const QcQubitParams& q, double lambda) {
    if (!(lambda > 0.0 && lambda < std::numbers::pi)) throw RangeError("lambda must lie in (0, pi)");
    const Eigen::Matrix3d w = qc_w_matrix(q);
    const double f_w = 1.0 - w(1, 1) - std::sqrt(std::pow(w(0, 0) - w(2, 2), 2) + 4.0 * w(0, 2) * w(0, 2));
    const double s2 = std::sin(lambda) * std::sin(lambda);
    const auto e = eig_symmetric(w);
    return {std::max(f_w, 0.0) * s2 / 2.0,
            LocalHamiltonian(Spectrum({lambda, -lambda}), detail::qubit_basis_along(e.vectors.col(0))),
            DsMethod::qubit_closed_form};
}

// ---------------------------------------------------------------------------
// generic two-qubit separable ensembles

/// sum_j p_j (I + u_j.sigma)/2 (x) (I + v_j.sigma)/2 for 1 <= N <= 4.
inline BipartiteState separable_ensemble(const std::vector<double>& probs, const std::vector<BlochVector>& a_bloch,
                                         const std::vector<BlochVector>& b_bloch) {
    const std::size_t n = probs.size();
    if (n < 1 || n > 4) throw RangeError("separable_ensemble needs 1 <= N <= 4");
    if (a_bloch.size() != n || b_bloch.size() != n) throw DimensionMismatch("separable_ensemble: lengths differ");
    detail::require_weights(probs, true);
    CMatrix rho = CMatrix::Zero(4, 4);
    for (std::size_t j = 0; j < n; ++j)
        rho += probs[j] * kron(bloch_to_state(a_bloch[j]).matrix(), bloch_to_state(b_bloch[j]).matrix());
    return BipartiteState(DensityMatrix(rho), 2, 2);
}

/// Ordered weights from 1-3 angles in (0, pi/4]:
/// N=2: C{sin a, cos a}; N=3: C{sin a sin b, sin a cos b, cos a};
/// N=4: C{sin a sin b sin g, sin a sin b cos g, sin a cos b, cos a}, C normalizing.
inline std::vector<double> probability_simplex_from_angles(const std::vector<double>& angles) {
    if (angles.empty() || angles.size() > 3) throw RangeError("probability_simplex_from_angles takes 1 to 3 angles");
    for (double a : angles)
        if (!(a > 0.0 && a <= std::numbers::pi / 4 + 1e-15)) throw RangeError("angles must lie in (0, pi/4]");
    const std::size_t n = angles.size();
    std::vector<double> raw(n + 1);
    double prefix = 1.0;
    for (std::size_t k = 0; k < n; ++k) {
        raw[n - k] = prefix * std::cos(angles[k]);
        prefix *= std::sin(angles[k]);
    }
    raw[0] = prefix;
    double total = 0.0;
    for (double x : raw) total += x;
    for (double& x : raw) x /= total;
    return raw;
}

}  // namespace dstrength
