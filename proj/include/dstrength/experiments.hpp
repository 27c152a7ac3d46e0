#pragma once

// Numerical campaigns: the two-qubit separable sweep, the uniform-pQC limit, the
// randomized property suite and the n-copy decay study.

#include <cstdint>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "dstrength/discrimination.hpp"
#include "dstrength/measures.hpp"
#include "dstrength/parallel.hpp"
#include "dstrength/random.hpp"
#include "dstrength/states.hpp"

namespace dstrength {

// ---------------------------------------------------------------------------
// separable sweep

enum class SweepMode { grid, random };

/// Grid layout: probability angles k (pi/4) / r for k = 1..r; theta k pi / (r - 1) for
/// k = 0..r-1; phi 2 pi k / r for k = 0..r-1. u_1 = v_1 = +z and u_2 in the xz-plane fix
/// the local-unitary gauge.
struct SweepConfig {
    int n = 2;
    int prob_resolution = 9;
    int theta_resolution = 9;
    int phi_resolution = 9;
    double lambda = std::numbers::pi / 2;
    std::uint64_t seed = 0;
    std::size_t max_states = 5'000'000;
    SweepMode mode = SweepMode::grid;
    unsigned threads = 1;

    void validate() const {
        if (n < 2 || n > 4) throw RangeError("sweep ensemble size must be 2, 3 or 4");
        if (prob_resolution < 2 || theta_resolution < 2 || phi_resolution < 2)
            throw RangeError("sweep resolution must be at least 2");
        if (max_states == 0) throw RangeError("sweep state cap must be positive");
        if (!(lambda > 0.0 && lambda < std::numbers::pi)) throw RangeError("lambda must lie in (0, pi)");
    }
};

/// One evaluated ensemble. Angle lists are indexed by ensemble member.
struct SweepPoint {
    std::vector<double> prob_angles;
    std::vector<double> weights;
    std::vector<double> theta_u, phi_u, theta_v, phi_v;
    double ds = 0.0;
    double ratio = 0.0;  ///< ds / sin^2 lambda
};

struct Histogram {
    std::vector<double> edges;
    std::vector<std::uint64_t> counts;

    static Histogram uniform(int bins) {
        Histogram h;
        for (int k = 0; k <= bins; ++k) h.edges.push_back(static_cast<double>(k) / bins);
        h.counts.assign(static_cast<std::size_t>(bins), 0);
        return h;
    }

    void add(double x) {
        const auto bins = static_cast<long>(counts.size());
        long k = static_cast<long>(std::floor(x * static_cast<double>(bins)));
        k = std::clamp(k, 0L, bins - 1);
        ++counts[static_cast<std::size_t>(k)];
    }

    std::uint64_t total() const {
        std::uint64_t t = 0;
        for (auto c : counts) t += c;
        return t;
    }
};

struct SweepResult {
    SweepConfig config;
    Histogram histogram;
    double best_value = 0.0;
    SweepPoint best_params;
    std::size_t states_evaluated = 0;
    std::size_t grid_size = 0;
    bool truncated = false;
};

namespace detail {

struct SweepAxes {
    std::vector<int> radix;

    explicit SweepAxes(const SweepConfig& c) {
        for (int k = 0; k < c.n - 1; ++k) radix.push_back(c.prob_resolution);
        radix.push_back(c.theta_resolution);  // theta_u of member 2
        for (int j = 2; j < c.n; ++j) {
            radix.push_back(c.theta_resolution);
            radix.push_back(c.phi_resolution);
        }
        for (int j = 1; j < c.n; ++j) {
            radix.push_back(c.theta_resolution);
            radix.push_back(c.phi_resolution);
        }
    }

    /// Product of the radices, saturating at cap + 1.
    std::size_t size(std::size_t cap) const {
        std::size_t total = 1;
        for (int r : radix) {
            if (total > (cap + 1) / static_cast<std::size_t>(r) + 1) return cap + 1;
            total *= static_cast<std::size_t>(r);
        }
        return total;
    }
};

inline SweepPoint empty_point(int n) {
    SweepPoint p;
    const auto m = static_cast<std::size_t>(n);
    p.theta_u.assign(m, 0.0);
    p.phi_u.assign(m, 0.0);
    p.theta_v.assign(m, 0.0);
    p.phi_v.assign(m, 0.0);
    return p;
}

/// Fills the free coordinates of a point from a generator of per-axis values.
template <typename Next>
SweepPoint fill_point(const SweepConfig& c, Next&& next) {
    SweepPoint p = empty_point(c.n);
    for (int k = 0; k < c.n - 1; ++k) p.prob_angles.push_back(next(0));
    p.theta_u[1] = next(1);
    for (int j = 2; j < c.n; ++j) {
        p.theta_u[static_cast<std::size_t>(j)] = next(1);
        p.phi_u[static_cast<std::size_t>(j)] = next(2);
    }
    for (int j = 1; j < c.n; ++j) {
        p.theta_v[static_cast<std::size_t>(j)] = next(1);
        p.phi_v[static_cast<std::size_t>(j)] = next(2);
    }
    p.weights = probability_simplex_from_angles(p.prob_angles);
    return p;
}

inline SweepPoint grid_point(const SweepConfig& c, std::size_t index) {
    const SweepAxes axes(c);
    // most significant digit first so that grid order is lexicographic in the axes
    std::vector<int> digit(axes.radix.size());
    for (std::size_t k = axes.radix.size(); k-- > 0;) {
        const auto r = static_cast<std::size_t>(axes.radix[k]);
        digit[k] = static_cast<int>(index % r);
        index /= r;
    }
    std::size_t pos = 0;
    return fill_point(c, [&](int kind) {
        const int d = digit[pos++];
        switch (kind) {
            case 0: return (d + 1) * (std::numbers::pi / 4) / c.prob_resolution;
            case 1: return d * std::numbers::pi / (c.theta_resolution - 1);
            default: return 2.0 * std::numbers::pi * d / c.phi_resolution;
        }
    });
}

inline SweepPoint random_point(const SweepConfig& c, std::size_t index) {
    std::seed_seq seq{static_cast<std::uint32_t>(c.seed), static_cast<std::uint32_t>(c.seed >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
    Rng rng(seq);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    return fill_point(c, [&](int kind) {
        switch (kind) {
            case 0: return (1.0 - unit(rng)) * std::numbers::pi / 4;  // (0, pi/4]
            case 1: return std::acos(1.0 - 2.0 * unit(rng));          // uniform on the sphere
            default: return 2.0 * std::numbers::pi * unit(rng);
        }
    });
}

inline BipartiteState sweep_state(const SweepPoint& p) {
    std::vector<BlochVector> u, v;
    for (std::size_t j = 0; j < p.weights.size(); ++j) {
        u.push_back(BlochVector::from_angles(p.theta_u[j], p.phi_u[j]));
        v.push_back(BlochVector::from_angles(p.theta_v[j], p.phi_v[j]));
    }
    return separable_ensemble(p.weights, u, v);
}

}  // namespace detail

/// Number of grid points the configuration spans (saturates at max_states + 1).
inline std::size_t sweep_grid_size(const SweepConfig& c) {
    return detail::SweepAxes(c).size(c.max_states);
}

inline SweepResult sweep_separable(const SweepConfig& config) {
    config.validate();
    SweepResult result;
    result.config = config;
    result.histogram = Histogram::uniform(100);
    if (config.mode == SweepMode::grid) {
        result.grid_size = sweep_grid_size(config);
        result.truncated = result.grid_size > config.max_states;
        result.states_evaluated = std::min(result.grid_size, config.max_states);
    } else {
        result.grid_size = config.max_states;
        result.states_evaluated = config.max_states;
    }
    auto point_at = [&](std::size_t i) {
        return config.mode == SweepMode::grid ? detail::grid_point(config, i) : detail::random_point(config, i);
    };
    const double s2 = std::sin(config.lambda) * std::sin(config.lambda);
    std::vector<double> ratios(result.states_evaluated);
    parallel_for(ratios.size(), config.threads, [&](std::size_t i) {
        const SweepPoint p = point_at(i);
        ratios[i] = ds_qubit_qudit(detail::sweep_state(p), config.lambda).value / s2;
    });
    // sequential reduction in index order: ties keep the first grid point
    std::size_t best = 0;
    for (std::size_t i = 0; i < ratios.size(); ++i) {
        result.histogram.add(ratios[i]);
        if (ratios[i] > ratios[best]) best = i;
    }
    if (!ratios.empty()) {
        result.best_params = point_at(best);
        result.best_params.ratio = ratios[best];
        result.best_params.ds = ratios[best] * s2;
        result.best_value = ratios[best];
    }
    return result;
}

// ---------------------------------------------------------------------------
// uniform pQC limit

struct UniformPqcRow {
    int d;
    double ds;
    double ratio;
};

inline std::vector<UniformPqcRow> uniform_pqc_limit(const std::vector<int>& d_list, double lambda) {
    if (!std::is_sorted(d_list.begin(), d_list.end())) throw RangeError("d list must be ascending");
    const double s2 = std::sin(lambda) * std::sin(lambda);
    std::vector<UniformPqcRow> rows;
    for (int d : d_list) {
        const auto dirs = uniform_pqc_directions(d);
        const std::vector<double> w(dirs.size(), 1.0 / static_cast<double>(dirs.size()));
        const double ds = ds_pqc_closed(w, dirs, lambda).value;
        rows.push_back({d, ds, ds / s2});
    }
    return rows;
}

// ---------------------------------------------------------------------------
// property suite

struct PropertyOutcome {
    std::string name;
    int trials = 0;
    int passed = 0;
    /// Largest observed violation measure (0 when every trial passed with margin).
    double worst = 0.0;
    std::vector<std::string> counterexamples;

    bool ok() const { return passed == trials; }
};

struct PropertyReport {
    std::uint64_t seed = 0;
    int trials = 0;
    double lambda = 0.0;
    std::vector<PropertyOutcome> properties;

    bool all_passed() const {
        return std::all_of(properties.begin(), properties.end(), [](const auto& p) { return p.ok(); });
    }
};

namespace detail {

inline Rng trial_rng(std::uint64_t seed, int property, int trial) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(property), static_cast<std::uint32_t>(trial)};
    return Rng(seq);
}

inline std::string describe(const CMatrix& m) {
    std::ostringstream os;
    os.precision(17);
    os << '[';
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        os << (i ? ";" : "");
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            os << (j ? " " : "") << m(i, j).real() << (m(i, j).imag() < 0 ? "" : "+") << m(i, j).imag() << 'i';
    }
    os << ']';
    return os.str();
}

/// Kraus operators of rho -> Tr_E[V rho V^dagger] for an isometry V: d_in -> d_out * d_env.
inline std::vector<CMatrix> stinespring_kraus(const CMatrix& v, Eigen::Index d_out, Eigen::Index d_env) {
    std::vector<CMatrix> kraus;
    for (Eigen::Index e = 0; e < d_env; ++e) {
        CMatrix k(d_out, v.cols());
        for (Eigen::Index o = 0; o < d_out; ++o) k.row(o) = v.row(o * d_env + e);
        kraus.push_back(k);
    }
    return kraus;
}

/// (id_A (x) Phi_B)[rho] for Phi_B given by Kraus operators.
inline BipartiteState apply_channel_b(const BipartiteState& state, const std::vector<CMatrix>& kraus) {
    const Eigen::Index d_out = kraus.front().rows();
    CMatrix out = CMatrix::Zero(state.dim_a() * d_out, state.dim_a() * d_out);
    for (const auto& k : kraus) {
        const CMatrix lifted = kron(identity(state.dim_a()), k);
        out += lifted * state.matrix() * lifted.adjoint();
    }
    return BipartiteState(DensityMatrix(out), state.dim_a(), d_out);
}

}  // namespace detail

/// Randomized checks of the four structural properties of DS on qubit-A states:
/// zero exactly on CQ states, local-unitary invariance, monotonicity under channels on B,
/// and monotone growth with entanglement for pure states.
inline PropertyReport property_suite(std::uint64_t seed, int trials, double lambda = 1.0) {
    if (trials < 1) throw RangeError("property suite needs trials >= 1");
    if (!(lambda > 0.0 && lambda < std::numbers::pi)) throw RangeError("lambda must lie in (0, pi)");
    PropertyReport report{seed, trials, lambda, {}};
    const double s2 = std::sin(lambda) * std::sin(lambda);
    auto fail = [](PropertyOutcome& out, int t, const std::string& what) {
        out.counterexamples.push_back("trial " + std::to_string(t) + ": " + what);
    };

    {
        PropertyOutcome out{"cq_states_have_zero_ds", trials, 0, 0.0, {}};
        for (int t = 0; t < trials; ++t) {
            Rng rng = detail::trial_rng(seed, 1, t);
            const Eigen::Index db = 2 + static_cast<Eigen::Index>(rng() % 2);
            const auto p = random_probabilities(2, rng);
            const BipartiteState cq = cq_state(p, {random_density_matrix(db, rng), random_density_matrix(db, rng)});
            const CMatrix w = lift_a(haar_random_unitary(2, rng), db);
            const BipartiteState rho(DensityMatrix(w * cq.matrix() * w.adjoint()), 2, db);
            const DsResult r = ds_qubit_qudit(rho, lambda);
            const CMatrix h = lift_a(r.optimal_hamiltonian.matrix(), db);
            const double comm = (rho.matrix() * h - h * rho.matrix()).norm();
            const bool ok = r.value <= 1e-6 && (r.value > 1e-8 || comm <= 1e-5);
            out.worst = std::max(out.worst, r.value);
            if (ok) ++out.passed;
            else fail(out, t, "ds=" + std::to_string(r.value) + " commutator=" + std::to_string(comm) +
                                  " rho=" + detail::describe(rho.matrix()));
        }
        report.properties.push_back(std::move(out));
    }
    {
        PropertyOutcome out{"local_unitary_invariance", trials, 0, 0.0, {}};
        for (int t = 0; t < trials; ++t) {
            Rng rng = detail::trial_rng(seed, 2, t);
            const Eigen::Index db = 2 + static_cast<Eigen::Index>(rng() % 2);
            const BipartiteState rho = random_bipartite_state(2, db, rng, 1 + static_cast<Eigen::Index>(rng() % 3));
            const CMatrix vb = t == 0 ? identity(db) : haar_random_unitary(db, rng);
            const CMatrix u = kron(haar_random_unitary(2, rng), vb);
            const BipartiteState moved(DensityMatrix(u * rho.matrix() * u.adjoint()), 2, db);
            const double gap = std::abs(ds_qubit_qudit(rho, lambda).value - ds_qubit_qudit(moved, lambda).value);
            out.worst = std::max(out.worst, gap);
            if (gap <= 2e-8) ++out.passed;
            else fail(out, t, "gap=" + std::to_string(gap) + " rho=" + detail::describe(rho.matrix()));
        }
        report.properties.push_back(std::move(out));
    }
    {
        PropertyOutcome out{"monotone_under_channels_on_b", trials, 0, 0.0, {}};
        for (int t = 0; t < trials; ++t) {
            Rng rng = detail::trial_rng(seed, 3, t);
            const Eigen::Index db = 2 + static_cast<Eigen::Index>(rng() % 2);
            const BipartiteState rho = random_bipartite_state(2, db, rng, 1 + static_cast<Eigen::Index>(rng() % 3));
            std::vector<CMatrix> kraus;
            if (t == 0) {
                kraus = {identity(db)};
            } else {
                const Eigen::Index d_out = 2 + static_cast<Eigen::Index>(rng() % 2);
                kraus = detail::stinespring_kraus(haar_random_isometry(d_out * 2, db, rng), d_out, 2);
            }
            const BipartiteState mapped = detail::apply_channel_b(rho, kraus);
            const double before = ds_qubit_qudit(rho, lambda).value;
            const double after = ds_qubit_qudit(mapped, lambda).value;
            out.worst = std::max(out.worst, after - before);
            if (after <= before + 1e-6) ++out.passed;
            else fail(out, t, "before=" + std::to_string(before) + " after=" + std::to_string(after) +
                                  " rho=" + detail::describe(rho.matrix()));
        }
        report.properties.push_back(std::move(out));
    }
    {
        // pure states along a Schmidt grid: DS = [1 - (q1 - q0)^2] sin^2 lambda, increasing in q0
        PropertyOutcome out{"pure_state_entanglement_monotone", trials, 0, 0.0, {}};
        Rng rng = detail::trial_rng(seed, 4, 0);
        const CMatrix ua = haar_random_unitary(2, rng);
        const CMatrix ub = haar_random_unitary(3, rng);
        double previous = -1.0;
        for (int t = 0; t < trials; ++t) {
            const double q0 = 0.5 * (t + 1) / trials;
            CVector psi = CVector::Zero(6);
            psi(0) = std::sqrt(1.0 - q0);
            psi(4) = std::sqrt(q0);
            psi = kron(ua, ub) * psi;
            const BipartiteState rho = PureState::normalized(psi, 2, 3).bipartite();
            const double ds = ds_qubit_qudit(rho, lambda).value;
            const double expected = (1.0 - std::pow(1.0 - 2.0 * q0, 2)) * s2;
            const double err = std::abs(ds - expected);
            out.worst = std::max(out.worst, err);
            if (err <= 1e-9 && ds > previous) ++out.passed;
            else fail(out, t, "q0=" + std::to_string(q0) + " ds=" + std::to_string(ds) +
                                  " expected=" + std::to_string(expected));
            previous = ds;
        }
        report.properties.push_back(std::move(out));
    }
    return report;
}

// ---------------------------------------------------------------------------
// decay study

struct DecayStudy {
    DsResult ds;
    DecayTable table;
};

/// n-copy discrimination of rho against its image under the DS-optimal local rotation.
inline DecayStudy decay_study(const BipartiteState& state, const Spectrum& spectrum, int n_max,
                              const OptimizerOptions& opts = {}) {
    DsResult ds = ds_general(state, spectrum, opts);
    const BipartiteState rotated = rotate_local(state, ds.optimal_hamiltonian);
    DecayTable table = chernoff_decay_check(state.rho(), rotated.rho(), n_max);
    return {std::move(ds), std::move(table)};
}

}  // namespace dstrength
