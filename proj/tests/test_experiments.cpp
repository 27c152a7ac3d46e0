#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "dstrength/experiments.hpp"
#include "dstrength/random.hpp"

using namespace dstrength;

namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

TEST(SweepConfig, Validation) {
    SweepConfig c;
    EXPECT_NO_THROW(c.validate());
    c.n = 5;
    EXPECT_THROW(c.validate(), RangeError);
    c = {};
    c.theta_resolution = 1;
    EXPECT_THROW(c.validate(), RangeError);
    c = {};
    c.lambda = 0.0;
    EXPECT_THROW(c.validate(), RangeError);
}

TEST(SweepGrid, SizesMatchRadixProduct) {
    SweepConfig c;
    EXPECT_EQ(sweep_grid_size(c), 6561u);
    c.n = 3;
    c.prob_resolution = 4;
    c.theta_resolution = 3;
    c.phi_resolution = 2;
    EXPECT_EQ(sweep_grid_size(c), 4u * 4 * 3 * 3 * 2 * 3 * 2 * 3 * 2);
}

TEST(SweepGrid, QubitPairFindsB92Level) {
    SweepConfig c;
    c.lambda = 1.1;
    const SweepResult r = sweep_separable(c);
    EXPECT_EQ(r.states_evaluated, 6561u);
    EXPECT_FALSE(r.truncated);
    EXPECT_EQ(r.histogram.total(), 6561u);
    EXPECT_GE(r.best_value, 0.49);
    EXPECT_LE(r.best_value, 0.5 + 1e-6);
    EXPECT_NEAR(r.best_params.ds, r.best_value * std::pow(std::sin(1.1), 2), 1e-14);
    // the reported parameters rebuild a state with the reported value
    const double again = ds_qubit_qudit(detail::sweep_state(r.best_params), 1.1).value;
    EXPECT_NEAR(again, r.best_params.ds, 1e-12);
    ASSERT_EQ(r.best_params.weights.size(), 2u);
    EXPECT_NEAR(r.best_params.weights[0] + r.best_params.weights[1], 1.0, 1e-14);
}

TEST(SweepGrid, DeterministicAcrossThreads) {
    SweepConfig c;
    c.prob_resolution = c.theta_resolution = c.phi_resolution = 5;
    const SweepResult one = sweep_separable(c);
    c.threads = 3;
    const SweepResult three = sweep_separable(c);
    EXPECT_EQ(one.best_value, three.best_value);
    EXPECT_EQ(one.histogram.counts, three.histogram.counts);
    EXPECT_EQ(one.best_params.theta_v, three.best_params.theta_v);
}

TEST(SweepGrid, TruncatesAtCap) {
    SweepConfig c;
    c.max_states = 100;
    const SweepResult r = sweep_separable(c);
    EXPECT_TRUE(r.truncated);
    EXPECT_EQ(r.states_evaluated, 100u);
    EXPECT_EQ(r.histogram.total(), 100u);
}

TEST(SweepRandom, SeededAndBounded) {
    SweepConfig c;
    c.mode = SweepMode::random;
    c.n = 3;
    c.max_states = 2000;
    c.seed = 11;
    const SweepResult a = sweep_separable(c);
    const SweepResult b = sweep_separable(c);
    EXPECT_EQ(a.best_value, b.best_value);
    EXPECT_EQ(a.states_evaluated, 2000u);
    EXPECT_LE(a.best_value, 0.5 + 1e-6);
    EXPECT_GT(a.best_value, 0.2);
    c.seed = 12;
    EXPECT_NE(sweep_separable(c).best_value, a.best_value);
}

TEST(Histogram, BinsAndEdges) {
    Histogram h = Histogram::uniform(100);
    ASSERT_EQ(h.edges.size(), 101u);
    EXPECT_EQ(h.edges.front(), 0.0);
    EXPECT_EQ(h.edges.back(), 1.0);
    h.add(0.0);
    h.add(0.999);
    h.add(1.0);
    h.add(0.505);
    EXPECT_EQ(h.counts[0], 1u);
    EXPECT_EQ(h.counts[99], 2u);
    EXPECT_EQ(h.counts[50], 1u);
    EXPECT_EQ(h.total(), 4u);
}

TEST(UniformLimit, ApproachesTwoThirds) {
    const auto rows = uniform_pqc_limit({2, 6, 100, 1000, 10000}, 1.0);
    ASSERT_EQ(rows.size(), 5u);
    EXPECT_NEAR(rows[0].ratio, 0.0, 1e-15);
    EXPECT_NEAR(rows[1].ratio, 2.0 / 3, 1e-12);
    EXPECT_NEAR(rows[2].ratio, 2.0 / 3, 5e-3);
    EXPECT_NEAR(rows[3].ratio, 2.0 / 3, 1e-3);
    EXPECT_NEAR(rows[4].ratio, 2.0 / 3, 1e-4);
    for (const auto& r : rows) EXPECT_LE(r.ratio, 2.0 / 3 + 1e-12);
    EXPECT_THROW(uniform_pqc_limit({100, 6}, 1.0), RangeError);
}

TEST(PropertySuite, PassesAndIsReproducible) {
    const PropertyReport a = property_suite(3, 12, 0.9);
    ASSERT_EQ(a.properties.size(), 4u);
    for (const auto& p : a.properties) {
        EXPECT_TRUE(p.ok()) << p.name << ": " << (p.counterexamples.empty() ? "" : p.counterexamples.front());
        EXPECT_EQ(p.trials, 12);
    }
    EXPECT_TRUE(a.all_passed());
    const PropertyReport b = property_suite(3, 12, 0.9);
    for (std::size_t k = 0; k < a.properties.size(); ++k) EXPECT_EQ(a.properties[k].worst, b.properties[k].worst);
    EXPECT_THROW(property_suite(3, 0), RangeError);
}

TEST(ChannelHelpers, StinespringIsTracePreserving) {
    Rng rng(4);
    const CMatrix v = haar_random_isometry(6, 3, rng);
    const auto kraus = detail::stinespring_kraus(v, 3, 2);
    CMatrix sum = CMatrix::Zero(3, 3);
    for (const auto& k : kraus) sum += k.adjoint() * k;
    EXPECT_LT((sum - CMatrix::Identity(3, 3)).norm(), 1e-12);
    const BipartiteState s = random_bipartite_state(2, 3, rng);
    const BipartiteState out = detail::apply_channel_b(s, kraus);
    EXPECT_NEAR(out.matrix().trace().real(), 1.0, 1e-12);
    // channels on B leave the reduced state of A alone
    EXPECT_LT((partial_trace_b(out).matrix() - partial_trace_b(s).matrix()).norm(), 1e-12);
}

TEST(DecayStudy, BellB92AndCq) {
    OptimizerOptions o;
    const BipartiteState bell = PureState(CVector::Unit(4, 0) / std::numbers::sqrt2 +
                                              CVector::Unit(4, 3) / std::numbers::sqrt2,
                                          2, 2)
                                    .bipartite();
    const DecayStudy b = decay_study(bell, Spectrum::symmetric(2, kPi / 2), 4, o);
    EXPECT_NEAR(b.ds.value, 1.0, 1e-10);
    for (const auto& row : b.table.rows) EXPECT_EQ(row.p_err, 0.0);
    EXPECT_TRUE(b.table.bound_holds);

    const DecayStudy q = decay_study(b92_state(), Spectrum::symmetric(2, kPi / 4), 6, o);
    EXPECT_NEAR(q.ds.value, 0.25, 1e-10);
    EXPECT_NEAR(q.table.chernoff.q, 0.75, 1e-8);
    EXPECT_TRUE(q.table.bound_holds);
    for (const auto& row : q.table.rows) EXPECT_LE(row.p_err, 0.5 * std::pow(q.table.chernoff.q, row.n) + 1e-12);

    const BipartiteState cq = cq_state({0.4, 0.6}, {basis_projector(2, 0), maximally_mixed(2)});
    const DecayStudy c = decay_study(cq, Spectrum::symmetric(2, 1.0), 3, o);
    EXPECT_NEAR(c.ds.value, 0.0, 1e-10);
    for (const auto& row : c.table.rows) EXPECT_NEAR(row.p_err, 0.5, 1e-8);
}
