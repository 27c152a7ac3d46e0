#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "dstrength/discrimination.hpp"
#include "dstrength/random.hpp"
#include "oracles.hpp"

using namespace dstrength;

namespace {

DensityMatrix ket0() { return basis_projector(2, 0); }
DensityMatrix ket1() { return basis_projector(2, 1); }
DensityMatrix plus() { return bloch_to_state(BlochVector(1, 0, 0)); }

double root_overlap(const DensityMatrix& a, const DensityMatrix& b) {
    return (sqrtm(a) * sqrtm(b)).trace().real();
}

}  // namespace

TEST(Chernoff, Examples) {
    Rng rng(1);
    const DensityMatrix r = random_density_matrix(3, rng);
    EXPECT_NEAR(chernoff_overlap(r, r).q, 1.0, 1e-10);
    const auto orth = chernoff_overlap(ket0(), ket1());
    EXPECT_EQ(orth.q, 0.0);
    EXPECT_TRUE(std::isinf(orth.xi));
    const auto mixed = chernoff_overlap(maximally_mixed(2), ket0());
    EXPECT_NEAR(mixed.q, 0.5, 1e-9);
    EXPECT_NEAR(mixed.s_star, 1.0, 1e-6);
    EXPECT_NEAR(mixed.xi, std::log(2.0), 1e-8);
}

TEST(Chernoff, MatchesDenseGridOracle) {
    Rng rng(17);
    for (int t = 0; t < 24; ++t) {
        const Eigen::Index d = 2 + t % 3;
        const DensityMatrix a = random_density_matrix(d, rng);
        const DensityMatrix b = random_density_matrix(d, rng);
        const double grid = oracle::chernoff_grid(a.matrix(), b.matrix());
        const double q = chernoff_overlap(a, b).q;
        // the grid can only overshoot the true minimum
        EXPECT_LE(q, grid + 1e-12);
        EXPECT_NEAR(q, grid, 1e-6);
    }
}

TEST(Chernoff, BoundChainSymmetryAndCovariance) {
    Rng rng(23);
    for (Eigen::Index d = 2; d <= 4; ++d) {
        for (int t = 0; t < 200; ++t) {
            const DensityMatrix a = random_density_matrix(d, rng, 1 + static_cast<Eigen::Index>(rng() % d));
            const DensityMatrix b = random_density_matrix(d, rng, 1 + static_cast<Eigen::Index>(rng() % d));
            const auto ab = chernoff_overlap(a, b);
            EXPECT_GE(ab.q, 0.0);
            EXPECT_LE(ab.q, root_overlap(a, b) + 1e-9);
            EXPECT_LE(root_overlap(a, b), 1.0 + 1e-9);
            EXPECT_NEAR(ab.q, std::exp(-ab.xi), 1e-10);
            const auto ba = chernoff_overlap(b, a);
            EXPECT_NEAR(ab.q, ba.q, 1e-8);
            if (t % 20 == 0) {
                const CMatrix u = haar_random_unitary(d, rng);
                const DensityMatrix ua(u * a.matrix() * u.adjoint());
                const DensityMatrix ub(u * b.matrix() * u.adjoint());
                EXPECT_NEAR(chernoff_overlap(ua, ub).q, ab.q, 1e-8);
            }
        }
    }
}

TEST(Chernoff, PureArgumentReducesToFidelity) {
    Rng rng(29);
    for (Eigen::Index d = 2; d <= 4; ++d)
        for (int t = 0; t < 50; ++t) {
            const DensityMatrix pure = random_density_matrix(d, rng, 1);
            const DensityMatrix mixed = random_density_matrix(d, rng);
            EXPECT_NEAR(chernoff_overlap(pure, mixed).q, fidelity(pure, mixed), 1e-8);
            EXPECT_NEAR(chernoff_overlap(mixed, pure).q, fidelity(mixed, pure), 1e-8);
        }
}

TEST(Chernoff, DimensionMismatchThrows) {
    EXPECT_THROW(chernoff_overlap(maximally_mixed(2), maximally_mixed(3)), DimensionMismatch);
}

TEST(Fidelity, Examples) {
    Rng rng(2);
    const DensityMatrix r = random_density_matrix(3, rng);
    EXPECT_NEAR(fidelity(r, r), 1.0, 1e-9);
    EXPECT_NEAR(fidelity(ket0(), plus()), 0.5, 1e-12);
    EXPECT_NEAR(fidelity(maximally_mixed(2), ket0()), 0.5, 1e-12);
}

TEST(Fidelity, SymmetricAndPureOverlap) {
    Rng rng(3);
    for (int t = 0; t < 30; ++t) {
        const Eigen::Index d = 2 + t % 3;
        const DensityMatrix a = random_density_matrix(d, rng);
        const DensityMatrix b = random_density_matrix(d, rng);
        EXPECT_NEAR(fidelity(a, b), fidelity(b, a), 1e-9);
        const CVector u = random_unit_vector(d, rng);
        const CVector v = random_unit_vector(d, rng);
        EXPECT_NEAR(fidelity(DensityMatrix(u * u.adjoint()), DensityMatrix(v * v.adjoint())),
                    std::norm(u.dot(v)), 1e-9);
    }
}

TEST(TraceNorm, Examples) {
    EXPECT_EQ(trace_norm(CMatrix::Zero(3, 3)), 0.0);
    Rng rng(4);
    EXPECT_NEAR(trace_norm(random_density_matrix(4, rng).matrix()), 1.0, 1e-12);
    EXPECT_NEAR(trace_norm(ket0().matrix() - ket1().matrix()), 2.0, 1e-14);
    const CMatrix g = complex_ginibre(4, 4, rng);
    const CMatrix h = g + g.adjoint();
    EXPECT_NEAR(trace_norm(h), oracle::trace_norm(h), 1e-10);
}

TEST(Helstrom, Examples) {
    EXPECT_EQ(helstrom_error(ket0(), ket1(), 1), 0.0);
    Rng rng(5);
    const DensityMatrix r = random_density_matrix(2, rng);
    for (int n = 1; n <= 4; ++n) EXPECT_NEAR(helstrom_error(r, r, n), 0.5, 1e-12);
    EXPECT_NEAR(helstrom_error(ket0(), plus(), 1), (1 - 1 / std::numbers::sqrt2) / 2, 1e-12);
}

TEST(Helstrom, RoutesAgreeWithSvdOracle) {
    Rng rng(6);
    for (int t = 0; t < 12; ++t) {
        const Eigen::Index d = 2 + t % 2;
        const DensityMatrix a = random_density_matrix(d, rng, 1 + t % 2);
        const DensityMatrix b = random_density_matrix(d, rng, 1 + (t / 2) % 2);
        for (int n = 1; n <= 4; ++n) {
            const double dense = helstrom_error(a, b, n, HelstromRoute::dense);
            const double low = helstrom_error(a, b, n, HelstromRoute::low_rank);
            const CMatrix diff = kron_power(a.matrix(), n) - kron_power(b.matrix(), n);
            const double expected = 0.5 * (1.0 - 0.5 * oracle::trace_norm(diff));
            EXPECT_NEAR(dense, expected, 1e-10);
            EXPECT_NEAR(low, expected, 1e-10);
        }
    }
}

TEST(Helstrom, MonotoneInCopiesAndBoundedByChernoff) {
    Rng rng(7);
    for (int t = 0; t < 10; ++t) {
        const DensityMatrix a = random_density_matrix(2, rng);
        const DensityMatrix b = random_density_matrix(2, rng);
        const double q = chernoff_overlap(a, b).q;
        double previous = 0.5;
        for (int n = 1; n <= 6; ++n) {
            const double p = helstrom_error(a, b, n);
            EXPECT_LE(p, previous + 1e-10);
            EXPECT_LE(p, 0.5 * std::pow(q, n) + 1e-10);
            previous = p;
        }
    }
}

TEST(Helstrom, CapacityGuard) {
    EXPECT_THROW(helstrom_error(maximally_mixed(2), maximally_mixed(2), 13), CapacityError);
    EXPECT_NO_THROW(helstrom_error(ket0(), plus(), 12));
    EXPECT_THROW(helstrom_error(maximally_mixed(3), maximally_mixed(3), 8), CapacityError);
    EXPECT_THROW(helstrom_error(ket0(), plus(), 0), RangeError);
}

TEST(DecayCheck, OrthogonalAndIdentical) {
    const auto orth = chernoff_decay_check(ket0(), ket1(), 4);
    for (const auto& row : orth.rows) {
        EXPECT_EQ(row.p_err, 0.0);
        EXPECT_TRUE(std::isinf(row.xi));
    }
    const auto same = chernoff_decay_check(plus(), plus(), 4);
    for (const auto& row : same.rows) {
        EXPECT_NEAR(row.p_err, 0.5, 1e-12);
        EXPECT_NEAR(row.xi, 0.0, 1e-10);
    }
    EXPECT_TRUE(orth.bound_holds && same.bound_holds);
}

TEST(DecayCheck, ExponentsApproachLn2FromAbove) {
    const auto table = chernoff_decay_check(ket0(), plus(), 6);
    EXPECT_NEAR(table.chernoff.q, 0.5, 1e-9);
    EXPECT_TRUE(table.bound_holds);
    double previous = std::numeric_limits<double>::infinity();
    for (const auto& row : table.rows) {
        EXPECT_GT(row.exponent, std::log(2.0));
        EXPECT_LT(row.exponent, previous);
        previous = row.exponent;
    }
    EXPECT_LT(table.rows.back().exponent - std::log(2.0), table.rows.front().exponent - std::log(2.0));
}
