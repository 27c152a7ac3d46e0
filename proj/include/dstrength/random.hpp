#pragma once

// Seeded samplers. The caller owns the generator; nothing here keeps state.

#include <random>

#include "dstrength/core.hpp"

namespace dstrength {

using Rng = std::mt19937_64;

inline CMatrix complex_ginibre(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
    std::normal_distribution<double> normal(0.0, 1.0 / std::numbers::sqrt2);
    CMatrix z(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j)
        for (Eigen::Index i = 0; i < rows; ++i) z(i, j) = Complex(normal(rng), normal(rng));
    return z;
}

/// Haar-distributed unitary: QR of a complex Gaussian matrix with the phases of
/// diag(R) folded back into Q.
inline CMatrix haar_random_unitary(Eigen::Index d, Rng& rng) {
    if (d < 1) throw RangeError("haar_random_unitary needs d >= 1");
    const CMatrix z = complex_ginibre(d, d, rng);
    Eigen::HouseholderQR<CMatrix> qr(z);
    CMatrix q = qr.householderQ() * identity(d);
    const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index k = 0; k < d; ++k) {
        const double mag = std::abs(r(k, k));
        if (mag > 0.0) q.col(k) *= r(k, k) / mag;
    }
    return q;
}

/// d_out x d_in isometry (V^dagger V = I), the first columns of a Haar unitary.
inline CMatrix haar_random_isometry(Eigen::Index d_out, Eigen::Index d_in, Rng& rng) {
    if (d_out < d_in) throw RangeError("isometry needs d_out >= d_in");
    return haar_random_unitary(d_out, rng).leftCols(d_in);
}

inline CVector random_unit_vector(Eigen::Index d, Rng& rng) {
    const CVector v = complex_ginibre(d, 1, rng).col(0);
    return v / v.norm();
}

inline PureState random_pure_state(Eigen::Index dim_a, Eigen::Index dim_b, Rng& rng) {
    return PureState::normalized(random_unit_vector(dim_a * dim_b, rng), dim_a, dim_b);
}

/// G G^dagger / Tr with G a d x rank Ginibre matrix (rank = d gives full support almost surely).
inline DensityMatrix random_density_matrix(Eigen::Index d, Rng& rng, Eigen::Index rank = 0) {
    if (rank <= 0) rank = d;
    const CMatrix g = complex_ginibre(d, rank, rng);
    CMatrix m = g * g.adjoint();
    m /= m.trace().real();
    return DensityMatrix(m);
}

inline BipartiteState random_bipartite_state(Eigen::Index dim_a, Eigen::Index dim_b, Rng& rng,
                                             Eigen::Index rank = 0) {
    return BipartiteState(random_density_matrix(dim_a * dim_b, rng, rank), dim_a, dim_b);
}

/// Uniform on the unit sphere.
inline BlochVector random_bloch(Rng& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    Eigen::Vector3d v;
    do {
        v = {normal(rng), normal(rng), normal(rng)};
    } while (v.norm() < 1e-12);
    return BlochVector::normalized(v);
}

/// Uniform on the probability simplex (normalized exponentials), all entries > 0.
inline std::vector<double> random_probabilities(std::size_t n, Rng& rng) {
    std::exponential_distribution<double> expo(1.0);
    std::vector<double> p(n);
    double total = 0.0;
    for (double& x : p) {
        x = expo(rng) + 1e-12;
        total += x;
    }
    for (double& x : p) x /= total;
    return p;
}

/// Random rotation in SO(3) (QR of a Gaussian matrix with sign fix and det = +1).
inline Eigen::Matrix3d random_rotation(Rng& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    Eigen::Matrix3d g;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) g(i, j) = normal(rng);
    Eigen::HouseholderQR<Eigen::Matrix3d> qr(g);
    Eigen::Matrix3d q = qr.householderQ();
    const Eigen::Matrix3d r = qr.matrixQR();
    for (int k = 0; k < 3; ++k)
        if (r(k, k) < 0) q.col(k) *= -1.0;
    if (q.determinant() < 0) q.col(0) *= -1.0;
    return q;
}

}  // namespace dstrength
