#pragma once

// Derivative-free minimizers: golden-section on an interval and Nelder-Mead in R^n.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "dstrength/errors.hpp"

namespace dstrength {

struct ScalarMinimum {
    double x;
    double value;
};

/// Golden-section search on [a, b] to a bracket width of tol. f is assumed unimodal.
template <typename F>
ScalarMinimum golden_section(F&& f, double a, double b, double tol = 1e-10) {
    constexpr double inv_phi = 0.6180339887498949;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c);
    double fd = f(d);
    while (b - a > tol) {
        if (fc <= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    const double x = 0.5 * (a + b);
    const double fx = f(x);
    ScalarMinimum best{x, fx};
    if (fc < best.value) best = {c, fc};
    if (fd < best.value) best = {d, fd};
    return best;
}

/// Minimum of a convex function on [0, 1]: uniform grid seed, golden-section inside the
/// bracket around the best grid point, endpoints always evaluated.
template <typename F>
ScalarMinimum minimize_unit_interval(F&& f, int grid_points = 21, double tol = 1e-10) {
    if (grid_points < 3) throw RangeError("minimize_unit_interval needs at least 3 grid points");
    const int last = grid_points - 1;
    std::vector<double> values(static_cast<std::size_t>(grid_points));
    int best = 0;
    for (int k = 0; k <= last; ++k) {
        values[static_cast<std::size_t>(k)] = f(static_cast<double>(k) / last);
        if (values[static_cast<std::size_t>(k)] < values[static_cast<std::size_t>(best)]) best = k;
    }
    ScalarMinimum result{static_cast<double>(best) / last, values[static_cast<std::size_t>(best)]};
    const double lo = static_cast<double>(std::max(best - 1, 0)) / last;
    const double hi = static_cast<double>(std::min(best + 1, last)) / last;
    const ScalarMinimum refined = golden_section(f, lo, hi, tol);
    if (refined.value < result.value) result = refined;
    return result;
}

struct NelderMeadOptions {
    double initial_step = 0.5;
    /// Converged when max f - min f over the simplex falls below this.
    double f_tol = 1e-8;
    int max_evaluations = 20000;
    /// Re-seed a fresh simplex at the optimum this many times (guards against collapse).
    int polish_rounds = 2;
};

struct NelderMeadResult {
    Eigen::VectorXd x;
    double value;
    int evaluations;
    bool converged;
};

namespace detail {

template <typename F>
NelderMeadResult nelder_mead_once(F& f, const Eigen::VectorXd& x0, double step, double f_tol,
                                  int max_evaluations) {
    const Eigen::Index n = x0.size();
    std::vector<Eigen::VectorXd> simplex(static_cast<std::size_t>(n + 1), x0);
    std::vector<double> fv(static_cast<std::size_t>(n + 1));
    for (Eigen::Index i = 0; i < n; ++i) simplex[static_cast<std::size_t>(i + 1)](i) += step;
    int evals = 0;
    for (std::size_t i = 0; i <= static_cast<std::size_t>(n); ++i) {
        fv[i] = f(simplex[i]);
        ++evals;
    }
    std::vector<std::size_t> order(simplex.size());
    bool converged = false;
    while (evals < max_evaluations) {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
        const std::size_t best = order.front();
        const std::size_t worst = order.back();
        const std::size_t second = order[order.size() - 2];
        if (fv[worst] - fv[best] <= f_tol) {
            converged = true;
            break;
        }
        Eigen::VectorXd centroid = Eigen::VectorXd::Zero(n);
        for (std::size_t i = 0; i < order.size() - 1; ++i) centroid += simplex[order[i]];
        centroid /= static_cast<double>(n);

        const Eigen::VectorXd reflected = centroid + (centroid - simplex[worst]);
        const double fr = f(reflected);
        ++evals;
        if (fr < fv[best]) {
            const Eigen::VectorXd expanded = centroid + 2.0 * (centroid - simplex[worst]);
            const double fe = f(expanded);
            ++evals;
            if (fe < fr) {
                simplex[worst] = expanded;
                fv[worst] = fe;
            } else {
                simplex[worst] = reflected;
                fv[worst] = fr;
            }
            continue;
        }
        if (fr < fv[second]) {
            simplex[worst] = reflected;
            fv[worst] = fr;
            continue;
        }
        const bool outside = fr < fv[worst];
        const Eigen::VectorXd contracted = outside ? Eigen::VectorXd(centroid + 0.5 * (reflected - centroid))
                                                   : Eigen::VectorXd(centroid + 0.5 * (simplex[worst] - centroid));
        const double fc = f(contracted);
        ++evals;
        if (fc < (outside ? fr : fv[worst])) {
            simplex[worst] = contracted;
            fv[worst] = fc;
            continue;
        }
        for (std::size_t i = 0; i < simplex.size(); ++i) {
            if (i == best) continue;
            simplex[i] = simplex[best] + 0.5 * (simplex[i] - simplex[best]);
            fv[i] = f(simplex[i]);
            ++evals;
        }
    }
    const auto it = std::min_element(fv.begin(), fv.end());
    const auto idx = static_cast<std::size_t>(it - fv.begin());
    return {simplex[idx], *it, evals, converged};
}

}  // namespace detail

/// Nelder-Mead minimization of f: R^n -> R from x0.
template <typename F>
NelderMeadResult nelder_mead(F&& f, const Eigen::VectorXd& x0, const NelderMeadOptions& opts = {}) {
    if (x0.size() == 0) throw RangeError("nelder_mead needs at least one coordinate");
    NelderMeadResult result =
        detail::nelder_mead_once(f, x0, opts.initial_step, opts.f_tol, opts.max_evaluations);
    double step = opts.initial_step;
    for (int round = 0; round < opts.polish_rounds; ++round) {
        step *= 0.1;
        const int budget = opts.max_evaluations - result.evaluations;
        if (budget <= 0) break;
        NelderMeadResult next = detail::nelder_mead_once(f, result.x, step, opts.f_tol, budget);
        const double gain = result.value - next.value;
        next.evaluations += result.evaluations;
        if (next.value <= result.value) result = next;
        else result.evaluations = next.evaluations;
        if (gain <= opts.f_tol) break;
    }
    return result;
}

}  // namespace dstrength
