#pragma once

// Independent test oracles for the projection primitives. These live in the
// library so acceptance runs are self-contained, but nothing in the decoding
// path depends on them.

#include <bit>
#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "admmlp/rng.hpp"

namespace admmlp::oracle {

/// All even-weight vertices of {0,1}^d as bit masks.
inline std::vector<std::uint32_t> even_weight_vertices(int d) {
    if (d < 2 || d > 20) throw std::invalid_argument("even_weight_vertices: d out of range");
    std::vector<std::uint32_t> out;
    out.reserve(std::size_t(1) << (d - 1));
    for (std::uint32_t mask = 0; mask < (std::uint32_t(1) << d); ++mask)
        if (std::popcount(mask) % 2 == 0) out.push_back(mask);
    return out;
}

/// Checks every Eq-style cut of the non-centered parity polytope on p:
/// sum_{i in S} p_i - sum_{i notin S} p_i <= |S| - 1 for all odd S, plus the
/// box. `w` is in centered coordinates; tolerance is additive.
inline bool satisfies_parity_cuts(std::span<const double> w, double tol) {
    int d = static_cast<int>(w.size());
    std::vector<double> p(d);
    for (int i = 0; i < d; ++i) {
        p[i] = w[i] + 0.5;
        if (p[i] < -tol || p[i] > 1.0 + tol) return false;
    }
    for (std::uint32_t mask = 0; mask < (std::uint32_t(1) << d); ++mask) {
        int card = std::popcount(mask);
        if (card % 2 == 0) continue;
        double lhs = 0.0;
        for (int i = 0; i < d; ++i) lhs += ((mask >> i) & 1) ? p[i] : -p[i];
        if (lhs > card - 1.0 + tol) return false;
    }
    return true;
}

/// Exhaustive active-set solver for projection onto the centered probability
/// simplex: try every clip-set size over the sorted components and return the
/// unique candidate passing feasibility and the KKT sign conditions.
inline std::vector<double> project_simplex(std::span<const double> v) {
    int d = static_cast<int>(v.size());
    if (d < 1 || d > 64) throw std::invalid_argument("oracle simplex: d out of range");
    std::vector<int> order(d);
    for (int i = 0; i < d; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](int a, int b) { return v[a] > v[b]; });

    // kappa components (the smallest) clip to -1/2; the rest shift by tau.
    for (int kappa = 0; kappa < d; ++kappa) {
        int active = d - kappa;
        double sum_active = 0.0;
        for (int k = 0; k < active; ++k) sum_active += v[order[k]];
        double tau = (sum_active - 1.0) / static_cast<double>(active) + 0.5;
        // Feasibility of active components and KKT sign of clipped ones.
        bool ok = true;
        for (int k = 0; k < active && ok; ++k)
            if (v[order[k]] - tau < -0.5 - 1e-12) ok = false;
        for (int k = active; k < d && ok; ++k)
            if (v[order[k]] - tau > -0.5 + 1e-12) ok = false;
        if (!ok) continue;
        std::vector<double> w(d);
        for (int k = 0; k < active; ++k) w[order[k]] = v[order[k]] - tau;
        for (int k = active; k < d; ++k) w[order[k]] = -0.5;
        return w;
    }
    throw std::runtime_error("oracle simplex: no feasible active set (unreachable)");
}

/// Frank-Wolfe minimization of ||y - v||^2 over the convex hull of the
/// centered even-weight vertices, with exact line search, away steps over the
/// explicit weight vector, and a duality-gap stop. `iters` caps the step
/// count; the gap certificate usually ends the run far earlier.
inline std::vector<double> project_parity_polytope(std::span<const double> v, int iters,
                                                   double gap_tol = 1e-14) {
    int d = static_cast<int>(v.size());
    if (d < 2 || d > 12)
        throw std::invalid_argument("oracle parity polytope: d out of range (vertex enumeration)");
    auto verts = even_weight_vertices(d);
    const int nv = static_cast<int>(verts.size());
    auto coord = [&](int vi, int i) {
        return (((verts[vi] >> i) & 1) ? 1.0 : 0.0) - 0.5;
    };

    std::vector<double> lambda(nv, 0.0);
    lambda[0] = 1.0;
    std::vector<double> y(d);
    for (int i = 0; i < d; ++i) y[i] = coord(0, i);

    std::vector<double> grad(d);
    for (int t = 0; t < iters; ++t) {
        for (int i = 0; i < d; ++i) grad[i] = 2.0 * (y[i] - v[i]);

        // Linear minimization (toward vertex) and maximization (away vertex
        // among those carrying weight) by direct enumeration.
        int fw = 0, away = -1;
        double fw_score = 0.0, away_score = 0.0;
        for (int k = 0; k < nv; ++k) {
            double score = 0.0;
            for (int i = 0; i < d; ++i) score += grad[i] * coord(k, i);
            if (k == 0 || score < fw_score) {
                fw_score = score;
                fw = k;
            }
            if (lambda[k] > 0.0 && (away < 0 || score > away_score)) {
                away_score = score;
                away = k;
            }
        }

        double y_score = 0.0;
        for (int i = 0; i < d; ++i) y_score += grad[i] * y[i];
        if (y_score - fw_score <= gap_tol) break;  // certified optimal

        bool use_away = (away >= 0) && (y_score - fw_score < away_score - y_score);
        std::vector<double> dir(d);
        double step_max;
        if (use_away) {
            for (int i = 0; i < d; ++i) dir[i] = y[i] - coord(away, i);
            step_max = lambda[away] / (1.0 - lambda[away]);
            if (!(step_max > 0.0) || !std::isfinite(step_max)) step_max = 0.0;
        } else {
            for (int i = 0; i < d; ++i) dir[i] = coord(fw, i) - y[i];
            step_max = 1.0;
        }
        double denom = 0.0, numer = 0.0;
        for (int i = 0; i < d; ++i) {
            denom += dir[i] * dir[i];
            numer += (v[i] - y[i]) * dir[i];
        }
        if (denom <= 0.0) break;
        double step = std::min(std::max(numer / denom, 0.0), step_max);
        if (step <= 0.0) break;

        if (use_away) {
            double scale = 1.0 + step;
            for (int k = 0; k < nv; ++k) lambda[k] *= scale;
            lambda[away] -= step;
            if (lambda[away] < 1e-15) lambda[away] = 0.0;
        } else {
            for (int k = 0; k < nv; ++k) lambda[k] *= 1.0 - step;
            lambda[fw] += step;
        }
        for (int i = 0; i < d; ++i) y[i] += step * dir[i];
    }
    return y;
}

/// Random point of the centered parity polytope: a random convex combination
/// of even-weight vertices.
inline std::vector<double> random_polytope_point(int d, Rng& rng) {
    auto verts = even_weight_vertices(d);
    std::vector<double> weights(verts.size());
    double total = 0.0;
    for (auto& w : weights) {
        w = -std::log(1.0 - rng.uniform());  // exponential => Dirichlet(1,...,1)
        total += w;
    }
    std::vector<double> y(d, 0.0);
    for (std::size_t k = 0; k < verts.size(); ++k) {
        double wk = weights[k] / total;
        for (int i = 0; i < d; ++i)
            y[i] += wk * ((((verts[k] >> i) & 1) ? 1.0 : 0.0) - 0.5);
    }
    return y;
}

}  // namespace admmlp::oracle
