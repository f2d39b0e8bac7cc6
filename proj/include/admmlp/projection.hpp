#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <span>
#include <stdexcept>
#include <vector>

namespace admmlp {

inline double project_interval(double x, double lo, double hi) {
    if (lo > hi) throw std::invalid_argument("project_interval: lo > hi");
    return std::min(hi, std::max(lo, x));
}

/// Componentwise clip onto [-1/2, 1/2]^d.
inline std::vector<double> project_hypercube(std::span<const double> v) {
    std::vector<double> w(v.begin(), v.end());
    for (double& x : w) x = std::min(0.5, std::max(-0.5, x));
    return w;
}

using FacetIndicator = std::vector<std::uint8_t>;

/// Closest odd-weight hypercube vertex: f_i = 1 iff v_i >= 0; if the weight
/// comes out even, flip the coordinate of minimum |v_i| (lowest index wins
/// ties).
inline FacetIndicator identify_facet(std::span<const double> v) {
    std::size_t d = v.size();
    if (d < 2) throw std::invalid_argument("identify_facet: dimension must be >= 2");
    FacetIndicator f(d);
    int weight = 0;
    for (std::size_t i = 0; i < d; ++i) {
        f[i] = v[i] >= 0.0 ? 1 : 0;
        weight += f[i];
    }
    if (weight % 2 == 0) {
        std::size_t best = 0;
        for (std::size_t i = 1; i < d; ++i)
            if (std::abs(v[i]) < std::abs(v[best])) best = i;
        f[best] ^= 1;
    }
    return f;
}

/// Negates the coordinates selected by f; self-inverting.
inline std::vector<double> similarity_transform(std::span<const double> v,
                                                const FacetIndicator& f) {
    if (v.size() != f.size())
        throw std::invalid_argument("similarity_transform: length mismatch");
    std::vector<double> w(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) w[i] = f[i] ? -v[i] : v[i];
    return w;
}

namespace detail {

/// Shift magnitude for the centered simplex: sort descending, u_i =
/// (prefix_i - 1) / i, keep u at the largest i with rho_i > u_i.
inline double simplex_shift(std::span<const double> v, std::vector<double>& rho) {
    rho.assign(v.begin(), v.end());
    std::stable_sort(rho.begin(), rho.end(), std::greater<double>());
    double prefix = 0.0;
    double shift = 0.0;
    for (std::size_t i = 0; i < rho.size(); ++i) {
        prefix += rho[i];
        double u = (prefix - 1.0) / static_cast<double>(i + 1);
        if (rho[i] > u) shift = u;
    }
    return shift;
}

}  // namespace detail

/// Euclidean projection onto {w : 1'w = 1 - d/2, w_i >= -1/2}.
inline std::vector<double> project_centered_simplex(std::span<const double> v) {
    if (v.empty()) throw std::invalid_argument("project_centered_simplex: empty input");
    std::vector<double> rho;
    double shift = detail::simplex_shift(v, rho);
    std::vector<double> w(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) w[i] = std::max(v[i] - shift - 0.5, -0.5);
    return w;
}

/// Projection onto the plain probability simplex {p : 1'p = 1, p >= 0}.
inline std::vector<double> project_simplex_noncentered(std::span<const double> v) {
    if (v.empty()) throw std::invalid_argument("project_simplex_noncentered: empty input");
    std::vector<double> rho;
    double shift = detail::simplex_shift(v, rho);
    std::vector<double> w(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) w[i] = std::max(v[i] - shift, 0.0);
    return w;
}

/// True iff the hypercube projection of the transformed input lies on the
/// polytope side of the identified cut; boundary counts as inside.
inline bool membership_test(std::span<const double> v_tilde) {
    double sum = 0.0;
    for (double x : v_tilde) sum += std::min(0.5, std::max(-0.5, x));
    return sum >= 1.0 - static_cast<double>(v_tilde.size()) / 2.0;
}

/// Reusable projector onto the centered parity polytope PP_d - 1/2; holds
/// scratch so per-check calls in the decode loop do not allocate.
class ParityPolytopeProjector {
public:
    void project(std::span<const double> v, std::span<double> out) {
        std::size_t d = v.size();
        if (d < 2) throw std::invalid_argument("project_parity_polytope: d must be >= 2");
        f_.resize(d);
        int weight = 0;
        for (std::size_t i = 0; i < d; ++i) {
            f_[i] = v[i] >= 0.0 ? 1 : 0;
            weight += f_[i];
        }
        if (weight % 2 == 0) {
            std::size_t best = 0;
            for (std::size_t i = 1; i < d; ++i)
                if (std::abs(v[i]) < std::abs(v[best])) best = i;
            f_[best] ^= 1;
        }
        vt_.resize(d);
        double clip_sum = 0.0;
        for (std::size_t i = 0; i < d; ++i) {
            vt_[i] = f_[i] ? -v[i] : v[i];
            clip_sum += std::min(0.5, std::max(-0.5, vt_[i]));
        }
        if (clip_sum >= 1.0 - static_cast<double>(d) / 2.0) {
            for (std::size_t i = 0; i < d; ++i) out[i] = std::min(0.5, std::max(-0.5, v[i]));
            return;
        }
        double shift = detail::simplex_shift(vt_, rho_);
        for (std::size_t i = 0; i < d; ++i) {
            double u = std::max(vt_[i] - shift - 0.5, -0.5);
            out[i] = f_[i] ? -u : u;
        }
    }

private:
    FacetIndicator f_;
    std::vector<double> vt_;
    std::vector<double> rho_;
};

/// Exact Euclidean projection onto the centered parity polytope PP_d - 1/2.
inline std::vector<double> project_parity_polytope(std::span<const double> v) {
    ParityPolytopeProjector proj;
    std::vector<double> out(v.size());
    proj.project(v, out);
    return out;
}

/// Projection onto the non-centered parity polytope PP_d, computed natively
/// (reflection through p_i >= 1/2 plus plain simplex projection).
inline std::vector<double> project_parity_polytope_noncentered(std::span<const double> p) {
    std::size_t d = p.size();
    if (d < 2)
        throw std::invalid_argument("project_parity_polytope_noncentered: d must be >= 2");
    FacetIndicator f(d);
    int weight = 0;
    for (std::size_t i = 0; i < d; ++i) {
        f[i] = p[i] >= 0.5 ? 1 : 0;
        weight += f[i];
    }
    if (weight % 2 == 0) {
        std::size_t best = 0;
        for (std::size_t i = 1; i < d; ++i)
            if (std::abs(p[i] - 0.5) < std::abs(p[best] - 0.5)) best = i;
        f[best] ^= 1;
    }
    std::vector<double> pt(d);
    for (std::size_t i = 0; i < d; ++i) pt[i] = f[i] ? 1.0 - p[i] : p[i];
    double clip_sum = 0.0;
    for (double x : pt) clip_sum += std::min(1.0, std::max(0.0, x));
    if (clip_sum >= 1.0) {
        std::vector<double> w(p.begin(), p.end());
        for (double& x : w) x = std::min(1.0, std::max(0.0, x));
        return w;
    }
    std::vector<double> ut = project_simplex_noncentered(pt);
    for (std::size_t i = 0; i < d; ++i)
        if (f[i]) ut[i] = 1.0 - ut[i];
    return ut;
}

}  // namespace admmlp
