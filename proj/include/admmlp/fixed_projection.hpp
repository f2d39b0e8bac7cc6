#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

#include "admmlp/qformat.hpp"

namespace admmlp {

/// Fixed-point widths of every datapath signal, defaulted to the profile the
/// bit-accurate decoder uses. LLRs, messages and check states share fraction
/// bits; estimates and replicas carry only fraction bits since they live in
/// [-1/2, 1/2].
struct FixedProfile {
    QFormat llr{0, 7};        // channel LLR gamma_i
    QFormat t{4, 7};          // variable-node adder tree output
    QFormat s{5, 7};          // penalized sum
    QFormat estimate{0, 9};   // x_i and variable-to-check messages
    QFormat message{2, 7};    // check-to-variable messages and check states
    QFormat check_sum{3, 9};  // v_j = x + lambda
    QFormat replica{0, 12};   // z_j, projection output
    QFormat transformed{4, 9};   // v-tilde, simplex input and rho
    QFormat simplex_out{0, 13};  // u-tilde, simplex output

    void validate() const {
        // The similarity transform is a negate mux, not an arithmetic stage:
        // v and v-tilde must share fraction bits, as must LLRs and messages
        // (the adder tree aligns by zero-extension only).
        if (transformed.frac_bits != check_sum.frac_bits)
            throw std::invalid_argument("FixedProfile: v and v-tilde fraction bits differ");
        if (llr.frac_bits != message.frac_bits)
            throw std::invalid_argument("FixedProfile: LLR and message fraction bits differ");
    }
};

namespace fixed {

/// round(2^24 / k) as a raw Q0.24 mantissa; powers of two come out exact, so
/// the multiply path coincides with a bit shift for those indices.
inline std::int64_t index_reciprocal_raw(int k) {
    std::int64_t n = std::int64_t(1) << 24;
    return (2 * n + k) / (2 * k);
}

/// Bit-accurate projections on raw mantissas; holds scratch so per-check
/// calls do not allocate.
class Projector {
public:
    explicit Projector(const FixedProfile& prof = FixedProfile{}) : prof_(prof) {
        prof_.validate();
    }

    const FixedProfile& profile() const { return prof_; }

    /// Centered simplex projection. Input raw at the transformed format,
    /// output in simplex_out. Intermediates are exact except the Q0.24 index
    /// reciprocals and the single final rounding.
    void project_simplex(std::span<const std::int64_t> v, std::span<std::int64_t> out) {
        int d = static_cast<int>(v.size());
        int in_frac = prof_.transformed.frac_bits;
        rho_.assign(v.begin(), v.end());
        std::stable_sort(rho_.begin(), rho_.end(), std::greater<std::int64_t>());

        // Prefix sums fold in the -1 term; shift candidates live at
        // in_frac + 24 fraction bits after the reciprocal multiply.
        std::int64_t one = std::int64_t(1) << in_frac;
        std::int64_t prefix = -one;
        std::int64_t shift = 0;
        for (int i = 0; i < d; ++i) {
            prefix += rho_[i];
            std::int64_t u = prefix * index_reciprocal_raw(i + 1);
            if ((rho_[i] << 24) > u) shift = u;
        }
        std::int64_t half = std::int64_t(1) << (in_frac + 23);
        for (int i = 0; i < d; ++i) {
            std::int64_t w = (v[i] << 24) - shift - half;
            w = std::max(w, -half);
            out[i] = resize_raw(w, in_frac + 24, prof_.simplex_out);
        }
    }

    /// Parity polytope projection: facet identification on sign bits,
    /// similarity transform, membership test against the identified cut, then
    /// either the exact hypercube clip or the transformed simplex projection.
    /// Input raw at check_sum format, output raw in replica format.
    void project_parity_polytope(std::span<const std::int64_t> v,
                                 std::span<std::int64_t> out) {
        int d = static_cast<int>(v.size());
        if (d < 2) throw std::invalid_argument("fixed projection: d must be >= 2");
        int in_frac = prof_.check_sum.frac_bits;
        std::int64_t half_in = std::int64_t(1) << (in_frac - 1);

        f_.resize(d);
        int weight = 0;
        for (int i = 0; i < d; ++i) {
            f_[i] = v[i] >= 0 ? 1 : 0;
            weight += f_[i];
        }
        if (weight % 2 == 0) {
            int best = 0;
            for (int i = 1; i < d; ++i)
                if (std::abs(v[i]) < std::abs(v[best])) best = i;
            f_[best] ^= 1;
        }

        vt_.resize(d);
        std::int64_t msum = 0;
        for (int i = 0; i < d; ++i) {
            vt_[i] = f_[i] ? -v[i] : v[i];
            msum += std::clamp(vt_[i], -half_in, half_in);
        }
        bool member = msum >= (2 - d) * half_in;  // 1 - d/2 at in_frac

        if (member) {
            int ext = prof_.replica.frac_bits - in_frac;
            for (int i = 0; i < d; ++i)
                out[i] = std::clamp(v[i], -half_in, half_in) << ext;
            return;
        }

        ut_.resize(d);
        project_simplex(vt_, ut_);
        for (int i = 0; i < d; ++i) {
            std::int64_t u = f_[i] ? -ut_[i] : ut_[i];
            out[i] = resize_raw(u, prof_.simplex_out.frac_bits, prof_.replica);
        }
    }

private:
    FixedProfile prof_;
    std::vector<std::uint8_t> f_;
    std::vector<std::int64_t> vt_, ut_, rho_;
};

}  // namespace fixed
}  // namespace admmlp
