#pragma once

#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

#include "admmlp/code.hpp"
#include "admmlp/decoder.hpp"

namespace admmlp {

enum class BpVariant { sum_product, min_sum };

struct BpConfig {
    int max_iters = 60;
    BpVariant variant = BpVariant::sum_product;
    bool early_termination = true;

    void validate() const {
        if (max_iters < 1) throw std::invalid_argument("BpConfig: max_iters must be >= 1");
    }
};

namespace detail {

constexpr double kLlrClip = 50.0;

inline double clip_llr(double x) { return std::min(kLlrClip, std::max(-kLlrClip, x)); }

}  // namespace detail

/// Sum-product check rule: out_k = 2 atanh(prod_{j != k} tanh(in_j / 2)).
inline void bp_check_messages(std::span<const double> in, std::span<double> out) {
    std::size_t d = in.size();
    double total = 1.0;
    bool zero = false;
    std::size_t zero_at = 0;
    for (std::size_t k = 0; k < d; ++k) {
        double t = std::tanh(in[k] * 0.5);
        if (t == 0.0) {
            if (zero) {  // two zero inputs: every extrinsic product is zero
                for (std::size_t j = 0; j < d; ++j) out[j] = 0.0;
                return;
            }
            zero = true;
            zero_at = k;
        } else {
            total *= t;
        }
    }
    for (std::size_t k = 0; k < d; ++k) {
        double p;
        if (zero)
            p = (k == zero_at) ? total : 0.0;
        else
            p = total / std::tanh(in[k] * 0.5);
        p = std::min(1.0, std::max(-1.0, p));
        out[k] = detail::clip_llr(2.0 * std::atanh(p));
    }
}

/// Min-sum check rule: sign product times the minimum magnitude of the other
/// inputs.
inline void minsum_check_messages(std::span<const double> in, std::span<double> out) {
    std::size_t d = in.size();
    int neg = 0;
    double min1 = std::numeric_limits<double>::infinity();
    double min2 = min1;
    std::size_t min_at = 0;
    for (std::size_t k = 0; k < d; ++k) {
        if (in[k] < 0.0) ++neg;
        double a = std::abs(in[k]);
        if (a < min1) {
            min2 = min1;
            min1 = a;
            min_at = k;
        } else if (a < min2) {
            min2 = a;
        }
    }
    for (std::size_t k = 0; k < d; ++k) {
        double mag = (k == min_at) ? min2 : min1;
        int s = neg - (in[k] < 0.0 ? 1 : 0);
        out[k] = detail::clip_llr((s % 2 == 0) ? mag : -mag);
    }
}

/// Flooding-schedule LLR-domain belief propagation.
class BpDecoder {
public:
    BpDecoder(const ParityCheckMatrix& H, const BpConfig& cfg) : H_(H), cfg_(cfg) {
        cfg_.validate();
        check_offset_.push_back(0);
        for (int j = 0; j < H_.m; ++j) {
            for (int i : H_.check_nbrs[j]) edge_var_.push_back(i);
            check_offset_.push_back(static_cast<int>(edge_var_.size()));
        }
        var_edges_.resize(H_.n);
        for (int j = 0; j < H_.m; ++j)
            for (int e = check_offset_[j]; e < check_offset_[j + 1]; ++e)
                var_edges_[edge_var_[e]].push_back(e);
        v2c_.resize(edge_var_.size());
        c2v_.resize(edge_var_.size());
        in_.resize(H_.max_check_degree());
        out_.resize(H_.max_check_degree());
        posterior_.resize(H_.n);
        bits_.resize(H_.n);
    }

    DecodeResult decode(std::span<const double> gamma) {
        if (static_cast<int>(gamma.size()) != H_.n)
            throw std::invalid_argument("bp_decode: LLR length mismatch");
        for (int i = 0; i < H_.n; ++i)
            for (int e : var_edges_[i]) v2c_[e] = detail::clip_llr(gamma[i]);
        std::fill(c2v_.begin(), c2v_.end(), 0.0);

        int iters = 0;
        for (int iter = 1; iter <= cfg_.max_iters; ++iter) {
            iters = iter;
            for (int j = 0; j < H_.m; ++j) {
                int off = check_offset_[j];
                int d = check_offset_[j + 1] - off;
                for (int k = 0; k < d; ++k) in_[k] = v2c_[off + k];
                std::span<const double> in(in_.data(), static_cast<std::size_t>(d));
                std::span<double> out(out_.data(), static_cast<std::size_t>(d));
                if (cfg_.variant == BpVariant::sum_product)
                    bp_check_messages(in, out);
                else
                    minsum_check_messages(in, out);
                for (int k = 0; k < d; ++k) c2v_[off + k] = out_[k];
            }
            for (int i = 0; i < H_.n; ++i) {
                double total = gamma[i];
                for (int e : var_edges_[i]) total += c2v_[e];
                posterior_[i] = total;
                bits_[i] = total < 0.0 ? 1 : 0;
                for (int e : var_edges_[i])
                    v2c_[e] = detail::clip_llr(total - c2v_[e]);
            }
            if (cfg_.early_termination && is_codeword(H_, bits_)) break;
        }

        DecodeResult res;
        res.bits = bits_;
        res.iterations_used = iters;
        res.status = is_codeword(H_, bits_) ? DecodeStatus::codeword
                                            : DecodeStatus::non_codeword;
        res.final_x.resize(H_.n);
        // Posterior mapped into the centered cube so downstream diagnostics
        // share conventions with the LP decoder.
        for (int i = 0; i < H_.n; ++i)
            res.final_x[i] = -0.5 * std::tanh(posterior_[i] * 0.5);
        return res;
    }

private:
    ParityCheckMatrix H_;
    BpConfig cfg_;
    std::vector<int> edge_var_;
    std::vector<int> check_offset_;
    std::vector<std::vector<int>> var_edges_;
    std::vector<double> v2c_, c2v_, in_, out_, posterior_;
    BitVector bits_;
};

inline DecodeResult bp_decode(const ParityCheckMatrix& H, std::span<const double> gamma,
                              const BpConfig& cfg) {
    BpDecoder dec(H, cfg);
    return dec.decode(gamma);
}

}  // namespace admmlp
