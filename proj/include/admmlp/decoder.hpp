#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "admmlp/code.hpp"
#include "admmlp/fixed_projection.hpp"
#include "admmlp/llr.hpp"
#include "admmlp/projection.hpp"

namespace admmlp {

enum class ArithProfile { double_precision, fixed_point };

struct DecoderConfig {
    double alpha = 0.1;
    int max_iters = 60;
    bool early_termination = true;
    ArithProfile profile = ArithProfile::double_precision;
    FixedProfile widths{};

    void validate() const {
        if (alpha < 0.0) throw std::invalid_argument("DecoderConfig: alpha must be >= 0");
        if (max_iters < 1) throw std::invalid_argument("DecoderConfig: max_iters must be >= 1");
        widths.validate();
    }
};

enum class DecodeStatus { codeword, non_codeword, pseudocodeword_suspect };

struct DecodeResult {
    BitVector bits;
    DecodeStatus status = DecodeStatus::non_codeword;
    int iterations_used = 0;
    std::vector<double> final_x;
    double final_residual = 0.0;  // max_j ||x_{N_c(j)} - z_j||_inf at exit
};

/// Variable update, double profile: average the incoming messages and the
/// negated LLR, push away from zero by alpha (none when the sum is exactly
/// zero), clip to [-1/2, 1/2].
inline double variable_update(std::span<const double> incoming, double gamma, double alpha,
                              int deg) {
    if (deg < 1) throw std::invalid_argument("variable_update: degree must be >= 1");
    double t = -gamma;
    for (double m : incoming) t += m;
    double s = t;
    if (t > 0.0)
        s = t + alpha;
    else if (t < 0.0)
        s = t - alpha;
    return std::min(0.5, std::max(-0.5, s / static_cast<double>(deg)));
}

struct CheckUpdate {
    std::vector<double> lambda;
    std::vector<double> msgs;
    std::vector<double> z;
};

/// Check update, double profile: v = x + lambda, z = project(v),
/// lambda' = v - z, outgoing = z - lambda' (the 2z - v refactoring, computed
/// through lambda' so the identity holds bit-exactly).
inline CheckUpdate check_update(std::span<const double> x_nbrs,
                                std::span<const double> lambda) {
    if (x_nbrs.size() != lambda.size())
        throw std::invalid_argument("check_update: length mismatch");
    std::size_t d = x_nbrs.size();
    CheckUpdate r;
    std::vector<double> v(d);
    for (std::size_t k = 0; k < d; ++k) v[k] = x_nbrs[k] + lambda[k];
    r.z = project_parity_polytope(v);
    r.lambda.resize(d);
    r.msgs.resize(d);
    for (std::size_t k = 0; k < d; ++k) {
        r.lambda[k] = v[k] - r.z[k];
        r.msgs[k] = r.z[k] - r.lambda[k];
    }
    return r;
}

/// Hard decision in centered coordinates: bit 1 iff x > 0 (bit b at b - 1/2).
inline BitVector hard_decision(std::span<const double> x) {
    BitVector bits(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) bits[i] = x[i] > 0.0 ? 1 : 0;
    return bits;
}

namespace fixed {

/// Variable update on raw mantissas. Incoming messages and gamma share
/// fraction bits; the sum is exact, saturated into t, penalized into s, then
/// normalized by the degree reciprocal (trivial for degree 1), clipped at
/// +-1/2 and rounded once into the estimate format.
inline std::int64_t variable_update(std::span<const std::int64_t> incoming,
                                    std::int64_t gamma_raw, std::int64_t alpha_raw,
                                    const FixedProfile& prof) {
    int deg = static_cast<int>(incoming.size());
    if (deg < 1) throw std::invalid_argument("fixed variable_update: degree must be >= 1");
    std::int64_t t = -gamma_raw;
    for (std::int64_t m : incoming) t += m;
    t = saturate_raw(t, prof.t);
    std::int64_t s = t;
    if (t > 0)
        s = t + alpha_raw;
    else if (t < 0)
        s = t - alpha_raw;
    s = saturate_raw(s, prof.s);

    std::int64_t wide;
    int wfrac;
    if (deg == 1) {
        wide = s;
        wfrac = prof.s.frac_bits;
    } else {
        wide = s * index_reciprocal_raw(deg);
        wfrac = prof.s.frac_bits + 24;
    }
    std::int64_t half = std::int64_t(1) << (wfrac - 1);
    wide = std::clamp(wide, -half, half);
    return resize_raw(wide, wfrac, prof.estimate);
}

/// Check update on raw mantissas. v is exact (estimate + zero-extended check
/// state); lambda' and the outgoing message both derive from the same wide
/// v and z at replica precision, each rounded once into the message format.
inline void check_update(std::span<const std::int64_t> x_nbrs,
                         std::span<std::int64_t> lambda, std::span<std::int64_t> msgs,
                         std::span<std::int64_t> z, std::span<std::int64_t> v_scratch,
                         Projector& proj) {
    const FixedProfile& prof = proj.profile();
    std::size_t d = x_nbrs.size();
    if (lambda.size() != d) throw std::invalid_argument("fixed check_update: length mismatch");
    int ext_lambda = prof.check_sum.frac_bits - prof.message.frac_bits;
    for (std::size_t k = 0; k < d; ++k)
        v_scratch[k] = saturate_raw(x_nbrs[k] + (lambda[k] << ext_lambda), prof.check_sum);
    proj.project_parity_polytope(v_scratch.subspan(0, d), z.subspan(0, d));
    int ext_v = prof.replica.frac_bits - prof.check_sum.frac_bits;
    for (std::size_t k = 0; k < d; ++k) {
        std::int64_t v_wide = v_scratch[k] << ext_v;
        lambda[k] = resize_raw(v_wide - z[k], prof.replica.frac_bits, prof.message);
        msgs[k] = resize_raw(2 * z[k] - v_wide, prof.replica.frac_bits, prof.message);
    }
}

}  // namespace fixed

/// ADMM LP decoder over a fixed parity-check matrix. Holds the edge layout
/// and working buffers; one instance per thread, reusable across frames.
class AdmmDecoder {
public:
    AdmmDecoder(const ParityCheckMatrix& H, const DecoderConfig& cfg)
        : H_(H), cfg_(cfg), fixed_proj_(cfg.widths) {
        cfg_.validate();
        for (int j = 0; j < H_.m; ++j)
            if (H_.check_degree(j) < 2)
                throw std::invalid_argument(
                    "AdmmDecoder: parity polytope projection needs check degree >= 2");
        int edges = H_.edge_count();
        edge_var_.reserve(edges);
        check_offset_.reserve(H_.m + 1);
        check_offset_.push_back(0);
        for (int j = 0; j < H_.m; ++j) {
            for (int i : H_.check_nbrs[j]) edge_var_.push_back(i);
            check_offset_.push_back(static_cast<int>(edge_var_.size()));
        }
        var_edges_.resize(H_.n);
        for (int j = 0; j < H_.m; ++j)
            for (int e = check_offset_[j]; e < check_offset_[j + 1]; ++e)
                var_edges_[edge_var_[e]].push_back(e);

        int max_deg = H_.max_check_degree();
        if (cfg_.profile == ArithProfile::double_precision) {
            lambda_d_.resize(edges);
            msg_d_.resize(edges);
            z_d_.resize(edges);
            v_d_.resize(max_deg);
        } else {
            lambda_f_.resize(edges);
            msg_f_.resize(edges);
            z_f_.resize(edges);
            v_f_.resize(max_deg);
            alpha_raw_ = quantize(cfg_.alpha, cfg_.widths.llr).raw;
        }
        x_.resize(H_.n);
        bits_.resize(H_.n);
    }

    const DecoderConfig& config() const { return cfg_; }

    DecodeResult decode(const LlrVector& gamma) {
        if (static_cast<int>(gamma.size()) != H_.n)
            throw std::invalid_argument("decode: LLR length mismatch");
        return cfg_.profile == ArithProfile::double_precision ? decode_double(gamma)
                                                              : decode_fixed(gamma);
    }

private:
    DecodeResult decode_double(const LlrVector& gamma) {
        int edges = static_cast<int>(edge_var_.size());
        std::fill(lambda_d_.begin(), lambda_d_.end(), 0.0);
        std::fill(msg_d_.begin(), msg_d_.end(), 0.0);
        std::fill(z_d_.begin(), z_d_.end(), 0.0);

        int iters = 0;
        for (int iter = 1; iter <= cfg_.max_iters; ++iter) {
            iters = iter;
            for (int i = 0; i < H_.n; ++i) {
                double t = -gamma.soft[i];
                for (int e : var_edges_[i]) t += msg_d_[e];
                double s = t;
                if (t > 0.0)
                    s = t + cfg_.alpha;
                else if (t < 0.0)
                    s = t - cfg_.alpha;
                s /= static_cast<double>(var_edges_[i].size());
                x_[i] = std::min(0.5, std::max(-0.5, s));
            }
            for (int j = 0; j < H_.m; ++j) {
                int off = check_offset_[j];
                int d = check_offset_[j + 1] - off;
                for (int k = 0; k < d; ++k)
                    v_d_[k] = x_[edge_var_[off + k]] + lambda_d_[off + k];
                proj_.project({v_d_.data(), static_cast<std::size_t>(d)},
                              {z_d_.data() + off, static_cast<std::size_t>(d)});
                for (int k = 0; k < d; ++k) {
                    double lam = v_d_[k] - z_d_[off + k];
                    lambda_d_[off + k] = lam;
                    msg_d_[off + k] = z_d_[off + k] - lam;
                }
            }
            if (cfg_.early_termination && current_bits_are_codeword()) break;
        }

        (void)edges;
        DecodeResult res = finish(iters, 1e-5);
        double r = 0.0;
        for (int e = 0; e < static_cast<int>(edge_var_.size()); ++e)
            r = std::max(r, std::abs(x_[edge_var_[e]] - z_d_[e]));
        res.final_residual = r;
        return res;
    }

    DecodeResult decode_fixed(const LlrVector& gamma) {
        const FixedProfile& p = cfg_.widths;
        const std::int32_t* graw = nullptr;
        std::vector<std::int32_t> quantized;
        if (gamma.quantized() && gamma.fmt == p.llr) {
            graw = gamma.raw.data();
        } else {
            quantized.reserve(gamma.size());
            for (double g : gamma.soft)
                quantized.push_back(static_cast<std::int32_t>(quantize(g, p.llr).raw));
            graw = quantized.data();
        }

        std::fill(lambda_f_.begin(), lambda_f_.end(), 0);
        std::fill(msg_f_.begin(), msg_f_.end(), 0);
        std::fill(z_f_.begin(), z_f_.end(), 0);

        std::vector<std::int64_t> xr(H_.n, 0);
        int iters = 0;
        for (int iter = 1; iter <= cfg_.max_iters; ++iter) {
            iters = iter;
            for (int i = 0; i < H_.n; ++i) {
                std::int64_t t = -graw[i];
                for (int e : var_edges_[i]) t += msg_f_[e];
                t = saturate_raw(t, p.t);
                std::int64_t s = t;
                if (t > 0)
                    s = t + alpha_raw_;
                else if (t < 0)
                    s = t - alpha_raw_;
                s = saturate_raw(s, p.s);
                int deg = static_cast<int>(var_edges_[i].size());
                std::int64_t wide;
                int wfrac;
                if (deg == 1) {
                    wide = s;
                    wfrac = p.s.frac_bits;
                } else {
                    wide = s * fixed::index_reciprocal_raw(deg);
                    wfrac = p.s.frac_bits + 24;
                }
                std::int64_t half = std::int64_t(1) << (wfrac - 1);
                wide = std::clamp(wide, -half, half);
                xr[i] = resize_raw(wide, wfrac, p.estimate);
            }
            double x_scale = std::pow(2.0, -p.estimate.frac_bits);
            for (int i = 0; i < H_.n; ++i) x_[i] = static_cast<double>(xr[i]) * x_scale;

            int ext_lambda = p.check_sum.frac_bits - p.message.frac_bits;
            int ext_v = p.replica.frac_bits - p.check_sum.frac_bits;
            for (int j = 0; j < H_.m; ++j) {
                int off = check_offset_[j];
                int d = check_offset_[j + 1] - off;
                for (int k = 0; k < d; ++k)
                    v_f_[k] = saturate_raw(
                        xr[edge_var_[off + k]] + (lambda_f_[off + k] << ext_lambda),
                        p.check_sum);
                fixed_proj_.project_parity_polytope(
                    {v_f_.data(), static_cast<std::size_t>(d)},
                    {z_f_.data() + off, static_cast<std::size_t>(d)});
                for (int k = 0; k < d; ++k) {
                    std::int64_t v_wide = v_f_[k] << ext_v;
                    lambda_f_[off + k] =
                        resize_raw(v_wide - z_f_[off + k], p.replica.frac_bits, p.message);
                    msg_f_[off + k] =
                        resize_raw(2 * z_f_[off + k] - v_wide, p.replica.frac_bits, p.message);
                }
            }
            if (cfg_.early_termination && current_bits_are_codeword()) break;
        }

        DecodeResult res = finish(iters, std::pow(2.0, -p.estimate.frac_bits));
        double z_scale = std::pow(2.0, -p.replica.frac_bits);
        double r = 0.0;
        for (int e = 0; e < static_cast<int>(edge_var_.size()); ++e)
            r = std::max(r, std::abs(x_[edge_var_[e]] -
                                     static_cast<double>(z_f_[e]) * z_scale));
        res.final_residual = r;
        return res;
    }

    bool current_bits_are_codeword() {
        for (int i = 0; i < H_.n; ++i) bits_[i] = x_[i] > 0.0 ? 1 : 0;
        for (int j = 0; j < H_.m; ++j) {
            std::uint8_t acc = 0;
            for (int e = check_offset_[j]; e < check_offset_[j + 1]; ++e)
                acc ^= bits_[edge_var_[e]];
            if (acc) return false;
        }
        return true;
    }

    DecodeResult finish(int iters, double eps_int) {
        DecodeResult res;
        res.bits = hard_decision(x_);
        res.iterations_used = iters;
        res.final_x = x_;
        if (is_codeword(H_, res.bits)) {
            res.status = DecodeStatus::codeword;
        } else {
            double max_abs = 0.0;
            for (double xi : x_) max_abs = std::max(max_abs, std::abs(xi));
            res.status = max_abs < 0.5 - eps_int ? DecodeStatus::pseudocodeword_suspect
                                                 : DecodeStatus::non_codeword;
        }
        return res;
    }

    ParityCheckMatrix H_;
    DecoderConfig cfg_;
    std::vector<int> edge_var_;            // flattened check neighborhoods
    std::vector<int> check_offset_;        // per check: slice of edge arrays
    std::vector<std::vector<int>> var_edges_;

    ParityPolytopeProjector proj_;
    fixed::Projector fixed_proj_;
    std::vector<double> lambda_d_, msg_d_, z_d_, v_d_;
    std::vector<std::int64_t> lambda_f_, msg_f_, z_f_, v_f_;
    std::int64_t alpha_raw_ = 0;
    std::vector<double> x_;
    BitVector bits_;
};

inline DecodeResult decode(const ParityCheckMatrix& H, const LlrVector& gamma,
                           const DecoderConfig& cfg) {
    AdmmDecoder dec(H, cfg);
    return dec.decode(gamma);
}

}  // namespace admmlp
