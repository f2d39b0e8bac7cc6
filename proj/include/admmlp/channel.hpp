#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "admmlp/code.hpp"
#include "admmlp/llr.hpp"
#include "admmlp/rng.hpp"

namespace admmlp {

struct ChannelConfig {
    double ebn0_db = 0.0;
    double rate = 0.5;
    double saturation_a = 1.0;  // channel outputs saturate at +-(1 + a*sigma)
    bool quantize_llr = false;  // Q0.7 front end for the fixed profile
    QFormat llr_format{0, 7};

    void validate() const {
        if (!(rate > 0.0) || rate > 1.0)
            throw std::invalid_argument("ChannelConfig: rate must be in (0, 1]");
        if (!(saturation_a > 0.0))
            throw std::invalid_argument("ChannelConfig: saturation_a must be > 0");
    }
};

/// Noise standard deviation for unit-energy antipodal signaling.
inline double sigma_from_ebn0(double ebn0_db, double rate) {
    if (!(rate > 0.0) || rate > 1.0)
        throw std::invalid_argument("sigma_from_ebn0: rate must be in (0, 1]");
    return std::sqrt(1.0 / (2.0 * rate * std::pow(10.0, ebn0_db / 10.0)));
}

/// BPSK over AWGN: bit 0 -> +1, bit 1 -> -1, plus N(0, sigma^2). The +1
/// polarity for bit 0 keeps positive LLRs as bit-0 evidence.
inline std::vector<double> transmit(const BitVector& bits, double sigma, Rng& rng) {
    std::vector<double> y(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i)
        y[i] = (bits[i] ? -1.0 : 1.0) + sigma * rng.gaussian();
    return y;
}

/// Saturate channel outputs at +-(1 + a*sigma) and scale so the saturation
/// level maps to the maximum LLR magnitude. Both profiles share the
/// preprocessing; only the fixed profile quantizes (to full Q0.7 range).
inline LlrVector llr_quantize(std::span<const double> y, double sigma,
                              const ChannelConfig& cfg) {
    cfg.validate();
    double sat = 1.0 + cfg.saturation_a * sigma;
    std::vector<double> vals(y.size());
    for (std::size_t i = 0; i < y.size(); ++i)
        vals[i] = std::min(sat, std::max(-sat, y[i])) / sat;
    if (!cfg.quantize_llr) return LlrVector::from_soft(std::move(vals));
    double max_mag = cfg.llr_format.max_value();
    for (double& v : vals) v *= max_mag;
    return LlrVector::quantize_from(vals, cfg.llr_format);
}

}  // namespace admmlp
