#pragma once

#include <cstdint>
#include <vector>

#include "admmlp/qformat.hpp"

namespace admmlp {

/// Length-n vector of channel LLRs; positive values favor bit 0. `soft` is
/// always populated; `raw` carries the quantized mantissas when the vector
/// was produced for the fixed-point profile (soft then mirrors raw).
struct LlrVector {
    std::vector<double> soft;
    std::vector<std::int32_t> raw;
    QFormat fmt{0, 7};

    bool quantized() const { return !raw.empty(); }
    std::size_t size() const { return soft.size(); }

    static LlrVector from_soft(std::vector<double> values) {
        LlrVector g;
        g.soft = std::move(values);
        return g;
    }

    static LlrVector quantize_from(const std::vector<double>& values, const QFormat& fmt) {
        LlrVector g;
        g.fmt = fmt;
        g.raw.reserve(values.size());
        g.soft.reserve(values.size());
        for (double x : values) {
            FixedValue q = admmlp::quantize(x, fmt);
            g.raw.push_back(static_cast<std::int32_t>(q.raw));
            g.soft.push_back(q.value());
        }
        return g;
    }
};

}  // namespace admmlp
