#pragma once

#include <cstdint>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace admmlp {

/// Signed fixed-point layout: 1 sign bit + int_bits + frac_bits.
/// Values are raw * 2^-frac_bits with raw in the symmetric range
/// [-(2^(W-1)-1), 2^(W-1)-1]; the most negative two's-complement code is
/// excluded so negation stays closed.
struct QFormat {
    int int_bits = 0;
    int frac_bits = 0;

    constexpr QFormat() = default;
    constexpr QFormat(int i, int f) : int_bits(i), frac_bits(f) {
        if (i < 0 || f < 0 || width() > 64)
            throw std::invalid_argument("QFormat: invalid bit allocation");
    }

    constexpr int width() const { return 1 + int_bits + frac_bits; }

    constexpr std::int64_t max_raw() const {
        int w = width();
        if (w >= 64) return std::numeric_limits<std::int64_t>::max();
        return (std::int64_t(1) << (w - 1)) - 1;
    }
    constexpr std::int64_t min_raw() const { return -max_raw(); }

    constexpr double max_value() const {
        return static_cast<double>(max_raw()) * std::pow(2.0, -frac_bits);
    }

    constexpr bool operator==(const QFormat&) const = default;

    /// Prints as "Qi.f", e.g. Q2.7.
    std::string to_string() const {
        return "Q" + std::to_string(int_bits) + "." + std::to_string(frac_bits);
    }

    static QFormat parse(const std::string& s) {
        if (s.size() < 4 || (s[0] != 'Q' && s[0] != 'q'))
            throw std::invalid_argument("QFormat: expected \"Qi.f\", got \"" + s + "\"");
        auto dot = s.find('.');
        if (dot == std::string::npos || dot == 1 || dot + 1 >= s.size())
            throw std::invalid_argument("QFormat: expected \"Qi.f\", got \"" + s + "\"");
        int i = std::stoi(s.substr(1, dot - 1));
        int f = std::stoi(s.substr(dot + 1));
        return QFormat(i, f);
    }
};

/// Round-half-away-from-zero right shift by `bits` (left shift if negative).
inline std::int64_t round_shift_right(std::int64_t v, int bits) {
    if (bits <= 0) return v << (-bits);
    std::int64_t half = std::int64_t(1) << (bits - 1);
    if (v >= 0) return (v + half) >> bits;
    return -((-v + half) >> bits);
}

inline std::int64_t saturate_raw(std::int64_t raw, const QFormat& fmt) {
    if (raw > fmt.max_raw()) return fmt.max_raw();
    if (raw < fmt.min_raw()) return fmt.min_raw();
    return raw;
}

/// Rescale a raw mantissa from `from_frac` fraction bits into `out`,
/// rounding excess fraction bits half-away-from-zero and saturating.
inline std::int64_t resize_raw(std::int64_t raw, int from_frac, const QFormat& out) {
    return saturate_raw(round_shift_right(raw, from_frac - out.frac_bits), out);
}

struct FixedValue {
    std::int64_t raw = 0;
    QFormat fmt;

    double value() const {
        return static_cast<double>(raw) * std::pow(2.0, -fmt.frac_bits);
    }
};

/// Nearest representable value, ties away from zero, saturating.
inline FixedValue quantize(double x, const QFormat& fmt) {
    double scaled = x * std::pow(2.0, fmt.frac_bits);
    std::int64_t raw;
    if (scaled >= static_cast<double>(fmt.max_raw()))
        raw = fmt.max_raw();
    else if (scaled <= static_cast<double>(fmt.min_raw()))
        raw = fmt.min_raw();
    else
        raw = std::llround(scaled);  // llround ties away from zero
    return {saturate_raw(raw, fmt), fmt};
}

inline FixedValue resize(const FixedValue& a, const QFormat& out) {
    return {resize_raw(a.raw, a.fmt.frac_bits, out), out};
}

/// Exact integer addition after fraction-bit alignment, one rounding into out.
inline FixedValue add(const FixedValue& a, const FixedValue& b, const QFormat& out) {
    int frac = std::max(a.fmt.frac_bits, b.fmt.frac_bits);
    std::int64_t ar = a.raw << (frac - a.fmt.frac_bits);
    std::int64_t br = b.raw << (frac - b.fmt.frac_bits);
    return {resize_raw(ar + br, frac, out), out};
}

constexpr QFormat kReciprocalFormat{0, 24};

/// round(2^24 / deg) in Q0.24, the constant the normalization multiplier uses.
inline FixedValue reciprocal_q24(int deg) {
    if (deg < 2)
        throw std::invalid_argument("reciprocal_q24: degree must be >= 2 (degree 1 is a no-op shift)");
    std::int64_t n = std::int64_t(1) << 24;
    std::int64_t raw = (2 * n + deg) / (2 * deg);  // round(n/deg), ties up == away for positives
    return {raw, kReciprocalFormat};
}

/// Exact integer product with a Q0.24 reciprocal, single rounding into out.
inline FixedValue mul_reciprocal(const FixedValue& a, const FixedValue& recip,
                                 const QFormat& out) {
    if (recip.fmt != kReciprocalFormat)
        throw std::invalid_argument("mul_reciprocal: reciprocal must be Q0.24");
    std::int64_t prod = a.raw * recip.raw;
    return {resize_raw(prod, a.fmt.frac_bits + recip.fmt.frac_bits, out), out};
}

}  // namespace admmlp
