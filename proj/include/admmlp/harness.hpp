#pragma once

#include <atomic>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "admmlp/bp.hpp"
#include "admmlp/channel.hpp"
#include "admmlp/code.hpp"
#include "admmlp/code_io.hpp"
#include "admmlp/decoder.hpp"

namespace admmlp {

enum class DecoderKind { admm_double, admm_fixed, bp, min_sum };

inline DecoderKind parse_decoder_kind(const std::string& s) {
    if (s == "admm-double") return DecoderKind::admm_double;
    if (s == "admm-fixed") return DecoderKind::admm_fixed;
    if (s == "bp") return DecoderKind::bp;
    if (s == "min-sum") return DecoderKind::min_sum;
    throw std::invalid_argument("unknown decoder: " + s +
                                " (expected admm-double|admm-fixed|bp|min-sum)");
}

inline std::string decoder_kind_name(DecoderKind k) {
    switch (k) {
        case DecoderKind::admm_double: return "admm-double";
        case DecoderKind::admm_fixed: return "admm-fixed";
        case DecoderKind::bp: return "bp";
        case DecoderKind::min_sum: return "min-sum";
    }
    return "?";
}

struct ExperimentSpec {
    std::string code;  // built-in name or file path
    DecoderKind decoder = DecoderKind::admm_double;
    double alpha = 0.1;
    int max_iters = 60;
    std::vector<double> snr_points_db;
    long target_frame_errors = 100;
    long max_frames = 1000000;
    std::uint64_t seed = 0;
    int workers = 1;

    void validate() const {
        if (snr_points_db.empty())
            throw std::invalid_argument("ExperimentSpec: snr_points_db must be nonempty");
        if (target_frame_errors < 1)
            throw std::invalid_argument("ExperimentSpec: target_frame_errors must be >= 1");
        if (max_frames < 1) throw std::invalid_argument("ExperimentSpec: max_frames must be >= 1");
        if (workers < 1) throw std::invalid_argument("ExperimentSpec: workers must be >= 1");
        if (alpha < 0.0) throw std::invalid_argument("ExperimentSpec: alpha must be >= 0");
        if (max_iters < 1) throw std::invalid_argument("ExperimentSpec: max_iters must be >= 1");
    }
};

struct FerRecord {
    double snr_db = 0.0;
    long frames = 0;
    long frame_errors = 0;
    long bit_errors = 0;
    double fer = 0.0;
    double ber = 0.0;
    double mean_iterations = 0.0;
};

/// Built-in quasi-cyclic codes.
inline ParityCheckMatrix load_builtin_code(const std::string& name) {
    auto grid = [](int p, std::vector<std::vector<int>> rows) {
        QcShiftMatrix qc;
        qc.p = p;
        qc.r = static_cast<int>(rows.size());
        qc.s = static_cast<int>(rows[0].size());
        qc.shifts.assign(qc.r, std::vector<std::vector<int>>(qc.s));
        for (int a = 0; a < qc.r; ++a)
            for (int b = 0; b < qc.s; ++b)
                if (rows[a][b] >= 0) qc.shifts[a][b] = {rows[a][b]};
        return expand_qc(qc);
    };
    if (name == "tanner155")
        return grid(31, {{30, 29, 27, 23, 15}, {26, 21, 11, 22, 13}, {6, 12, 24, 17, 3}});
    if (name == "ensemble1002-example")
        return grid(167, {{115, 13, 25, 166, 17, 129},
                          {124, 38, 137, 13, 160, 136},
                          {75, 152, 89, 73, 0, 145}});
    if (name == "wigig672")
        return grid(42, {{29, 30, 0, 8, 33, 22, 17, 4, 27, 28, 20, 27, 24, 23, -1, -1},
                         {37, 31, 18, 23, 11, 21, 6, 20, 32, 9, 12, 29, 10, 0, 13, -1},
                         {25, 22, 4, 34, 31, 3, 14, 15, 4, 2, 14, 18, 13, 13, 22, 24}});
    throw std::invalid_argument("unknown built-in code: " + name +
                                " (expected tanner155|wigig672|ensemble1002-example)");
}

inline bool is_builtin_code(const std::string& name) {
    return name == "tanner155" || name == "wigig672" || name == "ensemble1002-example";
}

inline ParityCheckMatrix load_code(const std::string& name_or_path) {
    if (is_builtin_code(name_or_path)) return load_builtin_code(name_or_path);
    return load_code_file(name_or_path);
}

inline double code_rate(const ParityCheckMatrix& H) {
    return static_cast<double>(H.n - rank2(H)) / static_cast<double>(H.n);
}

/// 95% (by default) Wilson score interval for a binomial proportion.
struct BinomialInterval {
    double lo = 0.0;
    double hi = 1.0;
};

inline BinomialInterval wilson_interval(long errors, long trials, double z = 1.959963984540054) {
    if (trials <= 0) return {0.0, 1.0};
    double n = static_cast<double>(trials);
    double p = static_cast<double>(errors) / n;
    double z2 = z * z;
    double denom = 1.0 + z2 / n;
    double center = (p + z2 / (2.0 * n)) / denom;
    double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
    return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

namespace detail {

struct FrameOutcome {
    std::uint8_t error = 0;
    std::int32_t bit_errors = 0;
    std::int32_t iterations = 0;
};

/// Decodes one frame: sample a random codeword, transmit, quantize, decode,
/// compare. All randomness comes from the frame-indexed substream.
template <class DecodeFn>
FrameOutcome run_frame(const std::vector<BitVector>& basis, double sigma,
                       const ChannelConfig& ch, std::uint64_t seed,
                       std::uint64_t point_idx, std::uint64_t frame, DecodeFn&& dec) {
    Rng rng = make_frame_rng(seed, point_idx, frame);
    BitVector cw = sample_codeword(basis, rng);
    std::vector<double> y = transmit(cw, sigma, rng);
    LlrVector llr = llr_quantize(y, sigma, ch);
    DecodeResult r = dec(llr);
    FrameOutcome o;
    o.iterations = r.iterations_used;
    for (std::size_t i = 0; i < cw.size(); ++i)
        if (r.bits[i] != cw[i]) ++o.bit_errors;
    o.error = o.bit_errors > 0 ? 1 : 0;
    return o;
}

}  // namespace detail

/// Monte-Carlo at one SNR point. Frames are processed in chunks by a worker
/// pool; the stopping frame is the earliest index at which the cumulative
/// error count reaches the target (or max_frames), so results are identical
/// for any worker count.
inline FerRecord run_point(const ExperimentSpec& spec, const ParityCheckMatrix& H,
                           const std::vector<BitVector>& basis, double rate,
                           double snr_db, std::uint64_t point_idx) {
    spec.validate();
    double sigma = sigma_from_ebn0(snr_db, rate);
    ChannelConfig ch;
    ch.ebn0_db = snr_db;
    ch.rate = rate;
    ch.quantize_llr = spec.decoder == DecoderKind::admm_fixed;

    DecoderConfig admm_cfg;
    admm_cfg.alpha = spec.alpha;
    admm_cfg.max_iters = spec.max_iters;
    admm_cfg.profile = spec.decoder == DecoderKind::admm_fixed ? ArithProfile::fixed_point
                                                               : ArithProfile::double_precision;
    BpConfig bp_cfg;
    bp_cfg.max_iters = spec.max_iters;
    bp_cfg.variant =
        spec.decoder == DecoderKind::min_sum ? BpVariant::min_sum : BpVariant::sum_product;

    const bool is_admm =
        spec.decoder == DecoderKind::admm_double || spec.decoder == DecoderKind::admm_fixed;

    std::vector<detail::FrameOutcome> outcomes;
    long scanned = 0;       // frames already folded into cumulative counts
    long cum_errors = 0;
    long stop_frames = -1;  // determined once the target is reached

    const long chunk_size = 512;
    long next_frame = 0;
    while (stop_frames < 0 && next_frame < spec.max_frames) {
        long chunk_end = std::min(spec.max_frames, next_frame + chunk_size);
        outcomes.resize(chunk_end);
        std::atomic<long> cursor{next_frame};
        auto work = [&]() {
            AdmmDecoder admm(H, admm_cfg);
            BpDecoder bp(H, bp_cfg);
            for (;;) {
                long idx = cursor.fetch_add(1);
                if (idx >= chunk_end) break;
                auto dec = [&](const LlrVector& llr) {
                    return is_admm ? admm.decode(llr) : bp.decode(llr.soft);
                };
                outcomes[idx] = detail::run_frame(basis, sigma, ch, spec.seed, point_idx,
                                                  static_cast<std::uint64_t>(idx), dec);
            }
        };
        if (spec.workers == 1) {
            work();
        } else {
            std::vector<std::thread> pool;
            for (int w = 0; w < spec.workers; ++w) pool.emplace_back(work);
            for (auto& t : pool) t.join();
        }
        next_frame = chunk_end;
        // Earliest frame index at which the target is met wins, independent
        // of which worker finished it.
        for (; scanned < chunk_end; ++scanned) {
            cum_errors += outcomes[scanned].error;
            if (cum_errors >= spec.target_frame_errors) {
                stop_frames = scanned + 1;
                break;
            }
        }
    }
    if (stop_frames < 0) stop_frames = spec.max_frames;

    FerRecord rec;
    rec.snr_db = snr_db;
    rec.frames = stop_frames;
    std::int64_t iter_sum = 0;
    for (long i = 0; i < stop_frames; ++i) {
        rec.frame_errors += outcomes[i].error;
        rec.bit_errors += outcomes[i].bit_errors;
        iter_sum += outcomes[i].iterations;
    }
    rec.fer = static_cast<double>(rec.frame_errors) / static_cast<double>(rec.frames);
    rec.ber = static_cast<double>(rec.bit_errors) /
              (static_cast<double>(rec.frames) * static_cast<double>(H.n));
    rec.mean_iterations = static_cast<double>(iter_sum) / static_cast<double>(rec.frames);
    return rec;
}

inline std::string format_csv(const std::vector<FerRecord>& records) {
    std::string out = "snr_db,frames,frame_errors,bit_errors,fer,ber,mean_iterations\n";
    char buf[256];
    for (const auto& r : records) {
        std::snprintf(buf, sizeof(buf), "%.10g,%ld,%ld,%ld,%.10g,%.10g,%.10g\n", r.snr_db,
                      r.frames, r.frame_errors, r.bit_errors, r.fer, r.ber,
                      r.mean_iterations);
        out += buf;
    }
    return out;
}

/// Runs every SNR point in order. `log` (optional) receives one line per
/// completed point.
inline std::vector<FerRecord> run_sweep(const ExperimentSpec& spec,
                                        std::ostream* log = nullptr) {
    spec.validate();
    ParityCheckMatrix H = load_code(spec.code);
    auto basis = nullspace_basis(H);
    if (basis.empty()) throw std::runtime_error("run_sweep: code has no nonzero codewords");
    double rate = static_cast<double>(basis.size()) / static_cast<double>(H.n);

    std::vector<FerRecord> records;
    for (std::size_t k = 0; k < spec.snr_points_db.size(); ++k) {
        FerRecord rec = run_point(spec, H, basis, rate, spec.snr_points_db[k],
                                  static_cast<std::uint64_t>(k));
        if (!records.empty() && rec.fer > records.back().fer && log)
            *log << "# warning: FER increased from " << records.back().fer << " to "
                 << rec.fer << " at " << rec.snr_db << " dB\n";
        if (log)
            *log << decoder_kind_name(spec.decoder) << " " << spec.code << " @ " << rec.snr_db
                 << " dB: frames=" << rec.frames << " FE=" << rec.frame_errors
                 << " FER=" << rec.fer << " BER=" << rec.ber
                 << " iters=" << rec.mean_iterations << "\n";
        records.push_back(rec);
    }
    return records;
}

}  // namespace admmlp
