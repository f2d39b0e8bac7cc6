#pragma once

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "admmlp/code.hpp"

namespace admmlp {

namespace detail {

/// Next nonblank line as a token vector.
inline std::vector<long long> alist_line(std::istream& in) {
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ss(line);
        std::vector<long long> toks;
        long long v;
        while (ss >> v) toks.push_back(v);
        if (!toks.empty()) return toks;
    }
    throw std::runtime_error("alist: truncated file");
}

}  // namespace detail

/// MacKay alist layout: "n m", max degrees, per-column then per-row 1-based
/// index lists, one line each. Zero entries (degree padding) are ignored, so
/// both padded and unpadded files load.
inline ParityCheckMatrix read_alist(std::istream& in) {
    auto header = detail::alist_line(in);
    if (header.size() < 2) throw std::runtime_error("alist: bad header");
    long long n = header[0], m = header[1];
    if (n <= 0 || m <= 0) throw std::runtime_error("alist: bad dimensions");
    detail::alist_line(in);  // max degrees, unused
    auto col_deg = detail::alist_line(in);
    auto row_deg = detail::alist_line(in);
    if (static_cast<long long>(col_deg.size()) != n ||
        static_cast<long long>(row_deg.size()) != m)
        throw std::runtime_error("alist: degree list length mismatch");

    std::vector<std::pair<int, int>> ones;
    for (long long i = 0; i < n; ++i) {
        auto toks = detail::alist_line(in);
        int live = 0;
        for (long long j : toks) {
            if (j == 0) continue;  // padding
            if (j < 1 || j > m) throw std::runtime_error("alist: check index out of range");
            ones.emplace_back(static_cast<int>(j - 1), static_cast<int>(i));
            ++live;
        }
        if (live != col_deg[i]) throw std::runtime_error("alist: column degree mismatch");
    }
    // The per-row lists restate the same incidences; consume and cross-check.
    std::size_t row_entries = 0;
    for (long long j = 0; j < m; ++j) {
        auto toks = detail::alist_line(in);
        int live = 0;
        for (long long i : toks) {
            if (i == 0) continue;
            if (i < 1 || i > n) throw std::runtime_error("alist: variable index out of range");
            ++live;
            ++row_entries;
        }
        if (live != row_deg[j]) throw std::runtime_error("alist: row degree mismatch");
    }
    if (row_entries != ones.size())
        throw std::runtime_error("alist: row/column lists disagree");
    return ParityCheckMatrix::from_entries(static_cast<int>(m), static_cast<int>(n), ones);
}

inline void write_alist(std::ostream& out, const ParityCheckMatrix& H) {
    int max_col = 0, max_row = 0;
    for (int i = 0; i < H.n; ++i) max_col = std::max(max_col, H.var_degree(i));
    for (int j = 0; j < H.m; ++j) max_row = std::max(max_row, H.check_degree(j));
    out << H.n << ' ' << H.m << '\n';
    out << max_col << ' ' << max_row << '\n';
    for (int i = 0; i < H.n; ++i) out << H.var_degree(i) << (i + 1 < H.n ? ' ' : '\n');
    for (int j = 0; j < H.m; ++j) out << H.check_degree(j) << (j + 1 < H.m ? ' ' : '\n');
    for (int i = 0; i < H.n; ++i) {
        for (std::size_t k = 0; k < H.var_nbrs[i].size(); ++k)
            out << H.var_nbrs[i][k] + 1 << (k + 1 < H.var_nbrs[i].size() ? ' ' : '\n');
    }
    for (int j = 0; j < H.m; ++j) {
        for (std::size_t k = 0; k < H.check_nbrs[j].size(); ++k)
            out << H.check_nbrs[j][k] + 1 << (k + 1 < H.check_nbrs[j].size() ? ' ' : '\n');
    }
}

/// QC shift file: line 1 "p r s"; then r lines of s tokens, each "-" (zero
/// block), a decimal shift, or "a+b" for summed shifted identities.
inline QcShiftMatrix read_shift_file(std::istream& in) {
    QcShiftMatrix qc;
    if (!(in >> qc.p >> qc.r >> qc.s))
        throw std::runtime_error("shift file: expected header \"p r s\"");
    qc.shifts.assign(qc.r, std::vector<std::vector<int>>(qc.s));
    for (int a = 0; a < qc.r; ++a)
        for (int b = 0; b < qc.s; ++b) {
            std::string tok;
            if (!(in >> tok)) throw std::runtime_error("shift file: truncated grid");
            if (tok == "-") continue;
            std::stringstream cell(tok);
            std::string part;
            while (std::getline(cell, part, '+')) {
                if (part.empty()) throw std::runtime_error("shift file: bad token \"" + tok + "\"");
                std::size_t pos = 0;
                int t = std::stoi(part, &pos);
                if (pos != part.size())
                    throw std::runtime_error("shift file: bad token \"" + tok + "\"");
                qc.shifts[a][b].push_back(t);
            }
        }
    qc.validate();
    return qc;
}

inline void write_shift_file(std::ostream& out, const QcShiftMatrix& qc) {
    out << qc.p << ' ' << qc.r << ' ' << qc.s << '\n';
    for (int a = 0; a < qc.r; ++a) {
        for (int b = 0; b < qc.s; ++b) {
            const auto& cell = qc.shifts[a][b];
            if (cell.empty()) {
                out << '-';
            } else {
                for (std::size_t k = 0; k < cell.size(); ++k)
                    out << cell[k] << (k + 1 < cell.size() ? "+" : "");
            }
            out << (b + 1 < qc.s ? ' ' : '\n');
        }
    }
}

inline ParityCheckMatrix load_code_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open code file: " + path);
    if (path.size() >= 6 && path.substr(path.size() - 6) == ".alist") return read_alist(in);
    return expand_qc(read_shift_file(in));
}

}  // namespace admmlp
