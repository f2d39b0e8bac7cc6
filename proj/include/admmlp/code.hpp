#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <optional>
#include <stdexcept>
#include <vector>

#include "admmlp/rng.hpp"

namespace admmlp {

using BitVector = std::vector<std::uint8_t>;

/// Sparse binary parity-check matrix held as check/variable adjacency lists.
/// Immutable after construction; neighborhoods are kept in ascending order.
struct ParityCheckMatrix {
    int m = 0;  // checks
    int n = 0;  // variables
    std::vector<std::vector<int>> check_nbrs;  // per check j: variables in N_c(j)
    std::vector<std::vector<int>> var_nbrs;    // per variable i: checks in N_v(i)

    int check_degree(int j) const { return static_cast<int>(check_nbrs[j].size()); }
    int var_degree(int i) const { return static_cast<int>(var_nbrs[i].size()); }

    int edge_count() const {
        int e = 0;
        for (const auto& c : check_nbrs) e += static_cast<int>(c.size());
        return e;
    }

    int max_check_degree() const {
        int d = 0;
        for (const auto& c : check_nbrs) d = std::max(d, static_cast<int>(c.size()));
        return d;
    }

    /// Builds from the set of (check, variable) incidences.
    static ParityCheckMatrix from_entries(int m, int n,
                                          const std::vector<std::pair<int, int>>& ones) {
        ParityCheckMatrix H;
        H.m = m;
        H.n = n;
        H.check_nbrs.resize(m);
        H.var_nbrs.resize(n);
        for (auto [j, i] : ones) {
            if (j < 0 || j >= m || i < 0 || i >= n)
                throw std::invalid_argument("ParityCheckMatrix: entry out of range");
            H.check_nbrs[j].push_back(i);
            H.var_nbrs[i].push_back(j);
        }
        for (auto& c : H.check_nbrs) std::sort(c.begin(), c.end());
        for (auto& v : H.var_nbrs) std::sort(v.begin(), v.end());
        H.validate();
        return H;
    }

    static ParityCheckMatrix from_dense(const std::vector<std::vector<int>>& rows) {
        std::vector<std::pair<int, int>> ones;
        int m = static_cast<int>(rows.size());
        int n = m > 0 ? static_cast<int>(rows[0].size()) : 0;
        for (int j = 0; j < m; ++j) {
            if (static_cast<int>(rows[j].size()) != n)
                throw std::invalid_argument("ParityCheckMatrix: ragged dense rows");
            for (int i = 0; i < n; ++i)
                if (rows[j][i] & 1) ones.emplace_back(j, i);
        }
        return from_entries(m, n, ones);
    }

    void validate() const {
        if (m <= 0 || n <= 0) throw std::invalid_argument("ParityCheckMatrix: empty");
        for (int j = 0; j < m; ++j) {
            const auto& c = check_nbrs[j];
            if (c.empty())
                throw std::invalid_argument("ParityCheckMatrix: empty check");
            for (std::size_t k = 0; k + 1 < c.size(); ++k)
                if (c[k] >= c[k + 1])
                    throw std::invalid_argument("ParityCheckMatrix: duplicate entry in check");
        }
        for (int i = 0; i < n; ++i) {
            if (var_nbrs[i].empty())
                throw std::invalid_argument("ParityCheckMatrix: isolated variable");
        }
    }
};

/// Grid of p x p circulant blocks. Each cell lists the shifts of the summed
/// shifted identities it contains (empty = all-zeros block); shifts that
/// appear twice cancel mod 2 during expansion.
struct QcShiftMatrix {
    int r = 0;  // macro-rows
    int s = 0;  // macro-columns
    int p = 0;  // expansion factor
    std::vector<std::vector<std::vector<int>>> shifts;  // [r][s] -> shift list

    void validate() const {
        if (r < 1 || s < 1 || p < 1)
            throw std::invalid_argument("QcShiftMatrix: dimensions must be >= 1");
        if (static_cast<int>(shifts.size()) != r)
            throw std::invalid_argument("QcShiftMatrix: bad row count");
        for (const auto& row : shifts) {
            if (static_cast<int>(row.size()) != s)
                throw std::invalid_argument("QcShiftMatrix: bad column count");
            for (const auto& cell : row)
                for (int t : cell)
                    if (t < 0 || t >= p)
                        throw std::invalid_argument("QcShiftMatrix: shift out of range [0, p)");
        }
    }

    bool operator==(const QcShiftMatrix&) const = default;
};

/// Expands circulant blocks: shift t in block (a, b) sets
/// H[a*p + u, b*p + (u + t) mod p] for every u; repeated shifts cancel mod 2.
inline ParityCheckMatrix expand_qc(const QcShiftMatrix& qc) {
    qc.validate();
    int m = qc.r * qc.p;
    int n = qc.s * qc.p;
    std::vector<std::vector<std::uint8_t>> acc(m, std::vector<std::uint8_t>(n, 0));
    for (int a = 0; a < qc.r; ++a)
        for (int b = 0; b < qc.s; ++b)
            for (int t : qc.shifts[a][b])
                for (int u = 0; u < qc.p; ++u)
                    acc[a * qc.p + u][b * qc.p + (u + t) % qc.p] ^= 1;
    std::vector<std::pair<int, int>> ones;
    for (int j = 0; j < m; ++j)
        for (int i = 0; i < n; ++i)
            if (acc[j][i]) ones.emplace_back(j, i);
    return ParityCheckMatrix::from_entries(m, n, ones);
}

inline BitVector syndrome(const ParityCheckMatrix& H, const BitVector& bits) {
    if (static_cast<int>(bits.size()) != H.n)
        throw std::invalid_argument("syndrome: bit vector length mismatch");
    BitVector s(H.m, 0);
    for (int j = 0; j < H.m; ++j) {
        std::uint8_t acc = 0;
        for (int i : H.check_nbrs[j]) acc ^= bits[i];
        s[j] = acc;
    }
    return s;
}

inline bool is_codeword(const ParityCheckMatrix& H, const BitVector& bits) {
    auto s = syndrome(H, bits);
    return std::all_of(s.begin(), s.end(), [](std::uint8_t b) { return b == 0; });
}

namespace detail {

// Bit-packed GF(2) row for Gaussian elimination.
struct PackedRow {
    std::vector<std::uint64_t> w;
    explicit PackedRow(int n) : w((n + 63) / 64, 0) {}
    bool get(int i) const { return (w[i >> 6] >> (i & 63)) & 1; }
    void set(int i) { w[i >> 6] |= std::uint64_t(1) << (i & 63); }
    void operator^=(const PackedRow& o) {
        for (std::size_t k = 0; k < w.size(); ++k) w[k] ^= o.w[k];
    }
};

}  // namespace detail

inline int rank2(const ParityCheckMatrix& H) {
    std::vector<detail::PackedRow> rows;
    rows.reserve(H.m);
    for (int j = 0; j < H.m; ++j) {
        detail::PackedRow r(H.n);
        for (int i : H.check_nbrs[j]) r.set(i);
        rows.push_back(std::move(r));
    }
    int rank = 0;
    for (int col = 0; col < H.n && rank < H.m; ++col) {
        int pivot = -1;
        for (int j = rank; j < H.m; ++j)
            if (rows[j].get(col)) {
                pivot = j;
                break;
            }
        if (pivot < 0) continue;
        std::swap(rows[rank], rows[pivot]);
        for (int j = 0; j < H.m; ++j)
            if (j != rank && rows[j].get(col)) rows[j] ^= rows[rank];
        ++rank;
    }
    return rank;
}

/// Basis of the GF(2) null space {x : Hx = 0 mod 2}; size k = n - rank2(H).
inline std::vector<BitVector> nullspace_basis(const ParityCheckMatrix& H) {
    int n = H.n, m = H.m;
    std::vector<detail::PackedRow> rows;
    rows.reserve(m);
    for (int j = 0; j < m; ++j) {
        detail::PackedRow r(n);
        for (int i : H.check_nbrs[j]) r.set(i);
        rows.push_back(std::move(r));
    }
    std::vector<int> pivot_col;
    int rank = 0;
    for (int col = 0; col < n && rank < m; ++col) {
        int pivot = -1;
        for (int j = rank; j < m; ++j)
            if (rows[j].get(col)) {
                pivot = j;
                break;
            }
        if (pivot < 0) continue;
        std::swap(rows[rank], rows[pivot]);
        for (int j = 0; j < m; ++j)
            if (j != rank && rows[j].get(col)) rows[j] ^= rows[rank];
        pivot_col.push_back(col);
        ++rank;
    }
    std::vector<std::uint8_t> is_pivot(n, 0);
    for (int c : pivot_col) is_pivot[c] = 1;

    std::vector<BitVector> basis;
    for (int free_col = 0; free_col < n; ++free_col) {
        if (is_pivot[free_col]) continue;
        BitVector x(n, 0);
        x[free_col] = 1;
        // Reduced echelon form: pivot row r reads x[pivot_col[r]] = sum of free
        // entries in that row.
        for (int r = 0; r < rank; ++r)
            if (rows[r].get(free_col)) x[pivot_col[r]] = 1;
        basis.push_back(std::move(x));
    }
    return basis;
}

/// Uniformly random GF(2) combination of basis vectors.
inline BitVector sample_codeword(const std::vector<BitVector>& basis, Rng& rng) {
    if (basis.empty()) throw std::invalid_argument("sample_codeword: empty basis");
    BitVector x(basis[0].size(), 0);
    for (const auto& b : basis)
        if (rng.bit())
            for (std::size_t i = 0; i < x.size(); ++i) x[i] ^= b[i];
    return x;
}

/// All 2^k codewords spanned by the basis; keep k small.
inline std::vector<BitVector> enumerate_codewords(const std::vector<BitVector>& basis) {
    if (basis.size() > 20) throw std::invalid_argument("enumerate_codewords: basis too large");
    std::size_t n = basis.empty() ? 0 : basis[0].size();
    std::vector<BitVector> out;
    out.reserve(std::size_t(1) << basis.size());
    for (std::uint32_t mask = 0; mask < (std::uint32_t(1) << basis.size()); ++mask) {
        BitVector x(n, 0);
        for (std::size_t b = 0; b < basis.size(); ++b)
            if ((mask >> b) & 1)
                for (std::size_t i = 0; i < n; ++i) x[i] ^= basis[b][i];
        out.push_back(std::move(x));
    }
    return out;
}

/// Shortest cycle length of the bipartite factor graph (even), or nullopt if
/// acyclic. BFS from each edge: remove the edge, find the shortest remaining
/// path between its endpoints.
inline std::optional<int> girth(const ParityCheckMatrix& H) {
    // Vertices: variables [0, n), checks [n, n+m).
    int n = H.n, m = H.m;
    auto nbrs = [&](int v) -> const std::vector<int>& {
        return v < n ? H.var_nbrs[v] : H.check_nbrs[v - n];
    };
    auto vertex = [&](int from, int to_idx) {
        return from < n ? n + to_idx : to_idx;  // var lists hold checks and vice versa
    };
    int best = -1;
    std::vector<int> dist(n + m);
    std::deque<int> queue;
    for (int i = 0; i < n; ++i) {
        for (int j : H.var_nbrs[i]) {
            int src = i, dst = n + j;
            std::fill(dist.begin(), dist.end(), -1);
            queue.clear();
            dist[src] = 0;
            queue.push_back(src);
            while (!queue.empty()) {
                int u = queue.front();
                queue.pop_front();
                if (best >= 0 && dist[u] + 1 >= best) break;  // cannot improve
                for (int t : nbrs(u)) {
                    int w = vertex(u, t);
                    if (u == src && w == dst) continue;  // the removed edge
                    if (dist[w] < 0) {
                        dist[w] = dist[u] + 1;
                        if (w == dst) {
                            queue.clear();
                            break;
                        }
                        queue.push_back(w);
                    }
                }
            }
            if (dist[dst] >= 0) {
                int cycle = dist[dst] + 1;
                if (best < 0 || cycle < best) best = cycle;
                if (best == 4) return 4;  // bipartite minimum
            }
        }
    }
    if (best < 0) return std::nullopt;
    return best;
}

inline bool girth_at_least(const ParityCheckMatrix& H, int min_girth) {
    auto g = girth(H);
    return !g.has_value() || *g >= min_girth;
}

/// Uniform i.i.d. shifts in [0, p), resampled until the expanded graph has
/// girth >= min_girth.
inline QcShiftMatrix sample_qc_ensemble(int r, int s, int p, int min_girth, Rng& rng,
                                        int max_retries = 10000) {
    if (r < 1 || s < 1 || p < 1)
        throw std::invalid_argument("sample_qc_ensemble: dimensions must be >= 1");
    for (int attempt = 0; attempt < max_retries; ++attempt) {
        QcShiftMatrix qc;
        qc.r = r;
        qc.s = s;
        qc.p = p;
        qc.shifts.assign(r, std::vector<std::vector<int>>(s));
        for (int a = 0; a < r; ++a)
            for (int b = 0; b < s; ++b)
                qc.shifts[a][b] = {static_cast<int>(rng.below(p))};
        if (girth_at_least(expand_qc(qc), min_girth)) return qc;
    }
    throw std::runtime_error("sample_qc_ensemble: retry budget exceeded");
}

}  // namespace admmlp
