#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "combitop/sset.hpp"

namespace combitop {

using BigInt = boost::multiprecision::cpp_int;

struct HomologyGroup {
    long long betti = 0;
    std::vector<BigInt> torsion;  // invariant factors > 1, each dividing the next

    bool trivial() const { return betti == 0 && torsion.empty(); }
    bool operator==(const HomologyGroup& o) const {
        return betti == o.betti && torsion == o.torsion;
    }
    bool operator!=(const HomologyGroup& o) const { return !(*this == o); }

    std::string str() const {
        if (trivial()) return "0";
        std::string s;
        if (betti > 0) s = betti == 1 ? "Z" : "Z^" + std::to_string(betti);
        for (const BigInt& t : torsion) s += (s.empty() ? "Z/" : " + Z/") + t.str();
        return s;
    }
};

/**
 * Normalized chain complex: degree-k module on the alive k-cells, integer
 * boundary maps.  d[k] holds the columns of the boundary C_k -> C_{k-1};
 * d[0] is always empty.  trusted marks through which degree the cell sets
 * are exact.
 */
struct ChainComplex {
    std::vector<long long> ranks;
    std::vector<std::vector<std::map<int, long long>>> d;
    int trusted = kComplete;
    bool vanishes_above = false;  // every degree beyond top() is genuinely zero

    int top() const { return static_cast<int>(ranks.size()) - 1; }

    void check_dd_zero() const {
        for (int k = 2; k <= top(); ++k) {
            for (const auto& col : d[static_cast<size_t>(k)]) {
                std::map<int, long long> acc;
                for (const auto& [r, v] : col)
                    for (const auto& [r2, v2] : d[static_cast<size_t>(k) - 1][static_cast<size_t>(r)])
                        acc[r2] += v * v2;
                for (const auto& [r2, v2] : acc) require(v2 == 0, "dd != 0");
            }
        }
    }
};

/**
 * Chains of an SSet: degree k is free on the nondegenerate k-cells, the
 * boundary is the alternating face sum with degenerate faces dropped.
 */
inline ChainComplex normalized_chains(const SSet& x, int top) {
    require(top >= 0, "negative chain degree");
    if (!x.complete() && top > x.trusted_through())
        throw trust_error("chains requested through degree " + std::to_string(top) +
                          " but cells are only exact through " +
                          std::to_string(x.trusted_through()));
    ChainComplex c;
    c.trusted = x.trusted_through();
    c.vanishes_above = x.complete() && top >= x.top_dim();
    c.ranks.assign(static_cast<size_t>(top) + 1, 0);
    c.d.resize(static_cast<size_t>(top) + 1);
    for (int k = 0; k <= top; ++k) {
        c.ranks[static_cast<size_t>(k)] = x.n_cells(k);
        if (k == 0) continue;
        auto& layer = c.d[static_cast<size_t>(k)];
        layer.resize(static_cast<size_t>(x.n_cells(k)));
        for (int j = 0; j < x.n_cells(k); ++j) {
            const auto& faces = x.cell(k, j).faces;
            for (int i = 0; i <= k; ++i) {
                const Simplex& f = faces[static_cast<size_t>(i)];
                if (!f.nondegenerate()) continue;
                long long& e = layer[static_cast<size_t>(j)][f.cell.idx];
                e += (i % 2 == 0) ? 1 : -1;
                if (e == 0) layer[static_cast<size_t>(j)].erase(f.cell.idx);
            }
        }
    }
    return c;
}

namespace detail {

inline void checked_addmul(long long& dst, long long a, long long b) {
    long long prod, sum;
    if (__builtin_mul_overflow(a, b, &prod) || __builtin_add_overflow(dst, prod, &sum))
        throw check_error("coefficient overflow in sparse reduction");
    dst = sum;
}

// Smith normal form of a small dense matrix; returns the invariant factors.
inline std::vector<BigInt> dense_snf(std::vector<std::vector<BigInt>> m) {
    std::vector<BigInt> factors;
    size_t rows = m.size(), cols = rows ? m[0].size() : 0;
    size_t t = 0;
    while (t < rows && t < cols) {
        // locate a nonzero entry of minimal absolute value
        size_t pi = t, pj = t;
        BigInt best = 0;
        for (size_t i = t; i < rows; ++i)
            for (size_t j = t; j < cols; ++j) {
                if (m[i][j] == 0) continue;
                BigInt a = abs(m[i][j]);
                if (best == 0 || a < best) {
                    best = a;
                    pi = i;
                    pj = j;
                }
            }
        if (best == 0) break;
        std::swap(m[t], m[pi]);
        for (size_t i = 0; i < rows; ++i) std::swap(m[i][t], m[i][pj]);
        bool clean = false;
        while (!clean) {
            clean = true;
            for (size_t i = t + 1; i < rows; ++i) {
                if (m[i][t] == 0) continue;
                BigInt q = m[i][t] / m[t][t];
                for (size_t j = t; j < cols; ++j) m[i][j] -= q * m[t][j];
                if (m[i][t] != 0) {  // remainder smaller than pivot: swap up and restart
                    std::swap(m[t], m[i]);
                    clean = false;
                }
            }
            for (size_t j = t + 1; j < cols; ++j) {
                if (m[t][j] == 0) continue;
                BigInt q = m[t][j] / m[t][t];
                for (size_t i = t; i < rows; ++i) m[i][j] -= q * m[i][t];
                if (m[t][j] != 0) {
                    for (size_t i = 0; i < rows; ++i) std::swap(m[i][t], m[i][j]);
                    clean = false;
                }
            }
            // pivot must divide the rest of the block; if not, fold a bad row in
            if (clean) {
                for (size_t i = t + 1; i < rows && clean; ++i)
                    for (size_t j = t + 1; j < cols && clean; ++j)
                        if (m[i][j] % m[t][t] != 0) {
                            for (size_t jj = t; jj < cols; ++jj) m[t][jj] += m[i][jj];
                            clean = false;
                        }
            }
        }
        factors.push_back(abs(m[t][t]));
        ++t;
    }
    return factors;
}

// Mutable sparse complex supporting unit-pivot cancellation.
struct SparseReducer {
    // per degree k >= 1: columns of d_k (row -> value), and per (k-1)-row the set of columns
    std::vector<std::vector<std::map<int, long long>>> cols;
    std::vector<std::vector<std::set<int>>> row_cols;
    std::vector<std::vector<char>> alive;
    std::vector<long long> cancelled;  // pivots cancelled inside d_k

    explicit SparseReducer(const ChainComplex& c) {
        int top = c.top();
        cols.resize(static_cast<size_t>(top) + 1);
        row_cols.resize(static_cast<size_t>(top) + 1);
        alive.resize(static_cast<size_t>(top) + 1);
        cancelled.assign(static_cast<size_t>(top) + 1, 0);
        for (int k = 0; k <= top; ++k) {
            alive[static_cast<size_t>(k)].assign(static_cast<size_t>(c.ranks[static_cast<size_t>(k)]), 1);
            if (k == 0) continue;
            cols[static_cast<size_t>(k)] = c.d[static_cast<size_t>(k)];
            row_cols[static_cast<size_t>(k)].resize(static_cast<size_t>(c.ranks[static_cast<size_t>(k) - 1]));
            for (size_t j = 0; j < cols[static_cast<size_t>(k)].size(); ++j)
                for (const auto& [r, v] : cols[static_cast<size_t>(k)][j])
                    row_cols[static_cast<size_t>(k)][static_cast<size_t>(r)].insert(static_cast<int>(j));
        }
    }

    int top() const { return static_cast<int>(cols.size()) - 1; }

    void erase_entry(int k, int row, int col) {
        cols[static_cast<size_t>(k)][static_cast<size_t>(col)].erase(row);
        row_cols[static_cast<size_t>(k)][static_cast<size_t>(row)].erase(col);
    }

    void set_entry(int k, int row, int col, long long v) {
        if (v == 0) {
            erase_entry(k, row, col);
            return;
        }
        cols[static_cast<size_t>(k)][static_cast<size_t>(col)][row] = v;
        row_cols[static_cast<size_t>(k)][static_cast<size_t>(row)].insert(col);
    }

    long long entry(int k, int row, int col) const {
        const auto& c = cols[static_cast<size_t>(k)][static_cast<size_t>(col)];
        auto it = c.find(row);
        return it == c.end() ? 0 : it->second;
    }

    // cancel the unit pivot d_k[a][b]; only d_k needs arithmetic, the
    // neighbouring matrices just lose a row / a column (dd = 0 makes the
    // updated entries vanish identically)
    void cancel(int k, int a, int b) {
        long long u = entry(k, a, b);
        require(u == 1 || u == -1, "cancel needs a unit pivot");
        std::vector<int> row_a(row_cols[static_cast<size_t>(k)][static_cast<size_t>(a)].begin(),
                               row_cols[static_cast<size_t>(k)][static_cast<size_t>(a)].end());
        std::vector<std::pair<int, long long>> col_b(cols[static_cast<size_t>(k)][static_cast<size_t>(b)].begin(),
                                                     cols[static_cast<size_t>(k)][static_cast<size_t>(b)].end());
        for (int j : row_a) {
            if (j == b) continue;
            long long cj = entry(k, a, j) * u;  // c / u with u = +-1
            for (const auto& [i, v] : col_b) {
                if (i == a) continue;
                long long e = entry(k, i, j);
                checked_addmul(e, -v, cj);
                set_entry(k, i, j, e);
            }
        }
        // remove row a and column b from d_k
        for (int j : row_a) erase_entry(k, a, j);
        for (const auto& [i, v] : col_b) {
            (void)v;
            erase_entry(k, i, b);
        }
        alive[static_cast<size_t>(k) - 1][static_cast<size_t>(a)] = 0;
        alive[static_cast<size_t>(k)][static_cast<size_t>(b)] = 0;
        // d_{k+1}: row b disappears
        if (k + 1 <= top()) {
            auto cs = row_cols[static_cast<size_t>(k) + 1][static_cast<size_t>(b)];
            for (int j : cs) erase_entry(k + 1, b, j);
        }
        // d_{k-1}: column a disappears
        if (k >= 2) {
            auto rs = cols[static_cast<size_t>(k) - 1][static_cast<size_t>(a)];
            for (const auto& [r, v] : rs) {
                (void)v;
                erase_entry(k - 1, r, a);
            }
        }
        ++cancelled[static_cast<size_t>(k)];
    }

    void reduce() {
        bool progress = true;
        while (progress) {
            progress = false;
            for (int k = 1; k <= top(); ++k) {
                for (size_t b = 0; b < cols[static_cast<size_t>(k)].size(); ++b) {
                    if (!alive[static_cast<size_t>(k)][b]) continue;
                    // choose the +-1 entry with the cheapest fill estimate
                    int best_row = -1;
                    long long best_cost = -1;
                    for (const auto& [r, v] : cols[static_cast<size_t>(k)][b]) {
                        if (v != 1 && v != -1) continue;
                        long long cost =
                            static_cast<long long>(row_cols[static_cast<size_t>(k)][static_cast<size_t>(r)].size() - 1) *
                            static_cast<long long>(cols[static_cast<size_t>(k)][b].size() - 1);
                        if (best_row < 0 || cost < best_cost) {
                            best_row = r;
                            best_cost = cost;
                        }
                    }
                    if (best_row >= 0) {
                        cancel(k, best_row, static_cast<int>(b));
                        progress = true;
                    }
                }
            }
        }
    }

    // dense residual of d_k on the alive cells
    std::vector<std::vector<BigInt>> residual(int k) const {
        std::vector<int> rows, colsel;
        for (size_t i = 0; i < alive[static_cast<size_t>(k) - 1].size(); ++i)
            if (alive[static_cast<size_t>(k) - 1][i]) rows.push_back(static_cast<int>(i));
        for (size_t j = 0; j < alive[static_cast<size_t>(k)].size(); ++j)
            if (alive[static_cast<size_t>(k)][j]) colsel.push_back(static_cast<int>(j));
        std::map<int, int> row_pos;
        for (size_t i = 0; i < rows.size(); ++i) row_pos[rows[i]] = static_cast<int>(i);
        std::vector<std::vector<BigInt>> m(rows.size(), std::vector<BigInt>(colsel.size(), 0));
        for (size_t j = 0; j < colsel.size(); ++j)
            for (const auto& [r, v] : cols[static_cast<size_t>(k)][static_cast<size_t>(colsel[j])])
                m[static_cast<size_t>(row_pos.at(r))][j] = v;
        return m;
    }
};

}  // namespace detail

/** Homology in degrees 0..kmax.  Needs the complex materialized through kmax+1. */
inline std::vector<HomologyGroup> homology_range(const ChainComplex& c, int kmax) {
    require(kmax >= 0, "negative homology degree");
    if (c.trusted != kComplete && kmax + 1 > c.trusted)
        throw trust_error("homology degree " + std::to_string(kmax) +
                          " needs exact cells through degree " + std::to_string(kmax + 1));
    require(kmax + 1 <= c.top() || c.vanishes_above,
            "homology through degree " + std::to_string(kmax) + " needs chains through " +
                std::to_string(kmax + 1));

    detail::SparseReducer red(c);
    red.reduce();

    int top = c.top();
    std::vector<long long> alive_count(static_cast<size_t>(top) + 1, 0);
    for (int k = 0; k <= top; ++k)
        for (char a : red.alive[static_cast<size_t>(k)]) alive_count[static_cast<size_t>(k)] += a;

    std::vector<long long> res_rank(static_cast<size_t>(top) + 2, 0);
    std::vector<std::vector<BigInt>> res_torsion(static_cast<size_t>(top) + 2);
    for (int k = 1; k <= top; ++k) {
        auto m = red.residual(k);
        if (m.empty() || m[0].empty()) continue;
        std::vector<BigInt> f = detail::dense_snf(std::move(m));
        res_rank[static_cast<size_t>(k)] = static_cast<long long>(f.size());
        for (const BigInt& x : f)
            if (x > 1) res_torsion[static_cast<size_t>(k)].push_back(x);
    }

    std::vector<HomologyGroup> out;
    for (int k = 0; k <= kmax; ++k) {
        HomologyGroup h;
        long long a = k <= top ? alive_count[static_cast<size_t>(k)] : 0;
        h.betti = a - res_rank[static_cast<size_t>(k)] -
                  (k + 1 <= top ? res_rank[static_cast<size_t>(k) + 1] : 0);
        if (k + 1 <= top) h.torsion = res_torsion[static_cast<size_t>(k) + 1];
        require(h.betti >= 0, "negative betti number");
        out.push_back(std::move(h));
    }
    return out;
}

inline HomologyGroup homology(const ChainComplex& c, int k) { return homology_range(c, k)[static_cast<size_t>(k)]; }

inline std::vector<HomologyGroup> homology_of(const SSet& x, int kmax) {
    return homology_range(normalized_chains(x, kmax + 1), kmax);
}

/** Rank over the rationals, fraction-free elimination.  Cross-check oracle. */
inline long long rational_rank(std::vector<std::vector<BigInt>> m) {
    if (m.empty() || m[0].empty()) return 0;
    size_t rows = m.size(), cols = m[0].size();
    size_t rank = 0;
    BigInt prev = 1;
    for (size_t c = 0; c < cols && rank < rows; ++c) {
        size_t p = rank;
        while (p < rows && m[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(m[rank], m[p]);
        for (size_t i = rank + 1; i < rows; ++i) {
            for (size_t j = c + 1; j < cols; ++j)
                m[i][j] = (m[rank][c] * m[i][j] - m[i][c] * m[rank][j]) / prev;
            m[i][c] = 0;
        }
        prev = m[rank][c];
        ++rank;
    }
    return static_cast<long long>(rank);
}

// ---------------------------------------------------------------------------
// mapping cones

struct ConeReport {
    bool acyclic = false;
    int through = -1;                   // degrees 0..through were tested
    std::vector<HomologyGroup> groups;  // homology of the cone in those degrees
    std::string str() const {
        std::string s = acyclic ? "acyclic" : "NOT acyclic";
        s += " through degree " + std::to_string(through) + " [";
        for (size_t i = 0; i < groups.size(); ++i)
            s += (i ? ", " : "") + groups[i].str();
        return s + "]";
    }
};

/**
 * Algebraic mapping cone of the induced chain map.  Acyclicity through the
 * requested degree certifies that f is a homology equivalence there.
 */
inline ConeReport cone_equivalence(const SMap& f, int top) {
    const SSet& x = *f.src();
    const SSet& y = *f.dst();
    ChainComplex cx = normalized_chains(x, top + 1);
    ChainComplex cy = normalized_chains(y, top + 1);

    ChainComplex cone;
    // cone degree k sees X_{k-1}, so X may stick out one degree past the cone top
    cone.trusted = std::min(cx.trusted, cy.trusted);
    int ctop = top + 1;
    cone.ranks.assign(static_cast<size_t>(ctop) + 1, 0);
    cone.d.resize(static_cast<size_t>(ctop) + 1);
    auto xrank = [&](int k) { return (k >= 0 && k <= cx.top()) ? cx.ranks[static_cast<size_t>(k)] : 0; };
    auto yrank = [&](int k) { return (k >= 0 && k <= cy.top()) ? cy.ranks[static_cast<size_t>(k)] : 0; };
    // cone degree k = X_{k-1} (first block) + Y_k (second block)
    for (int k = 0; k <= ctop; ++k) cone.ranks[static_cast<size_t>(k)] = xrank(k - 1) + yrank(k);
    for (int k = 1; k <= ctop; ++k) {
        auto& layer = cone.d[static_cast<size_t>(k)];
        layer.resize(static_cast<size_t>(cone.ranks[static_cast<size_t>(k)]));
        long long xoff_here = 0, yoff_here = xrank(k - 1);
        long long yoff_below = xrank(k - 2);
        // X block: -d_X into the X block, f_# into the Y block
        for (int j = 0; j < xrank(k - 1); ++j) {
            auto& col = layer[static_cast<size_t>(xoff_here + j)];
            if (k - 1 >= 1)
                for (const auto& [r, v] : cx.d[static_cast<size_t>(k) - 1][static_cast<size_t>(j)])
                    col[r] -= v;
            Simplex im = f.cell_image(CellRef{k - 1, j});
            if (im.nondegenerate()) col[static_cast<int>(yoff_below) + im.cell.idx] += 1;
            for (auto it = col.begin(); it != col.end();)
                it = it->second == 0 ? col.erase(it) : std::next(it);
        }
        // Y block: d_Y
        for (int j = 0; j < yrank(k); ++j) {
            auto& col = layer[static_cast<size_t>(yoff_here + j)];
            for (const auto& [r, v] : cy.d[static_cast<size_t>(k)][static_cast<size_t>(j)])
                col[static_cast<int>(yoff_below) + r] += v;
        }
    }

    ConeReport rep;
    rep.through = top;
    rep.groups = homology_range(cone, top);
    rep.acyclic = true;
    for (const auto& g : rep.groups)
        if (!g.trivial()) rep.acyclic = false;
    return rep;
}

// ---------------------------------------------------------------------------
// stabilization over level families

struct StabilizationReport {
    std::vector<HomologyGroup> levels;
    int window = 2;
    int stable_from = -1;  // index of the first level of the agreeing window
    bool stabilized = false;
    bool heuristic = true;  // always: truncation evidence, not proof
    HomologyGroup stable_value;
};

inline StabilizationReport stabilize_levels(const std::vector<HomologyGroup>& levels, int window) {
    require(window >= 1, "stabilization window must be positive");
    StabilizationReport rep;
    rep.levels = levels;
    rep.window = window;
    for (size_t i = 0; i + static_cast<size_t>(window) <= levels.size(); ++i) {
        bool ok = true;
        for (int j = 1; j < window; ++j)
            if (levels[i + static_cast<size_t>(j)] != levels[i]) ok = false;
        if (ok) {
            rep.stable_from = static_cast<int>(i);
            rep.stabilized = true;
            rep.stable_value = levels[i];
            break;
        }
    }
    return rep;
}

}  // namespace combitop
