#pragma once

#include <algorithm>
#include <vector>

#include "combitop/util.hpp"

namespace combitop {

/**
 * Weakly monotone map [p] -> [q] between finite ordinals [n] = {0,...,n}.
 * Stored as the value list; the codomain bound is kept explicitly because it
 * is not recoverable from the values.
 */
struct MonotoneMap {
    std::vector<int> vals;  // vals[i] in [0, codomain]
    int codomain = 0;

    MonotoneMap() = default;
    MonotoneMap(std::vector<int> v, int cod) : vals(std::move(v)), codomain(cod) {
        for (size_t i = 0; i < vals.size(); ++i) {
            require(vals[i] >= 0 && vals[i] <= codomain, "monotone map value out of range");
            if (i) require(vals[i - 1] <= vals[i], "map not weakly monotone");
        }
    }

    int domain() const { return static_cast<int>(vals.size()) - 1; }  // = p
    int operator()(int i) const { return vals[static_cast<size_t>(i)]; }

    bool operator==(const MonotoneMap& o) const {
        return vals == o.vals && codomain == o.codomain;
    }
    bool operator<(const MonotoneMap& o) const {
        if (codomain != o.codomain) return codomain < o.codomain;
        return vals < o.vals;
    }

    bool is_identity() const {
        if (domain() != codomain) return false;
        for (int i = 0; i <= domain(); ++i)
            if (vals[i] != i) return false;
        return true;
    }
    bool is_injective() const {
        for (size_t i = 1; i < vals.size(); ++i)
            if (vals[i] == vals[i - 1]) return false;
        return true;
    }
    bool is_surjective() const {
        if (vals.empty()) return codomain < 0;
        if (vals.front() != 0 || vals.back() != codomain) return false;
        for (size_t i = 1; i < vals.size(); ++i)
            if (vals[i] - vals[i - 1] > 1) return false;
        return true;
    }

    static MonotoneMap identity(int n) {
        std::vector<int> v(n + 1);
        for (int i = 0; i <= n; ++i) v[i] = i;
        return MonotoneMap(std::move(v), n);
    }
    // coface d^i : [n-1] -> [n], skips i
    static MonotoneMap coface(int n, int i) {
        std::vector<int> v;
        v.reserve(n);
        for (int j = 0; j <= n; ++j)
            if (j != i) v.push_back(j);
        return MonotoneMap(std::move(v), n);
    }
    // codegeneracy s^i : [n+1] -> [n], hits i twice
    static MonotoneMap codegeneracy(int n, int i) {
        std::vector<int> v;
        v.reserve(n + 2);
        for (int j = 0; j <= n + 1; ++j) v.push_back(j <= i ? j : j - 1);
        return MonotoneMap(std::move(v), n);
    }
    // constant map [p] -> [q] at value c
    static MonotoneMap constant(int p, int q, int c) {
        return MonotoneMap(std::vector<int>(static_cast<size_t>(p) + 1, c), q);
    }
};

// g([p]->[q]) after f([m]->[p]): the composite [m] -> [q].
inline MonotoneMap compose(const MonotoneMap& g, const MonotoneMap& f) {
    require(f.codomain == g.domain(), "compose: domain mismatch");
    std::vector<int> v(f.vals.size());
    for (size_t i = 0; i < v.size(); ++i) v[i] = g.vals[static_cast<size_t>(f.vals[i])];
    return MonotoneMap(std::move(v), g.codomain);
}

// Unique epi-mono factorization f = inj . surj.
struct EpiMono {
    MonotoneMap surj;  // [p] ->> [k]
    MonotoneMap inj;   // [k] >-> [q]
};

inline EpiMono epi_mono_factor(const MonotoneMap& f) {
    std::vector<int> image;
    for (int v : f.vals)
        if (image.empty() || image.back() != v) image.push_back(v);
    std::vector<int> sv(f.vals.size());
    for (size_t i = 0, k = 0; i < f.vals.size(); ++i) {
        while (image[k] != f.vals[i]) ++k;
        sv[i] = static_cast<int>(k);
    }
    int k = static_cast<int>(image.size()) - 1;
    return EpiMono{MonotoneMap(std::move(sv), k), MonotoneMap(std::move(image), f.codomain)};
}

// Positions i with f(i) = f(i+1); a surjection is determined by them.
inline std::vector<int> repeat_positions(const MonotoneMap& f) {
    std::vector<int> reps;
    for (size_t i = 1; i < f.vals.size(); ++i)
        if (f.vals[i] == f.vals[i - 1]) reps.push_back(static_cast<int>(i) - 1);
    return reps;
}

// r-fold ordered join of [m] with itself: [m] * ... * [m] = [r(m+1)-1].
// Block t holds positions t(m+1)..t(m+1)+m.  A monotone f : [p] -> [q]
// induces the blockwise map between the joins.
inline MonotoneMap star_power(const MonotoneMap& f, int r) {
    int p = f.domain(), q = f.codomain;
    std::vector<int> v;
    v.reserve(static_cast<size_t>(r) * (p + 1));
    for (int t = 0; t < r; ++t)
        for (int j = 0; j <= p; ++j) v.push_back(t * (q + 1) + f.vals[static_cast<size_t>(j)]);
    return MonotoneMap(std::move(v), r * (q + 1) - 1);
}

// All monotone maps [p] -> [q], in lexicographic order.
inline std::vector<MonotoneMap> all_monotone(int p, int q) {
    std::vector<MonotoneMap> out;
    if (p < 0 || q < 0) return out;
    std::vector<int> cur(static_cast<size_t>(p) + 1, 0);
    for (;;) {
        out.emplace_back(cur, q);
        int i = p;
        while (i >= 0 && cur[static_cast<size_t>(i)] == q) --i;
        if (i < 0) break;
        int v = ++cur[static_cast<size_t>(i)];
        for (int j = i + 1; j <= p; ++j) cur[static_cast<size_t>(j)] = v;
    }
    return out;
}

// All monotone surjections [p] ->> [q], lexicographic.
inline std::vector<MonotoneMap> all_surjections(int p, int q) {
    std::vector<MonotoneMap> out;
    if (q > p || q < 0 || p < 0) return out;
    std::vector<int> cur(static_cast<size_t>(p) + 1, 0);
    std::function<void(int)> rec = [&](int i) {
        if (i > p) {
            if (cur[static_cast<size_t>(p)] == q) out.emplace_back(cur, q);
            return;
        }
        for (int step = 0; step <= 1; ++step) {
            int v = cur[static_cast<size_t>(i) - 1] + step;
            if (v > q) continue;
            if (q - v > p - i) continue;  // too far from q to finish
            cur[static_cast<size_t>(i)] = v;
            rec(i + 1);
        }
    };
    rec(1);
    return out;
}

}  // namespace combitop
