#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <numeric>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "combitop/monotone.hpp"
#include "combitop/util.hpp"

namespace combitop {

/**
 * Degeneracy word in normal form: s_{i_1} s_{i_2} ... s_{i_k} with
 * i_1 > i_2 > ... > i_k.  The empty word marks a nondegenerate simplex.
 */
struct DegeneracyWord {
    std::vector<int> letters;

    DegeneracyWord() = default;
    explicit DegeneracyWord(std::vector<int> ls) : letters(std::move(ls)) {
        for (size_t i = 1; i < letters.size(); ++i)
            require(letters[i - 1] > letters[i], "degeneracy word not strictly decreasing");
        if (!letters.empty()) require(letters.back() >= 0, "negative degeneracy index");
    }

    int size() const { return static_cast<int>(letters.size()); }
    bool empty() const { return letters.empty(); }
    bool operator==(const DegeneracyWord& o) const { return letters == o.letters; }
    bool operator<(const DegeneracyWord& o) const { return letters < o.letters; }
};

// The surjection [m] ->> [m-k] whose repeated positions are the word's letters.
inline MonotoneMap word_to_surjection(const DegeneracyWord& w, int m) {
    std::set<int> reps(w.letters.begin(), w.letters.end());
    std::vector<int> v(static_cast<size_t>(m) + 1);
    v[0] = 0;
    for (int i = 1; i <= m; ++i)
        v[static_cast<size_t>(i)] = v[static_cast<size_t>(i) - 1] + (reps.count(i - 1) ? 0 : 1);
    return MonotoneMap(std::move(v), m - w.size());
}

inline DegeneracyWord surjection_to_word(const MonotoneMap& s) {
    std::vector<int> reps = repeat_positions(s);
    std::reverse(reps.begin(), reps.end());
    return DegeneracyWord(std::move(reps));
}

// Reference to a nondegenerate cell, by dimension and canonical index.
struct CellRef {
    int dim = -1;
    int idx = -1;
    bool operator==(const CellRef& o) const { return dim == o.dim && idx == o.idx; }
    bool operator<(const CellRef& o) const {
        return dim != o.dim ? dim < o.dim : idx < o.idx;
    }
};

/**
 * A (possibly degenerate) simplex in normal form: the degeneracy word applied
 * to a nondegenerate cell.  Its degree is cell.dim + |word|.
 */
struct Simplex {
    DegeneracyWord word;
    CellRef cell;

    int degree() const { return cell.dim + word.size(); }
    bool nondegenerate() const { return word.empty(); }
    bool operator==(const Simplex& o) const { return word == o.word && cell == o.cell; }
    bool operator<(const Simplex& o) const {
        if (!(cell == o.cell)) return cell < o.cell;
        return word < o.word;
    }
};

inline Simplex nondeg(int dim, int idx) { return Simplex{DegeneracyWord{}, CellRef{dim, idx}}; }

constexpr int kComplete = 1 << 29;

/**
 * Finite (or truncated) simplicial set, presented by its nondegenerate cells.
 * Each n-cell stores its n+1 faces as normal-form simplices of degree n-1.
 * Cells are canonically ordered within each dimension by their label; labels
 * are construction-derived and unique per dimension, so equal constructions
 * yield byte-identical encodings.
 *
 * trusted_through: cells are complete in every dimension <= trusted_through.
 * kComplete means the presentation is exact in all degrees.
 */
class SSet {
public:
    struct Cell {
        std::string label;
        std::vector<Simplex> faces;  // n+1 normal-form faces for an n-cell; empty for vertices
    };

    SSet() = default;

    int top_dim() const { return static_cast<int>(cells_.size()) - 1; }
    int trusted_through() const { return trusted_; }
    bool complete() const { return trusted_ == kComplete; }

    int n_cells(int dim) const {
        if (dim < 0 || dim > top_dim()) return 0;
        return static_cast<int>(cells_[static_cast<size_t>(dim)].size());
    }
    int total_cells() const {
        int t = 0;
        for (int d = 0; d <= top_dim(); ++d) t += n_cells(d);
        return t;
    }
    const Cell& cell(int dim, int idx) const { return cells_[static_cast<size_t>(dim)][static_cast<size_t>(idx)]; }
    const Cell& cell(const CellRef& r) const { return cell(r.dim, r.idx); }
    const std::string& label(const CellRef& r) const { return cell(r).label; }

    const Simplex& face(const CellRef& r, int i) const { return cell(r).faces[static_cast<size_t>(i)]; }

    int index_of_label(int dim, const std::string& label) const {
        const auto& v = cells_[static_cast<size_t>(dim)];
        auto it = std::lower_bound(v.begin(), v.end(), label,
                                   [](const Cell& c, const std::string& l) { return c.label < l; });
        if (it == v.end() || it->label != label) return -1;
        return static_cast<int>(it - v.begin());
    }

    /** The action of a monotone map on a simplex, in normal form. */
    Simplex apply(const Simplex& x, const MonotoneMap& alpha) const {
        require(alpha.codomain == x.degree(), "apply: codomain must equal simplex degree");
        MonotoneMap sigma = word_to_surjection(x.word, x.degree());
        MonotoneMap beta = compose(sigma, alpha);
        EpiMono em = epi_mono_factor(beta);
        Simplex core = eval_injective(x.cell, em.inj);
        MonotoneMap sigma2 = word_to_surjection(core.word, em.inj.domain());
        MonotoneMap total = compose(sigma2, em.surj);
        return Simplex{surjection_to_word(total), core.cell};
    }

    Simplex face_of(const Simplex& x, int i) const {
        return apply(x, MonotoneMap::coface(x.degree(), i));
    }
    Simplex degeneracy_of(const Simplex& x, int i) const {
        return apply(x, MonotoneMap::codegeneracy(x.degree(), i));
    }

    /** Vertex sequence of a simplex: the images of the vertices 0..degree. */
    std::vector<int> vertex_path(const Simplex& x) const {
        std::vector<int> out;
        for (int i = 0; i <= x.degree(); ++i) {
            Simplex v = apply(x, MonotoneMap(std::vector<int>{i}, x.degree()));
            require(v.word.empty() && v.cell.dim == 0, "vertex of simplex not a 0-cell");
            out.push_back(v.cell.idx);
        }
        return out;
    }

    /** All degree-m simplices (nondegenerate cells with all degeneracy words). */
    std::vector<Simplex> simplices_of_degree(int m) const {
        std::vector<Simplex> out;
        for (int d = std::min(m, top_dim()); d >= 0; --d) {
            for (const MonotoneMap& s : all_surjections(m, d)) {
                DegeneracyWord w = surjection_to_word(s);
                for (int i = 0; i < n_cells(d); ++i) out.push_back(Simplex{w, CellRef{d, i}});
            }
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    /** Euler characteristic of the nondegenerate cell counts. */
    long long euler_characteristic() const {
        long long chi = 0;
        for (int d = 0; d <= top_dim(); ++d) chi += (d % 2 == 0 ? 1 : -1) * n_cells(d);
        return chi;
    }

    /** Canonical textual encoding; equal presentations give equal strings. */
    std::string encode() const {
        std::string s = complete() ? "complete" : ("trusted=" + std::to_string(trusted_));
        for (int d = 0; d <= top_dim(); ++d) {
            s += "\n[" + std::to_string(d) + "]";
            for (int i = 0; i < n_cells(d); ++i) {
                const Cell& c = cell(d, i);
                s += "\n " + c.label + " :";
                for (const Simplex& f : c.faces) {
                    s += " (";
                    for (size_t k = 0; k < f.word.letters.size(); ++k) {
                        if (k) s += ".";
                        s += std::to_string(f.word.letters[k]);
                    }
                    s += "|" + std::to_string(f.cell.dim) + "," + std::to_string(f.cell.idx) + ")";
                }
            }
        }
        return s;
    }

    void check_valid() const {
        for (int n = 0; n <= top_dim(); ++n) {
            const auto& layer = cells_[static_cast<size_t>(n)];
            for (size_t i = 1; i < layer.size(); ++i)
                require(layer[i - 1].label < layer[i].label, "cells not canonically sorted");
            for (const Cell& c : layer) {
                require(static_cast<int>(c.faces.size()) == (n == 0 ? 0 : n + 1),
                        "face list size mismatch for " + c.label);
                for (const Simplex& f : c.faces) {
                    require(f.degree() == n - 1, "face degree mismatch in " + c.label);
                    require(f.cell.dim >= 0 && f.cell.dim <= top_dim() &&
                                f.cell.idx >= 0 && f.cell.idx < n_cells(f.cell.dim),
                            "face cell out of range in " + c.label);
                }
            }
        }
        // simplicial identity d_i d_j = d_{j-1} d_i (i < j) through the stored encoding
        for (int n = 2; n <= top_dim(); ++n) {
            for (int ci = 0; ci < n_cells(n); ++ci) {
                Simplex x = nondeg(n, ci);
                for (int j = 1; j <= n; ++j) {
                    for (int i = 0; i < j; ++i) {
                        Simplex a = face_of(face_of(x, j), i);
                        Simplex b = face_of(face_of(x, i), j - 1);
                        require(a == b, "simplicial identity fails at " + cell(n, ci).label);
                    }
                }
            }
        }
    }

private:
    Simplex eval_injective(CellRef c, const MonotoneMap& inj) const {
        if (inj.is_identity()) return Simplex{DegeneracyWord{}, c};
        std::vector<char> hit(static_cast<size_t>(c.dim) + 1, 0);
        for (int v : inj.vals) hit[static_cast<size_t>(v)] = 1;
        int j = c.dim;
        while (hit[static_cast<size_t>(j)]) --j;
        std::vector<int> shifted;
        shifted.reserve(inj.vals.size());
        for (int v : inj.vals) shifted.push_back(v > j ? v - 1 : v);
        MonotoneMap rest(std::move(shifted), c.dim - 1);
        return apply(face(c, j), rest);
    }

    std::vector<std::vector<Cell>> cells_;
    int trusted_ = kComplete;

    friend class SSetBuilder;
};

using SSetPtr = std::shared_ptr<const SSet>;

inline SSetPtr share(SSet x) { return std::make_shared<const SSet>(std::move(x)); }

/**
 * Incremental constructor.  Cells are added in any order (faces may reference
 * only cells added earlier, by their provisional ref); finalize() sorts each
 * dimension by label, remaps references, and validates the result.
 */
class SSetBuilder {
public:
    CellRef add_cell(int dim, std::string label, std::vector<Simplex> faces = {}) {
        require(dim >= 0, "negative cell dimension");
        if (static_cast<int>(work_.size()) <= dim) work_.resize(static_cast<size_t>(dim) + 1);
        work_[static_cast<size_t>(dim)].push_back(SSet::Cell{std::move(label), std::move(faces)});
        return CellRef{dim, static_cast<int>(work_[static_cast<size_t>(dim)].size()) - 1};
    }

    void set_trusted(int t) { trusted_ = t; }

    SSet finalize(bool validate = true) {
        SSet out;
        out.trusted_ = trusted_;
        out.cells_.resize(work_.size());
        std::vector<std::vector<int>> remap(work_.size());
        for (size_t d = 0; d < work_.size(); ++d) {
            std::vector<int> order(work_[d].size());
            std::iota(order.begin(), order.end(), 0);
            std::sort(order.begin(), order.end(), [&](int a, int b) {
                return work_[d][static_cast<size_t>(a)].label < work_[d][static_cast<size_t>(b)].label;
            });
            remap[d].resize(work_[d].size());
            for (size_t k = 0; k < order.size(); ++k) {
                if (k) require(work_[d][static_cast<size_t>(order[k - 1])].label !=
                                   work_[d][static_cast<size_t>(order[k])].label,
                               "duplicate cell label in dimension " + std::to_string(d) + ": " +
                                   work_[d][static_cast<size_t>(order[k])].label);
                remap[d][static_cast<size_t>(order[k])] = static_cast<int>(k);
            }
            out.cells_[d].resize(work_[d].size());
            for (size_t i = 0; i < work_[d].size(); ++i)
                out.cells_[d][static_cast<size_t>(remap[d][i])] = std::move(work_[d][i]);
        }
        for (auto& layer : out.cells_)
            for (auto& c : layer)
                for (Simplex& f : c.faces)
                    f.cell.idx = remap[static_cast<size_t>(f.cell.dim)][static_cast<size_t>(f.cell.idx)];
        work_.clear();
        if (validate) out.check_valid();
        return out;
    }

private:
    std::vector<std::vector<SSet::Cell>> work_;
    int trusted_ = kComplete;
};

/**
 * Map of simplicial sets, stored per nondegenerate source cell.  The
 * constructor verifies commutation with all face maps (and hence with all
 * operators, by normal-form functoriality).
 */
class SMap {
public:
    SMap() = default;
    SMap(SSetPtr src, SSetPtr dst, std::vector<std::vector<Simplex>> img, bool check = true)
        : src_(std::move(src)), dst_(std::move(dst)), img_(std::move(img)) {
        require(static_cast<int>(img_.size()) >= src_->top_dim() + 1 || src_->top_dim() < 0,
                "image table too small");
        if (check) check_valid();
    }

    const SSetPtr& src() const { return src_; }
    const SSetPtr& dst() const { return dst_; }

    const Simplex& cell_image(const CellRef& r) const {
        return img_[static_cast<size_t>(r.dim)][static_cast<size_t>(r.idx)];
    }

    Simplex image_of(const Simplex& x) const {
        const Simplex& base = cell_image(x.cell);
        if (x.word.empty()) return base;
        return dst_->apply(base, word_to_surjection(x.word, x.degree()));
    }

    void check_valid() const {
        for (int n = 0; n <= src_->top_dim(); ++n) {
            require(static_cast<int>(img_[static_cast<size_t>(n)].size()) == src_->n_cells(n),
                    "image table size mismatch at dim " + std::to_string(n));
            for (int i = 0; i < src_->n_cells(n); ++i) {
                const Simplex& y = img_[static_cast<size_t>(n)][static_cast<size_t>(i)];
                require(y.degree() == n, "image degree mismatch for " + src_->cell(n, i).label);
                for (int k = 0; k <= n && n > 0; ++k) {
                    Simplex lhs = dst_->apply(y, MonotoneMap::coface(n, k));
                    Simplex rhs = image_of(src_->face(CellRef{n, i}, k));
                    require(lhs == rhs, "map does not commute with face " + std::to_string(k) +
                                            " on " + src_->cell(n, i).label);
                }
            }
        }
    }

private:
    SSetPtr src_, dst_;
    std::vector<std::vector<Simplex>> img_;
};

inline SMap identity_map(const SSetPtr& x) {
    std::vector<std::vector<Simplex>> img(static_cast<size_t>(std::max(0, x->top_dim() + 1)));
    for (int d = 0; d <= x->top_dim(); ++d)
        for (int i = 0; i < x->n_cells(d); ++i) img[static_cast<size_t>(d)].push_back(nondeg(d, i));
    return SMap(x, x, std::move(img), false);
}

inline SMap compose(const SMap& g, const SMap& f) {
    require(f.dst().get() == g.src().get() || f.dst()->encode() == g.src()->encode(),
            "compose: middle objects differ");
    std::vector<std::vector<Simplex>> img(static_cast<size_t>(std::max(0, f.src()->top_dim() + 1)));
    for (int d = 0; d <= f.src()->top_dim(); ++d)
        for (int i = 0; i < f.src()->n_cells(d); ++i)
            img[static_cast<size_t>(d)].push_back(g.image_of(f.cell_image(CellRef{d, i})));
    return SMap(f.src(), g.dst(), std::move(img), false);
}

/**
 * Exact isomorphism test by backtracking over dimension layers, with a color
 * refinement prepass.  Intended for desk-scale inputs.
 */
inline bool isomorphic(const SSet& x, const SSet& y) {
    if (x.top_dim() != y.top_dim()) return false;
    int top = x.top_dim();
    for (int d = 0; d <= top; ++d)
        if (x.n_cells(d) != y.n_cells(d)) return false;
    if (top < 0) return true;

    // color refinement on both sides simultaneously
    auto colors_of = [&](const SSet& s) {
        std::vector<std::vector<long long>> col(static_cast<size_t>(top) + 1);
        for (int d = 0; d <= top; ++d) col[static_cast<size_t>(d)].assign(static_cast<size_t>(s.n_cells(d)), d);
        return col;
    };
    auto cx = colors_of(x), cy = colors_of(y);
    for (int round = 0; round < top + 2; ++round) {
        std::map<std::vector<long long>, long long> next_ids;
        auto refine = [&](const SSet& s, std::vector<std::vector<long long>>& col) {
            std::vector<std::vector<long long>> nc(col.size());
            for (int d = 0; d <= top; ++d) {
                for (int i = 0; i < s.n_cells(d); ++i) {
                    std::vector<long long> sig{col[static_cast<size_t>(d)][static_cast<size_t>(i)]};
                    for (const Simplex& f : s.cell(d, i).faces) {
                        sig.push_back(static_cast<long long>(f.word.letters.size()) * 1000003 +
                                      (f.word.letters.empty() ? 0 : f.word.letters[0]));
                        sig.push_back(col[static_cast<size_t>(f.cell.dim)][static_cast<size_t>(f.cell.idx)]);
                    }
                    auto [it, ok] = next_ids.emplace(sig, static_cast<long long>(next_ids.size()));
                    (void)ok;
                    nc[static_cast<size_t>(d)].push_back(it->second);
                }
            }
            col = nc;
        };
        refine(x, cx);
        refine(y, cy);
    }
    for (int d = 0; d <= top; ++d) {
        auto a = cx[static_cast<size_t>(d)];
        auto b = cy[static_cast<size_t>(d)];
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        if (a != b) return false;
    }

    // dimension-by-dimension backtracking
    std::vector<std::vector<int>> assign(static_cast<size_t>(top) + 1);
    for (int d = 0; d <= top; ++d) assign[static_cast<size_t>(d)].assign(static_cast<size_t>(x.n_cells(d)), -1);

    std::function<bool(int, int, std::vector<char>&)> place = [&](int d, int i,
                                                                  std::vector<char>& used) -> bool {
        if (i == x.n_cells(d)) {
            if (d == top) return true;
            std::vector<char> next_used(static_cast<size_t>(x.n_cells(d + 1)), 0);
            return place(d + 1, 0, next_used);
        }
        for (int j = 0; j < y.n_cells(d); ++j) {
            if (used[static_cast<size_t>(j)]) continue;
            if (cx[static_cast<size_t>(d)][static_cast<size_t>(i)] !=
                cy[static_cast<size_t>(d)][static_cast<size_t>(j)])
                continue;
            bool ok = true;
            if (d > 0) {
                const auto& fx = x.cell(d, i).faces;
                const auto& fy = y.cell(d, j).faces;
                for (size_t k = 0; k < fx.size() && ok; ++k) {
                    if (!(fx[k].word == fy[k].word)) ok = false;
                    else if (assign[static_cast<size_t>(fx[k].cell.dim)][static_cast<size_t>(fx[k].cell.idx)] !=
                             fy[k].cell.idx)
                        ok = false;
                }
            }
            if (!ok) continue;
            used[static_cast<size_t>(j)] = 1;
            assign[static_cast<size_t>(d)][static_cast<size_t>(i)] = j;
            if (place(d, i + 1, used)) return true;
            used[static_cast<size_t>(j)] = 0;
            assign[static_cast<size_t>(d)][static_cast<size_t>(i)] = -1;
        }
        return false;
    };
    std::vector<char> used0(static_cast<size_t>(x.n_cells(0)), 0);
    return place(0, 0, used0);
}

}  // namespace combitop
