#pragma once

#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "combitop/sset.hpp"
#include "combitop/sset_ops.hpp"

namespace combitop {

inline std::string simplex_key(const Simplex& x) {
    return "[" + join(x.word.letters, ",") + ";" + std::to_string(x.cell.dim) + ":" +
           std::to_string(x.cell.idx) + "]";
}

/** Canonical key of a map: images of all nondegenerate cells in cell order. */
inline std::string smap_key(const SMap& f) {
    std::string s;
    for (int d = 0; d <= f.src()->top_dim(); ++d)
        for (int i = 0; i < f.src()->n_cells(d); ++i) s += simplex_key(f.cell_image(CellRef{d, i}));
    return s;
}

namespace detail {
inline int standard_vertex_value(const SSet& delta, int idx) {
    return std::stoi(delta.label(CellRef{0, idx}));
}
}  // namespace detail

/** The map Delta^m -> dst classifying the simplex x (m = degree of x). */
inline SMap simplex_map(const SSetPtr& dst, const Simplex& x) {
    int m = x.degree();
    SSetPtr delta = share(standard_simplex(m));
    std::vector<std::vector<Simplex>> img(static_cast<size_t>(m) + 1);
    for (int d = 0; d <= m; ++d)
        for (int i = 0; i < delta->n_cells(d); ++i) {
            std::vector<int> path = delta->vertex_path(nondeg(d, i));
            std::vector<int> vals;
            for (int v : path) vals.push_back(detail::standard_vertex_value(*delta, v));
            img[static_cast<size_t>(d)].push_back(dst->apply(x, MonotoneMap(std::move(vals), m)));
        }
    return SMap(delta, dst, std::move(img), false);
}

/** The simplicial map Delta^p -> Delta^q induced by a monotone map. */
inline SMap standard_map(const MonotoneMap& f) {
    SSetPtr target = share(standard_simplex(f.codomain));
    return simplex_map(target, target->apply(nondeg(f.codomain, 0), f));
}

/**
 * All simplicial maps src -> dst, by backtracking over the nondegenerate
 * cells of src.  Cells are visited in an order where every face is assigned
 * before the cell itself, so each candidate image is pinned by its face
 * tuple; `allow` can further restrict the image of each cell.
 */
inline std::vector<SMap> enumerate_smaps(
    const SSetPtr& src, const SSetPtr& dst,
    const std::function<bool(const CellRef&, const Simplex&)>& allow = nullptr) {
    require(src->complete(), "map enumeration needs a complete source");
    const int D = src->top_dim();
    std::vector<SMap> out;
    if (D < 0) {
        out.push_back(SMap(src, dst, {}, false));
        return out;
    }

    // candidate images at degree d, indexed by their face tuple
    std::vector<std::map<std::vector<Simplex>, std::vector<Simplex>>> pool(
        static_cast<size_t>(D) + 1);
    for (int d = 0; d <= D; ++d)
        for (const Simplex& y : dst->simplices_of_degree(d)) {
            std::vector<Simplex> tuple;
            for (int i = 0; i <= d && d > 0; ++i)
                tuple.push_back(dst->apply(y, MonotoneMap::coface(d, i)));
            pool[static_cast<size_t>(d)][std::move(tuple)].push_back(y);
        }

    // assignment order: a cell as soon as all its face cells are known,
    // otherwise the next vertex, preferring one linked to the frontier
    std::vector<std::vector<char>> done(static_cast<size_t>(D) + 1);
    for (int d = 0; d <= D; ++d) done[static_cast<size_t>(d)].assign(static_cast<size_t>(src->n_cells(d)), 0);
    std::vector<CellRef> order;
    auto faces_ready = [&](const CellRef& c) {
        for (int i = 0; i <= c.dim; ++i) {
            const Simplex& f = src->face(c, i);
            if (!done[static_cast<size_t>(f.cell.dim)][static_cast<size_t>(f.cell.idx)]) return false;
        }
        return true;
    };
    size_t total = 0;
    for (int d = 0; d <= D; ++d) total += static_cast<size_t>(src->n_cells(d));
    while (order.size() < total) {
        bool found = false;
        for (int d = 1; d <= D && !found; ++d)
            for (int i = 0; i < src->n_cells(d) && !found; ++i)
                if (!done[static_cast<size_t>(d)][static_cast<size_t>(i)] && faces_ready(CellRef{d, i})) {
                    order.push_back(CellRef{d, i});
                    done[static_cast<size_t>(d)][static_cast<size_t>(i)] = 1;
                    found = true;
                }
        if (found) continue;
        int pick = -1;
        for (int i = 0; i < src->n_cells(0) && pick < 0; ++i) {
            if (done[0][static_cast<size_t>(i)]) continue;
            // linked to an already-assigned vertex through an edge?
            for (int e = 0; e < src->n_cells(1) && pick < 0; ++e) {
                const Simplex& a = src->face(CellRef{1, e}, 0);
                const Simplex& b = src->face(CellRef{1, e}, 1);
                if (a.cell.dim != 0 || b.cell.dim != 0) continue;
                if ((a.cell.idx == i && done[0][static_cast<size_t>(b.cell.idx)]) ||
                    (b.cell.idx == i && done[0][static_cast<size_t>(a.cell.idx)]))
                    pick = i;
            }
        }
        if (pick < 0)
            for (int i = 0; i < src->n_cells(0); ++i)
                if (!done[0][static_cast<size_t>(i)]) {
                    pick = i;
                    break;
                }
        order.push_back(CellRef{0, pick});
        done[0][static_cast<size_t>(pick)] = 1;
    }

    std::vector<std::vector<Simplex>> img(static_cast<size_t>(D) + 1);
    for (int d = 0; d <= D; ++d) img[static_cast<size_t>(d)].resize(static_cast<size_t>(src->n_cells(d)));
    std::function<void(size_t)> rec = [&](size_t k) {
        if (k == order.size()) {
            out.push_back(SMap(src, dst, img, false));
            return;
        }
        const CellRef c = order[k];
        std::vector<Simplex> tuple;
        for (int i = 0; i <= c.dim && c.dim > 0; ++i) {
            const Simplex& f = src->face(c, i);
            const Simplex& base = img[static_cast<size_t>(f.cell.dim)][static_cast<size_t>(f.cell.idx)];
            tuple.push_back(dst->apply(base, word_to_surjection(f.word, c.dim - 1)));
        }
        auto it = pool[static_cast<size_t>(c.dim)].find(tuple);
        if (it == pool[static_cast<size_t>(c.dim)].end()) return;
        for (const Simplex& y : it->second) {
            if (allow && !allow(c, y)) continue;
            img[static_cast<size_t>(c.dim)][static_cast<size_t>(c.idx)] = y;
            rec(k + 1);
        }
    };
    rec(0);
    return out;
}

/** Levelwise injectivity on all simplices through the given degree. */
inline bool is_mono_through(const SMap& f, int through) {
    for (int m = 0; m <= through; ++m) {
        std::set<Simplex> seen;
        for (const Simplex& x : f.src()->simplices_of_degree(m))
            if (!seen.insert(f.image_of(x)).second) return false;
    }
    return true;
}

}  // namespace combitop
