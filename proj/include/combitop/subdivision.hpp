#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "combitop/degreewise.hpp"
#include "combitop/sset.hpp"
#include "combitop/sset_maps.hpp"
#include "combitop/sset_ops.hpp"

namespace combitop {

namespace detail {

/*
 * An element u of (sd_r K)_m is a K-simplex of degree r(m+1)-1.  Reading the
 * r join blocks in parallel gives each position j <= m a profile (the r
 * values of u's surjection at in-block position j); u is degenerate in sd K
 * exactly where consecutive profiles agree, because a blockwise collapse is
 * the same thing as precomposition by star^r of a codegeneracy.
 */
inline std::pair<DegeneracyWord, Simplex> sd_split(int r, int m, const Simplex& u) {
    require(u.degree() == r * (m + 1) - 1, "element degree does not match subdivision degree");
    MonotoneMap alpha = word_to_surjection(u.word, u.degree());
    auto profile = [&](int j) {
        std::vector<int> p;
        for (int b = 0; b < r; ++b) p.push_back(alpha(b * (m + 1) + j));
        return p;
    };
    std::vector<int> letters;
    std::vector<std::vector<int>> runs{profile(0)};
    for (int j = 1; j <= m; ++j) {
        std::vector<int> p = profile(j);
        if (p == runs.back())
            letters.push_back(j - 1);
        else
            runs.push_back(std::move(p));
    }
    std::reverse(letters.begin(), letters.end());
    int m0 = static_cast<int>(runs.size()) - 1;
    std::vector<int> vals(static_cast<size_t>(r) * (static_cast<size_t>(m0) + 1));
    for (int b = 0; b < r; ++b)
        for (int k = 0; k <= m0; ++k)
            vals[static_cast<size_t>(b * (m0 + 1) + k)] = runs[static_cast<size_t>(k)][static_cast<size_t>(b)];
    MonotoneMap core(std::move(vals), u.cell.dim);
    return {DegeneracyWord(std::move(letters)), Simplex{surjection_to_word(core), u.cell}};
}

inline std::string sd_label(const SSet& base, const Simplex& u) {
    return "sd[" + join(u.word.letters, ",") + "|" + base.cell(u.cell).label + "]";
}

}  // namespace detail

/**
 * Edgewise subdivision: (sd_r K)_m = K_{r(m+1)-1}, with operators induced by
 * the blockwise r-fold repetition of monotone maps.  The presentation keeps,
 * for every nondegenerate sd-cell, the base simplex it came from.
 */
struct Subdivision {
    int r = 1;
    SSetPtr base;
    SSetPtr sset;
    std::vector<std::vector<Simplex>> cell_elem;     // sd-cell -> base simplex
    std::vector<std::map<Simplex, int>> core_index;  // base simplex -> sd-cell index

    // normal form in sd K of an arbitrary element of (sd K)_m
    Simplex element(int m, const Simplex& u) const {
        auto [word, core] = detail::sd_split(r, m, u);
        int m0 = m - word.size();
        auto it = core_index[static_cast<size_t>(m0)].find(core);
        require(it != core_index[static_cast<size_t>(m0)].end(), "subdivision cell not materialized");
        return Simplex{word, CellRef{m0, it->second}};
    }
};

inline Subdivision sd(int r, const SSetPtr& base) {
    require(r >= 1, "subdivision arity must be positive");
    Subdivision out;
    out.r = r;
    out.base = base;
    const int d = base->top_dim();
    if (d < 0) {
        out.sset = share(SSet{});
        return out;
    }
    // blockwise pigeonhole: every element of degree > r*d collapses somewhere
    int M = r * d;
    int trusted = kComplete;
    if (!base->complete()) {
        trusted = (base->trusted_through() + 1) / r - 1;
        if (trusted < 0)
            throw trust_error("base cells are too shallow for subdivision arity " +
                              std::to_string(r));
        M = std::min(M, trusted);
    }

    SSetBuilder b;
    b.set_trusted(trusted);
    std::vector<std::vector<Simplex>> elems(static_cast<size_t>(M) + 1);
    std::vector<std::map<Simplex, int>> prov(static_cast<size_t>(M) + 1);
    for (int m = 0; m <= M; ++m) {
        for (const Simplex& u : base->simplices_of_degree(r * (m + 1) - 1)) {
            auto [word, core] = detail::sd_split(r, m, u);
            if (!word.empty()) continue;
            std::vector<Simplex> faces;
            for (int i = 0; i <= m && m > 0; ++i) {
                Simplex fu = base->apply(u, star_power(MonotoneMap::coface(m, i), r));
                auto [fw, fcore] = detail::sd_split(r, m - 1, fu);
                int fm = m - 1 - fw.size();
                faces.push_back(Simplex{fw, CellRef{fm, prov[static_cast<size_t>(fm)].at(fcore)}});
            }
            prov[static_cast<size_t>(m)][u] = static_cast<int>(elems[static_cast<size_t>(m)].size());
            elems[static_cast<size_t>(m)].push_back(u);
            b.add_cell(m, detail::sd_label(*base, u), std::move(faces));
        }
    }
    out.sset = share(b.finalize());
    out.cell_elem.resize(static_cast<size_t>(M) + 1);
    out.core_index.resize(static_cast<size_t>(M) + 1);
    for (int m = 0; m <= M; ++m) {
        out.cell_elem[static_cast<size_t>(m)].resize(elems[static_cast<size_t>(m)].size());
        for (const Simplex& u : elems[static_cast<size_t>(m)]) {
            int idx = out.sset->index_of_label(m, detail::sd_label(*base, u));
            require(idx >= 0, "subdivision cell lost after sort");
            out.cell_elem[static_cast<size_t>(m)][static_cast<size_t>(idx)] = u;
            out.core_index[static_cast<size_t>(m)][u] = idx;
        }
    }
    return out;
}

/** The natural map sd_r K -> K: restrict to the last join block. */
inline SMap lambda_map(const Subdivision& s) {
    std::vector<std::vector<Simplex>> img(static_cast<size_t>(std::max(0, s.sset->top_dim() + 1)));
    for (int m = 0; m <= s.sset->top_dim(); ++m)
        for (int i = 0; i < s.sset->n_cells(m); ++i) {
            const Simplex& u = s.cell_elem[static_cast<size_t>(m)][static_cast<size_t>(i)];
            std::vector<int> vals;
            for (int k = 0; k <= m; ++k) vals.push_back((s.r - 1) * (m + 1) + k);
            img[static_cast<size_t>(m)].push_back(s.base->apply(u, MonotoneMap(std::move(vals), u.degree())));
        }
    return SMap(s.sset, s.base, std::move(img));
}

inline SMap lambda_map(int r, const SSetPtr& base) { return lambda_map(sd(r, base)); }

/** Functoriality of sd on a map between the two bases. */
inline SMap sd_map(const Subdivision& a, const Subdivision& b, const SMap& f) {
    require(a.r == b.r, "subdivision arities differ");
    std::vector<std::vector<Simplex>> img(static_cast<size_t>(std::max(0, a.sset->top_dim() + 1)));
    for (int m = 0; m <= a.sset->top_dim(); ++m)
        for (int i = 0; i < a.sset->n_cells(m); ++i) {
            const Simplex& u = a.cell_elem[static_cast<size_t>(m)][static_cast<size_t>(i)];
            img[static_cast<size_t>(m)].push_back(b.element(m, f.image_of(u)));
        }
    return SMap(a.sset, b.sset, std::move(img), false);
}

// ---------------------------------------------------------------------------
// the extension functor, right adjoint to sd

/**
 * (Ex_r K)_m = maps sd_r Delta^m -> K, materialized through degree cap; the
 * result is truncated, exact through cap.
 */
struct Extension {
    int r = 1;
    int cap = 0;
    SSetPtr base;
    SSetPtr sset;
    std::vector<Subdivision> sd_simplex;          // sd Delta^m for m = 0..cap
    std::vector<std::vector<SMap>> elems;         // degree m: maps in key order
    std::vector<std::map<std::string, int>> elem_index;
    std::vector<std::vector<Simplex>> normal;     // element -> normal form in sset

    Simplex element(int m, const SMap& g) const {
        if (m > cap) throw trust_error("extension truncated at degree " + std::to_string(cap));
        return normal[static_cast<size_t>(m)][static_cast<size_t>(
            elem_index[static_cast<size_t>(m)].at(smap_key(g)))];
    }
};

inline Extension ex(int r, const SSetPtr& base, int cap = 2) {
    require(r >= 1, "subdivision arity must be positive");
    require(cap >= 0, "extension cap must be nonnegative");
    if (!base->complete() && base->trusted_through() < cap)
        throw trust_error("extension through degree " + std::to_string(cap) +
                          " needs exact cells through that degree");
    Extension out;
    out.r = r;
    out.cap = cap;
    out.base = base;
    for (int m = 0; m <= cap; ++m) out.sd_simplex.push_back(sd(r, share(standard_simplex(m))));

    out.elems.resize(static_cast<size_t>(cap) + 1);
    out.elem_index.resize(static_cast<size_t>(cap) + 1);
    DegreewiseModel model;
    model.keys.resize(static_cast<size_t>(cap) + 1);
    for (int m = 0; m <= cap; ++m) {
        std::vector<SMap> maps = enumerate_smaps(out.sd_simplex[static_cast<size_t>(m)].sset, base);
        std::sort(maps.begin(), maps.end(),
                  [](const SMap& x, const SMap& y) { return smap_key(x) < smap_key(y); });
        for (int e = 0; e < static_cast<int>(maps.size()); ++e) {
            model.keys[static_cast<size_t>(m)].push_back(smap_key(maps[static_cast<size_t>(e)]));
            out.elem_index[static_cast<size_t>(m)][model.keys[static_cast<size_t>(m)].back()] = e;
        }
        out.elems[static_cast<size_t>(m)] = std::move(maps);
    }

    // operator actions: precompose with sd of the structure maps of Delta
    std::vector<std::vector<SMap>> face_incl(static_cast<size_t>(cap) + 1);
    std::vector<std::vector<SMap>> degen_coll(static_cast<size_t>(cap) + 1);
    for (int m = 1; m <= cap; ++m)
        for (int i = 0; i <= m; ++i)
            face_incl[static_cast<size_t>(m)].push_back(
                sd_map(out.sd_simplex[static_cast<size_t>(m) - 1], out.sd_simplex[static_cast<size_t>(m)],
                       standard_map(MonotoneMap::coface(m, i))));
    for (int m = 0; m + 1 <= cap; ++m)
        for (int j = 0; j <= m; ++j)
            degen_coll[static_cast<size_t>(m)].push_back(
                sd_map(out.sd_simplex[static_cast<size_t>(m) + 1], out.sd_simplex[static_cast<size_t>(m)],
                       standard_map(MonotoneMap::codegeneracy(m, j))));

    model.face = [&out, face_incl](int m, int e, int i) {
        SMap composed = compose(out.elems[static_cast<size_t>(m)][static_cast<size_t>(e)],
                                face_incl[static_cast<size_t>(m)][static_cast<size_t>(i)]);
        return out.elem_index[static_cast<size_t>(m) - 1].at(smap_key(composed));
    };
    model.degen = [&out, degen_coll](int m, int e, int j) {
        SMap composed = compose(out.elems[static_cast<size_t>(m)][static_cast<size_t>(e)],
                                degen_coll[static_cast<size_t>(m)][static_cast<size_t>(j)]);
        return out.elem_index[static_cast<size_t>(m) + 1].at(smap_key(composed));
    };

    Extraction extracted = extract_presentation(model, cap);
    out.sset = share(std::move(extracted.sset));
    out.normal = std::move(extracted.normal);
    return out;
}

/** The adjoint of lambda: K -> Ex_r K, exact through the extension's cap. */
inline SMap rho_map(const Extension& e) {
    require(e.base->top_dim() <= e.cap,
            "extension cap is below the dimension of the base");
    std::vector<std::vector<Simplex>> img(static_cast<size_t>(std::max(0, e.base->top_dim() + 1)));
    for (int m = 0; m <= e.base->top_dim(); ++m)
        for (int i = 0; i < e.base->n_cells(m); ++i) {
            SMap transposed = compose(simplex_map(e.base, nondeg(m, i)),
                                      lambda_map(e.sd_simplex[static_cast<size_t>(m)]));
            img[static_cast<size_t>(m)].push_back(e.element(m, transposed));
        }
    return SMap(e.base, e.sset, std::move(img));
}

inline SMap rho_map(int r, const SSetPtr& base, int cap = 2) { return rho_map(ex(r, base, cap)); }

/** Functoriality of Ex on a map between the two bases. */
inline SMap ex_map(const Extension& a, const Extension& b, const SMap& f) {
    require(a.r == b.r && a.cap == b.cap, "extension parameters differ");
    std::vector<std::vector<Simplex>> img(static_cast<size_t>(std::max(0, a.sset->top_dim() + 1)));
    for (int m = 0; m <= a.sset->top_dim(); ++m)
        for (int i = 0; i < a.sset->n_cells(m); ++i) {
            const SMap& g = a.elems[static_cast<size_t>(m)][static_cast<size_t>(
                a.elem_index[static_cast<size_t>(m)].at(a.sset->cell(CellRef{m, i}).label))];
            img[static_cast<size_t>(m)].push_back(b.element(m, compose(f, g)));
        }
    return SMap(a.sset, b.sset, std::move(img), false);
}

// ---------------------------------------------------------------------------
// the interpolating homotopies between sd(lambda) and lambda(sd)

namespace detail {

// sigma-tilde: the base simplex of degree r^2(n+1)-1 behind a degree-n
// simplex of sd(sd K), unwound through both subdivision layers
inline Simplex unwind_twice(const Subdivision& s1, const Subdivision& s2, int n, const Simplex& z) {
    const int r = s1.r;
    const Simplex& mid_cell =
        s2.cell_elem[static_cast<size_t>(z.cell.dim)][static_cast<size_t>(z.cell.idx)];
    Simplex u = s2.base->apply(mid_cell, star_power(word_to_surjection(z.word, n), r));
    const Simplex& base_cell =
        s1.cell_elem[static_cast<size_t>(u.cell.dim)][static_cast<size_t>(u.cell.idx)];
    return s1.base->apply(base_cell, star_power(word_to_surjection(u.word, u.degree()), r));
}

// the monotone injection star^r[n] -> star^r(star^r[n]) behind h^(i): output
// block g draws from (parenthesis g, last factor) below the pivot and from
// (last parenthesis, factor g) at and above it
inline MonotoneMap h_injection(int r, int n, int i) {
    std::vector<int> vals;
    for (int g = 0; g < r; ++g)
        for (int k = 0; k <= n; ++k)
            vals.push_back(g < i ? g * r * (n + 1) + (r - 1) * (n + 1) + k
                                 : (r - 1) * r * (n + 1) + g * (n + 1) + k);
    return MonotoneMap(std::move(vals), r * r * (n + 1) - 1);
}

// the eta^(i) variant: block i additionally splits at the Delta^1 pivot a
inline MonotoneMap eta_injection(int r, int n, int i, int a) {
    std::vector<int> vals;
    for (int g = 0; g < r; ++g)
        for (int k = 0; k <= n; ++k) {
            int pos;
            if (g < i || (g == i && k <= a))
                pos = g * r * (n + 1) + (r - 1) * (n + 1) + k;
            else
                pos = (r - 1) * r * (n + 1) + g * (n + 1) + k;
            vals.push_back(pos);
        }
    return MonotoneMap(std::move(vals), r * r * (n + 1) - 1);
}

}  // namespace detail

struct Interpolation {
    int r = 1;
    int i = 0;
    Subdivision once;    // sd K
    Subdivision twice;   // sd sd K
    Product cylinder;    // Delta^1 x sd sd K
    SMap h_lo;           // h^(i)
    SMap h_hi;           // h^(i+1)
    SMap eta;            // Delta^1 x sd sd K -> sd K
    bool eta_valid = false;
    bool end0_matches_hi = false;  // restriction at Delta^1-vertex 0
    bool end1_matches_lo = false;  // restriction at Delta^1-vertex 1

    bool ok() const { return eta_valid && end0_matches_hi && end1_matches_lo; }
};

inline SMap interpolation_h(const Subdivision& s1, const Subdivision& s2, int i) {
    const int r = s1.r;
    require(i >= 0 && i <= r, "interpolation index out of range");
    std::vector<std::vector<Simplex>> img(static_cast<size_t>(std::max(0, s2.sset->top_dim() + 1)));
    for (int n = 0; n <= s2.sset->top_dim(); ++n)
        for (int c = 0; c < s2.sset->n_cells(n); ++c) {
            Simplex sigma = detail::unwind_twice(s1, s2, n, nondeg(n, c));
            img[static_cast<size_t>(n)].push_back(
                s1.element(n, s1.base->apply(sigma, detail::h_injection(r, n, i))));
        }
    return SMap(s2.sset, s1.sset, std::move(img));
}

inline Interpolation interpolation_homotopies(const SSetPtr& k, int r, int i) {
    require(r >= 1, "subdivision arity must be positive");
    require(i >= 0 && i < r, "interpolation index out of range");
    Interpolation out;
    out.r = r;
    out.i = i;
    out.once = sd(r, k);
    out.twice = sd(r, out.once.sset);
    out.h_lo = interpolation_h(out.once, out.twice, i);
    out.h_hi = interpolation_h(out.once, out.twice, i + 1);

    SSetPtr interval = share(standard_simplex(1));
    out.cylinder = product(interval, out.twice.sset);
    const SSet& cyl = out.cylinder.sset;
    std::vector<std::vector<Simplex>> img(static_cast<size_t>(std::max(0, cyl.top_dim() + 1)));
    for (int n = 0; n <= cyl.top_dim(); ++n)
        for (int c = 0; c < cyl.n_cells(n); ++c) {
            Simplex x1 = out.cylinder.pr1.cell_image(CellRef{n, c});
            Simplex y = out.cylinder.pr2.cell_image(CellRef{n, c});
            int a = -1;
            for (int v : interval->vertex_path(x1))
                if (detail::standard_vertex_value(*interval, v) == 0) ++a;
            Simplex sigma = detail::unwind_twice(out.once, out.twice, n, y);
            img[static_cast<size_t>(n)].push_back(out.once.element(
                n, out.once.base->apply(sigma, detail::eta_injection(r, n, i, a))));
        }
    out.eta = SMap(share(cyl), out.once.sset, std::move(img), false);
    out.eta_valid = true;
    try {
        out.eta.check_valid();
    } catch (const check_error&) {
        out.eta_valid = false;
    }

    // restrict to the two ends of the cylinder
    auto end_map = [&](int v) {
        std::vector<std::vector<Simplex>> e(
            static_cast<size_t>(std::max(0, out.twice.sset->top_dim() + 1)));
        int vidx = interval->index_of_label(0, std::to_string(v));
        for (int n = 0; n <= out.twice.sset->top_dim(); ++n)
            for (int c = 0; c < out.twice.sset->n_cells(n); ++c) {
                std::vector<int> letters;
                for (int j = n - 1; j >= 0; --j) letters.push_back(j);
                Simplex vert{DegeneracyWord(std::move(letters)), CellRef{0, vidx}};
                e[static_cast<size_t>(n)].push_back(product_element(out.cylinder, vert, nondeg(n, c)));
            }
        return SMap(out.twice.sset, out.eta.src(), std::move(e), false);
    };
    out.end0_matches_hi = smap_key(compose(out.eta, end_map(0))) == smap_key(out.h_hi);
    out.end1_matches_lo = smap_key(compose(out.eta, end_map(1))) == smap_key(out.h_lo);
    return out;
}

}  // namespace combitop
