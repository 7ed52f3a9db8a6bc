#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "combitop/degreewise.hpp"
#include "combitop/sset.hpp"
#include "combitop/sset_maps.hpp"
#include "combitop/sset_ops.hpp"

namespace combitop {

/**
 * Relative internal hom of sigma : Delta^n -> L against f : K -> L,
 * materialized degreewise through the cap.  A degree-m element is a map
 * h : Delta^m x Delta^n -> K with f h = sigma pr2, equivalently a map
 * Delta^m x Delta^n -> Delta^n x_L K over Delta^n.
 */
struct RelativeHom {
    int n = 0;
    int cap = 0;
    SSetPtr base;  // Delta^n
    SSetPtr sset;  // presentation, trusted through cap
    std::vector<Product> prisms;
    std::vector<std::vector<SMap>> elems;  // sorted by canonical map key
    std::vector<std::map<std::string, int>> elem_index;
    std::vector<std::vector<Simplex>> normal;

    Simplex element(int m, const SMap& h) const {
        require(m >= 0, "negative degree");
        if (m > cap)
            throw trust_error("relative hom is exact only through degree " + std::to_string(cap));
        auto it = elem_index[static_cast<size_t>(m)].find(smap_key(h));
        require(it != elem_index[static_cast<size_t>(m)].end(),
                "map is not an element of the relative hom");
        return normal[static_cast<size_t>(m)][static_cast<size_t>(it->second)];
    }
};

inline RelativeHom relative_hom(const SMap& sigma, const SMap& f, int cap = 3) {
    require(cap >= 0, "cap must be nonnegative");
    require(sigma.dst().get() == f.dst().get() || sigma.dst()->encode() == f.dst()->encode(),
            "sigma must land in the target of f");
    const int n = sigma.src()->top_dim();
    require(sigma.src()->encode() == standard_simplex(n).encode(),
            "sigma must be defined on a standard simplex");
    if (f.src()->trusted_through() < cap + n)
        throw trust_error("relative hom through degree " + std::to_string(cap) +
                          " needs the source trusted through degree " + std::to_string(cap + n));

    RelativeHom out;
    out.n = n;
    out.cap = cap;
    out.base = share(standard_simplex(n));
    for (int m = 0; m <= cap; ++m)
        out.prisms.push_back(product(share(standard_simplex(m)), out.base));

    out.elems.resize(static_cast<size_t>(cap) + 1);
    out.elem_index.resize(static_cast<size_t>(cap) + 1);
    DegreewiseModel model;
    model.keys.resize(static_cast<size_t>(cap) + 1);
    for (int m = 0; m <= cap; ++m) {
        const Product& pr = out.prisms[static_cast<size_t>(m)];
        auto allow = [&](const CellRef& c, const Simplex& y) {
            return f.image_of(y) == sigma.image_of(pr.pr2.cell_image(c));
        };
        std::vector<SMap> found = enumerate_smaps(pr.pr1.src(), f.src(), allow);
        std::sort(found.begin(), found.end(),
                  [](const SMap& a, const SMap& b) { return smap_key(a) < smap_key(b); });
        for (int e = 0; e < static_cast<int>(found.size()); ++e) {
            model.keys[static_cast<size_t>(m)].push_back(smap_key(found[static_cast<size_t>(e)]));
            out.elem_index[static_cast<size_t>(m)][model.keys[static_cast<size_t>(m)].back()] = e;
        }
        out.elems[static_cast<size_t>(m)] = std::move(found);
    }

    // structure maps act by precomposing with Delta^m-coordinate cofaces and
    // codegeneracies crossed with the identity of the base
    std::vector<std::vector<SMap>> face_incl(static_cast<size_t>(cap) + 1);
    std::vector<std::vector<SMap>> degen_coll(static_cast<size_t>(cap) + 1);
    SMap base_id = identity_map(out.base);
    for (int m = 1; m <= cap; ++m)
        for (int i = 0; i <= m; ++i)
            face_incl[static_cast<size_t>(m)].push_back(
                product_map(out.prisms[static_cast<size_t>(m) - 1], out.prisms[static_cast<size_t>(m)],
                            standard_map(MonotoneMap::coface(m, i)), base_id));
    for (int m = 0; m < cap; ++m)
        for (int j = 0; j <= m; ++j)
            degen_coll[static_cast<size_t>(m)].push_back(
                product_map(out.prisms[static_cast<size_t>(m) + 1], out.prisms[static_cast<size_t>(m)],
                            standard_map(MonotoneMap::codegeneracy(m, j)), base_id));
    model.face = [&out, &face_incl](int m, int e, int i) {
        SMap composed = compose(out.elems[static_cast<size_t>(m)][static_cast<size_t>(e)],
                                face_incl[static_cast<size_t>(m)][static_cast<size_t>(i)]);
        return out.elem_index[static_cast<size_t>(m) - 1].at(smap_key(composed));
    };
    model.degen = [&out, &degen_coll](int m, int e, int j) {
        SMap composed = compose(out.elems[static_cast<size_t>(m)][static_cast<size_t>(e)],
                                degen_coll[static_cast<size_t>(m)][static_cast<size_t>(j)]);
        return out.elem_index[static_cast<size_t>(m) + 1].at(smap_key(composed));
    };

    Extraction extracted = extract_presentation(model, cap);
    out.sset = share(std::move(extracted.sset));
    out.normal = std::move(extracted.normal);
    return out;
}

// ---------------------------------------------------------------------------
// sphere filling

struct KanReport {
    int dim = 0;
    bool pass = true;
    int capped_at = -1;  // first filler degree past the trusted range, if any
    int failed_m = -1;
    std::string witness;

    bool ok() const { return pass && capped_at < 0; }
    std::string str() const {
        if (!pass)
            return "sphere of dimension " + std::to_string(failed_m - 1) +
                   " admits no filler: " + witness;
        if (capped_at >= 0)
            return "fillers exist below degree " + std::to_string(capped_at) +
                   ", data beyond is untrusted";
        return "all spheres through dimension " + std::to_string(dim) + " fill";
    }
};

/**
 * Filler search for every boundary sphere of dimension <= dim (so fillers
 * live in degrees up to dim+1).  Degrees whose data lies past the trusted
 * range are reported as capped, never passed silently.
 */
inline KanReport check_acyclic_kan(const SSetPtr& x, int dim) {
    require(dim >= 0, "dim must be nonnegative");
    KanReport rep;
    rep.dim = dim;
    for (int m = 0; m <= dim + 1; ++m) {
        if (x->trusted_through() < m) {
            rep.capped_at = m;
            return rep;
        }
        if (m == 0) {
            if (x->n_cells(0) == 0) {
                rep.pass = false;
                rep.failed_m = 0;
                rep.witness = "no vertex";
                return rep;
            }
            continue;
        }
        Inclusion bd = boundary_or_horn(m, -1);
        std::vector<int> opposite;  // cell index of the face missing vertex i
        for (int i = 0; i <= m; ++i) {
            std::vector<std::string> parts;
            for (int v = 0; v <= m; ++v)
                if (v != i) parts.push_back(std::to_string(v));
            int idx = bd.incl.src()->index_of_label(m - 1, join(parts, "."));
            require(idx >= 0, "boundary face cell not found");
            opposite.push_back(idx);
        }
        std::vector<Simplex> fillers = x->simplices_of_degree(m);
        for (const SMap& g : enumerate_smaps(bd.incl.src(), x)) {
            bool filled = false;
            for (const Simplex& z : fillers) {
                bool match = true;
                for (int i = 0; i <= m && match; ++i)
                    match = x->face_of(z, i) ==
                            g.cell_image(CellRef{m - 1, opposite[static_cast<size_t>(i)]});
                if (match) {
                    filled = true;
                    break;
                }
            }
            if (!filled) {
                rep.pass = false;
                rep.failed_m = m;
                rep.witness = smap_key(g);
                return rep;
            }
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// one step of horn filling

struct HornFill {
    SSet sset;
    SMap incl;  // the anodyne inclusion of the input
    int attached = 0;
};

/** Attaches one Delta^n along every map Lambda^n_k -> x, in one pushout. */
inline HornFill horn_fill_step(const SSetPtr& x, int n, int k) {
    require(n >= 1 && k >= 0 && k <= n, "horn index out of range");
    Inclusion horn = boundary_or_horn(n, k);
    std::vector<SMap> maps = enumerate_smaps(horn.incl.src(), x);
    if (maps.empty()) return HornFill{*x, identity_map(x), 0};

    // one disjoint copy of the horn (resp. the simplex) per attaching map
    auto fold = [](const SSetPtr& piece, size_t count, std::vector<SMap>& incls) {
        SSetPtr acc = piece;
        incls.assign(1, identity_map(piece));
        for (size_t i = 1; i < count; ++i) {
            Coproduct cp = coproduct(acc, piece);
            for (SMap& e : incls) e = compose(cp.incl_left, e);
            incls.push_back(cp.incl_right);
            acc = cp.incl_left.dst();
        }
        return acc;
    };
    std::vector<SMap> horn_in, simplex_in;
    SSetPtr horns = fold(horn.incl.src(), maps.size(), horn_in);
    SSetPtr simplices = fold(horn.incl.dst(), maps.size(), simplex_in);

    auto assemble = [&](const SSetPtr& dst, const std::vector<SMap>& legs) {
        std::vector<std::vector<Simplex>> img(static_cast<size_t>(horns->top_dim()) + 1);
        for (int d = 0; d <= horns->top_dim(); ++d)
            img[static_cast<size_t>(d)].resize(static_cast<size_t>(horns->n_cells(d)));
        for (size_t c = 0; c < maps.size(); ++c)
            for (int d = 0; d <= horn.incl.src()->top_dim(); ++d)
                for (int i = 0; i < horn.incl.src()->n_cells(d); ++i) {
                    Simplex at = horn_in[c].cell_image(CellRef{d, i});
                    require(at.nondegenerate(), "coproduct inclusion must be cellwise");
                    img[static_cast<size_t>(at.cell.dim)][static_cast<size_t>(at.cell.idx)] =
                        legs[c].image_of(nondeg(d, i));
                }
        return SMap(horns, dst, std::move(img), false);
    };
    std::vector<SMap> to_x = maps;
    std::vector<SMap> to_simplices;
    for (size_t c = 0; c < maps.size(); ++c)
        to_simplices.push_back(compose(simplex_in[c], horn.incl));
    Pushout po = pushout(assemble(x, to_x), assemble(simplices, to_simplices));
    return HornFill{po.sset, po.from_left, static_cast<int>(maps.size())};
}

// ---------------------------------------------------------------------------
// the M functor

/**
 * M(Delta^a, K, Delta^c): the pushout of
 * Delta^c <- K x Delta^c -> Delta^a * (K x Delta^c), together with the
 * coprojection from Delta^a + Delta^c picking out the two ends.
 */
struct MFunctor {
    int a = 0, c = 0;
    SSetPtr ends;    // Delta^a + Delta^c
    SSet sset;
    SMap from_ends;  // coprojection into the colimit
    Product kc;      // K x Delta^c
    Join jn;         // Delta^a * (K x Delta^c)
    Pushout po;
};

inline MFunctor m_functor(int a, const SSetPtr& k, int c) {
    require(a >= 0 && c >= 0, "end dimensions must be nonnegative");
    MFunctor out;
    out.a = a;
    out.c = c;
    SSetPtr da = share(standard_simplex(a));
    SSetPtr dc = share(standard_simplex(c));
    out.kc = product(k, dc);
    out.jn = join_ssets(da, out.kc.pr1.src());
    out.po = pushout(out.kc.pr2, out.jn.incl_right);
    out.sset = out.po.sset;

    Coproduct cp = coproduct(da, dc);
    out.ends = cp.incl_left.dst();
    std::vector<std::vector<Simplex>> img(static_cast<size_t>(std::max(0, out.ends->top_dim() + 1)));
    for (int d = 0; d <= out.ends->top_dim(); ++d)
        img[static_cast<size_t>(d)].resize(static_cast<size_t>(out.ends->n_cells(d)));
    auto fill = [&img](const SMap& incl, const SMap& leg, const SSetPtr& side) {
        for (int d = 0; d <= side->top_dim(); ++d)
            for (int i = 0; i < side->n_cells(d); ++i) {
                Simplex at = incl.cell_image(CellRef{d, i});
                img[static_cast<size_t>(at.cell.dim)][static_cast<size_t>(at.cell.idx)] =
                    leg.image_of(nondeg(d, i));
            }
    };
    fill(cp.incl_left, compose(out.po.from_right, out.jn.incl_left), da);
    fill(cp.incl_right, out.po.from_left, dc);
    out.from_ends = SMap(out.ends, out.po.from_left.dst(), std::move(img));
    return out;
}

/** Functoriality of M in the middle argument. */
inline SMap m_functor_map(const MFunctor& s, const MFunctor& d, const SMap& phi) {
    require(s.a == d.a && s.c == d.c, "end dimensions differ");
    SMap pm = product_map(s.kc, d.kc, phi, identity_map(d.kc.pr2.dst()));
    SMap jm = join_map(s.jn, d.jn, identity_map(d.jn.incl_left.src()), pm);
    return pushout_induced(s.po, d.po.from_left, compose(d.po.from_right, jm));
}

/** Degreewise bijectivity of a map on nondegenerate cells. */
inline bool is_presentation_iso(const SMap& f) {
    for (int d = 0; d <= std::max(f.src()->top_dim(), f.dst()->top_dim()); ++d) {
        if (f.src()->n_cells(d) != f.dst()->n_cells(d)) return false;
        std::set<int> hit;
        for (int i = 0; i < f.src()->n_cells(d); ++i) {
            Simplex im = f.cell_image(CellRef{d, i});
            if (!im.nondegenerate() || !hit.insert(im.cell.idx).second) return false;
        }
    }
    return true;
}

}  // namespace combitop
