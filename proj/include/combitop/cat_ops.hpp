#pragma once

#include <array>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "combitop/category.hpp"
#include "combitop/sset_maps.hpp"

namespace combitop {

/**
 * Category of simplices of K through degree cap: one object per simplex
 * (degenerate ones included), one morphism per monotone map alpha with
 * apply(dst, alpha) == src.  Never complete for nonempty K, since degenerate
 * simplices exist in every degree; the cutoff is recorded in the bound.
 */
struct SimplexCategory {
    SSetPtr base;
    int cap = 0;
    CatPtr cat;
    std::vector<Simplex> object_simplex;      // per object
    std::vector<MonotoneMap> morphism_alpha;  // per morphism, identities included

    int object_of(const Simplex& x) const {
        return cat->object_index(simplex_key(x));
    }
};

namespace detail {
inline std::string alpha_label(const MonotoneMap& a, const std::string& dst_label) {
    return "a[" + join(a.vals, ",") + "]>" + dst_label;
}
}  // namespace detail

inline SimplexCategory simplex_category(const SSetPtr& k, int cap) {
    require(cap >= 0, "negative simplex category cap");
    require(k->complete() || k->trusted_through() >= cap,
            "simplex category cap exceeds the trusted range of the base");
    SimplexCategory out;
    out.base = k;
    out.cap = cap;

    BoundedCategory c;
    for (int m = 0; m <= cap; ++m)
        for (const Simplex& x : k->simplices_of_degree(m)) {
            c.add_object(simplex_key(x));
            out.object_simplex.push_back(x);
            out.morphism_alpha.push_back(MonotoneMap::identity(m));
        }
    for (size_t j = 0; j < out.object_simplex.size(); ++j) {
        const Simplex& y = out.object_simplex[j];
        for (int m = 0; m <= cap; ++m)
            for (const MonotoneMap& a : all_monotone(m, y.degree())) {
                if (a.is_identity()) continue;
                Simplex x = k->apply(y, a);
                int i = c.object_index(simplex_key(x));
                c.add_morphism(i, static_cast<int>(j),
                               detail::alpha_label(a, c.object_label(static_cast<int>(j))));
                out.morphism_alpha.push_back(a);
            }
    }
    for (int f = 0; f < c.n_morphisms(); ++f) {
        if (c.is_identity(f)) continue;
        for (int g = 0; g < c.n_morphisms(); ++g) {
            if (c.is_identity(g) || c.src(g) != c.dst(f)) continue;
            MonotoneMap comp = compose(out.morphism_alpha[static_cast<size_t>(g)],
                                       out.morphism_alpha[static_cast<size_t>(f)]);
            int gf = comp.is_identity()
                         ? c.identity_of(c.src(f))
                         : c.morphism_index(detail::alpha_label(comp, c.object_label(c.dst(g))));
            require(gf >= 0, "simplex category composite not enumerated");
            c.set_composite(g, f, gf);
        }
    }
    if (k->top_dim() >= 0) c.set_bound("dim<=" + std::to_string(cap));
    out.cat = share(std::move(c));
    return out;
}

/** The functor of simplex categories induced by a simplicial map. */
inline Functor simplex_category_map(const SimplexCategory& a, const SimplexCategory& b,
                                    const SMap& f) {
    require(f.src().get() == a.base.get() && f.dst().get() == b.base.get(),
            "simplex_category_map: map endpoints do not match the categories");
    require(b.cap >= a.cap, "simplex_category_map: target cap too small");
    std::vector<int> obj, mor;
    for (const Simplex& x : a.object_simplex) {
        int j = b.object_of(f.image_of(x));
        require(j >= 0, "image simplex missing from target category");
        obj.push_back(j);
    }
    for (int m = 0; m < a.cat->n_morphisms(); ++m) {
        if (a.cat->is_identity(m)) {
            mor.push_back(b.cat->identity_of(obj[static_cast<size_t>(a.cat->src(m))]));
            continue;
        }
        const MonotoneMap& al = a.morphism_alpha[static_cast<size_t>(m)];
        int j = obj[static_cast<size_t>(a.cat->dst(m))];
        int mm = b.cat->morphism_index(detail::alpha_label(al, b.cat->object_label(j)));
        require(mm >= 0, "image morphism missing from target category");
        mor.push_back(mm);
    }
    return Functor(a.cat, b.cat, std::move(obj), std::move(mor));
}

/**
 * The simplicial map N(simplex category of K) -> K evaluating a chain of
 * simplices at their last vertices: position i of the image is the image in
 * the final simplex of the last vertex of the i-th one.
 */
inline SMap last_vertex_smap(const SimplexCategory& sc, const Nerve& n) {
    require(n.cat.get() == sc.cat.get(), "nerve does not belong to the simplex category");
    std::vector<std::vector<Simplex>> img(
        static_cast<size_t>(std::max(0, n.sset->top_dim() + 1)));
    for (int d = 0; d <= n.sset->top_dim(); ++d)
        for (int i = 0; i < n.sset->n_cells(d); ++i) {
            const detail::CatChain& g = n.chain_of(CellRef{d, i});
            const Simplex& last = sc.object_simplex[static_cast<size_t>(
                detail::chain_object(*sc.cat, g, d))];
            // tau(i) = image of the last vertex of the i-th simplex in the final one
            std::vector<int> tau(static_cast<size_t>(d) + 1);
            MonotoneMap beta = MonotoneMap::identity(last.degree());
            tau[static_cast<size_t>(d)] = last.degree();
            for (int t = d; t >= 1; --t) {
                beta = compose(beta, sc.morphism_alpha[static_cast<size_t>(
                                         g.mors[static_cast<size_t>(t) - 1])]);
                tau[static_cast<size_t>(t) - 1] = beta(
                    sc.object_simplex[static_cast<size_t>(detail::chain_object(*sc.cat, g, t - 1))]
                        .degree());
            }
            img[static_cast<size_t>(d)].push_back(
                sc.base->apply(last, MonotoneMap(std::move(tau), last.degree())));
        }
    return SMap(n.sset, sc.base, std::move(img));
}

struct LastVertex {
    SimplexCategory simplices;
    Nerve nerve;
    SMap map;
};

inline LastVertex last_vertex_map(const SSetPtr& k, int cap) {
    require(cap >= 1, "last vertex map needs cap >= 1");
    SimplexCategory sc = simplex_category(k, cap);
    Nerve n = nerve(sc.cat, cap);
    SMap f = last_vertex_smap(sc, n);
    return LastVertex{std::move(sc), std::move(n), std::move(f)};
}

/**
 * Full subcategory of the simplex category of the source of `proj` spanned
 * by the simplices whose projection hits every vertex of the target standard
 * simplex.
 */
struct SurjSimplexCategory {
    SMap proj;  // source -> Delta^n
    int n = 0;
    int cap = 0;
    SimplexCategory ambient;
    FullSubcategory sub;  // sub.cat is the surjective part
    CatPtr cat;
    std::vector<Simplex> object_simplex;
    std::vector<MonotoneMap> morphism_alpha;

    int object_of(const Simplex& x) const { return cat->object_index(simplex_key(x)); }
};

inline SurjSimplexCategory surjective_simplex_category(const SMap& proj, int cap) {
    const int n = proj.dst()->top_dim();
    require(n >= 0, "projection target must be a standard simplex");
    SimplexCategory ambient = simplex_category(proj.src(), cap);
    std::vector<int> keep;
    for (int o = 0; o < ambient.cat->n_objects(); ++o) {
        Simplex y = proj.image_of(ambient.object_simplex[static_cast<size_t>(o)]);
        std::set<int> hit;
        for (int v : proj.dst()->vertex_path(y))
            hit.insert(detail::standard_vertex_value(*proj.dst(), v));
        if (static_cast<int>(hit.size()) == n + 1) keep.push_back(o);
    }
    FullSubcategory sub = full_subcategory(ambient.cat, keep);
    SurjSimplexCategory out{proj,
                            n,
                            cap,
                            std::move(ambient),
                            std::move(sub),
                            nullptr,
                            {},
                            {}};
    out.cat = out.sub.cat;
    out.object_simplex.resize(static_cast<size_t>(out.cat->n_objects()));
    out.morphism_alpha.resize(static_cast<size_t>(out.cat->n_morphisms()));
    for (int o = 0; o < out.cat->n_objects(); ++o)
        out.object_simplex[static_cast<size_t>(o)] =
            out.ambient.object_simplex[static_cast<size_t>(out.sub.incl.obj_image(o))];
    for (int m = 0; m < out.cat->n_morphisms(); ++m)
        out.morphism_alpha[static_cast<size_t>(m)] =
            out.ambient.morphism_alpha[static_cast<size_t>(out.sub.incl.mor_image(m))];
    return out;
}

/**
 * Bounded product of r copies of the simplex category of the point: objects
 * are tuples (k_0,...,k_{r-1}) with sum k_i + r - 1 <= cap (the degree of
 * the corresponding joined simplex), morphisms are tuples of monotone maps.
 */
struct MultiSimplexCategory {
    int factors = 0;
    int cap = 0;
    CatPtr cat;
    std::vector<std::vector<int>> object_tuple;
    std::vector<std::vector<MonotoneMap>> morphism_tuple;
};

namespace detail {
inline std::string multi_label(const std::vector<MonotoneMap>& maps,
                               const std::string& dst_label) {
    std::vector<std::string> parts;
    for (const MonotoneMap& m : maps) parts.push_back(join(m.vals, ","));
    return "m[" + join(parts, ";") + "]>" + dst_label;
}
}  // namespace detail

inline MultiSimplexCategory multi_simplex_category(int factors, int cap) {
    require(factors >= 1, "need at least one factor");
    MultiSimplexCategory out;
    out.factors = factors;
    out.cap = cap;

    BoundedCategory c;
    std::vector<int> cur(static_cast<size_t>(factors), 0);
    const int budget = cap - (factors - 1);
    std::function<void(int, int)> rec = [&](int pos, int left) {
        if (pos == factors) {
            c.add_object("(" + join(cur, ",") + ")");
            out.object_tuple.push_back(cur);
            out.morphism_tuple.push_back({});
            for (int v : cur) out.morphism_tuple.back().push_back(MonotoneMap::identity(v));
            return;
        }
        for (int v = 0; v <= left; ++v) {
            cur[static_cast<size_t>(pos)] = v;
            rec(pos + 1, left - v);
        }
    };
    if (budget >= 0) rec(0, budget);

    for (size_t i = 0; i < out.object_tuple.size(); ++i)
        for (size_t j = 0; j < out.object_tuple.size(); ++j) {
            std::vector<std::vector<MonotoneMap>> comps;
            for (int t = 0; t < factors; ++t)
                comps.push_back(all_monotone(out.object_tuple[i][static_cast<size_t>(t)],
                                             out.object_tuple[j][static_cast<size_t>(t)]));
            std::vector<size_t> idx(static_cast<size_t>(factors), 0);
            for (;;) {
                std::vector<MonotoneMap> tuple;
                bool all_id = true;
                for (int t = 0; t < factors; ++t) {
                    tuple.push_back(comps[static_cast<size_t>(t)][idx[static_cast<size_t>(t)]]);
                    all_id = all_id && tuple.back().is_identity();
                }
                if (!all_id) {
                    c.add_morphism(static_cast<int>(i), static_cast<int>(j),
                                   detail::multi_label(tuple, c.object_label(static_cast<int>(j))));
                    out.morphism_tuple.push_back(std::move(tuple));
                }
                int t = factors - 1;
                while (t >= 0 && ++idx[static_cast<size_t>(t)] == comps[static_cast<size_t>(t)].size()) {
                    idx[static_cast<size_t>(t)] = 0;
                    --t;
                }
                if (t < 0) break;
            }
        }
    // identities were appended per object before any tuple morphism; put the
    // per-morphism tuples into category order
    std::vector<std::vector<MonotoneMap>> ordered(static_cast<size_t>(c.n_morphisms()));
    {
        size_t next_tuple = out.object_tuple.size();
        for (int m = 0; m < c.n_morphisms(); ++m)
            if (c.is_identity(m))
                ordered[static_cast<size_t>(m)] =
                    out.morphism_tuple[static_cast<size_t>(c.src(m))];
            else
                ordered[static_cast<size_t>(m)] = std::move(out.morphism_tuple[next_tuple++]);
    }
    out.morphism_tuple = std::move(ordered);

    for (int f = 0; f < c.n_morphisms(); ++f) {
        if (c.is_identity(f)) continue;
        for (int g = 0; g < c.n_morphisms(); ++g) {
            if (c.is_identity(g) || c.src(g) != c.dst(f)) continue;
            std::vector<MonotoneMap> comp;
            bool all_id = true;
            for (int t = 0; t < factors; ++t) {
                comp.push_back(compose(out.morphism_tuple[static_cast<size_t>(g)][static_cast<size_t>(t)],
                                       out.morphism_tuple[static_cast<size_t>(f)][static_cast<size_t>(t)]));
                all_id = all_id && comp.back().is_identity();
            }
            int gf = all_id ? c.identity_of(c.src(f))
                            : c.morphism_index(detail::multi_label(comp, c.object_label(c.dst(g))));
            require(gf >= 0, "multi simplex composite not enumerated");
            c.set_composite(g, f, gf);
        }
    }
    c.set_bound("sum<=" + std::to_string(cap));
    out.cat = share(std::move(c));
    return out;
}

/**
 * Decomposition of a simplex over Delta^n into its (n+1) vertex fibers: the
 * functor from the surjective simplex category to the multi simplex category
 * sending a simplex to the tuple of fiber sizes and a map to its blockwise
 * components.  An isomorphism when the projection is the identity.
 */
inline Functor fiber_functor(const SurjSimplexCategory& s, const MultiSimplexCategory& m) {
    require(m.factors == s.n + 1, "factor count must match the projection target");
    require(m.cap >= s.cap, "multi simplex cap too small for the fiber tuples");

    // per object: vertex values of the projection, fiber sizes, block starts
    const int n_obj = s.cat->n_objects();
    std::vector<std::vector<int>> values(static_cast<size_t>(n_obj));
    std::vector<std::vector<int>> starts(static_cast<size_t>(n_obj));
    std::vector<int> obj;
    for (int o = 0; o < n_obj; ++o) {
        Simplex y = s.proj.image_of(s.object_simplex[static_cast<size_t>(o)]);
        std::vector<int>& w = values[static_cast<size_t>(o)];
        for (int v : s.proj.dst()->vertex_path(y))
            w.push_back(detail::standard_vertex_value(*s.proj.dst(), v));
        std::vector<int> tuple(static_cast<size_t>(s.n) + 1, -1);
        std::vector<int>& st = starts[static_cast<size_t>(o)];
        st.assign(static_cast<size_t>(s.n) + 1, -1);
        for (size_t p = 0; p < w.size(); ++p) {
            if (st[static_cast<size_t>(w[p])] < 0) st[static_cast<size_t>(w[p])] = static_cast<int>(p);
            ++tuple[static_cast<size_t>(w[p])];
        }
        int target = m.cat->object_index("(" + join(tuple, ",") + ")");
        require(target >= 0, "fiber tuple missing from the multi simplex category");
        obj.push_back(target);
    }

    std::vector<int> mor;
    for (int f = 0; f < s.cat->n_morphisms(); ++f) {
        if (s.cat->is_identity(f)) {
            mor.push_back(m.cat->identity_of(obj[static_cast<size_t>(s.cat->src(f))]));
            continue;
        }
        int a = s.cat->src(f), b = s.cat->dst(f);
        const MonotoneMap& al = s.morphism_alpha[static_cast<size_t>(f)];
        std::vector<MonotoneMap> comps;
        for (int i = 0; i <= s.n; ++i) {
            std::vector<int> vals;
            for (size_t p = 0; p < values[static_cast<size_t>(a)].size(); ++p)
                if (values[static_cast<size_t>(a)][p] == i)
                    vals.push_back(al(static_cast<int>(p)) - starts[static_cast<size_t>(b)][static_cast<size_t>(i)]);
            int cod = m.object_tuple[static_cast<size_t>(obj[static_cast<size_t>(b)])][static_cast<size_t>(i)];
            comps.emplace_back(std::move(vals), cod);
        }
        int im = m.cat->morphism_index(
            detail::multi_label(comps, m.cat->object_label(obj[static_cast<size_t>(b)])));
        require(im >= 0, "fiber image morphism missing from the multi simplex category");
        mor.push_back(im);
    }
    return Functor(s.cat, m.cat, std::move(obj), std::move(mor));
}

/**
 * Full subcategory of the arrow category of C on the arrows crossing a
 * two-valued labeling: objects are morphisms u with label(src u) = 0 and
 * label(dst u) = 1, morphisms are commuting squares.  Ships with the two
 * fiber categories and the projections onto them; gluing the fibers along
 * this category recovers C up to homology.
 */
struct ArrowAlpha {
    CatPtr cat;
    FullSubcategory fiber0, fiber1;
    Functor src_leg;  // cat -> fiber0.cat
    Functor dst_leg;  // cat -> fiber1.cat
    std::vector<int> object_arrow;  // object -> crossing morphism of C
};

inline ArrowAlpha arrow_alpha(const CatPtr& c, const Functor& labeling) {
    require(labeling.src().get() == c.get(), "labeling must be defined on the category");
    const CatPtr& two = labeling.dst();
    const int lo = two->object_index("0"), hi = two->object_index("1");
    require(two->n_objects() == 2 && lo >= 0 && hi >= 0,
            "labeling target must be the two-object arrow category");

    std::vector<int> f0, f1;
    for (int o = 0; o < c->n_objects(); ++o)
        (labeling.obj_image(o) == lo ? f0 : f1).push_back(o);
    FullSubcategory fiber0 = full_subcategory(c, f0);
    FullSubcategory fiber1 = full_subcategory(c, f1);

    BoundedCategory arr;
    std::vector<int> object_arrow;
    std::vector<int> mor_p, mor_q;
    std::map<int, int> object_of;  // morphism of C -> arrow object
    for (int u = 0; u < c->n_morphisms(); ++u) {
        if (labeling.obj_image(c->src(u)) != lo || labeling.obj_image(c->dst(u)) != hi) continue;
        int o = arr.add_object(c->morphism(u).label);
        object_of[u] = o;
        object_arrow.push_back(u);
        mor_p.push_back(c->identity_of(c->src(u)));
        mor_q.push_back(c->identity_of(c->dst(u)));
    }
    std::map<std::array<int, 4>, int> square;  // (u, u', p, q) -> morphism
    for (const auto& [u, ou] : object_of)
        for (const auto& [v, ov] : object_of)
            for (int p : c->hom(c->src(u), c->src(v)))
                for (int q : c->hom(c->dst(u), c->dst(v))) {
                    if (c->composite(v, p) != c->composite(q, u)) continue;
                    if (u == v && c->is_identity(p) && c->is_identity(q)) {
                        square[{u, v, p, q}] = arr.identity_of(ou);
                        continue;
                    }
                    int id = arr.add_morphism(ou, ov,
                                              c->morphism(u).label + ">" + c->morphism(v).label +
                                                  ":" + c->morphism(p).label + "&" +
                                                  c->morphism(q).label);
                    square[{u, v, p, q}] = id;
                    mor_p.push_back(p);
                    mor_q.push_back(q);
                }
    for (const auto& [k1, m1] : square) {
        if (arr.is_identity(m1)) continue;
        for (const auto& [k2, m2] : square) {
            if (arr.is_identity(m2) || k2[0] != k1[1]) continue;
            int gf = square.at({k1[0], k2[1], c->composite(k2[2], k1[2]), c->composite(k2[3], k1[3])});
            arr.set_composite(m2, m1, gf);
        }
    }
    arr.set_bound(c->bound());
    arr.validate();
    CatPtr arrp = share(std::move(arr));

    std::vector<int> so, sm, dobj, dm;
    for (size_t o = 0; o < object_arrow.size(); ++o) {
        so.push_back(fiber0.obj_to_sub[static_cast<size_t>(c->src(object_arrow[o]))]);
        dobj.push_back(fiber1.obj_to_sub[static_cast<size_t>(c->dst(object_arrow[o]))]);
    }
    for (int m = 0; m < arrp->n_morphisms(); ++m) {
        sm.push_back(fiber0.mor_to_sub[static_cast<size_t>(mor_p[static_cast<size_t>(m)])]);
        dm.push_back(fiber1.mor_to_sub[static_cast<size_t>(mor_q[static_cast<size_t>(m)])]);
    }
    Functor src_leg(arrp, fiber0.cat, std::move(so), std::move(sm));
    Functor dst_leg(arrp, fiber1.cat, std::move(dobj), std::move(dm));
    return ArrowAlpha{arrp, std::move(fiber0), std::move(fiber1), std::move(src_leg),
                      std::move(dst_leg), std::move(object_arrow)};
}

/**
 * Category of elements of a contravariant set diagram: objects (c, x) with
 * x in F(c); a morphism (c, x) -> (c', x') for each f : c -> c' carrying x'
 * back to x.
 */
struct Elements {
    CatPtr cat;
    Functor proj;  // cat -> base category
    std::map<std::pair<int, int>, int> object_of;    // (object of C, element) -> object
    std::map<std::pair<int, int>, int> morphism_of;  // (morphism of C, element at dst) -> lift
};

inline Elements grothendieck(const SetDiagram& f) {
    f.check_valid();
    const BoundedCategory& c = *f.cat;
    BoundedCategory e;
    Elements out;
    std::vector<int> proj_obj, proj_mor;
    for (int o = 0; o < c.n_objects(); ++o)
        for (int x = 0; x < f.size_at(o); ++x) {
            int eo = e.add_object("(" + c.object_label(o) + "," +
                                  f.elems[static_cast<size_t>(o)][static_cast<size_t>(x)] + ")");
            out.object_of[{o, x}] = eo;
            proj_obj.push_back(o);
            proj_mor.push_back(c.identity_of(o));  // identity lift, same index order
            out.morphism_of[{c.identity_of(o), x}] = e.identity_of(eo);
        }
    std::vector<int> parent, dst_elem;  // per lift in creation order, identities first
    parent.resize(static_cast<size_t>(e.n_morphisms()));
    dst_elem.resize(static_cast<size_t>(e.n_morphisms()));
    for (const auto& [key, lift] : out.morphism_of) {
        parent[static_cast<size_t>(lift)] = key.first;
        dst_elem[static_cast<size_t>(lift)] = key.second;
    }
    for (int m = 0; m < c.n_morphisms(); ++m) {
        if (c.is_identity(m)) continue;
        for (int x = 0; x < f.size_at(c.dst(m)); ++x) {
            int src_obj = out.object_of.at({c.src(m), f.action[static_cast<size_t>(m)][static_cast<size_t>(x)]});
            int lift = e.add_morphism(src_obj, out.object_of.at({c.dst(m), x}),
                                      c.morphism(m).label + "@" +
                                          f.elems[static_cast<size_t>(c.dst(m))][static_cast<size_t>(x)]);
            out.morphism_of[{m, x}] = lift;
            parent.push_back(m);
            dst_elem.push_back(x);
            proj_mor.push_back(m);
        }
    }
    for (int m1 = 0; m1 < e.n_morphisms(); ++m1) {
        if (e.is_identity(m1)) continue;
        for (int m2 = 0; m2 < e.n_morphisms(); ++m2) {
            if (e.is_identity(m2) || e.src(m2) != e.dst(m1)) continue;
            int cf = c.composite(parent[static_cast<size_t>(m2)], parent[static_cast<size_t>(m1)]);
            e.set_composite(m2, m1, out.morphism_of.at({cf, dst_elem[static_cast<size_t>(m2)]}));
        }
    }
    e.set_bound(c.bound());
    out.cat = share(std::move(e));
    out.proj = Functor(out.cat, f.cat, std::move(proj_obj), std::move(proj_mor));
    return out;
}

/**
 * Degreewise simplicial replacement of a contravariant set diagram: an
 * m-cell is a composable m-chain in C together with an element of F at the
 * chain's final object; operators reindex the chain and transport the
 * element along the tail composite.  Comes with the comparison map into the
 * nerve of the category of elements, which lifts a chain through the carried
 * element.
 */
struct Replacement {
    int cap = 0;
    SSetPtr sset;
    std::vector<std::vector<std::pair<detail::CatChain, int>>> pairs;  // per degree, key-sorted
    std::vector<std::map<std::string, int>> index;
    std::vector<std::vector<Simplex>> normal;
    std::vector<std::vector<int>> cell_pair;  // nondeg cell -> pair position
    Elements elements;
    Nerve elements_nerve;
    SMap comparison;  // sset -> elements_nerve.sset

    Simplex element(const detail::CatChain& g, int xi) const {
        int d = g.degree();
        auto it = index[static_cast<size_t>(d)].find(detail::chain_key(*elements.proj.dst(), g) +
                                                     "#" + std::to_string(xi));
        require(it != index[static_cast<size_t>(d)].end(), "pair not found in replacement");
        return normal[static_cast<size_t>(d)][static_cast<size_t>(it->second)];
    }
};

inline Replacement simplicial_replacement(const SetDiagram& f, int cap) {
    require(cap >= 0, "negative replacement cap");
    f.check_valid();
    const BoundedCategory& c = *f.cat;
    Replacement out;
    out.cap = cap;

    std::vector<std::vector<detail::CatChain>> chains = detail::enumerate_chains(c, cap);
    out.pairs.resize(static_cast<size_t>(cap) + 1);
    out.index.resize(static_cast<size_t>(cap) + 1);
    DegreewiseModel model;
    model.keys.resize(static_cast<size_t>(cap) + 1);
    for (int d = 0; d <= cap; ++d) {
        std::vector<std::pair<std::string, std::pair<detail::CatChain, int>>> layer;
        for (const detail::CatChain& g : chains[static_cast<size_t>(d)]) {
            int end = detail::chain_object(c, g, d);
            for (int xi = 0; xi < f.size_at(end); ++xi)
                layer.push_back({detail::chain_key(c, g) + "#" + std::to_string(xi), {g, xi}});
        }
        std::sort(layer.begin(), layer.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        for (size_t i = 0; i < layer.size(); ++i) {
            model.keys[static_cast<size_t>(d)].push_back(layer[i].first);
            out.index[static_cast<size_t>(d)][layer[i].first] = static_cast<int>(i);
            out.pairs[static_cast<size_t>(d)].push_back(std::move(layer[i].second));
        }
    }
    // reindex a pair along a monotone map into the chain positions
    auto act = [&](int m, int idx, const MonotoneMap& th) {
        const auto& [g, xi] = out.pairs[static_cast<size_t>(m)][static_cast<size_t>(idx)];
        detail::CatChain h = detail::chain_apply(c, g, th);
        int tail = detail::chain_composite(c, g, th(th.domain()), m);
        int nxi = f.action[static_cast<size_t>(tail)][static_cast<size_t>(xi)];
        return out.index[static_cast<size_t>(th.domain())].at(detail::chain_key(c, h) + "#" +
                                                              std::to_string(nxi));
    };
    model.face = [&](int m, int idx, int i) { return act(m, idx, MonotoneMap::coface(m, i)); };
    model.degen = [&](int m, int idx, int i) {
        return act(m, idx, MonotoneMap::codegeneracy(m, i));
    };

    // nondegenerate cells above the cap exist exactly when some nondegenerate
    // cap-chain extends by a non-identity morphism into an object with
    // elements
    bool complete = c.bound() == "complete";
    if (complete) {
        for (const detail::CatChain& g : chains[static_cast<size_t>(cap)]) {
            if (!detail::chain_nondegenerate(c, g)) continue;
            int end = detail::chain_object(c, g, cap);
            for (int m = 0; m < c.n_morphisms() && complete; ++m)
                if (!c.is_identity(m) && c.src(m) == end && f.size_at(c.dst(m)) > 0)
                    complete = false;
            if (!complete) break;
        }
    }
    Extraction ex = extract_presentation(model, complete ? kComplete : cap);
    out.sset = share(std::move(ex.sset));
    out.normal = std::move(ex.normal);
    out.cell_pair.resize(static_cast<size_t>(cap) + 1);
    for (int d = 0; d <= cap; ++d) {
        out.cell_pair[static_cast<size_t>(d)].assign(static_cast<size_t>(out.sset->n_cells(d)), -1);
        for (size_t i = 0; i < out.normal[static_cast<size_t>(d)].size(); ++i) {
            const Simplex& nf = out.normal[static_cast<size_t>(d)][i];
            if (nf.word.empty())
                out.cell_pair[static_cast<size_t>(nf.cell.dim)][static_cast<size_t>(nf.cell.idx)] =
                    static_cast<int>(i);
        }
    }

    out.elements = grothendieck(f);
    out.elements_nerve = nerve(out.elements.cat, cap);
    std::vector<std::vector<Simplex>> img(static_cast<size_t>(std::max(0, out.sset->top_dim() + 1)));
    for (int d = 0; d <= out.sset->top_dim(); ++d)
        for (int i = 0; i < out.sset->n_cells(d); ++i) {
            const auto& [g, xi] =
                out.pairs[static_cast<size_t>(d)]
                         [static_cast<size_t>(out.cell_pair[static_cast<size_t>(d)][static_cast<size_t>(i)])];
            detail::CatChain lift;
            std::vector<int> elem(static_cast<size_t>(d) + 1);
            elem[static_cast<size_t>(d)] = xi;
            for (int t = d; t >= 1; --t)
                elem[static_cast<size_t>(t) - 1] =
                    f.action[static_cast<size_t>(g.mors[static_cast<size_t>(t) - 1])]
                            [static_cast<size_t>(elem[static_cast<size_t>(t)])];
            lift.start = out.elements.object_of.at({g.start, elem[0]});
            for (int t = 1; t <= d; ++t)
                lift.mors.push_back(out.elements.morphism_of.at(
                    {g.mors[static_cast<size_t>(t) - 1], elem[static_cast<size_t>(t)]}));
            img[static_cast<size_t>(d)].push_back(out.elements_nerve.element(lift));
        }
    out.comparison = SMap(out.sset, out.elements_nerve.sset, std::move(img));
    return out;
}

/** Comma category of a functor against a fixed object of its target. */
enum class CommaSide { over, under };

struct Comma {
    CatPtr cat;
    Functor proj;  // cat -> source of the functor
    std::map<std::pair<int, int>, int> object_of;  // (object of A, morphism of B) -> object
};

inline Comma comma(const Functor& f, int b, CommaSide side) {
    const BoundedCategory& a = *f.src();
    const BoundedCategory& bb = *f.dst();
    require(b >= 0 && b < bb.n_objects(), "comma object out of range");

    BoundedCategory c;
    Comma out;
    std::vector<int> proj_obj, proj_mor;
    std::vector<int> obj_u;  // per object: the structure morphism in B
    for (int o = 0; o < a.n_objects(); ++o) {
        std::vector<int> us = side == CommaSide::over ? bb.hom(f.obj_image(o), b)
                                                      : bb.hom(b, f.obj_image(o));
        for (int u : us) {
            int co = c.add_object("(" + a.object_label(o) + "," + bb.morphism(u).label + ")");
            out.object_of[{o, u}] = co;
            obj_u.push_back(u);
            proj_obj.push_back(o);
            proj_mor.push_back(a.identity_of(o));
        }
    }
    std::map<std::pair<int, int>, int> morphism_of;  // (p in A, keyed u) -> morphism
    std::vector<int> par, key_u;
    par.resize(static_cast<size_t>(c.n_morphisms()));
    key_u.resize(static_cast<size_t>(c.n_morphisms()));
    for (const auto& [key, co] : out.object_of) {
        int id = c.identity_of(co);
        morphism_of[{a.identity_of(key.first), key.second}] = id;
        par[static_cast<size_t>(id)] = a.identity_of(key.first);
        key_u[static_cast<size_t>(id)] = key.second;
    }
    for (int p = 0; p < a.n_morphisms(); ++p) {
        if (a.is_identity(p)) continue;
        if (side == CommaSide::over) {
            // target structure map is free, source is forced by composition
            for (int u2 : bb.hom(f.obj_image(a.dst(p)), b)) {
                int u1 = bb.composite(u2, f.mor_image(p));
                int m = c.add_morphism(out.object_of.at({a.src(p), u1}),
                                       out.object_of.at({a.dst(p), u2}),
                                       a.morphism(p).label + "@" + bb.morphism(u2).label);
                morphism_of[{p, u2}] = m;
                par.push_back(p);
                key_u.push_back(u2);
                proj_mor.push_back(p);
            }
        } else {
            for (int u1 : bb.hom(b, f.obj_image(a.src(p)))) {
                int u2 = bb.composite(f.mor_image(p), u1);
                int m = c.add_morphism(out.object_of.at({a.src(p), u1}),
                                       out.object_of.at({a.dst(p), u2}),
                                       a.morphism(p).label + "@" + bb.morphism(u1).label);
                morphism_of[{p, u1}] = m;
                par.push_back(p);
                key_u.push_back(u1);
                proj_mor.push_back(p);
            }
        }
    }
    for (int m1 = 0; m1 < c.n_morphisms(); ++m1) {
        if (c.is_identity(m1)) continue;
        for (int m2 = 0; m2 < c.n_morphisms(); ++m2) {
            if (c.is_identity(m2) || c.src(m2) != c.dst(m1)) continue;
            int q = a.composite(par[static_cast<size_t>(m2)], par[static_cast<size_t>(m1)]);
            int key = side == CommaSide::over ? key_u[static_cast<size_t>(m2)]
                                              : key_u[static_cast<size_t>(m1)];
            c.set_composite(m2, m1, morphism_of.at({q, key}));
        }
    }
    c.set_bound(a.bound() == "complete" ? bb.bound() : a.bound());
    out.cat = share(std::move(c));
    out.proj = Functor(out.cat, f.src(), std::move(proj_obj), std::move(proj_mor));
    return out;
}

}  // namespace combitop
