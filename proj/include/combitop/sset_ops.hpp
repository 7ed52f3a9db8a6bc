#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "combitop/complex.hpp"
#include "combitop/degreewise.hpp"
#include "combitop/sset.hpp"

namespace combitop {

// ---------------------------------------------------------------------------
// simplicial sets from vertex-subset data

struct SubsetSSet {
    SSet sset;
    std::map<std::vector<int>, CellRef> cell_of;  // sorted vertex tuple -> cell
};

inline SubsetSSet sset_from_subsets(const std::vector<std::string>& vertex_labels,
                                    const std::set<std::vector<int>>& subsets) {
    SSetBuilder b;
    SubsetSSet out;
    // std::set orders short tuples before their supersets only lexicographically,
    // so insert by ascending dimension to have faces available.
    std::map<int, std::vector<std::vector<int>>> by_dim;
    for (const auto& s : subsets) by_dim[static_cast<int>(s.size()) - 1].push_back(s);
    for (auto& [d, list] : by_dim) {
        for (const auto& s : list) {
            std::vector<Simplex> faces;
            if (d > 0) {
                for (size_t skip = 0; skip < s.size(); ++skip) {
                    std::vector<int> f;
                    for (size_t i = 0; i < s.size(); ++i)
                        if (i != skip) f.push_back(s[i]);
                    auto it = out.cell_of.find(f);
                    require(it != out.cell_of.end(), "subset family not closed under faces");
                    faces.push_back(Simplex{DegeneracyWord{}, it->second});
                }
            }
            std::vector<std::string> ls;
            for (int v : s) ls.push_back(vertex_labels[static_cast<size_t>(v)]);
            out.cell_of[s] = b.add_cell(d, join(ls, "."), std::move(faces));
        }
    }
    out.sset = b.finalize();
    // re-resolve refs after canonical sorting
    for (auto& [s, ref] : out.cell_of) {
        std::vector<std::string> ls;
        for (int v : s) ls.push_back(vertex_labels[static_cast<size_t>(v)]);
        int idx = out.sset.index_of_label(static_cast<int>(s.size()) - 1, join(ls, "."));
        require(idx >= 0, "lost cell after sort");
        ref = CellRef{static_cast<int>(s.size()) - 1, idx};
    }
    return out;
}

/** The standard n-simplex: one cell per nonempty subset of {0,...,n}. */
inline SSet standard_simplex(int n) {
    require(n >= -1, "standard_simplex: n < -1");
    if (n == -1) return SSet{};
    std::vector<std::string> labels;
    for (int i = 0; i <= n; ++i) labels.push_back(std::to_string(i));
    std::set<std::vector<int>> subsets;
    for (unsigned mask = 1; mask < (1u << (n + 1)); ++mask) {
        std::vector<int> s;
        for (int i = 0; i <= n; ++i)
            if (mask & (1u << i)) s.push_back(i);
        subsets.insert(std::move(s));
    }
    return sset_from_subsets(labels, subsets).sset;
}

/** Interprets a complex as a simplicial set using the stored vertex order. */
inline SSet from_complex(const SimplicialComplex& k) {
    k.validate();
    return sset_from_subsets(k.vertex_labels(), k.simplices()).sset;
}

struct Inclusion {
    SSet sub;
    SMap incl;  // sub -> ambient
};

/**
 * The boundary (horn_vertex = -1) or the horn missing the face opposite
 * horn_vertex, together with its inclusion into the standard n-simplex.
 */
inline Inclusion boundary_or_horn(int n, int horn_vertex) {
    require(n >= 1, "boundary_or_horn needs n >= 1");
    require(horn_vertex >= -1 && horn_vertex <= n, "horn vertex out of range");
    std::vector<std::string> labels;
    for (int i = 0; i <= n; ++i) labels.push_back(std::to_string(i));
    std::set<std::vector<int>> subsets;
    const unsigned full = (1u << (n + 1)) - 1;
    for (unsigned mask = 1; mask < full; ++mask) {
        if (horn_vertex >= 0 && mask == (full ^ (1u << horn_vertex))) continue;
        std::vector<int> s;
        for (int i = 0; i <= n; ++i)
            if (mask & (1u << i)) s.push_back(i);
        subsets.insert(std::move(s));
    }
    SubsetSSet sub = sset_from_subsets(labels, subsets);
    SSetPtr target = share(standard_simplex(n));
    SSetPtr source = share(std::move(sub.sset));
    std::vector<std::vector<Simplex>> img(static_cast<size_t>(source->top_dim()) + 1);
    for (int d = 0; d <= source->top_dim(); ++d)
        img[static_cast<size_t>(d)].resize(static_cast<size_t>(source->n_cells(d)));
    for (const auto& [s, ref] : sub.cell_of) {
        std::vector<std::string> ls;
        for (int v : s) ls.push_back(std::to_string(v));
        int idx = target->index_of_label(ref.dim, join(ls, "."));
        require(idx >= 0, "horn cell missing in simplex");
        img[static_cast<size_t>(ref.dim)][static_cast<size_t>(ref.idx)] =
            Simplex{DegeneracyWord{}, CellRef{ref.dim, idx}};
    }
    return Inclusion{*source, SMap(source, target, std::move(img))};
}

// ---------------------------------------------------------------------------
// binary products

struct Product {
    SSet sset;
    SMap pr1, pr2;
};

namespace detail {
inline std::string product_label(const MonotoneMap& s, const std::string& la,
                                 const MonotoneMap& t, const std::string& lb) {
    return "x[" + join(s.vals, "-") + ";" + la + ";" + join(t.vals, "-") + ";" + lb + "]";
}

// splits a pair of equal-degree simplices into (shared surjection, jointly
// injective surjection pair)
struct JointForm {
    MonotoneMap shared;  // [m] ->> [k]
    MonotoneMap sa, sb;  // [k] ->> [dim a], [k] ->> [dim b], jointly injective
};

inline JointForm joint_normal_form(const Simplex& x, const Simplex& y) {
    require(x.degree() == y.degree(), "joint normal form needs equal degrees");
    int m = x.degree();
    MonotoneMap sx = word_to_surjection(x.word, m);
    MonotoneMap sy = word_to_surjection(y.word, m);
    std::vector<int> shared(static_cast<size_t>(m) + 1, 0);
    for (int i = 1; i <= m; ++i) {
        bool both_repeat = sx.vals[static_cast<size_t>(i)] == sx.vals[static_cast<size_t>(i) - 1] &&
                           sy.vals[static_cast<size_t>(i)] == sy.vals[static_cast<size_t>(i) - 1];
        shared[static_cast<size_t>(i)] = shared[static_cast<size_t>(i) - 1] + (both_repeat ? 0 : 1);
    }
    int k = shared[static_cast<size_t>(m)];
    std::vector<int> va(static_cast<size_t>(k) + 1), vb(static_cast<size_t>(k) + 1);
    for (int i = 0; i <= m; ++i) {
        va[static_cast<size_t>(shared[static_cast<size_t>(i)])] = sx.vals[static_cast<size_t>(i)];
        vb[static_cast<size_t>(shared[static_cast<size_t>(i)])] = sy.vals[static_cast<size_t>(i)];
    }
    return JointForm{MonotoneMap(std::move(shared), k),
                     MonotoneMap(std::move(va), sx.codomain),
                     MonotoneMap(std::move(vb), sy.codomain)};
}
}  // namespace detail

inline Product product(const SSetPtr& a, const SSetPtr& b) {
    SSetBuilder builder;
    builder.set_trusted(std::min(a->trusted_through(), b->trusted_through()));
    // cell key: (a-cell, jointly injective surjection pair, b-cell)
    std::map<std::tuple<CellRef, std::vector<int>, CellRef, std::vector<int>>, CellRef> index;

    struct Entry {
        CellRef ca, cb;
        MonotoneMap sa, sb;
    };
    std::vector<std::vector<Entry>> entries;  // by product dimension

    for (int p = 0; p <= a->top_dim(); ++p) {
        for (int q = 0; q <= b->top_dim(); ++q) {
            // staircase paths (0,0) -> (p,q), steps (1,0),(0,1),(1,1)
            std::vector<std::pair<std::vector<int>, std::vector<int>>> paths;
            std::vector<int> xs{0}, ys{0};
            std::function<void()> rec = [&]() {
                if (xs.back() == p && ys.back() == q) {
                    paths.emplace_back(xs, ys);
                    return;
                }
                for (int dx = 0; dx <= 1; ++dx)
                    for (int dy = 0; dy <= 1; ++dy) {
                        if (dx + dy == 0) continue;
                        if (xs.back() + dx > p || ys.back() + dy > q) continue;
                        xs.push_back(xs.back() + dx);
                        ys.push_back(ys.back() + dy);
                        rec();
                        xs.pop_back();
                        ys.pop_back();
                    }
            };
            rec();
            for (auto& [vx, vy] : paths) {
                int n = static_cast<int>(vx.size()) - 1;
                if (static_cast<int>(entries.size()) <= n) entries.resize(static_cast<size_t>(n) + 1);
                for (int ia = 0; ia < a->n_cells(p); ++ia)
                    for (int ib = 0; ib < b->n_cells(q); ++ib)
                        entries[static_cast<size_t>(n)].push_back(
                            Entry{CellRef{p, ia}, CellRef{q, ib}, MonotoneMap(vx, p), MonotoneMap(vy, q)});
            }
        }
    }

    // add cells dimension by dimension so faces can resolve
    auto resolve = [&](const Simplex& sx, const Simplex& sy) -> Simplex {
        detail::JointForm jf = detail::joint_normal_form(sx, sy);
        auto it = index.find(std::make_tuple(sx.cell, jf.sa.vals, sy.cell, jf.sb.vals));
        require(it != index.end(), "product face cell not found");
        return Simplex{surjection_to_word(jf.shared), it->second};
    };

    for (int n = 0; n < static_cast<int>(entries.size()); ++n) {
        for (const Entry& e : entries[static_cast<size_t>(n)]) {
            std::vector<Simplex> faces;
            if (n > 0) {
                Simplex xa{surjection_to_word(e.sa), e.ca};
                Simplex xb{surjection_to_word(e.sb), e.cb};
                for (int i = 0; i <= n; ++i) {
                    MonotoneMap d = MonotoneMap::coface(n, i);
                    faces.push_back(resolve(a->apply(xa, d), b->apply(xb, d)));
                }
            }
            CellRef r = builder.add_cell(
                n, detail::product_label(e.sa, a->cell(e.ca).label, e.sb, b->cell(e.cb).label),
                std::move(faces));
            index[std::make_tuple(e.ca, e.sa.vals, e.cb, e.sb.vals)] = r;
        }
    }
    SSetPtr prod = share(builder.finalize());
    // rebuild the index against canonical cell order
    for (auto& [key, ref] : index) {
        const auto& [ca, sa, cb, sb] = key;
        std::string label = detail::product_label(MonotoneMap(sa, std::get<0>(key).dim),
                                                  a->cell(ca).label,
                                                  MonotoneMap(sb, std::get<2>(key).dim), b->cell(cb).label);
        int dim = static_cast<int>(sa.size()) - 1;
        int idx = prod->index_of_label(dim, label);
        require(idx >= 0, "product cell lost after sort");
        ref = CellRef{dim, idx};
    }

    std::vector<std::vector<Simplex>> img1(static_cast<size_t>(prod->top_dim()) + 1);
    std::vector<std::vector<Simplex>> img2(static_cast<size_t>(prod->top_dim()) + 1);
    for (int d = 0; d <= prod->top_dim(); ++d) {
        img1[static_cast<size_t>(d)].resize(static_cast<size_t>(prod->n_cells(d)));
        img2[static_cast<size_t>(d)].resize(static_cast<size_t>(prod->n_cells(d)));
    }
    for (const auto& [key, ref] : index) {
        const auto& [ca, sa, cb, sb] = key;
        img1[static_cast<size_t>(ref.dim)][static_cast<size_t>(ref.idx)] =
            Simplex{surjection_to_word(MonotoneMap(sa, ca.dim)), ca};
        img2[static_cast<size_t>(ref.dim)][static_cast<size_t>(ref.idx)] =
            Simplex{surjection_to_word(MonotoneMap(sb, cb.dim)), cb};
    }
    return Product{*prod, SMap(prod, a, std::move(img1)), SMap(prod, b, std::move(img2))};
}

/** The product simplex corresponding to a pair of equal-degree simplices. */
inline Simplex product_element(const Product& p, const Simplex& sx, const Simplex& sy) {
    detail::JointForm jf = detail::joint_normal_form(sx, sy);
    const SSet& a = *p.pr1.dst();
    const SSet& b = *p.pr2.dst();
    std::string label = detail::product_label(jf.sa, a.cell(sx.cell).label, jf.sb, b.cell(sy.cell).label);
    int dim = jf.shared.codomain;
    int idx = p.sset.index_of_label(dim, label);
    require(idx >= 0, "pair does not name a product cell");
    return Simplex{surjection_to_word(jf.shared), CellRef{dim, idx}};
}

// ---------------------------------------------------------------------------
// joins

/** The induced map of binary products, componentwise. */
inline SMap product_map(const Product& src, const Product& dst, const SMap& fa, const SMap& fb) {
    const SSetPtr& s = src.pr1.src();
    std::vector<std::vector<Simplex>> img(static_cast<size_t>(std::max(0, s->top_dim() + 1)));
    for (int d = 0; d <= s->top_dim(); ++d)
        for (int i = 0; i < s->n_cells(d); ++i)
            img[static_cast<size_t>(d)].push_back(
                product_element(dst, fa.image_of(src.pr1.cell_image(CellRef{d, i})),
                                fb.image_of(src.pr2.cell_image(CellRef{d, i}))));
    return SMap(s, dst.pr1.src(), std::move(img), false);
}

struct Join {
    SSet sset;
    SMap incl_left, incl_right;
    std::map<std::pair<CellRef, CellRef>, CellRef> pair_cell;  // {-1,-1} marks an empty side
};

namespace detail {
inline std::string join_label(const std::string* la, const std::string* lb) {
    return "j[" + (la ? *la : std::string("*")) + ";" + (lb ? *lb : std::string("*")) + "]";
}
}  // namespace detail

inline Join join_ssets(const SSetPtr& a, const SSetPtr& b) {
    SSetBuilder builder;
    builder.set_trusted(std::min(a->trusted_through(), b->trusted_through()));
    std::map<std::pair<CellRef, CellRef>, CellRef> index;  // {-1,-1} dim marks the empty side

    const CellRef none{-1, -1};

    // the join of two normal-form sides into a normal-form simplex
    auto assemble = [&](const std::optional<Simplex>& sx, const std::optional<Simplex>& sy) -> Simplex {
        if (!sx) {
            auto it = index.find({none, sy->cell});
            require(it != index.end(), "join cell missing (right)");
            return Simplex{sy->word, it->second};
        }
        if (!sy) {
            auto it = index.find({sx->cell, none});
            require(it != index.end(), "join cell missing (left)");
            return Simplex{sx->word, it->second};
        }
        MonotoneMap su = word_to_surjection(sx->word, sx->degree());
        MonotoneMap sv = word_to_surjection(sy->word, sy->degree());
        std::vector<int> vals = su.vals;
        for (int v : sv.vals) vals.push_back(v + su.codomain + 1);
        MonotoneMap total(std::move(vals), su.codomain + sv.codomain + 1);
        auto it = index.find({sx->cell, sy->cell});
        require(it != index.end(), "join cell missing (pair)");
        return Simplex{surjection_to_word(total), it->second};
    };

    int top = a->top_dim() + b->top_dim() + 1;
    for (int n = 0; n <= std::max({top, a->top_dim(), b->top_dim()}); ++n) {
        // pure left cells
        if (n <= a->top_dim())
            for (int i = 0; i < a->n_cells(n); ++i) {
                std::vector<Simplex> faces;
                for (int k = 0; k <= n && n > 0; ++k) {
                    Simplex f = a->face(CellRef{n, i}, k);
                    faces.push_back(assemble(std::optional<Simplex>(f), std::nullopt));
                }
                index[{CellRef{n, i}, none}] =
                    builder.add_cell(n, detail::join_label(&a->cell(n, i).label, nullptr), std::move(faces));
            }
        if (n <= b->top_dim())
            for (int i = 0; i < b->n_cells(n); ++i) {
                std::vector<Simplex> faces;
                for (int k = 0; k <= n && n > 0; ++k) {
                    Simplex f = b->face(CellRef{n, i}, k);
                    faces.push_back(assemble(std::nullopt, std::optional<Simplex>(f)));
                }
                index[{none, CellRef{n, i}}] =
                    builder.add_cell(n, detail::join_label(nullptr, &b->cell(n, i).label), std::move(faces));
            }
        // mixed cells (p, q) with p + q + 1 = n
        for (int p = 0; p < n; ++p) {
            int q = n - 1 - p;
            if (p > a->top_dim() || q > b->top_dim()) continue;
            for (int ia = 0; ia < a->n_cells(p); ++ia) {
                for (int ib = 0; ib < b->n_cells(q); ++ib) {
                    std::vector<Simplex> faces;
                    for (int k = 0; k <= n; ++k) {
                        if (k <= p) {
                            if (p == 0)
                                faces.push_back(assemble(std::nullopt,
                                                         std::optional<Simplex>(nondeg(q, ib))));
                            else
                                faces.push_back(assemble(
                                    std::optional<Simplex>(a->face(CellRef{p, ia}, k)),
                                    std::optional<Simplex>(nondeg(q, ib))));
                        } else {
                            if (q == 0)
                                faces.push_back(assemble(std::optional<Simplex>(nondeg(p, ia)),
                                                         std::nullopt));
                            else
                                faces.push_back(assemble(
                                    std::optional<Simplex>(nondeg(p, ia)),
                                    std::optional<Simplex>(b->face(CellRef{q, ib}, k - p - 1))));
                        }
                    }
                    index[{CellRef{p, ia}, CellRef{q, ib}}] = builder.add_cell(
                        n, detail::join_label(&a->cell(p, ia).label, &b->cell(q, ib).label),
                        std::move(faces));
                }
            }
        }
    }

    SSetPtr jn = share(builder.finalize());
    auto locate = [&](int dim, const std::string& label) {
        int idx = jn->index_of_label(dim, label);
        require(idx >= 0, "join cell lost after sort");
        return CellRef{dim, idx};
    };
    std::vector<std::vector<Simplex>> imgL(static_cast<size_t>(a->top_dim() + 1 > 0 ? a->top_dim() + 1 : 0));
    for (int d = 0; d <= a->top_dim(); ++d)
        for (int i = 0; i < a->n_cells(d); ++i)
            imgL[static_cast<size_t>(d)].push_back(Simplex{
                DegeneracyWord{}, locate(d, detail::join_label(&a->cell(d, i).label, nullptr))});
    std::vector<std::vector<Simplex>> imgR(static_cast<size_t>(b->top_dim() + 1 > 0 ? b->top_dim() + 1 : 0));
    for (int d = 0; d <= b->top_dim(); ++d)
        for (int i = 0; i < b->n_cells(d); ++i)
            imgR[static_cast<size_t>(d)].push_back(Simplex{
                DegeneracyWord{}, locate(d, detail::join_label(nullptr, &b->cell(d, i).label))});
    std::map<std::pair<CellRef, CellRef>, CellRef> pairs;
    for (const auto& [pr, old] : index) {
        const std::string* la = pr.first.dim >= 0 ? &a->cell(pr.first).label : nullptr;
        const std::string* lb = pr.second.dim >= 0 ? &b->cell(pr.second).label : nullptr;
        pairs[pr] = locate(old.dim, detail::join_label(la, lb));
    }
    return Join{*jn, SMap(a, jn, std::move(imgL)), SMap(b, jn, std::move(imgR)), std::move(pairs)};
}

/** The join simplex assembled from one or two component normal forms. */
inline Simplex join_element(const Join& j, const std::optional<Simplex>& sx,
                            const std::optional<Simplex>& sy) {
    const CellRef none{-1, -1};
    if (!sx) {
        auto it = j.pair_cell.find({none, sy->cell});
        require(it != j.pair_cell.end(), "join cell missing (right)");
        return Simplex{sy->word, it->second};
    }
    if (!sy) {
        auto it = j.pair_cell.find({sx->cell, none});
        require(it != j.pair_cell.end(), "join cell missing (left)");
        return Simplex{sx->word, it->second};
    }
    MonotoneMap su = word_to_surjection(sx->word, sx->degree());
    MonotoneMap sv = word_to_surjection(sy->word, sy->degree());
    std::vector<int> vals = su.vals;
    for (int v : sv.vals) vals.push_back(v + su.codomain + 1);
    MonotoneMap total(std::move(vals), su.codomain + sv.codomain + 1);
    auto it = j.pair_cell.find({sx->cell, sy->cell});
    require(it != j.pair_cell.end(), "join cell missing (pair)");
    return Simplex{surjection_to_word(total), it->second};
}

/** The induced map of joins, componentwise. */
inline SMap join_map(const Join& src, const Join& dst, const SMap& fa, const SMap& fb) {
    const SSetPtr& s = src.incl_left.dst();
    std::vector<std::vector<Simplex>> img(static_cast<size_t>(std::max(0, s->top_dim() + 1)));
    std::map<CellRef, std::pair<CellRef, CellRef>> back;
    for (const auto& [pr, ref] : src.pair_cell) back[ref] = pr;
    for (int d = 0; d <= s->top_dim(); ++d)
        for (int i = 0; i < s->n_cells(d); ++i) {
            auto [ca, cb] = back.at(CellRef{d, i});
            std::optional<Simplex> ia, ib;
            if (ca.dim >= 0) ia = fa.image_of(nondeg(ca.dim, ca.idx));
            if (cb.dim >= 0) ib = fb.image_of(nondeg(cb.dim, cb.idx));
            img[static_cast<size_t>(d)].push_back(join_element(dst, ia, ib));
        }
    return SMap(s, dst.incl_left.dst(), std::move(img), false);
}

// ---------------------------------------------------------------------------
// coproducts, pushouts, quotients

struct Coproduct {
    SSet sset;
    SMap incl_left, incl_right;
};

inline Coproduct coproduct(const SSetPtr& a, const SSetPtr& b) {
    SSetBuilder builder;
    builder.set_trusted(std::min(a->trusted_through(), b->trusted_through()));
    int top = std::max(a->top_dim(), b->top_dim());
    std::vector<std::vector<CellRef>> refL(static_cast<size_t>(a->top_dim()) + 1),
        refR(static_cast<size_t>(b->top_dim()) + 1);
    for (int d = 0; d <= top; ++d) {
        if (d <= a->top_dim())
            for (int i = 0; i < a->n_cells(d); ++i) {
                std::vector<Simplex> faces = a->cell(d, i).faces;
                for (Simplex& f : faces) f.cell = refL[static_cast<size_t>(f.cell.dim)][static_cast<size_t>(f.cell.idx)];
                refL[static_cast<size_t>(d)].push_back(
                    builder.add_cell(d, "L:" + a->cell(d, i).label, std::move(faces)));
            }
        if (d <= b->top_dim())
            for (int i = 0; i < b->n_cells(d); ++i) {
                std::vector<Simplex> faces = b->cell(d, i).faces;
                for (Simplex& f : faces) f.cell = refR[static_cast<size_t>(f.cell.dim)][static_cast<size_t>(f.cell.idx)];
                refR[static_cast<size_t>(d)].push_back(
                    builder.add_cell(d, "R:" + b->cell(d, i).label, std::move(faces)));
            }
    }
    SSetPtr cp = share(builder.finalize());
    auto img_for = [&](const SSetPtr& side, const char* tag) {
        std::vector<std::vector<Simplex>> img(static_cast<size_t>(std::max(0, side->top_dim() + 1)));
        for (int d = 0; d <= side->top_dim(); ++d)
            for (int i = 0; i < side->n_cells(d); ++i) {
                int idx = cp->index_of_label(d, std::string(tag) + side->cell(d, i).label);
                require(idx >= 0, "coproduct cell lost");
                img[static_cast<size_t>(d)].push_back(nondeg(d, idx));
            }
        return img;
    };
    return Coproduct{*cp, SMap(a, cp, img_for(a, "L:")), SMap(b, cp, img_for(b, "R:"))};
}

struct Pushout {
    SSet sset;
    SMap from_left, from_right;  // B -> P and C -> P for the span B <- A -> C
    // one glued-class representative per nondegenerate cell: (0 = B, 1 = C, simplex)
    std::vector<std::vector<std::pair<int, Simplex>>> rep;
};

/**
 * The map out of a pushout determined by legs on B and C.  The legs must
 * agree on the glued classes; validity of the result is checked.
 */
inline SMap pushout_induced(const Pushout& p, const SMap& on_left, const SMap& on_right) {
    const SSetPtr& src = p.from_left.dst();
    std::vector<std::vector<Simplex>> img(static_cast<size_t>(std::max(0, src->top_dim() + 1)));
    for (int d = 0; d <= src->top_dim(); ++d)
        for (int i = 0; i < src->n_cells(d); ++i) {
            const auto& [side, s] = p.rep[static_cast<size_t>(d)][static_cast<size_t>(i)];
            img[static_cast<size_t>(d)].push_back(side == 0 ? on_left.image_of(s)
                                                            : on_right.image_of(s));
        }
    return SMap(src, on_left.dst(), std::move(img));
}

/**
 * Degreewise pushout of B <-f- A -g-> C with Eilenberg-Zilber renormalization.
 * Simplices in each degree are glued by the equivalence generated by
 * f(a) ~ g(a); classes containing a degenerate member are degenerate.
 */
inline Pushout pushout(const SMap& f, const SMap& g) {
    require(f.src().get() == g.src().get() || f.src()->encode() == g.src()->encode(),
            "pushout legs must share their source");
    const SSetPtr& a = f.src();
    const SSetPtr& bb = f.dst();
    const SSetPtr& cc = g.dst();
    int N = std::max(bb->top_dim(), cc->top_dim());
    int trusted = std::min({a->trusted_through(), bb->trusted_through(), cc->trusted_through()});

    struct Tagged {
        int side;  // 0 = B, 1 = C
        Simplex s;
        bool operator<(const Tagged& o) const {
            if (side != o.side) return side < o.side;
            return s < o.s;
        }
        bool operator==(const Tagged& o) const { return side == o.side && s == o.s; }
    };

    // union-find over the degree-m simplices of B ⊔ C
    std::vector<std::map<Tagged, int>> id_of(static_cast<size_t>(N) + 1);
    std::vector<std::vector<int>> uf(static_cast<size_t>(N) + 1);
    std::vector<std::vector<Tagged>> items(static_cast<size_t>(N) + 1);
    auto intern = [&](int m, const Tagged& t) {
        auto [it, fresh] = id_of[static_cast<size_t>(m)].emplace(t, static_cast<int>(items[static_cast<size_t>(m)].size()));
        if (fresh) {
            items[static_cast<size_t>(m)].push_back(t);
            uf[static_cast<size_t>(m)].push_back(it->second);
        }
        return it->second;
    };
    std::function<int(int, int)> find = [&](int m, int x) {
        auto& u = uf[static_cast<size_t>(m)];
        while (u[static_cast<size_t>(x)] != x) {
            u[static_cast<size_t>(x)] = u[static_cast<size_t>(u[static_cast<size_t>(x)])];
            x = u[static_cast<size_t>(x)];
        }
        return x;
    };
    auto unite = [&](int m, int x, int y) {
        x = find(m, x);
        y = find(m, y);
        if (x != y) uf[static_cast<size_t>(m)][static_cast<size_t>(std::max(x, y))] = std::min(x, y);
    };

    for (int m = 0; m <= N; ++m) {
        for (const Simplex& s : bb->simplices_of_degree(m)) intern(m, Tagged{0, s});
        for (const Simplex& s : cc->simplices_of_degree(m)) intern(m, Tagged{1, s});
        for (const Simplex& s : a->simplices_of_degree(m)) {
            int x = intern(m, Tagged{0, f.image_of(s)});
            int y = intern(m, Tagged{1, g.image_of(s)});
            unite(m, x, y);
        }
    }

    // canonical class keys: the minimal member's encoding
    auto encode_tagged = [&](const Tagged& t) {
        const SSet& side = t.side == 0 ? *bb : *cc;
        std::string s = t.side == 0 ? "B:" : "C:";
        s += "[" + join(t.s.word.letters, ".") + "]";
        s += side.cell(t.s.cell).label;
        return s;
    };
    std::vector<std::map<int, std::string>> class_key(static_cast<size_t>(N) + 1);
    std::vector<std::vector<std::string>> keys(static_cast<size_t>(N) + 1);
    std::vector<std::map<std::string, int>> key_index(static_cast<size_t>(N) + 1);
    std::vector<std::vector<Tagged>> class_rep(static_cast<size_t>(N) + 1);
    for (int m = 0; m <= N; ++m) {
        std::map<int, Tagged> min_member;
        for (size_t i = 0; i < items[static_cast<size_t>(m)].size(); ++i) {
            int r = find(m, static_cast<int>(i));
            const Tagged& t = items[static_cast<size_t>(m)][i];
            auto it = min_member.find(r);
            if (it == min_member.end() || t < it->second) min_member[r] = t;
        }
        for (auto& [root, t] : min_member) class_key[static_cast<size_t>(m)][root] = encode_tagged(t);
        for (auto& [root, key] : class_key[static_cast<size_t>(m)]) keys[static_cast<size_t>(m)].push_back(key);
        std::sort(keys[static_cast<size_t>(m)].begin(), keys[static_cast<size_t>(m)].end());
        for (size_t i = 0; i < keys[static_cast<size_t>(m)].size(); ++i)
            key_index[static_cast<size_t>(m)][keys[static_cast<size_t>(m)][i]] = static_cast<int>(i);
        class_rep[static_cast<size_t>(m)].resize(keys[static_cast<size_t>(m)].size(), Tagged{0, Simplex{}});
        for (auto& [root, t] : min_member)
            class_rep[static_cast<size_t>(m)][static_cast<size_t>(
                key_index[static_cast<size_t>(m)][class_key[static_cast<size_t>(m)][root]])] = t;
    }
    auto class_of = [&](int m, const Tagged& t) {
        auto it = id_of[static_cast<size_t>(m)].find(t);
        require(it != id_of[static_cast<size_t>(m)].end(), "pushout: unknown simplex");
        int root = find(m, it->second);
        return key_index[static_cast<size_t>(m)].at(class_key[static_cast<size_t>(m)].at(root));
    };

    DegreewiseModel model;
    model.keys = keys;
    model.face = [&](int m, int idx, int i) {
        const Tagged& t = class_rep[static_cast<size_t>(m)][static_cast<size_t>(idx)];
        const SSet& side = t.side == 0 ? *bb : *cc;
        return class_of(m - 1, Tagged{t.side, side.face_of(t.s, i)});
    };
    model.degen = [&](int m, int idx, int i) {
        const Tagged& t = class_rep[static_cast<size_t>(m)][static_cast<size_t>(idx)];
        const SSet& side = t.side == 0 ? *bb : *cc;
        return class_of(m + 1, Tagged{t.side, side.degeneracy_of(t.s, i)});
    };

    Extraction ex = extract_presentation(model, trusted);
    SSetPtr p = share(std::move(ex.sset));

    auto leg = [&](const SSetPtr& side, int tag) {
        std::vector<std::vector<Simplex>> img(static_cast<size_t>(std::max(0, side->top_dim() + 1)));
        for (int d = 0; d <= side->top_dim(); ++d)
            for (int i = 0; i < side->n_cells(d); ++i) {
                int e = class_of(d, Tagged{tag, nondeg(d, i)});
                img[static_cast<size_t>(d)].push_back(ex.normal[static_cast<size_t>(d)][static_cast<size_t>(e)]);
            }
        return SMap(side, p, std::move(img));
    };
    std::vector<std::vector<std::pair<int, Simplex>>> rep(
        static_cast<size_t>(std::max(0, p->top_dim() + 1)));
    for (int d = 0; d <= p->top_dim(); ++d)
        rep[static_cast<size_t>(d)].resize(static_cast<size_t>(p->n_cells(d)),
                                           {0, Simplex{}});
    for (int m = 0; m <= N; ++m)
        for (size_t e = 0; e < ex.normal[static_cast<size_t>(m)].size(); ++e) {
            const Simplex& nf = ex.normal[static_cast<size_t>(m)][e];
            if (!nf.word.letters.empty()) continue;
            const Tagged& t = class_rep[static_cast<size_t>(m)][e];
            rep[static_cast<size_t>(nf.cell.dim)][static_cast<size_t>(nf.cell.idx)] = {t.side, t.s};
        }
    return Pushout{*p, leg(bb, 0), leg(cc, 1), std::move(rep)};
}

/** Collapses the image of an inclusion to a point (new vertex label "pt"). */
inline Pushout quotient(const SMap& incl) {
    SSetPtr sub = incl.src();
    SSetPtr pt = share(standard_simplex(0));
    std::vector<std::vector<Simplex>> img(static_cast<size_t>(std::max(0, sub->top_dim() + 1)));
    for (int d = 0; d <= sub->top_dim(); ++d)
        for (int i = 0; i < sub->n_cells(d); ++i) {
            std::vector<int> letters;
            for (int j = d - 1; j >= 0; --j) letters.push_back(j);
            img[static_cast<size_t>(d)].push_back(
                Simplex{DegeneracyWord(std::move(letters)), CellRef{0, 0}});
        }
    SMap collapse(sub, pt, std::move(img));
    return pushout(collapse, incl);  // from_left: pt -> Q, from_right: K -> Q
}

struct DoubleCylinder {
    SSetPtr sset;
    SMap from_left, from_right;  // X0 -> cyl and X1 -> cyl for X0 <-f- A -g-> X1
};

/**
 * Double mapping cylinder of X0 <-f- A -g-> X1: the prism A x Delta^1 with
 * its two ends glued along f and g.  Computes the homotopy pushout of the
 * span up to homology even when f and g are not inclusions.
 */
inline DoubleCylinder double_mapping_cylinder(const SMap& f, const SMap& g) {
    require(f.src().get() == g.src().get(), "cylinder legs must share their source");
    const SSetPtr& a = f.src();
    SSetPtr interval = share(standard_simplex(1));
    Product prism = product(a, interval);

    auto end_map = [&](int v) {
        std::vector<std::vector<Simplex>> img(static_cast<size_t>(std::max(0, a->top_dim() + 1)));
        for (int d = 0; d <= a->top_dim(); ++d)
            for (int i = 0; i < a->n_cells(d); ++i) {
                Simplex tip = interval->apply(nondeg(0, v), MonotoneMap::constant(d, 0, 0));
                img[static_cast<size_t>(d)].push_back(
                    product_element(prism, nondeg(d, i), tip));
            }
        return SMap(a, prism.pr1.src(), std::move(img));
    };

    int v0 = interval->index_of_label(0, "0"), v1 = interval->index_of_label(0, "1");
    Pushout p1 = pushout(end_map(v0), f);
    SMap other_end = compose(p1.from_left, end_map(v1));
    Pushout p2 = pushout(other_end, g);
    return DoubleCylinder{p2.from_right.dst(), compose(p2.from_left, p1.from_right),
                          p2.from_right};
}

}  // namespace combitop
