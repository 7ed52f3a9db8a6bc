#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "combitop/degreewise.hpp"
#include "combitop/sset.hpp"
#include "combitop/util.hpp"

namespace combitop {

/**
 * Finite category with explicitly stored composition.  Objects and morphisms
 * carry unique labels; morphism labels must avoid '|' because nerve chain
 * keys join them with it.  Identities are created together with their object
 * and are never stored in the composition table; the composite() accessor
 * resolves them definitionally, so the unit laws hold by construction.
 *
 * `bound` records the enumeration parameter under which the object set was
 * generated ("complete" when nothing was cut off).  Consumers must propagate
 * any other value into their own trust annotations.
 */
class BoundedCategory {
public:
    struct Morphism {
        int src = -1, dst = -1;
        std::string label;
    };

    int add_object(const std::string& label, std::string identity_label = "") {
        require(label.find('|') == std::string::npos, "object label contains '|'");
        require(object_index_.count(label) == 0, "duplicate object label " + label);
        int o = static_cast<int>(objects_.size());
        objects_.push_back(label);
        object_index_[label] = o;
        if (identity_label.empty()) identity_label = "1(" + label + ")";
        identity_.push_back(add_morphism(o, o, identity_label));
        return o;
    }

    int add_morphism(int src, int dst, const std::string& label) {
        require(src >= 0 && src < n_objects() && dst >= 0 && dst < n_objects(),
                "morphism endpoint out of range");
        require(label.find('|') == std::string::npos, "morphism label contains '|'");
        require(morphism_index_.count(label) == 0, "duplicate morphism label " + label);
        int m = static_cast<int>(morphisms_.size());
        morphisms_.push_back(Morphism{src, dst, label});
        morphism_index_[label] = m;
        return m;
    }

    // g after f; neither side may be an identity (those compose definitionally)
    void set_composite(int g, int f, int gf) {
        require(!is_identity(g) && !is_identity(f), "identity composites are implicit");
        require(src(g) == dst(f), "set_composite on a non-composable pair");
        require(src(gf) == src(f) && dst(gf) == dst(g), "composite endpoints wrong");
        table_[{g, f}] = gf;
    }

    void set_bound(std::string b) { bound_ = std::move(b); }
    const std::string& bound() const { return bound_; }

    int n_objects() const { return static_cast<int>(objects_.size()); }
    int n_morphisms() const { return static_cast<int>(morphisms_.size()); }
    int n_nonidentity() const { return n_morphisms() - n_objects(); }

    const std::string& object_label(int o) const { return objects_[static_cast<size_t>(o)]; }
    const Morphism& morphism(int m) const { return morphisms_[static_cast<size_t>(m)]; }
    int src(int m) const { return morphism(m).src; }
    int dst(int m) const { return morphism(m).dst; }
    int identity_of(int o) const { return identity_[static_cast<size_t>(o)]; }
    bool is_identity(int m) const { return identity_[static_cast<size_t>(src(m))] == m && src(m) == dst(m); }

    int object_index(const std::string& label) const {
        auto it = object_index_.find(label);
        return it == object_index_.end() ? -1 : it->second;
    }
    int morphism_index(const std::string& label) const {
        auto it = morphism_index_.find(label);
        return it == morphism_index_.end() ? -1 : it->second;
    }

    int composite(int g, int f) const {
        require(src(g) == dst(f), "composite of a non-composable pair");
        if (is_identity(f)) return g;
        if (is_identity(g)) return f;
        auto it = table_.find({g, f});
        require(it != table_.end(), "missing composite " + morphism(g).label + " after " +
                                        morphism(f).label);
        return it->second;
    }

    std::vector<int> hom(int a, int b) const {
        std::vector<int> out;
        for (int m = 0; m < n_morphisms(); ++m)
            if (src(m) == a && dst(m) == b) out.push_back(m);
        return out;
    }

    /** Closure of the composition table plus associativity on all stored triples. */
    void validate() const {
        for (const auto& [pair, gf] : table_) {
            require(!is_identity(pair.first) && !is_identity(pair.second),
                    "identity pair stored in composition table");
            require(src(pair.first) == dst(pair.second), "stored pair not composable");
            require(src(gf) == src(pair.second) && dst(gf) == dst(pair.first),
                    "stored composite has wrong endpoints");
        }
        std::vector<std::vector<int>> out_of(static_cast<size_t>(n_objects()));
        for (int m = 0; m < n_morphisms(); ++m)
            if (!is_identity(m)) out_of[static_cast<size_t>(src(m))].push_back(m);
        for (int f = 0; f < n_morphisms(); ++f) {
            if (is_identity(f)) continue;
            for (int g : out_of[static_cast<size_t>(dst(f))]) {
                int gf = composite(g, f);  // throws when the table has a hole
                for (int h : out_of[static_cast<size_t>(dst(g))])
                    require(composite(h, gf) == composite(composite(h, g), f),
                            "associativity fails at " + morphism(h).label + ", " +
                                morphism(g).label + ", " + morphism(f).label);
            }
        }
    }

private:
    std::vector<std::string> objects_;
    std::vector<Morphism> morphisms_;
    std::vector<int> identity_;
    std::map<std::pair<int, int>, int> table_;
    std::map<std::string, int> object_index_, morphism_index_;
    std::string bound_ = "complete";
};

using CatPtr = std::shared_ptr<const BoundedCategory>;

inline CatPtr share(BoundedCategory c) {
    return std::make_shared<const BoundedCategory>(std::move(c));
}

/** Finite poset presented by its order relation; one morphism per related pair. */
inline BoundedCategory poset_category(const std::vector<std::string>& labels,
                                      const std::function<bool(int, int)>& leq) {
    BoundedCategory c;
    for (const auto& l : labels) c.add_object(l, l + "<" + l);
    const int n = static_cast<int>(labels.size());
    std::map<std::pair<int, int>, int> arrow;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            if (a == b) {
                require(leq(a, a), "poset relation not reflexive at " + labels[static_cast<size_t>(a)]);
                arrow[{a, a}] = c.identity_of(a);
                continue;
            }
            if (!leq(a, b)) continue;
            require(!leq(b, a), "poset relation not antisymmetric on " +
                                    labels[static_cast<size_t>(a)] + ", " + labels[static_cast<size_t>(b)]);
            arrow[{a, b}] = c.add_morphism(a, b, labels[static_cast<size_t>(a)] + "<" +
                                                     labels[static_cast<size_t>(b)]);
        }
    for (const auto& [ab, f] : arrow) {
        if (ab.first == ab.second) continue;
        for (const auto& [bc, g] : arrow) {
            if (bc.first != ab.second || bc.first == bc.second) continue;
            auto it = arrow.find({ab.first, bc.second});
            require(it != arrow.end(), "poset relation not transitive");
            c.set_composite(g, f, it->second);
        }
    }
    c.validate();
    return c;
}

/**
 * Free category on a finite acyclic graph: objects are the nodes, morphisms
 * the directed paths, composition is path concatenation.  Edges must go up
 * in node order, which forces acyclicity.  The node sequence of every
 * morphism is kept (identities as singletons) so diagrams on the category
 * can be built edgewise.
 */
struct FreeCategory {
    CatPtr cat;
    std::vector<std::vector<int>> path;  // per morphism: node sequence
};

inline FreeCategory free_acyclic_category(const std::vector<std::string>& nodes,
                                          const std::vector<std::pair<int, int>>& edges) {
    BoundedCategory c;
    FreeCategory out;
    for (const auto& l : nodes) {
        int o = c.add_object(l);
        out.path.push_back({o});
    }
    for (const auto& [a, b] : edges) require(a < b, "edges must increase in node order");

    // paths as node sequences, enumerated by length
    std::map<std::vector<int>, int> path_mor;
    std::vector<std::vector<int>> frontier;
    auto record = [&](const std::vector<int>& p) {
        path_mor[p] = c.add_morphism(p.front(), p.back(), "p:" + join(p, "-"));
        out.path.push_back(p);
    };
    for (const auto& e : edges) {
        std::vector<int> p{e.first, e.second};
        if (path_mor.count(p)) continue;
        record(p);
        frontier.push_back(std::move(p));
    }
    while (!frontier.empty()) {
        std::vector<std::vector<int>> next;
        for (const auto& p : frontier)
            for (const auto& e : edges) {
                if (e.first != p.back()) continue;
                std::vector<int> q = p;
                q.push_back(e.second);
                if (path_mor.count(q)) continue;
                record(q);
                next.push_back(std::move(q));
            }
        frontier = std::move(next);
    }
    for (const auto& [p, f] : path_mor)
        for (const auto& [q, g] : path_mor) {
            if (q.front() != p.back()) continue;
            std::vector<int> pq = p;
            pq.insert(pq.end(), q.begin() + 1, q.end());
            c.set_composite(g, f, path_mor.at(pq));
        }
    c.validate();
    out.cat = share(std::move(c));
    return out;
}

/** The walking arrow {0 -> 1}, the labeling target for fiber decompositions. */
inline BoundedCategory arrow_category() {
    return poset_category({"0", "1"}, [](int a, int b) { return a <= b; });
}

/**
 * Functor between stored categories.  The constructor checks preservation of
 * endpoints, identities, and every stored composite.
 */
class Functor {
public:
    Functor() = default;
    Functor(CatPtr src, CatPtr dst, std::vector<int> obj, std::vector<int> mor, bool check = true)
        : src_(std::move(src)), dst_(std::move(dst)), obj_(std::move(obj)), mor_(std::move(mor)) {
        if (check) check_valid();
    }

    const CatPtr& src() const { return src_; }
    const CatPtr& dst() const { return dst_; }
    int obj_image(int o) const { return obj_[static_cast<size_t>(o)]; }
    int mor_image(int m) const { return mor_[static_cast<size_t>(m)]; }

    void check_valid() const {
        require(static_cast<int>(obj_.size()) == src_->n_objects(), "object map size mismatch");
        require(static_cast<int>(mor_.size()) == src_->n_morphisms(), "morphism map size mismatch");
        for (int m = 0; m < src_->n_morphisms(); ++m) {
            int fm = mor_image(m);
            require(dst_->src(fm) == obj_image(src_->src(m)) &&
                        dst_->dst(fm) == obj_image(src_->dst(m)),
                    "functor breaks endpoints at " + src_->morphism(m).label);
        }
        for (int o = 0; o < src_->n_objects(); ++o)
            require(mor_image(src_->identity_of(o)) == dst_->identity_of(obj_image(o)),
                    "functor breaks the identity of " + src_->object_label(o));
        for (int f = 0; f < src_->n_morphisms(); ++f) {
            if (src_->is_identity(f)) continue;
            for (int g = 0; g < src_->n_morphisms(); ++g) {
                if (src_->is_identity(g) || src_->src(g) != src_->dst(f)) continue;
                require(mor_image(src_->composite(g, f)) ==
                            dst_->composite(mor_image(g), mor_image(f)),
                        "functor breaks the composite of " + src_->morphism(g).label + " after " +
                            src_->morphism(f).label);
            }
        }
    }

private:
    CatPtr src_, dst_;
    std::vector<int> obj_, mor_;
};

inline Functor identity_functor(const CatPtr& c) {
    std::vector<int> obj(static_cast<size_t>(c->n_objects()));
    std::vector<int> mor(static_cast<size_t>(c->n_morphisms()));
    for (size_t i = 0; i < obj.size(); ++i) obj[i] = static_cast<int>(i);
    for (size_t i = 0; i < mor.size(); ++i) mor[i] = static_cast<int>(i);
    return Functor(c, c, std::move(obj), std::move(mor), false);
}

inline Functor compose(const Functor& g, const Functor& f) {
    require(f.dst().get() == g.src().get(), "compose: middle categories differ");
    std::vector<int> obj, mor;
    for (int o = 0; o < f.src()->n_objects(); ++o) obj.push_back(g.obj_image(f.obj_image(o)));
    for (int m = 0; m < f.src()->n_morphisms(); ++m) mor.push_back(g.mor_image(f.mor_image(m)));
    return Functor(f.src(), g.dst(), std::move(obj), std::move(mor), false);
}

/** Functor of posets determined by a monotone object map. */
inline Functor poset_functor(const CatPtr& a, const CatPtr& b, const std::vector<int>& obj) {
    std::vector<int> mor(static_cast<size_t>(a->n_morphisms()));
    for (int m = 0; m < a->n_morphisms(); ++m) {
        int s = obj[static_cast<size_t>(a->src(m))], d = obj[static_cast<size_t>(a->dst(m))];
        std::vector<int> h = b->hom(s, d);
        require(h.size() == 1, "object map is not monotone at " + a->morphism(m).label);
        mor[static_cast<size_t>(m)] = h.front();
    }
    return Functor(a, b, obj, std::move(mor));
}

inline bool is_isomorphism(const Functor& f) {
    if (f.src()->n_objects() != f.dst()->n_objects() ||
        f.src()->n_morphisms() != f.dst()->n_morphisms())
        return false;
    std::vector<char> ohit(static_cast<size_t>(f.dst()->n_objects()), 0);
    std::vector<char> mhit(static_cast<size_t>(f.dst()->n_morphisms()), 0);
    for (int o = 0; o < f.src()->n_objects(); ++o) ohit[static_cast<size_t>(f.obj_image(o))] = 1;
    for (int m = 0; m < f.src()->n_morphisms(); ++m) mhit[static_cast<size_t>(f.mor_image(m))] = 1;
    return std::all_of(ohit.begin(), ohit.end(), [](char c) { return c == 1; }) &&
           std::all_of(mhit.begin(), mhit.end(), [](char c) { return c == 1; });
}

struct FullSubcategory {
    CatPtr cat;
    Functor incl;                      // cat -> parent
    std::vector<int> obj_to_sub, mor_to_sub;  // parent index -> sub index, -1 outside
};

inline FullSubcategory full_subcategory(const CatPtr& parent, const std::vector<int>& objects) {
    BoundedCategory sub;
    std::vector<int> obj_to_sub(static_cast<size_t>(parent->n_objects()), -1);
    std::vector<int> mor_to_sub(static_cast<size_t>(parent->n_morphisms()), -1);
    std::vector<int> obj_in, mor_in;
    for (int o : objects) {
        obj_to_sub[static_cast<size_t>(o)] = sub.add_object(parent->object_label(o));
        obj_in.push_back(o);
        mor_to_sub[static_cast<size_t>(parent->identity_of(o))] =
            sub.identity_of(obj_to_sub[static_cast<size_t>(o)]);
        mor_in.push_back(parent->identity_of(o));
    }
    for (int m = 0; m < parent->n_morphisms(); ++m) {
        if (parent->is_identity(m)) continue;
        int s = obj_to_sub[static_cast<size_t>(parent->src(m))];
        int d = obj_to_sub[static_cast<size_t>(parent->dst(m))];
        if (s < 0 || d < 0) continue;
        mor_to_sub[static_cast<size_t>(m)] = sub.add_morphism(s, d, parent->morphism(m).label);
        mor_in.push_back(m);
    }
    for (int f : mor_in) {
        if (parent->is_identity(f)) continue;
        for (int g : mor_in) {
            if (parent->is_identity(g) || parent->src(g) != parent->dst(f)) continue;
            int gf = mor_to_sub[static_cast<size_t>(parent->composite(g, f))];
            require(gf >= 0, "full subcategory not closed under composition");
            sub.set_composite(mor_to_sub[static_cast<size_t>(g)], mor_to_sub[static_cast<size_t>(f)], gf);
        }
    }
    sub.set_bound(parent->bound());
    sub.validate();
    CatPtr ptr = share(std::move(sub));
    std::vector<int> imor(static_cast<size_t>(ptr->n_morphisms()), -1);
    for (int m = 0; m < parent->n_morphisms(); ++m)
        if (mor_to_sub[static_cast<size_t>(m)] >= 0)
            imor[static_cast<size_t>(mor_to_sub[static_cast<size_t>(m)])] = m;
    return FullSubcategory{ptr, Functor(ptr, parent, obj_in, std::move(imor)),
                           std::move(obj_to_sub), std::move(mor_to_sub)};
}

/**
 * Set-valued diagram on C, contravariant: a finite set per object and, for
 * each morphism f, a function elems(dst f) -> elems(src f) stored as an
 * index vector.
 */
struct SetDiagram {
    CatPtr cat;
    std::vector<std::vector<std::string>> elems;  // per object: element labels
    std::vector<std::vector<int>> action;         // per morphism: F(dst) -> F(src)

    int size_at(int o) const { return static_cast<int>(elems[static_cast<size_t>(o)].size()); }

    void check_valid() const {
        require(static_cast<int>(elems.size()) == cat->n_objects(), "diagram object table size");
        require(static_cast<int>(action.size()) == cat->n_morphisms(), "diagram action table size");
        for (int m = 0; m < cat->n_morphisms(); ++m) {
            const auto& a = action[static_cast<size_t>(m)];
            require(static_cast<int>(a.size()) == size_at(cat->dst(m)),
                    "action domain size mismatch at " + cat->morphism(m).label);
            for (int v : a)
                require(v >= 0 && v < size_at(cat->src(m)),
                        "action value out of range at " + cat->morphism(m).label);
            if (cat->is_identity(m))
                for (int i = 0; i < static_cast<int>(a.size()); ++i)
                    require(a[static_cast<size_t>(i)] == i, "identity acts nontrivially");
        }
        for (int f = 0; f < cat->n_morphisms(); ++f) {
            if (cat->is_identity(f)) continue;
            for (int g = 0; g < cat->n_morphisms(); ++g) {
                if (cat->is_identity(g) || cat->src(g) != cat->dst(f)) continue;
                const auto& gf = action[static_cast<size_t>(cat->composite(g, f))];
                for (int x = 0; x < static_cast<int>(gf.size()); ++x)
                    require(gf[static_cast<size_t>(x)] ==
                                action[static_cast<size_t>(f)][static_cast<size_t>(
                                    action[static_cast<size_t>(g)][static_cast<size_t>(x)])],
                            "contravariant functoriality fails at " + cat->morphism(g).label +
                                " after " + cat->morphism(f).label);
            }
        }
    }
};

// ---------------------------------------------------------------------------
// nerves

namespace detail {

// composable chain of length |mors| starting at `start`
struct CatChain {
    int start = -1;
    std::vector<int> mors;

    int degree() const { return static_cast<int>(mors.size()); }
};

inline int chain_object(const BoundedCategory& c, const CatChain& g, int i) {
    return i == 0 ? g.start : c.dst(g.mors[static_cast<size_t>(i) - 1]);
}

inline std::string chain_key(const BoundedCategory& c, const CatChain& g) {
    if (g.mors.empty()) return "o:" + c.object_label(g.start);
    std::string s;
    for (size_t i = 0; i < g.mors.size(); ++i) {
        if (i) s += "|";
        s += c.morphism(g.mors[i]).label;
    }
    return s;
}

inline bool chain_nondegenerate(const BoundedCategory& c, const CatChain& g) {
    for (int m : g.mors)
        if (c.is_identity(m)) return false;
    return true;
}

// composite of the chain segment from position i to position j
inline int chain_composite(const BoundedCategory& c, const CatChain& g, int i, int j) {
    int acc = c.identity_of(chain_object(c, g, i));
    for (int t = i + 1; t <= j; ++t) acc = c.composite(g.mors[static_cast<size_t>(t) - 1], acc);
    return acc;
}

// reindexing of a chain along a monotone map into its positions
inline CatChain chain_apply(const BoundedCategory& c, const CatChain& g, const MonotoneMap& th) {
    require(th.codomain == g.degree(), "chain_apply: position range mismatch");
    CatChain out;
    out.start = chain_object(c, g, th(0));
    for (int i = 1; i <= th.domain(); ++i)
        out.mors.push_back(chain_composite(c, g, th(i - 1), th(i)));
    return out;
}

inline std::vector<std::vector<CatChain>> enumerate_chains(const BoundedCategory& c, int cap) {
    std::vector<std::vector<CatChain>> chains(static_cast<size_t>(cap) + 1);
    for (int o = 0; o < c.n_objects(); ++o) chains[0].push_back(CatChain{o, {}});
    std::vector<std::vector<int>> out_of(static_cast<size_t>(c.n_objects()));
    for (int m = 0; m < c.n_morphisms(); ++m) out_of[static_cast<size_t>(c.src(m))].push_back(m);
    for (int d = 1; d <= cap; ++d)
        for (const CatChain& g : chains[static_cast<size_t>(d) - 1])
            for (int m : out_of[static_cast<size_t>(chain_object(c, g, d - 1))]) {
                CatChain ext = g;
                ext.mors.push_back(m);
                chains[static_cast<size_t>(d)].push_back(std::move(ext));
            }
    for (auto& layer : chains)
        std::sort(layer.begin(), layer.end(), [&](const CatChain& a, const CatChain& b) {
            return chain_key(c, a) < chain_key(c, b);
        });
    return chains;
}

}  // namespace detail

/**
 * Nerve of a category through degree cap: degree-m elements are composable
 * m-chains, nondegenerate exactly when no link is an identity.  Marked
 * complete when the category is complete and no nondegenerate chain survives
 * past the cap; otherwise trusted through cap.
 */
struct Nerve {
    CatPtr cat;
    int cap = 0;
    SSetPtr sset;
    std::vector<std::vector<detail::CatChain>> chains;  // per degree, key-sorted
    std::vector<std::map<std::string, int>> index;      // chain key -> position
    std::vector<std::vector<Simplex>> normal;           // position -> normal form
    std::vector<std::vector<int>> cell_chain;           // nondeg cell -> position

    Simplex element(const detail::CatChain& g) const {
        int d = g.degree();
        require(d <= cap, "chain beyond nerve cap");
        auto it = index[static_cast<size_t>(d)].find(detail::chain_key(*cat, g));
        require(it != index[static_cast<size_t>(d)].end(), "chain not found in nerve");
        return normal[static_cast<size_t>(d)][static_cast<size_t>(it->second)];
    }

    const detail::CatChain& chain_of(const CellRef& r) const {
        return chains[static_cast<size_t>(r.dim)]
                     [static_cast<size_t>(cell_chain[static_cast<size_t>(r.dim)][static_cast<size_t>(r.idx)])];
    }
};

inline Nerve nerve(const CatPtr& c, int cap) {
    require(cap >= 0, "negative nerve cap");
    Nerve out;
    out.cat = c;
    out.cap = cap;
    out.chains = detail::enumerate_chains(*c, cap);
    out.index.resize(static_cast<size_t>(cap) + 1);

    DegreewiseModel model;
    model.keys.resize(static_cast<size_t>(cap) + 1);
    for (int d = 0; d <= cap; ++d) {
        for (const auto& g : out.chains[static_cast<size_t>(d)])
            model.keys[static_cast<size_t>(d)].push_back(detail::chain_key(*c, g));
        for (size_t i = 0; i < model.keys[static_cast<size_t>(d)].size(); ++i)
            out.index[static_cast<size_t>(d)][model.keys[static_cast<size_t>(d)][i]] =
                static_cast<int>(i);
    }
    auto lookup = [&](int d, const detail::CatChain& g) {
        return out.index[static_cast<size_t>(d)].at(detail::chain_key(*c, g));
    };
    model.face = [&out, &lookup, &c](int m, int idx, int i) {
        const detail::CatChain& g = out.chains[static_cast<size_t>(m)][static_cast<size_t>(idx)];
        return lookup(m - 1, detail::chain_apply(*c, g, MonotoneMap::coface(m, i)));
    };
    model.degen = [&out, &lookup, &c](int m, int idx, int i) {
        const detail::CatChain& g = out.chains[static_cast<size_t>(m)][static_cast<size_t>(idx)];
        return lookup(m + 1, detail::chain_apply(*c, g, MonotoneMap::codegeneracy(m, i)));
    };

    // exactness past the cap: no nondegenerate chain of length cap extends
    bool complete = c->bound() == "complete";
    if (complete) {
        for (const auto& g : out.chains[static_cast<size_t>(cap)]) {
            if (!detail::chain_nondegenerate(*c, g)) continue;
            int end = detail::chain_object(*c, g, cap);
            for (int m = 0; m < c->n_morphisms() && complete; ++m)
                if (!c->is_identity(m) && c->src(m) == end) complete = false;
            if (!complete) break;
        }
    }

    Extraction ex = extract_presentation(model, complete ? kComplete : cap);
    out.sset = share(std::move(ex.sset));
    out.normal = std::move(ex.normal);
    out.cell_chain.resize(static_cast<size_t>(cap) + 1);
    for (int d = 0; d <= cap; ++d) {
        out.cell_chain[static_cast<size_t>(d)].assign(static_cast<size_t>(out.sset->n_cells(d)), -1);
        for (size_t i = 0; i < out.normal[static_cast<size_t>(d)].size(); ++i) {
            const Simplex& nf = out.normal[static_cast<size_t>(d)][i];
            if (nf.word.empty())
                out.cell_chain[static_cast<size_t>(nf.cell.dim)][static_cast<size_t>(nf.cell.idx)] =
                    static_cast<int>(i);
        }
    }
    return out;
}

/** The simplicial map of nerves induced by a functor. */
inline SMap nerve_map(const Nerve& a, const Nerve& b, const Functor& f) {
    require(f.src().get() == a.cat.get() && f.dst().get() == b.cat.get(),
            "nerve_map: categories do not match the nerves");
    require(b.cap >= a.cap, "nerve_map: target nerve is shallower than the source");
    std::vector<std::vector<Simplex>> img(static_cast<size_t>(std::max(0, a.sset->top_dim() + 1)));
    for (int d = 0; d <= a.sset->top_dim(); ++d)
        for (int i = 0; i < a.sset->n_cells(d); ++i) {
            const detail::CatChain& g = a.chain_of(CellRef{d, i});
            detail::CatChain h;
            h.start = f.obj_image(g.start);
            for (int m : g.mors) h.mors.push_back(f.mor_image(m));
            img[static_cast<size_t>(d)].push_back(b.element(h));
        }
    return SMap(a.sset, b.sset, std::move(img));
}

}  // namespace combitop
