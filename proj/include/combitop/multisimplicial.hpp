#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "combitop/sset.hpp"
#include "combitop/sset_maps.hpp"
#include "combitop/sset_ops.hpp"
#include "combitop/subdivision.hpp"

namespace combitop {

namespace detail {

// the degree-(sum-1) simplex of Delta^n whose vertex path is
// 0^(m_0+1) 1^(m_1+1) ... n^(m_n+1)
inline Simplex block_simplex(const SSet& delta_n, const std::vector<int>& mdeg) {
    std::vector<int> path;
    for (int i = 0; i < static_cast<int>(mdeg.size()); ++i)
        for (int j = 0; j <= mdeg[static_cast<size_t>(i)]; ++j) path.push_back(i);
    int n = static_cast<int>(mdeg.size()) - 1;
    return delta_n.apply(nondeg(n, 0), MonotoneMap(std::move(path), n));
}

// blockwise join of monotone maps, component i embedded with offsets
inline MonotoneMap block_join(const std::vector<MonotoneMap>& comps) {
    std::vector<int> vals;
    int out_off = 0;
    for (const MonotoneMap& c : comps) {
        for (int j = 0; j <= c.domain(); ++j) vals.push_back(out_off + c(j));
        out_off += c.codomain + 1;
    }
    return MonotoneMap(std::move(vals), out_off - 1);
}

inline void require_over_simplex(const SMap& f, int n) {
    require(f.dst()->encode() == standard_simplex(n).encode(),
            "map must land in the standard " + std::to_string(n) + "-simplex");
}

// vertex values of a simplex of the standard simplex, as a monotone map
inline MonotoneMap simplex_values(const SSet& delta, const Simplex& x, int n) {
    std::vector<int> vals;
    for (int v : delta.vertex_path(x)) vals.push_back(standard_vertex_value(delta, v));
    return MonotoneMap(std::move(vals), n);
}

}  // namespace detail

/** The classifying map K -> Delta^n of a vertex labeling monotone on edges. */
inline SMap map_to_simplex(const SSetPtr& k, int n, const std::vector<int>& vertex_value) {
    require(static_cast<int>(vertex_value.size()) == k->n_cells(0),
            "one value per vertex required");
    SSetPtr delta = share(standard_simplex(n));
    std::vector<std::vector<Simplex>> img(static_cast<size_t>(std::max(0, k->top_dim() + 1)));
    for (int d = 0; d <= k->top_dim(); ++d)
        for (int i = 0; i < k->n_cells(d); ++i) {
            std::vector<int> vals;
            for (int v : k->vertex_path(nondeg(d, i)))
                vals.push_back(vertex_value[static_cast<size_t>(v)]);
            img[static_cast<size_t>(d)].push_back(
                delta->apply(nondeg(n, 0), MonotoneMap(std::move(vals), n)));
        }
    return SMap(k, delta, std::move(img));
}

/**
 * The straightening of the fibration (simplices of K) -> (simplices of
 * Delta^n with surjective structure map): a set-valued functor on
 * (n+1)-fold multidegrees.  The element set at (m_0,...,m_n) consists of
 * the K-simplices of degree sum(m_i+1)-1 whose composite with the
 * structure map is the block surjection; coordinate actions precompose
 * block-embedded monotone maps.
 */
struct MultiSSet {
    int arity = 1;  // n+1
    SMap over;      // K -> Delta^n
    int total_cap = 0;
    std::map<std::vector<int>, std::vector<Simplex>> elems;

    const std::vector<Simplex>& at(const std::vector<int>& mdeg) const {
        static const std::vector<Simplex> empty;
        auto it = elems.find(mdeg);
        return it == elems.end() ? empty : it->second;
    }

    // coordinate action: precompose the monotone map alpha : [m'] -> [mdeg[coord]]
    // into coordinate coord, identity elsewhere
    Simplex act(const std::vector<int>& mdeg, const Simplex& x, int coord,
                const MonotoneMap& alpha) const {
        std::vector<MonotoneMap> comps;
        for (int i = 0; i < arity; ++i)
            comps.push_back(i == coord ? alpha : MonotoneMap::identity(mdeg[static_cast<size_t>(i)]));
        return over.src()->apply(x, detail::block_join(comps));
    }

    Simplex face(const std::vector<int>& mdeg, const Simplex& x, int coord, int k) const {
        return act(mdeg, x, coord, MonotoneMap::coface(mdeg[static_cast<size_t>(coord)], k));
    }
    Simplex degen(const std::vector<int>& mdeg, const Simplex& x, int coord, int k) const {
        return act(mdeg, x, coord, MonotoneMap::codegeneracy(mdeg[static_cast<size_t>(coord)], k));
    }
};

/** Materialize the straightening through total simplex degree total_cap. */
inline MultiSSet straighten_surjective(const SMap& f, int n, int total_cap) {
    detail::require_over_simplex(f, n);
    if (!f.src()->complete() && f.src()->trusted_through() < total_cap)
        throw trust_error("straightening needs exact cells through degree " +
                          std::to_string(total_cap));
    MultiSSet out;
    out.arity = n + 1;
    out.over = f;
    out.total_cap = total_cap;
    const SSet& delta = *f.dst();
    for (int M = n; M <= total_cap; ++M) {
        for (const Simplex& x : f.src()->simplices_of_degree(M)) {
            Simplex y = f.image_of(x);
            std::vector<int> count(static_cast<size_t>(n) + 1, 0);
            for (int v : delta.vertex_path(y))
                ++count[static_cast<size_t>(detail::standard_vertex_value(delta, v))];
            bool surj = true;
            for (int c : count) surj = surj && c > 0;
            if (!surj) continue;
            std::vector<int> mdeg;
            for (int c : count) mdeg.push_back(c - 1);
            out.elems[mdeg].push_back(x);
        }
    }
    for (auto& [mdeg, v] : out.elems) std::sort(v.begin(), v.end());
    return out;
}

/**
 * The diagonal of the straightening, as a simplicial subset of the
 * (n+1)-fold subdivision of K: degree-m elements are the K-simplices of
 * degree (n+1)(m+1)-1 whose structure composite is the block surjection.
 * The subset is closed under all operators.
 */
struct DiagonalRestriction {
    int n = 0;
    Subdivision sub;  // sd_{n+1} K
    SSetPtr sset;
    std::vector<std::vector<int>> to_sub;         // subset cell -> sd cell index
    std::map<std::pair<int, int>, int> from_sub;  // sd cell -> subset cell index

    // normal form in the subset of an element x in K_{(n+1)(m+1)-1}
    Simplex element(int m, const Simplex& x) const {
        Simplex z = sub.element(m, x);
        auto it = from_sub.find({z.cell.dim, z.cell.idx});
        require(it != from_sub.end(), "element does not satisfy the fiber condition");
        return Simplex{z.word, CellRef{z.cell.dim, it->second}};
    }
};

inline DiagonalRestriction diagonal_restriction(const SMap& f, int n) {
    detail::require_over_simplex(f, n);
    DiagonalRestriction out;
    out.n = n;
    out.sub = sd(n + 1, f.src());
    const SSet& delta = *f.dst();
    const SSet& big = *out.sub.sset;

    SSetBuilder b;
    b.set_trusted(big.trusted_through());
    std::vector<std::vector<int>> keep(static_cast<size_t>(std::max(0, big.top_dim() + 1)));
    for (int m = 0; m <= big.top_dim(); ++m) {
        Simplex block = detail::block_simplex(delta, std::vector<int>(static_cast<size_t>(n) + 1, m));
        for (int i = 0; i < big.n_cells(m); ++i) {
            const Simplex& x = out.sub.cell_elem[static_cast<size_t>(m)][static_cast<size_t>(i)];
            if (!(f.image_of(x) == block)) continue;
            int idx = static_cast<int>(keep[static_cast<size_t>(m)].size());
            out.from_sub[{m, i}] = idx;
            keep[static_cast<size_t>(m)].push_back(i);
            std::vector<Simplex> faces;
            for (int k = 0; k <= m && m > 0; ++k) {
                const Simplex& fc = big.face(CellRef{m, i}, k);
                auto it = out.from_sub.find({fc.cell.dim, fc.cell.idx});
                require(it != out.from_sub.end(), "fiber condition not closed under faces");
                faces.push_back(Simplex{fc.word, CellRef{fc.cell.dim, it->second}});
            }
            b.add_cell(m, big.cell(m, i).label, std::move(faces));
        }
    }
    out.sset = share(b.finalize());
    // labels are reused verbatim, so per-dimension order survives the sort;
    // remap indices anyway to stay honest
    out.to_sub.resize(keep.size());
    std::map<std::pair<int, int>, int> fixed;
    for (int m = 0; m < static_cast<int>(keep.size()); ++m) {
        out.to_sub[static_cast<size_t>(m)].resize(keep[static_cast<size_t>(m)].size());
        for (int provisional = 0; provisional < static_cast<int>(keep[static_cast<size_t>(m)].size());
             ++provisional) {
            int big_idx = keep[static_cast<size_t>(m)][static_cast<size_t>(provisional)];
            int final_idx = out.sset->index_of_label(m, big.cell(m, big_idx).label);
            require(final_idx >= 0, "subset cell lost after sort");
            out.to_sub[static_cast<size_t>(m)][static_cast<size_t>(final_idx)] = big_idx;
            fixed[{m, big_idx}] = final_idx;
        }
    }
    out.from_sub = std::move(fixed);
    return out;
}

// ---------------------------------------------------------------------------
// the chain of bijections behind the comparison isomorphism

/**
 * Per-degree verification that relative maps out of prisms match the
 * extension of the diagonal straightening.  Every intermediate stage of
 * the chain is materialized per element; the first failure is recorded
 * with the stage where it happened.
 */
struct DdagReport {
    int n = 0;
    int cap = 0;
    std::vector<long long> lhs_count, rhs_count;  // maps / extension elements per degree
    bool bijective = false;
    bool faces_commute = false;
    std::string mismatch;  // empty when everything matched

    bool ok() const { return bijective && faces_commute && mismatch.empty(); }
    std::string str() const {
        std::string s = "degrees 0.." + std::to_string(cap) + ": counts";
        for (size_t a = 0; a < lhs_count.size(); ++a)
            s += " " + std::to_string(lhs_count[a]) + "/" + std::to_string(rhs_count[a]);
        s += bijective ? ", bijective" : ", NOT bijective";
        s += faces_commute ? ", faces commute" : ", faces DO NOT commute";
        if (!mismatch.empty()) s += " [" + mismatch + "]";
        return s;
    }
};

namespace detail {

// stage (B) of the chain: the transformation's component at the slice
// object (b, p) evaluated at q, for all b <= bound.  Keyed by (b, p, q).
struct SliceFamily {
    std::map<std::string, Simplex> value;

    static std::string key(int b, const MonotoneMap& p, const MonotoneMap& q) {
        return std::to_string(b) + "|" + join(p.vals, ",") + "|" + join(q.vals, ",");
    }
};

inline SliceFamily slice_family_of(const SMap& g, const Product& prism, const SSetPtr& delta_a,
                                   const SSetPtr& delta_n, int a, int n, int bound) {
    SliceFamily fam;
    for (int b = 0; b <= bound; ++b)
        for (const MonotoneMap& p : all_monotone(b, n))
            for (const MonotoneMap& q : all_monotone(b, a)) {
                Simplex qa = delta_a->apply(nondeg(a, 0), q);
                Simplex pn = delta_n->apply(nondeg(n, 0), p);
                fam.value[SliceFamily::key(b, p, q)] = g.image_of(product_element(prism, qa, pn));
            }
    return fam;
}

// naturality of a slice family along the generating operators
inline std::string check_slice_naturality(const SliceFamily& fam, const SSetPtr& k, int a, int n,
                                          int bound) {
    for (int b = 0; b <= bound; ++b)
        for (const MonotoneMap& p : all_monotone(b, n))
            for (const MonotoneMap& q : all_monotone(b, a)) {
                const Simplex& x = fam.value.at(SliceFamily::key(b, p, q));
                for (int i = 0; i <= b && b > 0; ++i) {
                    MonotoneMap th = MonotoneMap::coface(b, i);
                    const Simplex& y =
                        fam.value.at(SliceFamily::key(b - 1, compose(p, th), compose(q, th)));
                    if (!(k->apply(x, th) == y))
                        return "slice naturality fails at coface " + std::to_string(i) + " of (" +
                               SliceFamily::key(b, p, q) + ")";
                }
                for (int j = 0; j <= b && b + 1 <= bound; ++j) {
                    MonotoneMap th = MonotoneMap::codegeneracy(b, j);
                    const Simplex& y =
                        fam.value.at(SliceFamily::key(b + 1, compose(p, th), compose(q, th)));
                    if (!(k->apply(x, th) == y))
                        return "slice naturality fails at codegeneracy " + std::to_string(j) +
                               " of (" + SliceFamily::key(b, p, q) + ")";
                }
            }
    return std::string{};
}

// stage (B) ~ (C): values at non-surjective slice objects are forced by a
// surjective extension, inserting the missing target vertices
inline std::string check_surjective_determination(const SliceFamily& fam, const SSetPtr& k, int a,
                                                  int n, int bound) {
    for (int b = 0; b <= bound; ++b)
        for (const MonotoneMap& p : all_monotone(b, n)) {
            if (p.is_surjective()) continue;
            std::set<int> image(p.vals.begin(), p.vals.end());
            std::vector<int> missing;
            for (int v = 0; v <= n; ++v)
                if (!image.count(v)) missing.push_back(v);
            if (b + static_cast<int>(missing.size()) > bound) continue;
            for (const MonotoneMap& q : all_monotone(b, a)) {
                // build the extension: insert one position per missing value
                std::vector<std::pair<int, int>> ext;  // (p value, q value), sorted by p
                for (int j = 0; j <= b; ++j) ext.push_back({p(j), q(j)});
                for (int v : missing) {
                    size_t pos = 0;
                    while (pos < ext.size() && ext[pos].first < v) ++pos;
                    int qv = pos > 0 ? ext[pos - 1].second : ext[pos].second;
                    ext.insert(ext.begin() + static_cast<long>(pos), {v, qv});
                }
                int bh = static_cast<int>(ext.size()) - 1;
                std::vector<int> pv, qv, theta;
                for (const auto& [x, y] : ext) {
                    pv.push_back(x);
                    qv.push_back(y);
                }
                // recover where the original positions sit
                size_t at = 0;
                std::vector<char> used(ext.size(), 0);
                for (int j = 0; j <= b; ++j) {
                    while (used[at] || ext[at] != std::make_pair(p(j), q(j))) ++at;
                    theta.push_back(static_cast<int>(at));
                    used[at] = 1;
                }
                MonotoneMap ph(pv, n), qh(qv, a), th(theta, bh);
                const Simplex& whole = fam.value.at(SliceFamily::key(bh, ph, qh));
                const Simplex& part = fam.value.at(SliceFamily::key(b, p, q));
                if (!(k->apply(whole, th) == part))
                    return "surjective extension disagrees at (" + SliceFamily::key(b, p, q) + ")";
            }
        }
    return std::string{};
}

}  // namespace detail

/**
 * Verifies, degree by degree through cap, that maps Delta^a x Delta^n -> K
 * over Delta^n correspond bijectively and face-compatibly to degree-a
 * elements of the extension of the diagonal straightening.
 */
inline DdagReport ddag_iso(int n, const SMap& f, int cap = 2) {
    detail::require_over_simplex(f, n);
    if (!f.src()->complete())
        throw trust_error("comparison needs a complete total object");
    DdagReport rep;
    rep.n = n;
    rep.cap = cap;
    rep.bijective = true;
    rep.faces_commute = true;

    const SSetPtr& k = f.src();
    SSetPtr delta_n = f.dst();
    DiagonalRestriction diag = diagonal_restriction(f, n);
    Extension exd = ex(n + 1, diag.sset, cap);

    std::vector<Product> prisms;
    std::vector<std::vector<SMap>> stage_a(static_cast<size_t>(cap) + 1);
    std::vector<std::vector<std::string>> stage_key(static_cast<size_t>(cap) + 1);
    std::vector<std::vector<Simplex>> image_elem(static_cast<size_t>(cap) + 1);

    for (int a = 0; a <= cap; ++a) {
        SSetPtr delta_a = share(standard_simplex(a));
        prisms.push_back(product(delta_a, delta_n));
        const Product& prism = prisms.back();
        // (A): relative maps, cut out by the fiber condition cell by cell
        auto allow = [&](const CellRef& c, const Simplex& y) {
            return f.image_of(y) == prism.pr2.cell_image(c);
        };
        stage_a[static_cast<size_t>(a)] = enumerate_smaps(prism.pr1.src(), k, allow);
        std::sort(stage_a[static_cast<size_t>(a)].begin(), stage_a[static_cast<size_t>(a)].end(),
                  [](const SMap& x, const SMap& y) { return smap_key(x) < smap_key(y); });
        for (const SMap& g : stage_a[static_cast<size_t>(a)])
            stage_key[static_cast<size_t>(a)].push_back(smap_key(g));
        rep.lhs_count.push_back(static_cast<long long>(stage_a[static_cast<size_t>(a)].size()));
        rep.rhs_count.push_back(static_cast<long long>(exd.elems[static_cast<size_t>(a)].size()));

        const int bound = (a + 1) * (n + 1) - 1;
        std::set<std::string> hit;
        for (const SMap& g : stage_a[static_cast<size_t>(a)]) {
            // (B): the represented transformation on the whole slice
            detail::SliceFamily fam =
                detail::slice_family_of(g, prism, delta_a, delta_n, a, n, bound);
            if (rep.mismatch.empty())
                rep.mismatch = detail::check_slice_naturality(fam, k, a, n, bound);
            // (C): surjective components determine the rest
            if (rep.mismatch.empty())
                rep.mismatch = detail::check_surjective_determination(fam, k, a, n, bound);

            // (D)/(E): restrict along star powers to a map sd Delta^a -> diag F
            const Subdivision& sda = exd.sd_simplex[static_cast<size_t>(a)];
            std::vector<std::vector<Simplex>> img(
                static_cast<size_t>(std::max(0, sda.sset->top_dim() + 1)));
            for (int m = 0; m <= sda.sset->top_dim(); ++m) {
                // the block surjection [(n+1)(m+1)-1] -> [n]
                std::vector<int> bv;
                for (int blk = 0; blk <= n; ++blk)
                    for (int t = 0; t <= m; ++t) bv.push_back(blk);
                MonotoneMap p(bv, n);
                for (int i = 0; i < sda.sset->n_cells(m); ++i) {
                    const Simplex& u = sda.cell_elem[static_cast<size_t>(m)][static_cast<size_t>(i)];
                    MonotoneMap q = detail::simplex_values(*sda.base, u, a);
                    const Simplex& x =
                        fam.value.at(detail::SliceFamily::key(q.domain(), p, q));
                    img[static_cast<size_t>(m)].push_back(diag.element(m, x));
                }
            }
            SMap to_diag(sda.sset, diag.sset, std::move(img));

            // (F): locate the element of the extension
            Simplex elem = exd.element(a, to_diag);
            std::string ekey = smap_key(to_diag);
            if (!hit.insert(ekey).second && rep.mismatch.empty()) {
                rep.mismatch = "degree " + std::to_string(a) + ": two maps collide at " + ekey;
                rep.bijective = false;
            }
            image_elem[static_cast<size_t>(a)].push_back(elem);
        }
        if (static_cast<long long>(hit.size()) != rep.rhs_count.back()) {
            rep.bijective = false;
            if (rep.mismatch.empty())
                for (const SMap& h : exd.elems[static_cast<size_t>(a)])
                    if (!hit.count(smap_key(h))) {
                        rep.mismatch =
                            "degree " + std::to_string(a) + ": unmatched element " + smap_key(h);
                        break;
                    }
        }
    }

    // face compatibility of the correspondence
    for (int a = 1; a <= cap && rep.faces_commute; ++a) {
        const std::vector<std::string>& prev = stage_key[static_cast<size_t>(a) - 1];
        for (int i = 0; i <= a && rep.faces_commute; ++i) {
            SMap di = product_map(prisms[static_cast<size_t>(a) - 1], prisms[static_cast<size_t>(a)],
                                  standard_map(MonotoneMap::coface(a, i)), identity_map(delta_n));
            for (size_t gi = 0; gi < stage_a[static_cast<size_t>(a)].size(); ++gi) {
                SMap face_g = compose(stage_a[static_cast<size_t>(a)][gi], di);
                std::string fkey = smap_key(face_g);
                auto it = std::lower_bound(prev.begin(), prev.end(), fkey);
                if (it == prev.end() || *it != fkey) {
                    rep.faces_commute = false;
                    rep.mismatch = "degree " + std::to_string(a) + ": face " + std::to_string(i) +
                                   " leaves the enumerated maps";
                    break;
                }
                Simplex lhs = exd.sset->face_of(image_elem[static_cast<size_t>(a)][gi], i);
                const Simplex& rhs =
                    image_elem[static_cast<size_t>(a) - 1][static_cast<size_t>(it - prev.begin())];
                if (!(lhs == rhs)) {
                    rep.faces_commute = false;
                    rep.mismatch = "degree " + std::to_string(a) + ": face " + std::to_string(i) +
                                   " disagrees on " + stage_key[static_cast<size_t>(a)][gi];
                    break;
                }
            }
        }
    }
    return rep;
}

}  // namespace combitop
