#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "combitop/corpus.hpp"
#include "combitop/homology.hpp"
#include "combitop/subdivision.hpp"

using namespace combitop;

namespace {

// Degreewise subdivision model: degree-m simplices are plain degree
// r(m+1)-1 simplices of the base, operators act through star_power.
// Independent of the profile normal form used by sd().
SSet sd_by_degreewise(const SSetPtr& k, int r) {
    const int M = std::max(0, r * k->top_dim());
    std::vector<std::vector<Simplex>> items(M + 1);
    std::vector<std::map<Simplex, int>> index(M + 1);
    DegreewiseModel model;
    model.keys.resize(M + 1);
    for (int m = 0; m <= M; ++m) {
        items[m] = k->simplices_of_degree(r * (m + 1) - 1);
        std::sort(items[m].begin(), items[m].end(),
                  [](const Simplex& a, const Simplex& b) { return simplex_key(a) < simplex_key(b); });
        for (int i = 0; i < static_cast<int>(items[m].size()); ++i) {
            model.keys[m].push_back(simplex_key(items[m][i]));
            index[m][items[m][i]] = i;
        }
    }
    model.face = [&](int m, int idx, int i) {
        return index[m - 1].at(k->apply(items[m][idx], star_power(MonotoneMap::coface(m, i), r)));
    };
    model.degen = [&](int m, int idx, int j) {
        return index[m + 1].at(k->apply(items[m][idx], star_power(MonotoneMap::codegeneracy(m, j), r)));
    };
    return extract_presentation(model, kComplete).sset;
}

std::vector<int> cell_counts(const SSet& x) {
    std::vector<int> out;
    for (int d = 0; d <= x.top_dim(); ++d) out.push_back(x.n_cells(d));
    return out;
}

SMap constant_map(const SSetPtr& src, const SSetPtr& dst, const std::string& vertex) {
    int vidx = dst->index_of_label(0, vertex);
    REQUIRE(vidx >= 0);
    std::vector<std::vector<Simplex>> img(std::max(0, src->top_dim() + 1));
    for (int d = 0; d <= src->top_dim(); ++d)
        for (int i = 0; i < src->n_cells(d); ++i) {
            std::vector<int> letters;
            for (int j = d - 1; j >= 0; --j) letters.push_back(j);
            img[d].push_back(Simplex{DegeneracyWord(std::move(letters)), CellRef{0, vidx}});
        }
    return SMap(src, dst, std::move(img));
}

SSetPtr directed_cycle(int n, const std::string& stem) {
    SSetBuilder b;
    std::vector<CellRef> vs;
    for (int v = 0; v < n; ++v) vs.push_back(b.add_cell(0, stem + std::to_string(v)));
    for (int v = 0; v < n; ++v)
        b.add_cell(1, stem + "e" + std::to_string(v),
                   {Simplex{{}, vs[(v + 1) % n]}, Simplex{{}, vs[v]}});
    return share(b.finalize());
}

}  // namespace

TEST_CASE("subdividing standard simplices") {
    SECTION("a point stays a point") {
        Subdivision s = sd(2, share(standard_simplex(0)));
        REQUIRE(cell_counts(*s.sset) == std::vector<int>{1});
        REQUIRE(s.sset->complete());
    }

    SECTION("the interval splits into r pieces") {
        SSetPtr d1 = share(standard_simplex(1));
        Subdivision s2 = sd(2, d1);
        REQUIRE(cell_counts(*s2.sset) == std::vector<int>{3, 2});

        // vertices are the degree-1 simplices 00, 01, 11 of the interval
        int v0 = d1->index_of_label(0, "0");
        int v1 = d1->index_of_label(0, "1");
        int e01 = d1->index_of_label(1, "0.1");
        Simplex s00{DegeneracyWord({0}), CellRef{0, v0}};
        Simplex s01 = nondeg(1, e01);
        Simplex s11{DegeneracyWord({0}), CellRef{0, v1}};
        int i00 = s2.core_index[0].at(s00);
        int i01 = s2.core_index[0].at(s01);
        int i11 = s2.core_index[0].at(s11);

        // the two edges run 00 -> 01 and 01 -> 11
        std::set<std::pair<int, int>> edges;
        for (int e = 0; e < 2; ++e) {
            const Simplex& tail = s2.sset->face(CellRef{1, e}, 1);
            const Simplex& head = s2.sset->face(CellRef{1, e}, 0);
            REQUIRE(tail.nondegenerate());
            REQUIRE(head.nondegenerate());
            edges.insert({tail.cell.idx, head.cell.idx});
        }
        REQUIRE(edges == std::set<std::pair<int, int>>{{i00, i01}, {i01, i11}});

        Subdivision s3 = sd(3, d1);
        REQUIRE(cell_counts(*s3.sset) == std::vector<int>{4, 3});
    }

    SECTION("the triangle splits into four") {
        Subdivision s = sd(2, share(standard_simplex(2)));
        REQUIRE(cell_counts(*s.sset) == std::vector<int>{6, 9, 4});
        REQUIRE(s.sset->euler_characteristic() == 1);
        s.sset->check_valid();
    }

    SECTION("arity one changes nothing") {
        SSetPtr c6 = share(from_complex(six_cycle()));
        Subdivision s = sd(1, c6);
        REQUIRE(isomorphic(*s.sset, *c6));
    }
}

TEST_CASE("subdivision agrees with the degreewise model") {
    struct Case {
        SSetPtr base;
        int r;
    };
    std::vector<Case> cases;
    cases.push_back({share(standard_simplex(2)), 2});
    cases.push_back({share(standard_simplex(2)), 3});
    cases.push_back({share(from_complex(six_cycle())), 2});
    cases.push_back({share(from_complex(six_cycle())), 3});
    cases.push_back({share(from_complex(two_triangles())), 2});
    cases.push_back({share(from_complex(boundary_delta3())), 2});
    cases.push_back({share(from_complex(torus7())), 2});
    cases.push_back({share(from_complex(rp2_6())), 2});
    for (const Case& c : cases) {
        Subdivision s = sd(c.r, c.base);
        SSetPtr oracle = share(sd_by_degreewise(c.base, c.r));
        INFO("r = " << c.r << ", base cells " << join(cell_counts(*c.base), ","));
        REQUIRE(cell_counts(*s.sset) == cell_counts(*oracle));
        // the canonical correspondence cell -> its base element -> oracle key
        // is a bijection in every dimension and commutes with faces
        std::vector<std::vector<Simplex>> img(s.sset->top_dim() + 1);
        for (int d = 0; d <= s.sset->top_dim(); ++d)
            for (int i = 0; i < s.sset->n_cells(d); ++i) {
                int j = oracle->index_of_label(d, simplex_key(s.cell_elem[d][i]));
                REQUIRE(j >= 0);
                img[d].push_back(nondeg(d, j));
            }
        SMap correspondence(s.sset, oracle, std::move(img));
    }
}

TEST_CASE("subdivision preserves euler characteristic and homology") {
    for (const std::string& name : corpus_names()) {
        SSetPtr base = share(from_complex(corpus_complex(name)));
        std::vector<HomologyGroup> want = homology_of(*base, 2);
        for (int r : {2, 3}) {
            Subdivision s = sd(r, base);
            INFO(name << " at arity " << r);
            REQUIRE(s.sset->euler_characteristic() == base->euler_characteristic());
            std::vector<HomologyGroup> got = homology_of(*s.sset, 2);
            REQUIRE(got.size() == want.size());
            for (size_t k = 0; k < want.size(); ++k) REQUIRE(got[k] == want[k]);
        }
    }
}

TEST_CASE("normal forms respect the operator actions") {
    for (int r : {2, 3}) {
        SSetPtr base = share(standard_simplex(2));
        Subdivision s = sd(r, base);
        for (int m = 1; m <= 3; ++m) {
            int count = 0;
            for (const Simplex& u : base->simplices_of_degree(r * (m + 1) - 1)) {
                if (++count > 40) break;
                Simplex z = s.element(m, u);
                for (int i = 0; i <= m; ++i) {
                    Simplex fu = base->apply(u, star_power(MonotoneMap::coface(m, i), r));
                    REQUIRE(s.sset->face_of(z, i) == s.element(m - 1, fu));
                }
                for (int j = 0; j < m; ++j) {
                    Simplex du = base->apply(u, star_power(MonotoneMap::codegeneracy(m, j), r));
                    REQUIRE(s.sset->degeneracy_of(z, j) == s.element(m + 1, du));
                }
            }
        }
    }
}

TEST_CASE("the last-block map to the base") {
    SECTION("vertex rule on the interval") {
        SSetPtr d1 = share(standard_simplex(1));
        Subdivision s = sd(2, d1);
        SMap lam = lambda_map(s);
        int v0 = d1->index_of_label(0, "0");
        int v1 = d1->index_of_label(0, "1");
        int e01 = d1->index_of_label(1, "0.1");
        Simplex s00{DegeneracyWord({0}), CellRef{0, v0}};
        Simplex s01 = nondeg(1, e01);
        Simplex s11{DegeneracyWord({0}), CellRef{0, v1}};
        REQUIRE(lam.cell_image(CellRef{0, s.core_index[0].at(s00)}) == nondeg(0, v0));
        REQUIRE(lam.cell_image(CellRef{0, s.core_index[0].at(s01)}) == nondeg(0, v1));
        REQUIRE(lam.cell_image(CellRef{0, s.core_index[0].at(s11)}) == nondeg(0, v1));
    }

    SECTION("naturality") {
        Inclusion bd = boundary_or_horn(3, -1);
        Subdivision ssub = sd(2, bd.incl.src());
        Subdivision samb = sd(2, bd.incl.dst());
        SMap sdf = sd_map(ssub, samb, bd.incl);
        sdf.check_valid();
        REQUIRE(is_mono_through(sdf, 3));
        REQUIRE(smap_key(compose(bd.incl, lambda_map(ssub))) ==
                smap_key(compose(lambda_map(samb), sdf)));

        SSetPtr c6 = share(from_complex(six_cycle()));
        SSetPtr pt = share(standard_simplex(0));
        SMap fold = constant_map(c6, pt, "0");
        Subdivision sc6 = sd(2, c6);
        Subdivision spt = sd(2, pt);
        SMap sdfold = sd_map(sc6, spt, fold);
        sdfold.check_valid();
        REQUIRE(smap_key(compose(fold, lambda_map(sc6))) ==
                smap_key(compose(lambda_map(spt), sdfold)));
    }

    SECTION("functoriality composes") {
        SSetPtr c6 = share(from_complex(six_cycle()));
        Subdivision s = sd(2, c6);
        REQUIRE(smap_key(sd_map(s, s, identity_map(c6))) == smap_key(identity_map(s.sset)));
    }

    SECTION("comparison cone is acyclic") {
        for (const std::string& name : corpus_names()) {
            SSetPtr base = share(from_complex(corpus_complex(name)));
            INFO(name);
            ConeReport rep = cone_equivalence(lambda_map(sd(2, base)), 2);
            REQUIRE(rep.acyclic);
        }
        ConeReport r3 = cone_equivalence(lambda_map(sd(3, share(from_complex(six_cycle())))), 2);
        REQUIRE(r3.acyclic);
    }
}

TEST_CASE("the extension functor") {
    SECTION("of a point") {
        Extension e = ex(2, share(standard_simplex(0)), 2);
        REQUIRE(cell_counts(*e.sset) == std::vector<int>{1});
        REQUIRE(e.sset->trusted_through() == 2);
    }

    SECTION("of the interval") {
        SSetPtr d1 = share(standard_simplex(1));
        Extension e = ex(2, d1, 2);
        // two vertices; the nondegenerate edges are the vertex labelings
        // 001 and 011 of the subdivided interval
        REQUIRE(e.sset->n_cells(0) == 2);
        REQUIRE(e.sset->n_cells(1) == 2);
        for (int m = 0; m <= 2; ++m)
            REQUIRE(e.sset->simplices_of_degree(m).size() == e.elems[m].size());

        SMap rho = rho_map(e);
        REQUIRE(is_mono_through(rho, 2));
        REQUIRE_THROWS_AS(e.element(3, e.elems[0][0]), trust_error);
    }

    SECTION("homology of an extended circle") {
        Extension e = ex(2, share(from_complex(six_cycle())), 2);
        std::vector<HomologyGroup> h = homology_of(*e.sset, 1);
        REQUIRE(h[0].str() == "Z");
        REQUIRE(h[1].str() == "Z");
    }

    SECTION("unit cone is acyclic") {
        for (const std::string& name : corpus_names()) {
            SSetPtr base = share(from_complex(corpus_complex(name)));
            INFO(name);
            ConeReport rep = cone_equivalence(rho_map(ex(2, base, 2)), 1);
            REQUIRE(rep.acyclic);
        }
    }

    SECTION("naturality of the unit") {
        SSetPtr c12 = directed_cycle(12, "u");
        SSetPtr c6 = directed_cycle(6, "v");
        std::vector<std::vector<Simplex>> img(2);
        img[0].resize(12);
        img[1].resize(12);
        for (int v = 0; v < 12; ++v) {
            img[0][c12->index_of_label(0, "u" + std::to_string(v))] =
                nondeg(0, c6->index_of_label(0, "v" + std::to_string(v % 6)));
            img[1][c12->index_of_label(1, "ue" + std::to_string(v))] =
                nondeg(1, c6->index_of_label(1, "ve" + std::to_string(v % 6)));
        }
        SMap cover(c12, c6, std::move(img));

        Extension e12 = ex(2, c12, 2);
        Extension e6 = ex(2, c6, 2);
        REQUIRE(smap_key(compose(ex_map(e12, e6, cover), rho_map(e12))) ==
                smap_key(compose(rho_map(e6), cover)));
    }
}

TEST_CASE("subdivision commutes with products") {
    SSetPtr d1 = share(standard_simplex(1));
    Product square = product(d1, d1);
    Subdivision lhs = sd(2, share(square.sset));
    Product rhs = product(sd(2, d1).sset, sd(2, d1).sset);
    REQUIRE(cell_counts(*lhs.sset) == cell_counts(rhs.sset));
    REQUIRE(isomorphic(*lhs.sset, rhs.sset));
}

TEST_CASE("interpolating homotopies between the two comparison routes") {
    SECTION("the route endpoints") {
        for (int r : {2, 3}) {
            SSetPtr d1 = share(standard_simplex(1));
            Subdivision once = sd(r, d1);
            Subdivision twice = sd(r, once.sset);
            SMap via_functor = sd_map(twice, once, lambda_map(once));
            SMap via_last_block = lambda_map(twice);
            REQUIRE(smap_key(interpolation_h(once, twice, 0)) == smap_key(via_functor));
            REQUIRE(smap_key(interpolation_h(once, twice, r)) == smap_key(via_last_block));
        }
        SSetPtr d2 = share(standard_simplex(2));
        Subdivision once = sd(2, d2);
        Subdivision twice = sd(2, once.sset);
        REQUIRE(smap_key(interpolation_h(once, twice, 0)) ==
                smap_key(sd_map(twice, once, lambda_map(once))));
        REQUIRE(smap_key(interpolation_h(once, twice, 2)) == smap_key(lambda_map(twice)));
    }

    SECTION("each step is a cylinder homotopy") {
        for (int i : {0, 1}) {
            Interpolation itp = interpolation_homotopies(share(standard_simplex(1)), 2, i);
            INFO("interval, i = " << i);
            REQUIRE(itp.eta_valid);
            REQUIRE(itp.end0_matches_hi);
            REQUIRE(itp.end1_matches_lo);
        }
        for (int i : {0, 1, 2}) {
            Interpolation itp = interpolation_homotopies(share(standard_simplex(1)), 3, i);
            INFO("interval at arity three, i = " << i);
            REQUIRE(itp.ok());
        }
        for (int i : {0, 1}) {
            Interpolation itp = interpolation_homotopies(share(standard_simplex(2)), 2, i);
            INFO("triangle, i = " << i);
            REQUIRE(itp.ok());
        }
        Interpolation circle = interpolation_homotopies(share(from_complex(six_cycle())), 2, 0);
        REQUIRE(circle.ok());
    }
}

TEST_CASE("truncated bases propagate trust") {
    SSetBuilder shallow;
    shallow.add_cell(0, "p");
    shallow.set_trusted(1);
    SSetPtr base = share(shallow.finalize());

    Subdivision s = sd(2, base);
    REQUIRE(s.sset->trusted_through() == 0);
    REQUIRE(s.sset->n_cells(0) == 1);
    REQUIRE_THROWS_AS(sd(2, s.sset), trust_error);
    REQUIRE_THROWS_AS(ex(2, base, 2), trust_error);
}
