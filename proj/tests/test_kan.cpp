#include <catch2/catch_amalgamated.hpp>

#include <string>
#include <vector>

#include "combitop/corpus.hpp"
#include "combitop/homology.hpp"
#include "combitop/kan.hpp"
#include "combitop/multisimplicial.hpp"

using namespace combitop;

namespace {

SSetPtr corpus_sset(const std::string& name) {
    return share(from_complex(corpus_complex(name)));
}

// 0 on the first-inserted vertex (always minimal for the stored orientation)
std::vector<int> source_cut(const SimplicialComplex& k, const SSetPtr& s) {
    std::vector<int> val(static_cast<size_t>(s->n_cells(0)), 1);
    int idx = s->index_of_label(0, k.vertex_labels()[0]);
    val[static_cast<size_t>(idx)] = 0;
    return val;
}

// the alternating-tuple truncation of the nerve of the indiscrete groupoid
// on two objects, trusted through the given degree
SSetPtr indiscrete_pair(int trusted) {
    SSetBuilder b;
    CellRef a = b.add_cell(0, "a", {});
    CellRef bb = b.add_cell(0, "b", {});
    CellRef ab = b.add_cell(1, "ab", {nondeg(0, bb.idx), nondeg(0, a.idx)});
    CellRef ba = b.add_cell(1, "ba", {nondeg(0, a.idx), nondeg(0, bb.idx)});
    CellRef aba = b.add_cell(2, "aba",
                             {Simplex{DegeneracyWord{}, ba}, Simplex{DegeneracyWord({0}), a},
                              Simplex{DegeneracyWord{}, ab}});
    CellRef bab = b.add_cell(2, "bab",
                             {Simplex{DegeneracyWord{}, ab}, Simplex{DegeneracyWord({0}), bb},
                              Simplex{DegeneracyWord{}, ba}});
    if (trusted >= 3) {
        b.add_cell(3, "abab",
                   {Simplex{DegeneracyWord{}, bab}, Simplex{DegeneracyWord({0}), ab},
                    Simplex{DegeneracyWord({1}), ab}, Simplex{DegeneracyWord{}, aba}});
        b.add_cell(3, "baba",
                   {Simplex{DegeneracyWord{}, aba}, Simplex{DegeneracyWord({0}), ba},
                    Simplex{DegeneracyWord({1}), ba}, Simplex{DegeneracyWord{}, bab}});
    }
    b.set_trusted(trusted);
    return share(b.finalize());
}

}  // namespace

TEST_CASE("relative hom of a point over a point") {
    SSetPtr pt = share(standard_simplex(0));
    RelativeHom rh = relative_hom(identity_map(pt), identity_map(pt), 3);
    for (int m = 0; m <= 3; ++m) REQUIRE(rh.elems[static_cast<size_t>(m)].size() == 1);
    REQUIRE(rh.sset->total_cells() == 1);
    REQUIRE(rh.sset->trusted_through() == 3);
}

TEST_CASE("relative hom of a trivial interval bundle counts sections") {
    // K = L x Delta^1 with f the projection: degree-0 elements are the maps
    // Delta^n -> Delta^1, of which there are n+2
    SSetPtr d2 = share(standard_simplex(2));
    SSetPtr d1 = share(standard_simplex(1));
    Product k = product(d2, d1);
    RelativeHom rh = relative_hom(identity_map(d2), k.pr1, 1);
    REQUIRE(rh.elems[0].size() == 4);

    // a non-identity sigma: the long edge of the triangle
    Simplex edge02 = d2->apply(nondeg(2, 0), MonotoneMap({0, 2}, 2));
    RelativeHom rh2 = relative_hom(simplex_map(d2, edge02), k.pr1, 1);
    REQUIRE(rh2.elems[0].size() == 3);
}

TEST_CASE("relative hom over the point is the mapping space") {
    SSetPtr pt = share(standard_simplex(0));
    Inclusion bd = boundary_or_horn(1, -1);
    SMap collapse = map_to_simplex(bd.incl.src(), 0,
                                   std::vector<int>(2, 0));
    RelativeHom rh = relative_hom(identity_map(pt), collapse, 2);
    REQUIRE(rh.elems[0].size() == 2);
    REQUIRE(rh.elems[1].size() == 2);
    REQUIRE(rh.sset->n_cells(0) == 2);
    REQUIRE(rh.sset->top_dim() == 0);
    std::vector<HomologyGroup> h = homology_of(*rh.sset, 1);
    REQUIRE(h[0] == HomologyGroup{2, {}});
    REQUIRE(h[1] == HomologyGroup{0, {}});

    // degree-m elements over the point are just the degree-m simplices
    SSetPtr torus = corpus_sset("torus-7");
    SMap to_pt = map_to_simplex(torus, 0, std::vector<int>(static_cast<size_t>(torus->n_cells(0)), 0));
    RelativeHom rt = relative_hom(identity_map(pt), to_pt, 2);
    for (int m = 0; m <= 2; ++m)
        REQUIRE(rt.elems[static_cast<size_t>(m)].size() ==
                torus->simplices_of_degree(m).size());
}

TEST_CASE("relative hom matches the brute-force square enumeration") {
    SSetPtr d1 = share(standard_simplex(1));
    for (const char* name : {"six-cycle", "two-triangles"}) {
        SimplicialComplex cx = corpus_complex(name);
        SSetPtr k = share(from_complex(cx));
        SMap f = map_to_simplex(k, 1, source_cut(cx, k));
        RelativeHom rh = relative_hom(identity_map(d1), f, 2);
        for (int m = 0; m <= 2; ++m) {
            const Product& pr = rh.prisms[static_cast<size_t>(m)];
            std::string wanted = smap_key(compose(identity_map(d1), pr.pr2));
            size_t count = 0;
            for (const SMap& h : enumerate_smaps(pr.pr1.src(), k))
                if (smap_key(compose(f, h)) == wanted) ++count;
            REQUIRE(rh.elems[static_cast<size_t>(m)].size() == count);
        }
    }
}

TEST_CASE("relative hom trust boundaries") {
    SSetPtr pt = share(standard_simplex(0));
    RelativeHom rh = relative_hom(identity_map(pt), identity_map(pt), 1);
    REQUIRE_THROWS_AS(rh.element(2, rh.elems[1][0]), trust_error);

    SSetBuilder b;
    b.add_cell(0, "p", {});
    b.set_trusted(1);
    SSetPtr shallow = share(b.finalize());
    SMap f = map_to_simplex(shallow, 0, {0});
    REQUIRE_THROWS_AS(relative_hom(identity_map(pt), f, 2), trust_error);
}

TEST_CASE("sphere filling reports") {
    SSetPtr pt = share(standard_simplex(0));
    REQUIRE(check_acyclic_kan(pt, 2).ok());

    Inclusion bd = boundary_or_horn(1, -1);
    KanReport r = check_acyclic_kan(bd.incl.src(), 0);
    REQUIRE_FALSE(r.pass);
    REQUIRE(r.failed_m == 1);
    REQUIRE_FALSE(r.witness.empty());

    REQUIRE(check_acyclic_kan(indiscrete_pair(3), 2).ok());

    KanReport capped = check_acyclic_kan(indiscrete_pair(2), 2);
    REQUIRE(capped.pass);
    REQUIRE(capped.capped_at == 3);
    REQUIRE_FALSE(capped.ok());

    // a filled torus is connected but far from acyclic
    KanReport torus = check_acyclic_kan(corpus_sset("torus-7"), 1);
    REQUIRE_FALSE(torus.pass);
    REQUIRE(torus.failed_m >= 1);
}

TEST_CASE("horn filling attaches simplices without changing homology") {
    // the identity horn map gets filled
    Inclusion horn = boundary_or_horn(2, 1);
    HornFill hf = horn_fill_step(horn.incl.src(), 2, 1);
    REQUIRE(hf.attached == 8);
    int e01 = horn.incl.src()->index_of_label(1, "0.1");
    int e12 = horn.incl.src()->index_of_label(1, "1.2");
    bool filled = false;
    for (int i = 0; i < hf.sset.n_cells(2) && !filled; ++i)
        filled = hf.sset.face_of(nondeg(2, i), 0) == hf.incl.image_of(nondeg(1, e12)) &&
                 hf.sset.face_of(nondeg(2, i), 2) == hf.incl.image_of(nondeg(1, e01));
    REQUIRE(filled);

    // the point grows a collapsed simplex
    SSetPtr pt = share(standard_simplex(0));
    HornFill hp = horn_fill_step(pt, 2, 1);
    REQUIRE(hp.attached == 1);
    REQUIRE(hp.sset.n_cells(0) == 1);
    REQUIRE(hp.sset.n_cells(1) == 1);
    REQUIRE(hp.sset.n_cells(2) == 1);
    std::vector<HomologyGroup> h = homology_of(hp.sset, 2);
    REQUIRE(h[0] == HomologyGroup{1, {}});
    REQUIRE(h[1].trivial());
    REQUIRE(h[2].trivial());

    for (const char* name : {"six-cycle", "two-triangles"}) {
        SSetPtr k = corpus_sset(name);
        HornFill step = horn_fill_step(k, 2, 1);
        REQUIRE(step.attached > 0);
        std::vector<HomologyGroup> before = homology_of(*k, 2);
        std::vector<HomologyGroup> after = homology_of(step.sset, 2);
        for (int i = 0; i <= 2; ++i)
            REQUIRE(before[static_cast<size_t>(i)] == after[static_cast<size_t>(i)]);
        REQUIRE(cone_equivalence(step.incl, 2).acyclic);
    }
}

TEST_CASE("the M functor degenerates to the two ends on empty input") {
    SSetPtr empty = share(SSet{});
    for (int a = 0; a <= 2; ++a)
        for (int c = 0; c <= 2; ++c) {
            MFunctor m = m_functor(a, empty, c);
            REQUIRE(is_presentation_iso(m.from_ends));
        }
}

TEST_CASE("the M functor on a point is an interval") {
    SSetPtr pt = share(standard_simplex(0));
    MFunctor m = m_functor(0, pt, 0);
    REQUIRE(m.sset.n_cells(0) == 2);
    REQUIRE(m.sset.n_cells(1) == 1);
    REQUIRE(isomorphic(m.sset, standard_simplex(1)));
}

TEST_CASE("the M functor preserves a pushout of its middle argument") {
    // glue two triangles along an edge, before and after applying M
    SSetPtr d1 = share(standard_simplex(1));
    SSetPtr d2 = share(standard_simplex(2));
    Simplex edge01 = d2->face(CellRef{2, 0}, 2);
    SMap incl = simplex_map(d2, edge01);
    Pushout glued = pushout(incl, incl);

    MFunctor ma = m_functor(1, d1, 0);
    MFunctor mb = m_functor(1, d2, 0);
    MFunctor mg = m_functor(1, glued.from_left.dst(), 0);
    SMap left = m_functor_map(ma, mb, incl);
    Pushout of_images = pushout(left, left);
    REQUIRE(isomorphic(mg.sset, of_images.sset));
}
