#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "combitop/corpus.hpp"
#include "combitop/homology.hpp"
#include "combitop/sset_ops.hpp"

using namespace combitop;

namespace {
HomologyGroup zz(long long b) { return HomologyGroup{b, {}}; }

// betti via rational ranks only; independent of the sparse reduction path
std::vector<long long> rational_betti(const ChainComplex& c, int kmax) {
    auto dense = [&](int k) {
        std::vector<std::vector<BigInt>> m;
        if (k < 1 || k > c.top()) return m;
        m.assign(static_cast<size_t>(c.ranks[k - 1]), std::vector<BigInt>(static_cast<size_t>(c.ranks[k]), 0));
        for (size_t j = 0; j < c.d[k].size(); ++j)
            for (auto& [r, v] : c.d[k][j]) m[static_cast<size_t>(r)][j] = v;
        return m;
    };
    std::vector<long long> out;
    for (int k = 0; k <= kmax; ++k) {
        long long rk = rational_rank(dense(k));
        long long rk1 = rational_rank(dense(k + 1));
        long long n = k <= c.top() ? c.ranks[static_cast<size_t>(k)] : 0;
        out.push_back(n - rk - rk1);
    }
    return out;
}
}  // namespace

TEST_CASE("chains of small spaces") {
    ChainComplex c = normalized_chains(standard_simplex(1), 1);
    REQUIRE(c.ranks == std::vector<long long>{2, 1});
    REQUIRE(c.d[1][0] == std::map<int, long long>{{0, -1}, {1, 1}});

    ChainComplex b3 = normalized_chains(from_complex(boundary_delta3()), 2);
    REQUIRE(b3.ranks == std::vector<long long>{4, 6, 4});
    b3.check_dd_zero();
}

TEST_CASE("homology of the corpus") {
    auto h = [&](const SimplicialComplex& k, int kmax) {
        return homology_of(from_complex(k), kmax);
    };
    auto bd3 = h(boundary_delta3(), 2);
    REQUIRE(bd3[0] == zz(1));
    REQUIRE(bd3[1] == zz(0));
    REQUIRE(bd3[2] == zz(1));

    auto cyc = h(six_cycle(), 1);
    REQUIRE(cyc[0] == zz(1));
    REQUIRE(cyc[1] == zz(1));

    auto two = h(two_triangles(), 2);
    REQUIRE(two[0] == zz(1));
    REQUIRE(two[1] == zz(0));
    REQUIRE(two[2] == zz(0));

    auto tor = h(torus7(), 2);
    REQUIRE(tor[0] == zz(1));
    REQUIRE(tor[1] == zz(2));
    REQUIRE(tor[2] == zz(1));

    auto rp = h(rp2_6(), 2);
    REQUIRE(rp[0] == zz(1));
    REQUIRE(rp[1].betti == 0);
    REQUIRE(rp[1].torsion == std::vector<BigInt>{2});
    REQUIRE(rp[2] == zz(0));

    // quotient spheres
    auto s2 = homology_of(quotient(boundary_or_horn(2, -1).incl).sset, 2);
    REQUIRE(s2[0] == zz(1));
    REQUIRE(s2[1] == zz(0));
    REQUIRE(s2[2] == zz(1));
}

TEST_CASE("betti numbers agree with rational ranks") {
    std::mt19937 rng(20240817);
    for (int trial = 0; trial < 12; ++trial) {
        // random 2-complex on 6 vertices
        SimplicialComplex k;
        for (int v = 0; v < 6; ++v) k.add_vertex("r" + std::to_string(v));
        std::uniform_int_distribution<int> vtx(0, 5);
        for (int t = 0; t < 5; ++t) k.add_simplex_closed({vtx(rng), vtx(rng), vtx(rng)});
        for (int v = 0; v < 6; ++v) k.add_simplex_closed({v});
        SSet s = from_complex(k);
        ChainComplex c = normalized_chains(s, std::min(3, s.top_dim() + 1));
        c.check_dd_zero();
        auto exact = homology_range(c, 2);
        auto ranks = rational_betti(c, 2);
        for (int d = 0; d <= 2; ++d) REQUIRE(exact[static_cast<size_t>(d)].betti == ranks[static_cast<size_t>(d)]);
    }
}

TEST_CASE("invariant factors ignore basis order") {
    std::vector<std::vector<BigInt>> m = {{2, 4, 4}, {-6, 6, 12}, {10, 4, 16}};
    auto f = detail::dense_snf(m);
    std::vector<std::vector<BigInt>> p = {{4, 4, 2}, {4, 16, 10}, {6, 12, -6}};  // shuffled
    REQUIRE(detail::dense_snf(p) == f);
    for (size_t i = 1; i < f.size(); ++i) REQUIRE(f[i] % f[i - 1] == 0);
}

TEST_CASE("mapping cones detect equivalences") {
    SSetPtr d2 = share(standard_simplex(2));
    REQUIRE(cone_equivalence(identity_map(d2), 2).acyclic);

    // two points onto one: the collapsed H_0 class resurfaces in cone degree 1
    Inclusion bd1 = boundary_or_horn(1, -1);
    SSetPtr s0 = share(bd1.sub);
    SSetPtr pt = share(standard_simplex(0));
    SMap fold(s0, pt, {{nondeg(0, 0), nondeg(0, 0)}});
    ConeReport rep = cone_equivalence(fold, 1);
    REQUIRE_FALSE(rep.acyclic);
    REQUIRE(rep.groups[0] == zz(0));
    REQUIRE(rep.groups[1] == zz(1));

    // collapsing one triangle of the pair is an equivalence
    SSetPtr two = share(from_complex(two_triangles()));
    SSetPtr ptp = share(standard_simplex(0));
    std::vector<std::vector<Simplex>> img(3);
    for (int d = 0; d <= two->top_dim(); ++d)
        for (int i = 0; i < two->n_cells(d); ++i) {
            std::vector<int> w;
            for (int j = d - 1; j >= 0; --j) w.push_back(j);
            img[static_cast<size_t>(d)].push_back(Simplex{DegeneracyWord(w), CellRef{0, 0}});
        }
    SMap collapse(two, ptp, img);
    REQUIRE(cone_equivalence(collapse, 2).acyclic);
}

namespace {
// directed n-cycle: every edge points from w_i to w_{i+1 mod n}
SSetPtr directed_cycle(int n, const std::string& stem) {
    SSetBuilder b;
    std::vector<CellRef> vs;
    for (int v = 0; v < n; ++v) vs.push_back(b.add_cell(0, stem + std::to_string(v)));
    for (int v = 0; v < n; ++v)
        b.add_cell(1, stem + "e" + std::to_string(v),
                   {Simplex{{}, vs[static_cast<size_t>((v + 1) % n)]}, Simplex{{}, vs[static_cast<size_t>(v)]}});
    return share(b.finalize());
}
}  // namespace

TEST_CASE("double cover of the circle is not an equivalence") {
    // 12-cycle wrapping twice onto the 6-cycle
    SSetPtr c12 = directed_cycle(12, "u");
    SSetPtr c6 = directed_cycle(6, "v");

    std::vector<std::vector<Simplex>> img(2);
    img[0].resize(12);
    img[1].resize(12);
    for (int v = 0; v < 12; ++v) {
        int tv = c6->index_of_label(0, "v" + std::to_string(v % 6));
        img[0][static_cast<size_t>(c12->index_of_label(0, "u" + std::to_string(v)))] =
            nondeg(0, tv);
        int te = c6->index_of_label(1, "ve" + std::to_string(v % 6));
        img[1][static_cast<size_t>(c12->index_of_label(1, "ue" + std::to_string(v)))] = nondeg(1, te);
    }
    SMap cover(c12, c6, img);
    ConeReport rep = cone_equivalence(cover, 1);
    REQUIRE_FALSE(rep.acyclic);
    REQUIRE(rep.groups[1].torsion == std::vector<BigInt>{2});  // degree-2 wrap

    REQUIRE(homology_of(*c12, 1)[1] == zz(1));
}

TEST_CASE("stabilization detection") {
    std::vector<HomologyGroup> steady{zz(2), zz(1), zz(1), zz(1)};
    auto rep = stabilize_levels(steady, 2);
    REQUIRE(rep.stabilized);
    REQUIRE(rep.stable_from == 1);
    REQUIRE(rep.stable_value == zz(1));
    REQUIRE(rep.heuristic);

    std::vector<HomologyGroup> moving{zz(1), zz(2), zz(3)};
    REQUIRE_FALSE(stabilize_levels(moving, 2).stabilized);
}

TEST_CASE("trust caps are enforced") {
    SSetBuilder b;
    b.add_cell(0, "v");
    b.set_trusted(1);
    SSet x = b.finalize();
    REQUIRE_NOTHROW(normalized_chains(x, 1));
    REQUIRE_THROWS_AS(normalized_chains(x, 2), trust_error);
    ChainComplex c = normalized_chains(x, 1);
    REQUIRE_NOTHROW(homology_range(c, 0));
    REQUIRE_THROWS_AS(homology_range(c, 1), trust_error);
}
