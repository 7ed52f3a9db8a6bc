#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <string>
#include <vector>

#include "combitop/degreewise.hpp"
#include "combitop/sset_ops.hpp"

using namespace combitop;

namespace {

long long binom(int n, int k) {
    if (k < 0 || k > n) return 0;
    long long r = 1;
    for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
    return r;
}

std::string enc(const Simplex& s) {
    return join(s.word.letters, ".") + "@" + std::to_string(s.cell.dim) + "," +
           std::to_string(s.cell.idx);
}

// Degreewise product model: degree-m simplices are plain pairs, faces and
// degeneracies act coordinatewise.  Independent of the staircase construction.
SSet product_by_pairs(const SSet& a, const SSet& b, int cap) {
    std::vector<std::vector<std::pair<Simplex, Simplex>>> items(cap + 1);
    std::vector<std::map<std::string, int>> index(cap + 1);
    std::vector<std::vector<std::string>> keys(cap + 1);
    for (int m = 0; m <= cap; ++m) {
        for (const Simplex& x : a.simplices_of_degree(m))
            for (const Simplex& y : b.simplices_of_degree(m))
                items[m].emplace_back(x, y);
        std::sort(items[m].begin(), items[m].end(), [](const auto& u, const auto& v) {
            return enc(u.first) + "|" + enc(u.second) < enc(v.first) + "|" + enc(v.second);
        });
        for (int i = 0; i < static_cast<int>(items[m].size()); ++i) {
            keys[m].push_back(enc(items[m][i].first) + "|" + enc(items[m][i].second));
            index[m][keys[m].back()] = i;
        }
    }
    DegreewiseModel model;
    model.keys = keys;
    model.face = [&](int m, int idx, int i) {
        const auto& [x, y] = items[m][idx];
        return index[m - 1].at(enc(a.face_of(x, i)) + "|" + enc(b.face_of(y, i)));
    };
    model.degen = [&](int m, int idx, int i) {
        const auto& [x, y] = items[m][idx];
        return index[m + 1].at(enc(a.degeneracy_of(x, i)) + "|" + enc(b.degeneracy_of(y, i)));
    };
    return extract_presentation(model, kComplete).sset;
}

// Degreewise join model: pure left, pure right, and split pairs.
SSet join_by_pairs(const SSet& a, const SSet& b, int cap) {
    struct Item {
        bool has_x = false, has_y = false;
        Simplex x, y;
    };
    std::vector<std::vector<Item>> items(cap + 1);
    std::vector<std::map<std::string, int>> index(cap + 1);
    std::vector<std::vector<std::string>> keys(cap + 1);
    auto key_of = [](const Item& it) {
        std::string k = it.has_x ? "x" + enc(it.x) : "x*";
        k += it.has_y ? "y" + enc(it.y) : "y*";
        return k;
    };
    for (int m = 0; m <= cap; ++m) {
        for (const Simplex& x : a.simplices_of_degree(m)) items[m].push_back({true, false, x, {}});
        for (const Simplex& y : b.simplices_of_degree(m)) items[m].push_back({false, true, {}, y});
        for (int p = 0; p < m; ++p)
            for (const Simplex& x : a.simplices_of_degree(p))
                for (const Simplex& y : b.simplices_of_degree(m - 1 - p))
                    items[m].push_back({true, true, x, y});
        std::sort(items[m].begin(), items[m].end(),
                  [&](const Item& u, const Item& v) { return key_of(u) < key_of(v); });
        for (int i = 0; i < static_cast<int>(items[m].size()); ++i) {
            keys[m].push_back(key_of(items[m][i]));
            index[m][keys[m].back()] = i;
        }
    }
    auto locate = [&](int m, Item it) { return index[m].at(key_of(it)); };
    DegreewiseModel model;
    model.keys = keys;
    model.face = [&](int m, int idx, int i) {
        Item it = items[m][idx];
        if (!it.has_y) return locate(m - 1, {true, false, a.face_of(it.x, i), {}});
        if (!it.has_x) return locate(m - 1, {false, true, {}, b.face_of(it.y, i)});
        int p = it.x.degree();
        if (i <= p) {
            if (p == 0) return locate(m - 1, {false, true, {}, it.y});
            return locate(m - 1, {true, true, a.face_of(it.x, i), it.y});
        }
        if (it.y.degree() == 0) return locate(m - 1, {true, false, it.x, {}});
        return locate(m - 1, {true, true, it.x, b.face_of(it.y, i - p - 1)});
    };
    model.degen = [&](int m, int idx, int i) {
        Item it = items[m][idx];
        if (!it.has_y) return locate(m + 1, {true, false, a.degeneracy_of(it.x, i), {}});
        if (!it.has_x) return locate(m + 1, {false, true, {}, b.degeneracy_of(it.y, i)});
        int p = it.x.degree();
        if (i <= p) return locate(m + 1, {true, true, a.degeneracy_of(it.x, i), it.y});
        return locate(m + 1, {true, true, it.x, b.degeneracy_of(it.y, i - p - 1)});
    };
    return extract_presentation(model, kComplete).sset;
}

std::vector<int> cell_counts(const SSet& s) {
    std::vector<int> out;
    for (int d = 0; d <= s.top_dim(); ++d) out.push_back(s.n_cells(d));
    return out;
}

}  // namespace

TEST_CASE("boundaries and horns") {
    Inclusion bd2 = boundary_or_horn(2, -1);
    REQUIRE(cell_counts(bd2.sub) == std::vector<int>{3, 3});
    REQUIRE(bd2.sub.euler_characteristic() == 0);

    Inclusion horn21 = boundary_or_horn(2, 1);
    REQUIRE(cell_counts(horn21.sub) == std::vector<int>{3, 2});

    Inclusion bd3 = boundary_or_horn(3, -1);
    REQUIRE(cell_counts(bd3.sub) == std::vector<int>{4, 6, 4});
    REQUIRE(bd3.sub.euler_characteristic() == 2);

    // inclusions are injective on cells
    Inclusion horn30 = boundary_or_horn(3, 0);
    REQUIRE(cell_counts(horn30.sub) == std::vector<int>{4, 6, 3});
    for (int d = 0; d <= horn30.sub.top_dim(); ++d) {
        std::set<std::string> seen;
        for (int i = 0; i < horn30.sub.n_cells(d); ++i) {
            Simplex im = horn30.incl.cell_image(CellRef{d, i});
            REQUIRE(im.nondegenerate());
            seen.insert(horn30.incl.dst()->label(im.cell));
        }
        REQUIRE(static_cast<int>(seen.size()) == horn30.sub.n_cells(d));
    }
}

TEST_CASE("complexes demand closure") {
    SimplicialComplex k;
    for (auto v : {"a", "b", "c"}) k.add_vertex(v);
    k.add_simplex_raw({0, 1, 2});
    REQUIRE_THROWS_AS(k.validate(), input_error);
    k.add_simplex_raw({0, 1});
    k.add_simplex_raw({0, 2});
    k.add_simplex_raw({1, 2});
    REQUIRE_THROWS_AS(k.validate(), input_error);  // vertices still missing
    for (int v = 0; v < 3; ++v) k.add_simplex_raw({v});
    REQUIRE_NOTHROW(k.validate());
    REQUIRE(isomorphic(from_complex(k), standard_simplex(2)));
}

TEST_CASE("products match the degreewise oracle") {
    for (auto [p, q] : std::vector<std::pair<int, int>>{{0, 0}, {1, 1}, {2, 1}, {2, 2}}) {
        SSetPtr a = share(standard_simplex(p));
        SSetPtr b = share(standard_simplex(q));
        Product pr = product(a, b);
        SSet oracle = product_by_pairs(*a, *b, p + q + 1);
        REQUIRE(cell_counts(pr.sset) == cell_counts(oracle));
        REQUIRE(isomorphic(pr.sset, oracle));
        REQUIRE(pr.sset.complete());
    }

    // boundary times interval
    SSetPtr circle = share(boundary_or_horn(2, -1).sub);
    SSetPtr interval = share(standard_simplex(1));
    Product cyl = product(circle, interval);
    SSet oracle = product_by_pairs(*circle, *interval, 4);
    REQUIRE(isomorphic(cyl.sset, oracle));
    REQUIRE(cyl.sset.euler_characteristic() == 0);
}

TEST_CASE("product cell counts") {
    SSetPtr d1 = share(standard_simplex(1));
    Product sq = product(d1, d1);
    REQUIRE(cell_counts(sq.sset) == std::vector<int>{4, 5, 2});
    REQUIRE(sq.sset.euler_characteristic() == 1);

    // top cells of Delta^a x Delta^b are the (a,b) lattice shuffles
    for (int a = 0; a <= 3; ++a)
        for (int b = 0; b <= 3; ++b) {
            Product pr = product(share(standard_simplex(a)), share(standard_simplex(b)));
            REQUIRE(pr.sset.top_dim() == a + b);
            REQUIRE(pr.sset.n_cells(a + b) == binom(a + b, a));
            REQUIRE(pr.sset.euler_characteristic() == 1);
        }
}

TEST_CASE("projections determine product cells") {
    SSetPtr d2 = share(standard_simplex(2));
    SSetPtr d1 = share(standard_simplex(1));
    Product pr = product(d2, d1);
    for (int d = 0; d <= pr.sset.top_dim(); ++d) {
        std::set<std::pair<std::string, std::string>> seen;
        for (int i = 0; i < pr.sset.n_cells(d); ++i) {
            Simplex u = pr.pr1.cell_image(CellRef{d, i});
            Simplex v = pr.pr2.cell_image(CellRef{d, i});
            seen.insert({enc(u), enc(v)});
        }
        REQUIRE(static_cast<int>(seen.size()) == pr.sset.n_cells(d));
    }
}

TEST_CASE("joins match the degreewise oracle") {
    SSetPtr s0 = share(boundary_or_horn(1, -1).sub);  // two points
    SSetPtr d1 = share(standard_simplex(1));

    Join jj = join_ssets(s0, s0);
    SSet oracle = join_by_pairs(*s0, *s0, 3);
    REQUIRE(cell_counts(jj.sset) == std::vector<int>{4, 4});
    REQUIRE(isomorphic(jj.sset, oracle));

    Join jd = join_ssets(d1, s0);
    SSet oracle2 = join_by_pairs(*d1, *s0, 4);
    REQUIRE(isomorphic(jd.sset, oracle2));

    // join of simplices is a simplex
    for (int a = 0; a <= 2; ++a)
        for (int b = 0; b <= 1; ++b) {
            Join j = join_ssets(share(standard_simplex(a)), share(standard_simplex(b)));
            REQUIRE(isomorphic(j.sset, standard_simplex(a + b + 1)));
        }

    // inclusions land on the pure cells
    REQUIRE(jj.incl_left.image_of(nondeg(0, 0)).nondegenerate());
    Join circle = join_ssets(s0, s0);
    REQUIRE(circle.sset.euler_characteristic() == 0);
}

TEST_CASE("coproducts juxtapose") {
    SSetPtr d2 = share(standard_simplex(2));
    SSetPtr d1 = share(standard_simplex(1));
    Coproduct cp = coproduct(d2, d1);
    REQUIRE(cell_counts(cp.sset) == std::vector<int>{5, 4, 1});
    REQUIRE(cp.incl_left.image_of(nondeg(2, 0)).nondegenerate());
    REQUIRE(cp.incl_right.image_of(nondeg(1, 0)).nondegenerate());
}

TEST_CASE("pushouts glue and renormalize") {
    // two triangles glued along an edge
    SSetPtr d2 = share(standard_simplex(2));
    SSetPtr d1 = share(standard_simplex(1));
    auto edge_into = [&](const char* va, const char* vb) {
        std::vector<std::vector<Simplex>> img(2);
        int ia = d2->index_of_label(0, va), ib = d2->index_of_label(0, vb);
        std::string el = std::string(va) + "." + vb;
        img[0] = {nondeg(0, ia), nondeg(0, ib)};
        img[1] = {nondeg(1, d2->index_of_label(1, el))};
        return SMap(d1, d2, img);
    };
    Pushout glued = pushout(edge_into("0", "1"), edge_into("1", "2"));
    REQUIRE(cell_counts(glued.sset) == std::vector<int>{4, 5, 2});
    REQUIRE(glued.sset.euler_characteristic() == 1);
    glued.sset.check_valid();
    REQUIRE(glued.from_left.dst()->encode() == glued.sset.encode());

    // gluing along the identity returns the other leg
    SMap idm = identity_map(d2);
    Pushout same = pushout(idm, idm);
    REQUIRE(isomorphic(same.sset, *d2));
}

TEST_CASE("quotients collapse subobjects") {
    // interval mod endpoints: a circle with one vertex and one edge
    Inclusion bd1 = boundary_or_horn(1, -1);
    Pushout circ = quotient(bd1.incl);
    REQUIRE(cell_counts(circ.sset) == std::vector<int>{1, 1});
    REQUIRE(circ.sset.euler_characteristic() == 0);

    // 2-simplex mod boundary: one vertex, one 2-cell
    Pushout s2 = quotient(boundary_or_horn(2, -1).incl);
    REQUIRE(cell_counts(s2.sset) == std::vector<int>{1, 0, 1});
    REQUIRE(s2.sset.euler_characteristic() == 2);

    // 2-simplex mod inner horn
    Pushout hq = quotient(boundary_or_horn(2, 1).incl);
    REQUIRE(cell_counts(hq.sset) == std::vector<int>{1, 1, 1});

    // 3-simplex mod boundary
    Pushout s3 = quotient(boundary_or_horn(3, -1).incl);
    REQUIRE(cell_counts(s3.sset) == std::vector<int>{1, 0, 0, 1});
}

TEST_CASE("wedge of intervals") {
    SSetPtr d0 = share(standard_simplex(0));
    SSetPtr d1 = share(standard_simplex(1));
    auto vertex_in = [&](int idx) {
        std::vector<std::vector<Simplex>> img(1);
        img[0] = {nondeg(0, idx)};
        return SMap(d0, d1, img);
    };
    Pushout wedge = pushout(vertex_in(1), vertex_in(0));
    REQUIRE(cell_counts(wedge.sset) == std::vector<int>{3, 2});
    wedge.sset.check_valid();
}
