#include <catch2/catch_amalgamated.hpp>

#include "combitop/monotone.hpp"
#include "combitop/sset.hpp"

using namespace combitop;

namespace {
long long binom(int n, int k) {
    if (k < 0 || k > n) return 0;
    long long r = 1;
    for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
    return r;
}
}  // namespace

TEST_CASE("monotone map enumeration counts") {
    // weakly increasing (p+1)-tuples in {0..q}: C(p+q+1, p+1)
    for (int p = 0; p <= 4; ++p)
        for (int q = 0; q <= 4; ++q)
            REQUIRE(static_cast<long long>(all_monotone(p, q).size()) == binom(p + q + 1, p + 1));
    // surjections: q rises among p steps
    for (int p = 0; p <= 5; ++p)
        for (int q = 0; q <= 5; ++q)
            REQUIRE(static_cast<long long>(all_surjections(p, q).size()) == binom(p, q));
}

TEST_CASE("enumeration is sorted and well formed") {
    auto maps = all_monotone(3, 2);
    for (size_t i = 1; i < maps.size(); ++i) REQUIRE(maps[i - 1] < maps[i]);
    for (const auto& f : maps) {
        REQUIRE(f.domain() == 3);
        REQUIRE(f.codomain == 2);
    }
    auto surjs = all_surjections(4, 2);
    for (const auto& f : surjs) REQUIRE(f.is_surjective());
    for (size_t i = 1; i < surjs.size(); ++i) REQUIRE(surjs[i - 1] < surjs[i]);
}

TEST_CASE("composition and epi-mono factorization") {
    auto d1 = MonotoneMap::coface(2, 1);        // [1] -> [2] skipping 1
    auto s0 = MonotoneMap::codegeneracy(2, 0);  // [3] -> [2] repeating 0
    REQUIRE(d1.vals == std::vector<int>{0, 2});
    REQUIRE(s0.vals == std::vector<int>{0, 0, 1, 2});

    auto c = compose(d1, MonotoneMap::codegeneracy(1, 0));  // [2] -> [1] -> [2]
    REQUIRE(c.vals == std::vector<int>{0, 0, 2});

    EpiMono em = epi_mono_factor(c);
    REQUIRE(em.surj.vals == std::vector<int>{0, 0, 1});
    REQUIRE(em.inj.vals == std::vector<int>{0, 2});
    REQUIRE(compose(em.inj, em.surj) == c);

    for (const auto& f : all_monotone(3, 3)) {
        EpiMono g = epi_mono_factor(f);
        REQUIRE(g.surj.is_surjective());
        REQUIRE(g.inj.is_injective());
        REQUIRE(compose(g.inj, g.surj) == f);
    }
}

TEST_CASE("degeneracy words match surjections") {
    // s_1 s_0 applied to a vertex is the constant [2] -> [0]
    REQUIRE(word_to_surjection(DegeneracyWord({1, 0}), 2).vals == std::vector<int>{0, 0, 0});
    // s_2 s_0 on an edge repeats positions 0 and 2
    REQUIRE(word_to_surjection(DegeneracyWord({2, 0}), 3).vals == std::vector<int>{0, 0, 1, 1});

    for (int p = 0; p <= 5; ++p)
        for (int q = 0; q <= p; ++q)
            for (const auto& s : all_surjections(p, q)) {
                DegeneracyWord w = surjection_to_word(s);
                REQUIRE(w.size() == p - q);
                REQUIRE(word_to_surjection(w, p) == s);
            }

    REQUIRE_THROWS_AS(DegeneracyWord({0, 1}), check_error);
    REQUIRE_THROWS_AS(DegeneracyWord({2, 2}), check_error);
}

TEST_CASE("blockwise power of a map") {
    auto f = MonotoneMap(std::vector<int>{0, 0, 1}, 1);  // [2] -> [1]
    auto g = star_power(f, 2);
    REQUIRE(g.domain() == 5);
    REQUIRE(g.codomain == 3);
    REQUIRE(g.vals == std::vector<int>{0, 0, 1, 2, 2, 3});
    REQUIRE(star_power(MonotoneMap::identity(2), 3) == MonotoneMap::identity(8));
}
