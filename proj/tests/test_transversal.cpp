#include <catch2/catch_amalgamated.hpp>

#include "setspectra/spectrum.hpp"
#include "setspectra/transversal.hpp"

using namespace setspectra;

namespace {

SetFamily make(int n, std::optional<int> k, std::initializer_list<ElementSet> sets) {
    SetFamily f(n, k);
    for (auto s : sets) f.add(s);
    return f;
}

}  // namespace

TEST_CASE("transversal family examples") {
    auto t1 = transversals(make(3, std::nullopt, {ElementSet{1}}), 1);
    REQUIRE(t1.size() == 1);
    CHECK(t1.sets[0] == ElementSet{1});

    auto t2 = transversals(make(3, std::nullopt, {ElementSet{1, 2}}), 1);
    REQUIRE(t2.size() == 2);
    CHECK(t2.contains(ElementSet{1}));
    CHECK(t2.contains(ElementSet{2}));

    auto triangle = make(4, 2, {ElementSet{1, 2}, ElementSet{1, 3}, ElementSet{2, 3}});
    auto t3 = transversals(triangle, 2);
    CHECK(level(t3, 0).empty());
    CHECK(level(t3, 1).empty());
    auto pairs = level(t3, 2);
    REQUIRE(pairs.size() == 3);
    CHECK(pairs.contains(ElementSet{1, 2}));
    CHECK(pairs.contains(ElementSet{1, 3}));
    CHECK(pairs.contains(ElementSet{2, 3}));

    // empty family: every subset of size <= k, empty set included
    auto t4 = transversals(SetFamily(3), 1);
    REQUIRE(t4.size() == 4);
    CHECK(t4.contains(ElementSet{}));
}

TEST_CASE("transversal output cap") {
    TransversalOptions opts;
    opts.output_cap = 2;
    CHECK_THROWS_AS(transversals(SetFamily(10), 3, opts), capacity_error);
}

TEST_CASE("level selectors") {
    auto g = make(3, std::nullopt, {ElementSet{1}, ElementSet{1, 2}, ElementSet{2, 3}});
    auto l2 = level(g, 2);
    REQUIRE(l2.size() == 2);
    CHECK(l2.contains(ElementSet{1, 2}));
    CHECK(l2.contains(ElementSet{2, 3}));
    CHECK(level(g, 3).empty());
    CHECK(level_upto(g, 1).size() == 1);
    CHECK(level_upto(g, 2).size() == 3);
}

TEST_CASE("saturation predicate") {
    SetFamily star(5, 2);
    for (int e = 2; e <= 5; ++e) star.add(ElementSet{1, e});
    CHECK(is_saturated(star));

    auto partial = make(5, 2, {ElementSet{1, 2}, ElementSet{1, 3}});
    CHECK_FALSE(is_saturated(partial));  // {1,4} (among others) can be added

    CHECK(is_saturated(build_Bp(9, 3, 2)));

    auto bad = make(5, 2, {ElementSet{1, 2}, ElementSet{3, 4}});
    CHECK_THROWS_AS(is_saturated(bad), contract_error);
}

TEST_CASE("greedy saturation") {
    // colex scan from {1,2}: {1,3} and {2,3} precede {1,4}, so the greedy
    // completion is the triangle
    auto from_single = saturate(make(4, 2, {ElementSet{1, 2}}));
    auto triangle = make(4, 2, {ElementSet{1, 2}, ElementSet{1, 3}, ElementSet{2, 3}});
    CHECK(from_single == triangle);

    auto star_seed = make(4, 2, {ElementSet{1, 2}, ElementSet{1, 4}});
    auto star = make(4, 2, {ElementSet{1, 2}, ElementSet{1, 3}, ElementSet{1, 4}});
    CHECK(saturate(star_seed) == star);

    CHECK(saturate(triangle) == triangle);

    auto a = build_Bp(9, 3, 2);
    CHECK(saturate(a) == a);

    CHECK_THROWS_AS(saturate(SetFamily(5, 2)), contract_error);
}

TEST_CASE("saturate is extensive and idempotent") {
    for (auto [n, k] : {std::pair{7, 3}, {8, 3}, {9, 4}}) {
        SetFamily seed(n, k);
        ElementSet first;
        for (int e = 1; e <= k; ++e) first.add(e);
        seed.add(first);
        auto sat = saturate(seed);
        for (const auto& s : seed.sets) CHECK(sat.contains(s));
        CHECK(saturate(sat) == sat);
        CHECK(is_saturated(sat));
    }
}

TEST_CASE("minimal transversal basis of fixtures") {
    auto star = minimal_transversals(build_Bp(7, 3, 1));
    REQUIRE(star.basis.size() == 1);
    CHECK(star.basis.sets[0] == ElementSet{1});
    CHECK(star.t == 1);

    auto a = minimal_transversals(build_Bp(9, 3, 2));
    REQUIRE(a.basis.size() == 3);
    CHECK(a.basis.contains(ElementSet{1, 2}));
    CHECK(a.basis.contains(ElementSet{1, 3}));
    CHECK(a.basis.contains(ElementSet{2, 3}));
    CHECK(a.t == 2);
    CHECK(a.tau == 2);

    auto b3 = minimal_transversals(build_Bp(9, 4, 3));
    REQUIRE(b3.basis.size() == 10);  // all 3-subsets of {1..5}
    for (const auto& s : b3.basis.sets) {
        CHECK(s.size() == 3);
        CHECK(s.subset_of(ElementSet{1, 2, 3, 4, 5}));
    }
    CHECK(b3.t == 3);
}

TEST_CASE("unsaturated input is rejected with a witness") {
    auto partial = make(5, 2, {ElementSet{1, 2}, ElementSet{1, 3}});
    try {
        minimal_transversals(partial);
        FAIL("expected contract_error");
    } catch (const contract_error& e) {
        CHECK(std::string(e.what()).find('{') != std::string::npos);
    }
}

TEST_CASE("Berge agrees with the brute-force oracle") {
    for (const SetFamily& f : {build_Bp(9, 3, 2), build_Bp(9, 4, 3), hilton_milner(9, 3),
                               build_Bp(7, 3, 1), hilton_milner(7, 3)}) {
        auto berge = minimal_transversals_berge(f, *f.k);
        auto brute = minimal_transversals_brute(f, *f.k);
        CHECK(berge == brute);
    }
}

TEST_CASE("sunflower search") {
    auto star3 = make(4, std::nullopt, {ElementSet{1, 2}, ElementSet{1, 3}, ElementSet{1, 4}});
    auto s = find_sunflower(star3, 3);
    REQUIRE(s.has_value());
    CHECK(s->center == ElementSet{1});
    CHECK(s->petals.size() == 3);

    auto triangle = make(3, std::nullopt, {ElementSet{1, 2}, ElementSet{1, 3}, ElementSet{2, 3}});
    CHECK_FALSE(find_sunflower(triangle, 3).has_value());

    auto disjoint =
        make(6, std::nullopt, {ElementSet{1, 2}, ElementSet{3, 4}, ElementSet{5, 6}});
    auto d = find_sunflower(disjoint, 3);
    REQUIRE(d.has_value());
    CHECK(d->center == ElementSet{});

    CHECK_THROWS_AS(find_sunflower(triangle, 0), contract_error);
}

TEST_CASE("sunflower budget error") {
    SetFamily many(12);
    for_each_k_subset(12, 3, [&](ElementSet s) {
        if (s.contains(1)) many.add_unique(s);
    });
    TransversalOptions opts;
    opts.sunflower_budget = 3;
    CHECK_THROWS_AS(find_sunflower(many, 5, opts), budget_error);
}

TEST_CASE("Hilton-Milner fixture structure") {
    auto hm = hilton_milner(9, 3);
    auto b = minimal_transversals(hm);
    CHECK(b.t == 2);
    auto upto2 = level_upto(b.basis, 2);
    REQUIRE(upto2.size() == 3);
    CHECK(upto2.contains(ElementSet{1, 2}));
    CHECK(upto2.contains(ElementSet{1, 3}));
    CHECK(upto2.contains(ElementSet{1, 4}));
    CHECK(b.basis.contains(ElementSet{2, 3, 4}));
    CHECK(alpha(b) == 3);
}

TEST_CASE("level decomposition") {
    auto a = build_Bp(9, 3, 2);
    auto ab = minimal_transversals(a);
    auto ad = level_decomposition(a, ab);
    REQUIRE(ad.size() == 1);
    CHECK(ad.at(2) == a);

    auto star = build_Bp(7, 3, 1);
    auto sb = minimal_transversals(star);
    auto sd = level_decomposition(star, sb);
    REQUIRE(sd.size() == 1);
    CHECK(sd.at(1) == star);

    auto hm = hilton_milner(9, 3);
    auto hb = minimal_transversals(hm);
    auto hd = level_decomposition(hm, hb);
    REQUIRE(hd.count(3) == 1);
    CHECK(hd.at(3).contains(ElementSet{2, 3, 4}));
    CHECK(hd.at(2).size() + hd.at(3).size() == hm.size());
}

TEST_CASE("alpha") {
    CHECK(alpha(minimal_transversals(build_Bp(9, 3, 2))) == 2);
    CHECK(alpha(minimal_transversals(build_Bp(9, 4, 3))) == 3);
    CHECK_THROWS_AS(alpha(minimal_transversals(build_Bp(7, 3, 1))), contract_error);
}

TEST_CASE("basis levels satisfy the Erdos-Rado count") {
    // l-uniform, no (k+1)-sunflower => size <= l! * k^l
    for (const SetFamily& f :
         {build_Bp(9, 3, 2), build_Bp(9, 4, 3), build_Bp(9, 4, 4), hilton_milner(9, 3)}) {
        const int k = *f.k;
        auto b = minimal_transversals(f);
        for (const auto& [l, fam] : b.levels) {
            if (fam.empty()) continue;
            REQUIRE_FALSE(find_sunflower(fam, k + 1).has_value());
            BigCount cap = 1;
            for (int i = 2; i <= l; ++i) cap *= i;
            for (int i = 0; i < l; ++i) cap *= k;
            CHECK(BigCount(fam.size()) <= cap);
        }
    }
}

TEST_CASE("every intersecting 2-uniform family is a star or a triangle") {
    // exhaustive over all edge subsets for n <= 6
    for (int n = 2; n <= 6; ++n) {
        std::vector<ElementSet> edges;
        for_each_k_subset(n, 2, [&](ElementSet s) { edges.push_back(s); });
        const int m = static_cast<int>(edges.size());
        for (std::uint64_t pick = 1; pick < (std::uint64_t{1} << m); ++pick) {
            SetFamily f(n, 2);
            for (int i = 0; i < m; ++i)
                if ((pick >> i) & 1u) f.add_unique(edges[i]);
            if (!is_intersecting(f)) continue;
            ElementSet common = ElementSet::full(n);
            for (const auto& e : f.sets) common = common & e;
            const bool star = !common.empty();
            bool triangle = f.size() == 3;
            if (triangle) {
                ElementSet uni;
                for (const auto& e : f.sets) uni = uni | e;
                triangle = uni.size() == 3;
            }
            REQUIRE((star || triangle));
        }
    }
}

TEST_CASE("tau conventions") {
    CHECK(covering_number(SetFamily(5)) == 0);
    CHECK(covering_number(make(5, std::nullopt, {ElementSet{2, 4}})) == 1);
    CHECK(covering_number(make(5, std::nullopt,
                                {ElementSet{1, 2}, ElementSet{1, 3}, ElementSet{2, 3}})) == 2);
}
