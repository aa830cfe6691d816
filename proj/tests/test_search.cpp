#include <catch2/catch_amalgamated.hpp>

#include "setspectra/search.hpp"

using namespace setspectra;

TEST_CASE("branching process on the triangle basis") {
    auto basis = minimal_transversals(build_Bp(5, 2, 2));
    auto o = branching_process(basis, 2, 2);
    REQUIRE(o.final_sequences.size() == 4);
    for (const auto& s : o.final_sequences) CHECK(s.weight == Rational(1, 4));
    CHECK(o.total_weight == 1);
    CHECK(o.covered.size() == 3);  // all three basis pairs occur as underlying sets
    CHECK(o.bound_check.level_size == 3);
    CHECK(o.bound_check.bound == 4);  // 2*2*2^0
    CHECK(o.bound_check.pass);
}

TEST_CASE("branching process rejects stars") {
    auto basis = minimal_transversals(build_Bp(7, 3, 1));
    CHECK(basis.t == 1);
    CHECK_THROWS_AS(branching_process(basis, 3, 2), contract_error);
}

TEST_CASE("branching process on B_3(9,4)") {
    auto basis = minimal_transversals(build_Bp(9, 4, 3));
    auto o = branching_process(basis, 4, 3);
    CHECK(o.total_weight == 1);
    CHECK(o.bound_check.level_size == 10);
    CHECK(o.bound_check.bound == 36);  // 3*3*4
    CHECK(o.covered.size() == 10);
    for (const auto& s : o.final_sequences)
        if (s.underlying.size() == 3) CHECK(s.weight >= o.weight_floor);
}

TEST_CASE("branching process weight accounting on mixed-level bases") {
    auto hm = hilton_milner(9, 3);
    auto basis = minimal_transversals(hm);
    REQUIRE(basis.t == 2);
    for (int l = 2; l <= 3; ++l) {
        if (covering_number(level_upto(basis.basis, l)) < 2) continue;
        auto o = branching_process(basis, 3, l);
        CHECK(o.total_weight == 1);
        CHECK(o.bound_check.pass);
    }
}

TEST_CASE("exhaustive search at (5,2) finds the triangle") {
    auto r = exhaustive_max_spectrum(5, 2);
    CHECK(r.exhaustive);
    CHECK(r.best_count == 3);
    REQUIRE(r.witnesses.size() == 1);
    CHECK(r.iso_classes == 1);
    CHECK(r.witnesses[0] == canonical_form(build_Bp(5, 2, 2)));
}

TEST_CASE("exhaustive search at (7,2)") {
    auto r = exhaustive_max_spectrum(7, 2);
    CHECK(r.exhaustive);
    CHECK(r.best_count == formula_A(7, 2));
}

TEST_CASE("search is deterministic across thread counts") {
    SearchLimits a, b;
    a.threads = 1;
    b.threads = 3;
    auto r1 = exhaustive_max_spectrum(6, 2, a);
    auto r2 = exhaustive_max_spectrum(6, 2, b);
    CHECK(r1.best_count == r2.best_count);
    CHECK(r1.families_enumerated == r2.families_enumerated);
    CHECK(r1.iso_classes == r2.iso_classes);
    REQUIRE(r1.witnesses.size() == r2.witnesses.size());
    for (std::size_t i = 0; i < r1.witnesses.size(); ++i)
        CHECK(r1.witnesses[i] == r2.witnesses[i]);
}

TEST_CASE("search guards") {
    CHECK_THROWS_AS(exhaustive_max_spectrum(5, 3), contract_error);   // n <= 2k
    CHECK_THROWS_AS(exhaustive_max_spectrum(12, 4), capacity_error);  // C(12,4) > 100
}

TEST_CASE("search budget truncation is flagged") {
    SearchLimits limits;
    limits.max_cliques = 1;
    auto r = exhaustive_max_spectrum(6, 2, limits);
    CHECK_FALSE(r.exhaustive);
}

TEST_CASE("crossover scan") {
    auto same = crossover_scan(4, 2, 2, 9, 15);
    for (const auto& row : same.rows) CHECK(row.sign == 0);
    CHECK_FALSE(same.first_flip.has_value());

    // consistent with the star-vs-A comparison deep in the n >> k regime
    auto t = crossover_scan(3, 2, 1, 450, 460);
    for (const auto& row : t.rows) CHECK(row.sign == 1);
}

TEST_CASE("random pair family") {
    auto f = random_pair_family(2, 1);
    REQUIRE(f.size() == 3);  // one from each of the three complementary pairs
    CHECK(is_intersecting(f));
    ElementSet full = ElementSet::full(4);
    for (const auto& s : f.sets) CHECK_FALSE(f.contains(full - s));

    for (std::uint64_t seed = 1; seed <= 10; ++seed)
        CHECK(is_intersecting(random_pair_family(4, seed)));

    auto big = random_pair_family(5, 99);
    CHECK(big.size() == 126);  // C(10,5)/2

    // reproducible per seed; different seeds differ somewhere
    CHECK(random_pair_family(4, 7) == random_pair_family(4, 7));
    int distinct = 0;
    auto base = random_pair_family(4, 1);
    for (std::uint64_t seed = 2; seed <= 9; ++seed)
        if (!(random_pair_family(4, seed) == base)) ++distinct;
    CHECK(distinct > 0);
}

TEST_CASE("almost shatters") {
    SetFamily pairs(4, 2);
    for_each_k_subset(4, 2, [&](ElementSet s) { pairs.add_unique(s); });
    CHECK(almost_shatters(pairs, ElementSet{1, 2}).ok);

    SetFamily single(4, 2);
    single.add(ElementSet{1, 2});
    auto r = almost_shatters(single, ElementSet{1, 2, 3});
    CHECK_FALSE(r.ok);
    bool missing3 = false;
    for (const auto& m : r.missing)
        if (m == ElementSet{3}) missing3 = true;
    CHECK(missing3);
}

TEST_CASE("spectrum completeness on n=2k families") {
    for (int k : {2, 3, 4}) {
        auto f = random_pair_family(k, 5);
        auto c = spectrum_completeness(f);
        // all intersections have size 1..k-1 here, so the realized total is |I(F)|
        CHECK(c.total_realized == intersection_spectrum(f).count);
        CHECK(c.total_realized <= c.bound_excluding_empty);
        CHECK(c.bound_including_empty == c.bound_excluding_empty + 1);
    }
}

TEST_CASE("almost-shattering fraction is reported for random pair families") {
    auto f = random_pair_family(4, 3);
    std::uint64_t shattered = 0, total = 0;
    for_each_k_subset(8, 4, [&](ElementSet x) {
        ++total;
        if (almost_shatters(f, x).ok) ++shattered;
    });
    CHECK(total == 70);
    CHECK(shattered <= total);
}
