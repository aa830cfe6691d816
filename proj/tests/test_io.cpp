#include <catch2/catch_amalgamated.hpp>

#include "setspectra/io.hpp"

using namespace setspectra;

TEST_CASE("family json round trip") {
    for (const SetFamily& f : {build_Bp(9, 3, 2), hilton_milner(7, 3), build_Bp(5, 2, 1)}) {
        auto j = family_to_json(f);
        CHECK(family_from_json(j) == f);
    }
}

TEST_CASE("family json validation") {
    CHECK_THROWS_AS(family_from_json(json::parse(R"({"sets": [[1,2]]})")), contract_error);
    CHECK_THROWS_AS(family_from_json(json::parse(R"({"n": 4, "sets": [[1,5]]})")),
                    contract_error);  // out of range
    CHECK_THROWS_AS(family_from_json(json::parse(R"({"n": 4, "sets": [[1,2],[2,1]]})")),
                    contract_error);  // duplicate set
    CHECK_THROWS_AS(family_from_json(json::parse(R"({"n": 4, "k": 2, "sets": [[1,2,3]]})")),
                    contract_error);  // not k-uniform
    CHECK_THROWS_AS(family_from_json(json::parse(R"({"n": 70, "sets": []})")), capacity_error);

    auto f = family_from_json(json::parse(R"({"n": 4, "sets": [[2,3],[1,2]]})"));
    REQUIRE(f.size() == 2);
    CHECK(f.sets[0] == ElementSet{1, 2});  // colex sorted internally
}

TEST_CASE("serialized sets are ascending and family colex ordered") {
    auto j = family_to_json(build_Bp(9, 3, 2));
    auto sets = j["sets"];
    for (const auto& s : sets) {
        std::vector<int> v = s.get<std::vector<int>>();
        CHECK(std::is_sorted(v.begin(), v.end()));
    }
}

TEST_CASE("report serialization shapes") {
    auto a = build_Bp(9, 3, 2);
    auto basis = minimal_transversals(a);
    auto bj = basis_to_json(basis);
    CHECK(bj["t"] == 2);
    CHECK(bj["tau"] == 2);
    CHECK(bj["basis"].size() == 3);

    auto sj = spectrum_to_json(partitioned_spectrum(a, basis));
    CHECK(sj["count"] == "24");
    CHECK(sj["by_level"]["2"] == "24");

    auto oj = branching_to_json(branching_process(basis, 3, 2));
    CHECK(oj["total_weight"] == "1");
    CHECK(oj["eq22_checks"][0]["pass"] == true);

    auto rj = search_to_json(exhaustive_max_spectrum(5, 2));
    CHECK(rj["best"] == "3");
    CHECK(rj["exhaustive"] == true);

    // big integers as decimal strings
    CHECK(big_str(formula_A(600, 16)).size() > 19);
}

TEST_CASE("identical inputs serialize byte-identically") {
    auto a = spectrum_to_json(intersection_spectrum(build_Bp(9, 4, 3))).dump();
    auto b = spectrum_to_json(intersection_spectrum(build_Bp(9, 4, 3))).dump();
    CHECK(a == b);
}

TEST_CASE("csv scan output") {
    auto t = crossover_scan(3, 2, 1, 7, 9);
    auto csv = crossover_to_csv(t);
    CHECK(csv.rfind("n,count_p,count_q,sign\n", 0) == 0);
}
