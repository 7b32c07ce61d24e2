#include <catch2/catch_amalgamated.hpp>

#include "support/enumerate.hpp"
#include "vcoalg/io.hpp"

using namespace vcoalg;

TEST_CASE("space JSON: leq form, opens form, and validation") {
    Json leqForm = Json::parse(R"json({"points": ["0","1"], "leq": [["0","1"]]})json");
    CHECK(space_from_json(leqForm) == FinSpace::sierpinski());

    Json opensForm = Json::parse(R"json({"points": ["0","1"], "opens": [[], ["1"], ["0","1"]]})json");
    CHECK(space_from_json(opensForm) == FinSpace::sierpinski());

    SECTION("exactly one of opens/leq") {
        CHECK_THROWS_AS(space_from_json(Json::parse(R"json({"points": ["a"]})json")), BadInput);
        CHECK_THROWS_AS(
            space_from_json(Json::parse(R"json({"points": ["a"], "leq": [], "opens": [[],["a"]]})json")),
            BadInput);
    }
    SECTION("unknown fields rejected") {
        CHECK_THROWS_AS(space_from_json(Json::parse(R"json({"points": ["a"], "leq": [], "x": 1})json")),
                        BadInput);
    }
    SECTION("opens must form a topology") {
        Json bad = Json::parse(R"json({"points": ["a","b"], "opens": [[], ["a"]]})json");
        CHECK_THROWS(space_from_json(bad));
    }
    SECTION("leq generators are closed reflexively and transitively") {
        Json gen = Json::parse(R"json({"points": ["a","b","c"], "leq": [["a","b"], ["b","c"]]})json");
        FinSpace x = space_from_json(gen);
        CHECK(x.leq(x.index_of("a"), x.index_of("c")));
    }
}

TEST_CASE("space JSON round trip") {
    for (const FinSpace& x : vctest::spaces_up_to(3)) {
        Json j = space_to_json(x);
        CHECK(space_from_json(j) == x);
    }
    // hyperspace export stays loadable (FValue-serialized names)
    Hyperspace h = make_hyperspace(FinSpace::sierpinski(), VietorisVariant::Compact);
    Json j = space_to_json(h.space);
    CHECK(space_from_json(j) == h.space);
}

TEST_CASE("map JSON") {
    Json j = Json::parse(R"json({
        "dom": {"points": ["0","1"], "leq": [["0","1"]]},
        "cod": {"points": ["0","1"], "leq": [["0","1"]]},
        "map": {"0": "0", "1": "1"}})json");
    ContMap f = map_from_json(j);
    CHECK(f.is_iso());

    Json swapped = j;
    swapped["map"] = Json{{"0", "1"}, {"1", "0"}};
    CHECK_THROWS_AS(map_from_json(swapped), BadInput); // discontinuous

    Json partial = j;
    partial["map"] = Json{{"0", "0"}};
    CHECK_THROWS_AS(map_from_json(partial), BadInput);

    CHECK(map_from_json(map_to_json(f)) == f);
}

TEST_CASE("FValue JSON forms") {
    FValue v = FValue::pair(FValue::constpt("a"),
                            FValue::set({FValue::pt("x"), FValue::inl(FValue::pt("y"))}));
    Json j = fvalue_to_json(v);
    CHECK(fvalue_from_json(j) == v);
    CHECK_THROWS_AS(fvalue_from_json(Json::parse(R"json({"pt": "x", "extra": 1})json")), BadInput);
    CHECK_THROWS_AS(fvalue_from_json(Json::parse(R"json({"unknown": "x"})json")), BadInput);
    CHECK_THROWS_AS(fvalue_from_json(Json::parse(R"json({"pair": [{"pt":"x"}]})json")), BadInput);
}

TEST_CASE("coalgebra JSON: stream system and every FValue form") {
    Env env{{"two", FinSpace::discrete({"a", "b"})}};
    Json j = Json::parse(R"json({
        "functor": "C(two) * Id",
        "carrier": {"points": ["x","y"], "leq": []},
        "structure": {
            "x": {"pair": [{"const": "a"}, {"pt": "y"}]},
            "y": {"pair": [{"const": "b"}, {"pt": "y"}]}
        }})json");
    Coalgebra c = coalgebra_from_json(j, env);
    CHECK(c.structure_value(c.carrier().index_of("x")).serialize() == "(a,y)");

    Json back = coalgebra_to_json(c);
    Coalgebra again = coalgebra_from_json(back, env);
    CHECK(again == c);

    // sums and sets
    Json j2 = Json::parse(R"json({
        "functor": "V + C(two)",
        "carrier": {"points": ["x","y"], "leq": []},
        "structure": {
            "x": {"inl": {"set": [{"pt": "x"}, {"pt": "y"}]}},
            "y": {"inr": {"const": "b"}}
        }})json");
    Coalgebra c2 = coalgebra_from_json(j2, env, Limits{16});
    CHECK(c2.structure_value(0).serialize() == "inl({x,y})");
    CHECK(coalgebra_from_json(coalgebra_to_json(c2), env, Limits{16}) == c2);
}

TEST_CASE("coalgebra JSON: invariant violations are rejected with context") {
    Env env;
    SECTION("set member outside the carrier") {
        Json j = Json::parse(R"json({
            "functor": "V",
            "carrier": {"points": ["x"], "leq": []},
            "structure": {"x": {"set": [{"pt": "zz"}]}}})json");
        CHECK_THROWS_WITH(coalgebra_from_json(j, env), Catch::Matchers::ContainsSubstring("zz"));
    }
    SECTION("duplicate set members") {
        Json j = Json::parse(R"json({
            "functor": "V",
            "carrier": {"points": ["x"], "leq": []},
            "structure": {"x": {"set": [{"pt": "x"}, {"pt": "x"}]}}})json");
        CHECK_THROWS_AS(coalgebra_from_json(j, env), BadInput);
    }
    SECTION("lower-Vietoris values must be down-closed") {
        Json j = Json::parse(R"json({
            "functor": "Vl",
            "carrier": {"points": ["0","1"], "leq": [["0","1"]]},
            "structure": {"0": {"set": []}, "1": {"set": [{"pt": "1"}]}}})json");
        CHECK_THROWS_WITH(coalgebra_from_json(j, env),
                          Catch::Matchers::ContainsSubstring("hyperspace point"));
    }
    SECTION("nonempty variant rejects the empty set") {
        Json j = Json::parse(R"json({
            "functor": "V+",
            "carrier": {"points": ["x"], "leq": []},
            "structure": {"x": {"set": []}}})json");
        CHECK_THROWS_AS(coalgebra_from_json(j, env), BadInput);
    }
    SECTION("discontinuous structure map is rejected naming the witness open") {
        // 0 <= 1 but the transition sets are ordered the wrong way around
        Json j = Json::parse(R"json({
            "functor": "Vl",
            "carrier": {"points": ["0","1"], "leq": [["0","1"]]},
            "structure": {"0": {"set": [{"pt": "0"}, {"pt": "1"}]}, "1": {"set": []}}})json");
        CHECK_THROWS_WITH(coalgebra_from_json(j, env),
                          Catch::Matchers::ContainsSubstring("not continuous") &&
                              Catch::Matchers::ContainsSubstring("preimage of the open"));
    }
    SECTION("wrong shape for the functor position") {
        Json j = Json::parse(R"json({
            "functor": "V",
            "carrier": {"points": ["x"], "leq": []},
            "structure": {"x": {"pt": "x"}}})json");
        CHECK_THROWS_WITH(coalgebra_from_json(j, env), Catch::Matchers::ContainsSubstring("set"));
    }
}

TEST_CASE("hom JSON") {
    Json j = Json::parse(R"json({
        "src": {"functor": "V", "carrier": {"points": ["x"], "leq": []},
                "structure": {"x": {"set": [{"pt": "x"}]}}},
        "dst": {"functor": "V", "carrier": {"points": ["y"], "leq": []},
                "structure": {"y": {"set": [{"pt": "y"}]}}},
        "map": {"x": "y"}})json");
    CoalgHom h = hom_from_json(j, {});
    CHECK(is_coalg_hom(h).ok);
    CHECK_THROWS_AS(hom_from_json(Json::parse(R"json({"src": 1})json"), Env{}), BadInput);
}

TEST_CASE("deep nested functor values survive the round trip") {
    Env env{{"two", FinSpace::discrete({"a", "b"})}};
    FunctorPtr f = parse_functor("V . (C(two) * Id)");
    FinSpace x = FinSpace::sierpinski();
    Applied a = apply_functor(f, x, env, Limits{64});
    for (int k = 0; k < a.space().size(); ++k) {
        FValue v = a.value_of(k);
        Json j = fvalue_to_json(v);
        CHECK(a.resolve(fvalue_from_json(j)) == k);
    }
}
