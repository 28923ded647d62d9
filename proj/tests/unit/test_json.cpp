#include <doctest.h>

#include "totreal/json_io.hpp"

using namespace totreal;

TEST_CASE("field element serialization") {
    auto K = NumberField::create(ZPoly({-2, 0, 1}));
    FieldElement x(K, {Rat(1, 2), Rat(-3)});
    json j = to_json(x);
    CHECK(j["minpoly"] == json::array({"-2", "0", "1"}));
    CHECK(j["coords"] == json::array({"1/2", "-3"}));
    // round trip
    FieldElement back = element_from_json(K, j["coords"]);
    CHECK(back == x);
}

TEST_CASE("gexpr serialization") {
    json j = to_json(g_element(1, 5));
    CHECK(j["s"] == 1);
    CHECK(j["n"] == 5);
    CHECK(j["minpoly"] == json::array({"-1", "1", "1"}));
    CHECK(j["repr"] == "g(1/5)");
}

TEST_CASE("witness serialization") {
    LocalWitness w = local_represent(Int(5), PadicInt(Int(5), 3, Int(7)));
    json j = to_json(w);
    CHECK(j["p"] == "5");
    CHECK(j["precision"] == 3);
    CHECK(j["x"] == "4");
}

TEST_CASE("deterministic dumps") {
    auto K = NumberField::create(ZPoly({-3, 0, 1}));
    FieldElement x(K, {Rat(2), Rat(1)});
    std::string a = to_json(x).dump(2);
    std::string b = to_json(x).dump(2);
    CHECK(a == b);
}
