#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "metricgroup/errors.hpp"
#include "metricgroup/serialize.hpp"

using namespace mg;

TEST_CASE("group literals") {
    CHECK(parse_group_literal("2,4") == FinAbGroup({2, 4}));
    CHECK(parse_group_literal("6") == FinAbGroup({6}));
    CHECK(parse_group_literal("1") == FinAbGroup(std::vector<long long>{}));
    CHECK(parse_group_literal("1,3,1") == FinAbGroup({3}));

    CHECK_THROWS_AS(parse_group_literal(""), Error);
    CHECK_THROWS_AS(parse_group_literal("2,,4"), Error);
    CHECK_THROWS_AS(parse_group_literal("0"), Error);
    CHECK_THROWS_AS(parse_group_literal("-2"), Error);
    CHECK_THROWS_AS(parse_group_literal("2x"), Error);
    CHECK_THROWS_AS(parse_group_literal("two"), Error);
}

TEST_CASE("group json round trip") {
    std::vector<FinAbGroup> groups = {FinAbGroup(std::vector<long long>{}), FinAbGroup({2}),
                                      FinAbGroup({2, 4}), FinAbGroup({3, 3, 9})};
    for (const auto& g : groups) {
        Json j = group_to_json(g);
        CHECK(group_from_json(j) == g);
    }
    CHECK(group_to_json(FinAbGroup({2, 4})).dump() == "[2,4]");
    CHECK_THROWS_AS(group_from_json(Json::parse("{\"a\":1}")), Error);
    CHECK_THROWS_AS(group_from_json(Json::parse("[2,\"4\"]")), Error);
    // FinAbGroup itself rejects factors below 2
    CHECK_THROWS_AS(group_from_json(Json::parse("[2,0]")), Error);
}

TEST_CASE("form json round trip") {
    std::vector<QuadraticForm> forms = {
        zero_form(FinAbGroup({2, 2})),
        cyclic_q(4, QmodZ(1, 8)),
        standard_u(2),
        standard_v(1),
        direct_sum(cyclic_q(3, QmodZ(1, 3)), standard_u(1)),
    };
    for (const QuadraticForm& q : forms) {
        Json j = form_to_json(q);
        QuadraticForm back = form_from_json(j);
        CHECK(back == q);
        // serialization is canonical: same object, same bytes
        CHECK(form_to_json(back).dump() == j.dump());
    }

    QuadraticForm q14 = form_from_json(Json::parse(
        R"({"group":[4],"diag":["1/8"],"cross":[["0"]]})"));
    CHECK(q14 == cyclic_q(4, QmodZ(1, 8)));

    CHECK_THROWS_AS(form_from_json(Json::parse(R"({"group":[4],"diag":["1/8"]})")), Error);
    CHECK_THROWS_AS(form_from_json(Json::parse(
                        R"({"group":[4],"diag":["1/8","0"],"cross":[["0"]]})")),
                    Error);
    CHECK_THROWS_AS(form_from_json(Json::parse(
                        R"({"group":[4],"diag":["1/8"],"cross":[["0","0"]]})")),
                    Error);
    // make_form validation still applies: 1/3 is not a form value on Z_2
    CHECK_THROWS_AS(form_from_json(Json::parse(
                        R"({"group":[2],"diag":["1/3"],"cross":[["0"]]})")),
                    Error);
    CHECK_THROWS_AS(form_from_json(Json::parse(
                        R"({"group":[2],"diag":[8],"cross":[["0"]]})")),
                    Error);
}

TEST_CASE("lattice json round trip") {
    for (const char* name : {"A1", "E7", "E8", "D16"}) {
        EvenLattice l = catalog_lattice(name);
        Json j = lattice_to_json(l);
        EvenLattice back = lattice_from_json(j);
        CHECK(back.name == l.name);
        CHECK(back.gram == l.gram);
    }

    EvenLattice anon = lattice_from_json(Json::parse(R"({"gram":[[2]]})"));
    CHECK(anon.gram.at(0, 0) == 2);

    CHECK_THROWS_AS(lattice_from_json(Json::parse(R"({"name":"x"})")), Error);
    CHECK_THROWS_AS(lattice_from_json(Json::parse(R"({"gram":[[2,0]]})")), Error);
    CHECK_THROWS_AS(lattice_from_json(Json::parse(R"({"gram":[]})")), Error);
    // odd diagonal caught by make_lattice
    CHECK_THROWS_AS(lattice_from_json(Json::parse(R"({"gram":[[1]]})")), Error);
}

TEST_CASE("triple json round trip") {
    std::vector<GlueTriple> triples = {identity_triple(FinAbGroup({2}))};
    for (const GlueTriple& c : enumerate_Q(FinAbGroup({3})).classes) triples.push_back(c);

    for (const GlueTriple& t : triples) {
        Json j = triple_to_json(t);
        GlueTriple back = triple_from_json(j);
        CHECK(back.G == t.G);
        CHECK(back.q == t.q);
        CHECK(back.i.images == t.i.images);
        CHECK(validate(back));
        CHECK(triple_to_json(back).dump() == j.dump());
    }

    Json j = triple_to_json(identity_triple(FinAbGroup({2})));
    CHECK(j.contains("Gamma"));
    j["Gamma"] = Json::array({3});
    CHECK_THROWS_AS(triple_from_json(j), Error);

    Json missing = triple_to_json(identity_triple(FinAbGroup({2})));
    missing.erase("i");
    CHECK_THROWS_AS(triple_from_json(missing), Error);

    Json shortim = triple_to_json(identity_triple(FinAbGroup({2})));
    shortim["i"] = Json::array();
    CHECK_THROWS_AS(triple_from_json(shortim), Error);
}

TEST_CASE("triple json reduces embedding coordinates") {
    Json j = triple_to_json(identity_triple(FinAbGroup({2})));
    j["i"][0][0] = 3; // same class mod 2
    GlueTriple t = triple_from_json(j);
    CHECK(t.i.images[0] == Vec{1, 0});
}

TEST_CASE("cocycle json round trip") {
    std::vector<Cocycle3> ws = {
        zero_cocycle(FinAbGroup({2, 2})),
        standard_cyclic_cocycle(4, 1),
        volume_cocycle_z2cube(),
    };
    for (const Cocycle3& w : ws) {
        Json j = cocycle_to_json(w);
        Cocycle3 back = cocycle_from_json(j);
        CHECK(back.group == w.group);
        CHECK(back.values == w.values);
        CHECK(cocycle_to_json(back).dump() == j.dump());
    }

    // sparse: zero entries never serialized
    Json jz = cocycle_to_json(zero_cocycle(FinAbGroup({4})));
    CHECK(jz["values"].empty());
    Json jv = cocycle_to_json(volume_cocycle_z2cube());
    for (const Json& e : jv["values"]) CHECK(e[3].get<std::string>() != "0");

    // omitted values field means the zero cocycle
    Cocycle3 z = cocycle_from_json(Json::parse(R"({"group":[3]})"));
    CHECK(z.values == zero_cocycle(FinAbGroup({3})).values);

    CHECK_THROWS_AS(cocycle_from_json(Json::parse(R"({"values":[]})")), Error);
    CHECK_THROWS_AS(cocycle_from_json(Json::parse(
                        R"({"group":[2],"values":[[0,0,"1/2"]]})")),
                    Error);
    CHECK_THROWS_AS(cocycle_from_json(Json::parse(
                        R"({"group":[2],"values":[[0,0,2,"1/2"]]})")),
                    Error);
    CHECK_THROWS_AS(cocycle_from_json(Json::parse(
                        R"({"group":[2],"values":[[1,1,1,"1/2"],[1,1,1,"1/2"]]})")),
                    Error);
    // non-normalized table rejected by the cocycle constructor
    CHECK_THROWS_AS(cocycle_from_json(Json::parse(
                        R"({"group":[2],"values":[[0,1,1,"1/2"]]})")),
                    Error);
}
