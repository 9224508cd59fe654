#include <doctest.h>

#include <fstream>
#include <sstream>

#include <disasm/model_io.hpp>
#include <disasm/rng.hpp>

#include "test_helpers.hpp"

using namespace disasm;
using disasm::testing::ModelBuilder;
using disasm::testing::fixture_path;

TEST_CASE("fig3 fixture loads with expected structure") {
    const AssemblyModel m = load_model(fixture_path("fig3.json"));
    CHECK(m.eta == 7);
    CHECK(m.base_id == 6);
    int fasteners = 0;
    for (const Part& p : m.parts) fasteners += is_fastener(p.label.kind) ? 1 : 0;
    CHECK(fasteners == 4);
    CHECK(m.part(1).label.tool == Tool::AirDriver);
    CHECK(m.part(5).label.tool == Tool::SuctionGripper);
    CHECK(m.relations.contact(5, 6));
    CHECK(m.relations.contact(6, 7));
    CHECK(m.relations.constraint(5, 1));
    CHECK_FALSE(m.relations.constraint(1, 5));
    CHECK(m.relations.interference(1, 5, Direction::PosZ));
    CHECK_FALSE(m.relations.interference(1, 5, Direction::NegZ));
    CHECK(m.max_com_distance == doctest::Approx(144.22205101855957));
}

TEST_CASE("single-part model is rejected") {
    const char* text = R"({"eta":1,"parts":[{"id":1,"kind":"base","com_mm":[0,0,0]}]})";
    CHECK_THROWS_AS(model_from_json(nlohmann::json::parse(text)), ValidationError);
}

TEST_CASE("cyclic constraints are rejected") {
    ModelBuilder b;
    b.base().regular({10, 0, 0}).regular({0, 10, 0});
    b.contact(1, 2).contact(1, 3).constraint(2, 3).constraint(3, 2);
    CHECK_THROWS_WITH_AS(b.finalize(), "cyclic constraints", ValidationError);
}

TEST_CASE("connection between two fasteners is rejected") {
    ModelBuilder b;
    b.base().screw({10, 0, 0}).screw({0, 10, 0});
    b.connection(2, 3);
    CHECK_THROWS_AS(b.finalize(), ValidationError);
}

TEST_CASE("id gaps and duplicate bases are rejected") {
    nlohmann::json j = nlohmann::json::parse(R"({
        "eta": 3,
        "parts": [
            {"id":1,"kind":"base","com_mm":[0,0,0]},
            {"id":3,"kind":"regular","com_mm":[1,0,0],"removal_dirs":["+Z"],
             "orientations":{"arm1":[0],"arm2":[180]}},
            {"id":3,"kind":"regular","com_mm":[0,1,0],"removal_dirs":["+Z"],
             "orientations":{"arm1":[0],"arm2":[180]}}
        ]})");
    CHECK_THROWS_AS(model_from_json(j), ValidationError);
}

TEST_CASE("malformed json raises ParseError") {
    CHECK_THROWS_AS(load_model(fixture_path("missing.json")), ParseError);
    CHECK_THROWS_AS(model_from_json(nlohmann::json::parse(R"({"eta": "x"})")), ParseError);
    CHECK_THROWS_AS(model_from_json(nlohmann::json::parse(R"({"eta": 2})")), ParseError);
}

TEST_CASE("dense matrices are accepted and must be symmetric") {
    nlohmann::json j = nlohmann::json::parse(R"({
        "eta": 2,
        "parts": [
            {"id":1,"kind":"base","com_mm":[0,0,0]},
            {"id":2,"kind":"regular","com_mm":[5,0,0],"removal_dirs":["+Z"],
             "orientations":{"arm1":[0],"arm2":[180]}}
        ],
        "contact": [[0,1],[1,0]]})");
    const AssemblyModel m = model_from_json(j);
    CHECK(m.relations.contact(1, 2));

    j["contact"] = nlohmann::json::parse("[[0,1],[0,0]]");
    CHECK_THROWS_AS(model_from_json(j), ValidationError);
}

TEST_CASE("save then load round-trips semantically") {
    const AssemblyModel m = load_model(fixture_path("fig3.json"));
    const auto dumped = model_to_json(m);
    std::ifstream in(fixture_path("fig3.json"));
    nlohmann::json original;
    in >> original;
    CHECK(nlohmann::json(dumped) == original);

    const AssemblyModel again = model_from_json(dumped);
    CHECK(nlohmann::json(model_to_json(again)) == nlohmann::json(dumped));
}

TEST_CASE("smallest_rotation follows circular distance with low-angle ties") {
    ModelBuilder b;
    b.base().regular({10, 0, 0});
    b.contact(1, 2);
    b.orientations(2, {0.0, 180.0}, {90.0, 270.0});
    const AssemblyModel m = b.finalize();

    CHECK(smallest_rotation(m, 2, 1, 10.0) == 0.0);     // 10 < 170
    CHECK(smallest_rotation(m, 2, 2, 0.0) == 90.0);     // symmetric tie, smaller wins
    ModelBuilder single;
    single.base().regular({10, 0, 0});
    single.contact(1, 2);
    single.orientations(2, {45.0}, {45.0});
    CHECK(smallest_rotation(single.finalize(), 2, 1, 300.0) == 45.0);

    ModelBuilder empty;
    empty.base().regular({10, 0, 0});
    empty.contact(1, 2);
    auto model = empty.finalize();
    model.parts[1].geometry.handling_orientations[0].clear();
    CHECK_THROWS_AS(smallest_rotation(model, 2, 1, 0.0), NoOrientation);
}

TEST_CASE("smallest_rotation returns a member of the per-arm list") {
    Rng rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> list;
        const int n = 1 + static_cast<int>(rand_below(rng, 5));
        for (int i = 0; i < n; ++i) list.push_back(rand_real01(rng) * 360.0);
        ModelBuilder b;
        b.base().regular({10, 0, 0});
        b.contact(1, 2);
        b.orientations(2, list, list);
        const AssemblyModel m = b.finalize();
        const double angle = smallest_rotation(m, 2, 1, rand_real01(rng) * 360.0);
        CHECK(std::find(list.begin(), list.end(), angle) != list.end());
    }
}

TEST_CASE("angle helpers normalize into [0,360)") {
    CHECK(normalize_angle(-90.0) == 270.0);
    CHECK(normalize_angle(360.0) == 0.0);
    CHECK(normalize_angle(725.0) == doctest::Approx(5.0));
    CHECK(circular_distance(350.0, 10.0) == doctest::Approx(20.0));
}
