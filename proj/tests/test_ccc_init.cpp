#include <doctest.h>

#include <set>
#include <sstream>

#include <disasm/ccc_graph.hpp>
#include <disasm/model_io.hpp>
#include <disasm/sequence_planner.hpp>

#include "test_helpers.hpp"

using namespace disasm;
using disasm::testing::ModelBuilder;
using disasm::testing::fixture_path;

namespace {

AssemblyModel fig3() { return load_model(fixture_path("fig3.json")); }

std::set<int> as_set(const std::vector<int>& v) { return {v.begin(), v.end()}; }

}  // namespace

TEST_CASE("build_graph mirrors the fig3 relations") {
    const AssemblyModel m = fig3();
    const CccGraph g = CccGraph::build(m);
    CHECK(g.base() == 6);
    CHECK(g.node_count() == 7);
    CHECK(g.link_count(LinkTag::Contact) == 2);
    CHECK(g.link_count(LinkTag::Connection) == 8);
    CHECK(g.link_count(LinkTag::Constraint) == 3);
}

TEST_CASE("graph with no constraint entries has zero directed links") {
    ModelBuilder b;
    b.base().regular({10, 0, 0}).regular({20, 0, 0});
    b.contact(1, 2).contact(2, 3);
    const CccGraph g = CccGraph::build(b.finalize());
    CHECK(g.link_count(LinkTag::Constraint) == 0);
}

TEST_CASE("two-part model yields two nodes and one connection link") {
    ModelBuilder b;
    b.base().screw({10, 0, 0});
    b.connection(1, 2);
    const CccGraph g = CccGraph::build(b.finalize());
    CHECK(g.node_count() == 2);
    CHECK(g.link_count(LinkTag::Connection) == 1);
    CHECK(g.link_count(LinkTag::Contact) == 0);
}

TEST_CASE("distance layers: fig3 collapses to one layer") {
    const AssemblyModel m = fig3();
    const auto layers = distance_layers(CccGraph::build(m));
    REQUIRE(layers.size() == 1);
    CHECK(as_set(layers[0]) == std::set<int>{1, 2, 3, 4, 5, 7});
}

TEST_CASE("distance layers: chain orders farthest to nearest") {
    ModelBuilder b;
    b.base().regular({10, 0, 0}).regular({20, 0, 0}).regular({30, 0, 0});
    b.contact(1, 2).contact(2, 3).contact(3, 4);
    const auto layers = distance_layers(CccGraph::build(b.finalize()));
    REQUIRE(layers.size() == 3);
    CHECK(layers[0] == std::vector<int>{4});
    CHECK(layers[1] == std::vector<int>{3});
    CHECK(layers[2] == std::vector<int>{2});
}

TEST_CASE("distance layers: unreachable nodes come first") {
    ModelBuilder b;
    b.base().regular({10, 0, 0});
    // no links at all: node 2 is unreachable
    const auto layers = distance_layers(CccGraph::build(b.finalize()));
    REQUIRE(layers.size() == 1);
    CHECK(layers[0] == std::vector<int>{2});
}

TEST_CASE("constraint_free on fig3, before and after removing the cover") {
    const AssemblyModel m = fig3();
    CccGraph g = CccGraph::build(m);
    CHECK(as_set(constraint_free(g)) == std::set<int>{3, 4, 5});
    g.remove_node(5);
    CHECK(as_set(constraint_free(g)) == std::set<int>{1, 2, 3, 4, 7});
}

TEST_CASE("constraint_free with no constraint links returns all non-base nodes") {
    ModelBuilder b;
    b.base().regular({10, 0, 0}).regular({20, 0, 0});
    b.contact(1, 2).contact(1, 3);
    CHECK(as_set(constraint_free(CccGraph::build(b.finalize()))) == std::set<int>{2, 3});
}

TEST_CASE("collision_free follows the interference tensor") {
    const AssemblyModel m = fig3();
    CccGraph g = CccGraph::build(m);
    const std::vector<int> layer{1, 2, 3, 4, 5, 7};
    CHECK(as_set(collision_free(layer, g, m)) == std::set<int>{3, 4, 5});
    g.remove_node(5);
    CHECK(as_set(collision_free({1, 2, 3, 4, 7}, g, m)) == std::set<int>{1, 2, 3, 4, 7});
}

TEST_CASE("single blocker excludes until removed") {
    ModelBuilder b;
    b.base().regular({10, 0, 0}).regular({10, 0, 10});
    b.contact(1, 2).contact(1, 3);
    b.interference(2, 3, Direction::PosZ);
    const AssemblyModel m = b.finalize();
    CccGraph g = CccGraph::build(m);
    CHECK(as_set(collision_free({2, 3}, g, m)) == std::set<int>{3});
    g.remove_node(3);
    CHECK(as_set(collision_free({2}, g, m)) == std::set<int>{2});
}

TEST_CASE("fig3 initialization respects the removal poset") {
    const AssemblyModel m = fig3();
    for (std::uint64_t seed : {1ull, 7ull, 42ull, 1234ull}) {
        const auto population = initialize_population(m, 8, seed);
        REQUIRE(population.size() == 8);
        for (const auto& chromo : population) {
            const auto removal = chromo.removal_order();
            REQUIRE(removal.size() == 6);
            CHECK((removal[0] == 3 || removal[0] == 4));
            auto pos = [&](int id) {
                return std::find(removal.begin(), removal.end(), id) - removal.begin();
            };
            CHECK(pos(3) < pos(5));
            CHECK(pos(4) < pos(5));
            CHECK(pos(5) < pos(1));
            CHECK(pos(5) < pos(2));
            CHECK(pos(1) < pos(7));
            CHECK(pos(2) < pos(7));
            // stored orientation: order[0] is removed last
            CHECK(chromo.order.front() == 7);
        }
    }
}

TEST_CASE("two-part model always yields the single candidate") {
    ModelBuilder b;
    b.base().screw({10, 0, 0});
    b.connection(1, 2);
    const AssemblyModel m = b.finalize();
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto population = initialize_population(m, 3, seed);
        for (const auto& chromo : population) CHECK(chromo.order == std::vector<int>{2});
    }
}

TEST_CASE("permanently blocked part stalls initialization") {
    ModelBuilder b;
    b.base().regular({10, 0, 0});
    b.contact(1, 2);
    b.interference(2, 1, Direction::PosZ);  // blocked by the base forever
    const AssemblyModel m = b.finalize();
    CHECK_THROWS_AS(initialize_population(m, 1, 5), InitializationStalled);
}

TEST_CASE("all fig3 chromosomes are admissible") {
    const AssemblyModel m = fig3();
    const auto population = initialize_population(m, 50, 99);
    REQUIRE(population.size() == 50);
    for (const auto& chromo : population) {
        const auto verdict = check_order(chromo, m);
        CHECK(verdict.feasible);
        CHECK(verdict.stable);
    }
}

TEST_CASE("initialization is deterministic per seed") {
    const AssemblyModel m = fig3();
    const auto a = initialize_population(m, 20, 31337);
    const auto b = initialize_population(m, 20, 31337);
    const auto c = initialize_population(m, 20, 31338);
    REQUIRE(a.size() == b.size());
    bool all_equal = true;
    for (std::size_t i = 0; i < a.size(); ++i) all_equal &= a[i].order == b[i].order;
    CHECK(all_equal);
    bool any_diff = false;
    for (std::size_t i = 0; i < a.size(); ++i) any_diff |= a[i].order != c[i].order;
    CHECK(any_diff);
}

TEST_CASE("chromosomes are permutations and fasteners precede their parts") {
    const AssemblyModel m = fig3();
    for (const auto& chromo : initialize_population(m, 30, 555)) {
        const auto removal = chromo.removal_order();
        std::set<int> ids(removal.begin(), removal.end());
        CHECK(ids == std::set<int>{1, 2, 3, 4, 5, 7});
        // fastener precedence via the replay oracle
        const auto [feasible, stable] = disasm::testing::replay_oracle(removal, m);
        CHECK(feasible);
        CHECK(stable);
    }
}

TEST_CASE("dot dump lists nodes with kinds and tagged links") {
    const AssemblyModel m = fig3();
    std::ostringstream os;
    dump_dot(CccGraph::build(m), m, os);
    const std::string dot = os.str();
    CHECK(dot.find("p6 [kind=\"base\"]") != std::string::npos);
    CHECK(dot.find("tag=\"constraint\"") != std::string::npos);
    CHECK(dot.find("tag=\"contact\"") != std::string::npos);
    CHECK(dot.find("tag=\"connection\"") != std::string::npos);
}
