#include <doctest.h>

#include <algorithm>
#include <set>

#include <disasm/moga.hpp>

using namespace disasm;

namespace {

// O(n^2 M) pairwise-domination oracle: rank = longest domination chain depth.
std::vector<std::vector<std::size_t>> brute_force_fronts(
    const std::vector<ObjectiveVector>& points) {
    const std::size_t n = points.size();
    std::vector<int> rank(n, 0);
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = 0; q < n; ++q) {
                if (p == q || !dominates(points[q], points[p])) continue;
                if (rank[p] < rank[q] + 1) {
                    rank[p] = rank[q] + 1;
                    changed = true;
                }
            }
        }
    }
    const int max_rank = *std::max_element(rank.begin(), rank.end());
    std::vector<std::vector<std::size_t>> fronts(static_cast<std::size_t>(max_rank) + 1);
    for (std::size_t p = 0; p < n; ++p) fronts[static_cast<std::size_t>(rank[p])].push_back(p);
    return fronts;
}

std::vector<ObjectiveVector> random_points(Rng& rng, std::size_t n, std::size_t m) {
    std::vector<ObjectiveVector> points(n, ObjectiveVector(m));
    for (auto& p : points)
        for (auto& v : p) v = rand_real01(rng);
    return points;
}

std::uint64_t binom(int n, int k) {
    std::uint64_t r = 1;
    for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / i;
    return r;
}

}  // namespace

TEST_CASE("non_dominated_sort on the worked examples") {
    const std::vector<ObjectiveVector> a{{1, 1}, {1, 2}, {2, 2}};
    const auto fa = non_dominated_sort(a);
    REQUIRE(fa.size() == 2);
    CHECK(fa[0] == std::vector<std::size_t>{0});
    CHECK(fa[1] == std::vector<std::size_t>{1, 2});

    const std::vector<ObjectiveVector> b{{0, 1}, {1, 0}};
    const auto fb = non_dominated_sort(b);
    REQUIRE(fb.size() == 1);
    CHECK(fb[0] == std::vector<std::size_t>{0, 1});
}

TEST_CASE("non_dominated_sort matches the brute-force oracle") {
    Rng rng(2024);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t n = 2 + rand_below(rng, 49);
        const std::size_t m = 2 + rand_below(rng, 3);
        auto points = random_points(rng, n, m);
        // inject duplicates and exact dominations sometimes
        if (n > 4) {
            points[1] = points[0];
            points[2] = points[0];
            points[2][0] += 0.25;
        }
        auto got = non_dominated_sort(points);
        auto want = brute_force_fronts(points);
        REQUIRE(got.size() == want.size());
        for (std::size_t f = 0; f < got.size(); ++f) {
            std::sort(got[f].begin(), got[f].end());
            CHECK(got[f] == want[f]);
        }
    }
}

TEST_CASE("reference point lattice sizes and sums") {
    const auto r22 = reference_points(2, 2);
    REQUIRE(r22.size() == 3);
    CHECK(r22[0] == std::vector<double>{0.0, 1.0});
    CHECK(r22[1] == std::vector<double>{0.5, 0.5});
    CHECK(r22[2] == std::vector<double>{1.0, 0.0});

    CHECK(reference_points(4, 4).size() == 35);
    CHECK(reference_points(3, 1).size() == 3);

    for (int m = 2; m <= 4; ++m) {
        for (int p = 1; p <= 6; ++p) {
            const auto refs = reference_points(m, p);
            CHECK(refs.size() == binom(m + p - 1, p));
            for (const auto& r : refs) {
                double sum = 0.0;
                for (double v : r) sum += v;
                CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("niching keeps everything when sizes match") {
    Rng rng(5);
    const auto points = random_points(rng, 12, 3);
    const auto refs = reference_points(3, 4);
    Rng select_rng(9);
    auto survivors = niching_select(points, 12, refs, select_rng);
    std::sort(survivors.begin(), survivors.end());
    std::vector<std::size_t> all(12);
    for (std::size_t i = 0; i < 12; ++i) all[i] = i;
    CHECK(survivors == all);
}

TEST_CASE("niching fills from the first front when it overflows") {
    // 8 mutually non-dominated points on a line, pick 4.
    std::vector<ObjectiveVector> points;
    for (int i = 0; i < 8; ++i)
        points.push_back({static_cast<double>(i) / 7.0, 1.0 - static_cast<double>(i) / 7.0});
    points.push_back({2.0, 2.0});  // dominated straggler
    const auto refs = reference_points(2, 4);
    Rng rng(3);
    const auto survivors = niching_select(points, 4, refs, rng);
    CHECK(survivors.size() == 4);
    for (std::size_t i : survivors) CHECK(i < 8);  // straggler never selected
}

TEST_CASE("niching selection is reproducible for a fixed seed") {
    Rng rng(77);
    const auto points = random_points(rng, 40, 3);
    const auto refs = reference_points(3, 4);
    Rng r1(123), r2(123);
    CHECK(niching_select(points, 15, refs, r1) == niching_select(points, 15, refs, r2));
}

TEST_CASE("order crossover worked example and closure") {
    const Genome a{1, 2, 3, 4, 5};
    const Genome b{5, 4, 3, 2, 1};
    CHECK(order_crossover(a, b, 1, 3) == Genome{5, 2, 3, 4, 1});
    CHECK(order_crossover(a, a, 0, 2) == a);
    CHECK(order_crossover(a, a, 2, 5) == a);

    Rng rng(41);
    Genome p(9);
    for (int i = 0; i < 9; ++i) p[static_cast<std::size_t>(i)] = i + 1;
    Genome q = p;
    for (int trial = 0; trial < 200; ++trial) {
        shuffle_vec(p, rng);
        shuffle_vec(q, rng);
        const Genome child = order_crossover(p, q, rng);
        Genome sorted = child;
        std::sort(sorted.begin(), sorted.end());
        CHECK(sorted == Genome{1, 2, 3, 4, 5, 6, 7, 8, 9});
    }
}

TEST_CASE("mutations preserve validity") {
    Rng rng(13);
    Genome x{1, 2, 3};
    // force positions by scanning outputs
    bool saw_reversal = false;
    for (int i = 0; i < 100; ++i) {
        const Genome y = swap_mutation(x, rng);
        Genome sorted = y;
        std::sort(sorted.begin(), sorted.end());
        CHECK(sorted == Genome{1, 2, 3});
        if (y == Genome{3, 2, 1}) saw_reversal = true;
    }
    CHECK(saw_reversal);

    const Genome arms{1, 1, 2};
    for (int i = 0; i < 50; ++i) {
        const Genome y = flip_mutation(arms, rng);
        int diff = 0;
        for (std::size_t j = 0; j < arms.size(); ++j) {
            CHECK((y[j] == 1 || y[j] == 2));
            diff += y[j] != arms[j] ? 1 : 0;
        }
        CHECK(diff == 1);
    }
}

namespace {

// Minimization of |x - target| per coordinate over permutations: a tiny
// 2-objective toy problem exercising the full evolve loop.
GaProblem toy_problem() {
    GaProblem p;
    p.initialize = [](std::uint64_t seed, int count) {
        Rng rng(seed);
        std::vector<Genome> pop;
        for (int i = 0; i < count; ++i) {
            Genome g(8);
            for (int j = 0; j < 8; ++j) g[static_cast<std::size_t>(j)] = j + 1;
            shuffle_vec(g, rng);
            pop.push_back(std::move(g));
        }
        return pop;
    };
    p.evaluate = [](const Genome& g) {
        double asc = 0.0, head = 0.0;
        for (std::size_t i = 0; i + 1 < g.size(); ++i)
            if (g[i] > g[i + 1]) asc += 1.0;
        head = std::abs(g.front() - 4) / 7.0;
        return ObjectiveVector{asc / 7.0, head};
    };
    p.feasible = [](const Genome& g) { return !g.empty(); };
    p.crossover = [](const Genome& a, const Genome& b, Rng& rng) {
        return order_crossover(a, b, rng);
    };
    p.mutate = [](const Genome& g, Rng& rng) { return swap_mutation(g, rng); };
    return p;
}

}  // namespace

TEST_CASE("evolve with zero generations returns the initial population") {
    GaConfig cfg;
    cfg.population_size = 10;
    cfg.generations = 0;
    cfg.rng_seed = 5;
    const auto result = evolve(toy_problem(), cfg);
    CHECK(result.population.size() == 10);
    REQUIRE(result.trace.size() == 1);
    CHECK(result.trace[0].generation == 0);
}

TEST_CASE("evolve never worsens the best scalar and is seed-deterministic") {
    GaConfig cfg;
    cfg.population_size = 20;
    cfg.generations = 30;
    cfg.reference_divisions = 6;
    cfg.rng_seed = 17;
    const auto a = evolve(toy_problem(), cfg);
    REQUIRE(a.trace.size() == 31);
    for (std::size_t g = 1; g < a.trace.size(); ++g)
        CHECK(a.trace[g].best_scalar <= a.trace[g - 1].best_scalar + 1e-12);
    CHECK(a.trace.back().best_scalar < a.trace.front().best_scalar);

    const auto b = evolve(toy_problem(), cfg);
    REQUIRE(b.trace.size() == a.trace.size());
    for (std::size_t g = 0; g < a.trace.size(); ++g) {
        CHECK(a.trace[g].best_scalar == b.trace[g].best_scalar);
        CHECK(a.trace[g].best_objectives == b.trace[g].best_objectives);
    }
    CHECK(a.population == b.population);
}

TEST_CASE("evolve raises NoFeasibleStart when nothing is feasible") {
    GaProblem p = toy_problem();
    p.feasible = [](const Genome&) { return false; };
    GaConfig cfg;
    cfg.population_size = 6;
    cfg.generations = 1;
    CHECK_THROWS_AS(evolve(p, cfg), NoFeasibleStart);
}

TEST_CASE("knee point picks the minimal mean with lexicographic ties") {
    CHECK(knee_point({{0.5, 0.5}, {0.2, 0.9}, {0.9, 0.0}}) == 2);
    CHECK(knee_point({{0.4, 0.2}, {0.2, 0.4}, {0.3, 0.3}}) == 1);
}
