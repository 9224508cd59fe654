#ifndef DISASM_MOGA_HPP
#define DISASM_MOGA_HPP

#include <cstdint>
#include <functional>
#include <vector>

#include <disasm/errors.hpp>
#include <disasm/rng.hpp>

namespace disasm {

// Minimization convention; every component normalized into [0,1] by the
// problem before it reaches the engine.
using ObjectiveVector = std::vector<double>;

struct GaConfig {
    int population_size = 100;
    int generations = 200;
    double crossover_rate = 0.9;
    double mutation_rate = 0.1;
    int reference_divisions = 4;
    std::uint64_t rng_seed = 0;
};

// Chromosomes are int vectors: permutations for sequences, {1,2} assignments
// for arms. The problem supplies semantics.
using Genome = std::vector<int>;

struct GaProblem {
    // Must yield at least one feasible genome or evolve throws NoFeasibleStart.
    std::function<std::vector<Genome>(std::uint64_t seed, int count)> initialize;
    std::function<ObjectiveVector(const Genome&)> evaluate;
    std::function<bool(const Genome&)> feasible;
    std::function<Genome(const Genome&, const Genome&, Rng&)> crossover;
    std::function<Genome(const Genome&, Rng&)> mutate;
};

struct GaTracePoint {
    int generation = 0;
    double best_scalar = 0.0;               // min mean of objectives in the population
    ObjectiveVector best_objectives;        // componentwise minimum
};

struct GaResult {
    std::vector<Genome> population;
    std::vector<ObjectiveVector> objectives;
    std::vector<std::size_t> front;  // indices of the final non-dominated set
    std::vector<GaTracePoint> trace; // generations 0..G
};

// true iff a dominates b (a <= b componentwise, strictly better somewhere).
bool dominates(const ObjectiveVector& a, const ObjectiveVector& b);

double mean_scalar(const ObjectiveVector& v);

// Index of the member minimizing the mean of its objectives; exact ties fall
// back to lexicographic objective order.
std::size_t knee_point(const std::vector<ObjectiveVector>& front);

// Fast non-dominated sort; fronts hold input indices, F1 first.
std::vector<std::vector<std::size_t>> non_dominated_sort(const std::vector<ObjectiveVector>& points);

// Das-Dennis simplex lattice, C(M+p-1, p) directions summing to 1.
std::vector<std::vector<double>> reference_points(int objectives, int divisions);

// NSGA-III environmental selection over a merged population; returns the
// indices of the survivors. Deterministic for a fixed rng state.
std::vector<std::size_t> niching_select(const std::vector<ObjectiveVector>& points,
                                        std::size_t target_size,
                                        const std::vector<std::vector<double>>& refs, Rng& rng);

// OX: keep a[cut1, cut2), fill the rest with b's genes in b order.
Genome order_crossover(const Genome& a, const Genome& b, std::size_t cut1, std::size_t cut2);
Genome order_crossover(const Genome& a, const Genome& b, Rng& rng);
Genome uniform_crossover(const Genome& a, const Genome& b, Rng& rng);

Genome swap_mutation(Genome x, Rng& rng);
// Toggles one arm id between 1 and 2.
Genome flip_mutation(Genome x, Rng& rng);

GaResult evolve(const GaProblem& problem, const GaConfig& config);

}  // namespace disasm

#endif
