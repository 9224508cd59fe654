#include <disasm/sequence_planner.hpp>

#include <algorithm>
#include <deque>
#include <numeric>

namespace disasm {

namespace {

void require_permutation(const SequenceChromosome& order, const AssemblyModel& model) {
    if (static_cast<int>(order.order.size()) != model.eta - 1)
        throw Error("order length must be eta - 1");
    std::vector<char> seen(static_cast<std::size_t>(model.eta) + 1, 0);
    for (int id : order.order) {
        if (id < 1 || id > model.eta || id == model.base_id || seen[static_cast<std::size_t>(id)])
            throw Error("order is not a permutation of non-base part ids");
        seen[static_cast<std::size_t>(id)] = 1;
    }
}

bool base_connected(const AssemblyModel& model, const std::vector<char>& present) {
    // BFS over the remaining contact+connection skeleton.
    std::vector<char> visited(static_cast<std::size_t>(model.eta) + 1, 0);
    std::deque<int> q{model.base_id};
    visited[static_cast<std::size_t>(model.base_id)] = 1;
    int reached = 1;
    while (!q.empty()) {
        const int u = q.front();
        q.pop_front();
        for (int v = 1; v <= model.eta; ++v) {
            if (!present[static_cast<std::size_t>(v)] || visited[static_cast<std::size_t>(v)])
                continue;
            if (model.relations.contact(u, v) || model.relations.connection(u, v)) {
                visited[static_cast<std::size_t>(v)] = 1;
                q.push_back(v);
                ++reached;
            }
        }
    }
    int present_count = 0;
    for (int v = 1; v <= model.eta; ++v) present_count += present[static_cast<std::size_t>(v)];
    return reached == present_count;
}

}  // namespace

FeasibilityVerdict check_order(const SequenceChromosome& order, const AssemblyModel& model) {
    require_permutation(order, model);
    FeasibilityVerdict verdict;
    verdict.feasible = true;
    verdict.stable = true;

    const auto removal = order.removal_order();
    std::vector<char> present(static_cast<std::size_t>(model.eta) + 1, 1);
    present[0] = 0;

    auto violate = [&](int step, const std::string& why) {
        if (!verdict.first_violation) verdict.first_violation = {step, why};
    };

    for (int step = 0; step < static_cast<int>(removal.size()); ++step) {
        const int u = removal[static_cast<std::size_t>(step)];

        if (verdict.feasible) {
            for (int v = 1; v <= model.eta && verdict.feasible; ++v) {
                if (!present[static_cast<std::size_t>(v)] || v == u) continue;
                if (model.relations.constraint(v, u)) {
                    verdict.feasible = false;
                    violate(step, "constraint predecessor " + std::to_string(v) + " still present");
                }
            }
        }
        if (verdict.feasible && !model.fastener(u)) {
            for (int v = 1; v <= model.eta && verdict.feasible; ++v) {
                if (!present[static_cast<std::size_t>(v)] || v == u) continue;
                if (model.relations.connection(u, v) && model.fastener(v)) {
                    verdict.feasible = false;
                    violate(step, "fastener " + std::to_string(v) + " still attached");
                }
            }
        }
        if (verdict.feasible) {
            bool has_dir = false;
            for (Direction d : model.part(u).geometry.removal_directions) {
                bool blocked = false;
                for (int v = 1; v <= model.eta; ++v) {
                    if (v != u && present[static_cast<std::size_t>(v)] &&
                        model.relations.interference(u, v, d)) {
                        blocked = true;
                        break;
                    }
                }
                if (!blocked) {
                    has_dir = true;
                    break;
                }
            }
            if (!has_dir) {
                verdict.feasible = false;
                violate(step, "no collision-free removal direction");
            }
        }

        present[static_cast<std::size_t>(u)] = 0;
        if (verdict.stable && !base_connected(model, present)) {
            verdict.stable = false;
            violate(step, "remaining parts disconnected from base");
        }
    }
    return verdict;
}

bool check_feasible(const SequenceChromosome& order, const AssemblyModel& model) {
    return check_order(order, model).feasible;
}

bool check_stable(const SequenceChromosome& order, const AssemblyModel& model) {
    return check_order(order, model).stable;
}

std::vector<Direction> chosen_directions(const std::vector<int>& removal_order,
                                         const AssemblyModel& model) {
    std::vector<char> present(static_cast<std::size_t>(model.eta) + 1, 1);
    std::vector<Direction> dirs;
    dirs.reserve(removal_order.size());
    for (int u : removal_order) {
        Direction chosen = model.part(u).geometry.removal_directions.front();
        for (Direction d : model.part(u).geometry.removal_directions) {
            bool blocked = false;
            for (int v = 1; v <= model.eta; ++v) {
                if (v != u && present[static_cast<std::size_t>(v)] &&
                    model.relations.interference(u, v, d)) {
                    blocked = true;
                    break;
                }
            }
            if (!blocked) {
                chosen = d;
                break;
            }
        }
        dirs.push_back(chosen);
        present[static_cast<std::size_t>(u)] = 0;
    }
    return dirs;
}

ObjectiveVector eval_sequence(const SequenceChromosome& order, const std::vector<int>& arms,
                              const AssemblyModel& model) {
    const auto verdict = check_order(order, model);
    if (!verdict.admissible())
        throw NotAdmissible("sequence is not admissible: " +
                            (verdict.first_violation ? verdict.first_violation->second
                                                     : std::string("unknown")));

    const auto removal = order.removal_order();
    const double pairs = std::max(model.eta - 2, 1);

    const auto dirs = chosen_directions(removal, model);
    int transitions = 0;
    double travel = 0.0;
    for (std::size_t i = 0; i + 1 < removal.size(); ++i) {
        if (dirs[i] != dirs[i + 1]) ++transitions;
        travel += distance(model.com(removal[i]), model.com(removal[i + 1]));
    }
    const double f_difficulty = static_cast<double>(transitions) / pairs;
    const double f_efficiency = travel / (pairs * model.max_com_distance);

    double f_priority = 0.0;
    if (!model.recovery_targets.empty()) {
        double sum = 0.0;
        for (int t : model.recovery_targets) {
            const auto it = std::find(removal.begin(), removal.end(), t);
            sum += static_cast<double>(it - removal.begin());
        }
        f_priority = sum / static_cast<double>(model.recovery_targets.size()) /
                     static_cast<double>(model.eta - 1);
    }

    const auto task_obj = eval_assignment(removal, arms, model);
    const double f_allocation = mean_scalar(task_obj);

    return {f_difficulty, f_efficiency, f_priority, f_allocation};
}

std::vector<int> best_assignment(const std::vector<int>& removal_order, const AssemblyModel& model,
                                 const ArmCapability& capability, const GaConfig& inner,
                                 std::uint64_t seed) {
    GaConfig cfg = inner;
    cfg.rng_seed = seed;
    const auto result = plan_tasks(removal_order, model, cfg, capability);
    return result.best.arms;
}

SequencePlanResult plan_sequence(const AssemblyModel& model, const SequencePlannerConfig& config) {
    GaProblem problem;
    problem.initialize = [&](std::uint64_t seed, int count) {
        std::vector<Genome> genomes;
        for (auto& chromo : initialize_population(model, count, seed))
            genomes.push_back(std::move(chromo.order));
        return genomes;
    };
    problem.feasible = [&](const Genome& g) {
        return check_order(SequenceChromosome{g}, model).admissible();
    };
    problem.evaluate = [&](const Genome& g) {
        const SequenceChromosome chromo{g};
        const auto removal = chromo.removal_order();
        // Chromosome-derived inner seed keeps evaluation a pure function of
        // the order, independent of evaluation scheduling.
        const auto arms = best_assignment(removal, model, config.capability, config.inner_task_ga,
                                          mix64(config.ga.rng_seed, hash_ints(removal)));
        return eval_sequence(chromo, arms, model);
    };
    problem.crossover = [](const Genome& a, const Genome& b, Rng& rng) {
        return order_crossover(a, b, rng);
    };
    problem.mutate = [](const Genome& g, Rng& rng) { return swap_mutation(g, rng); };

    const GaResult ga = evolve(problem, config.ga);

    SequencePlanResult result;
    result.trace = ga.trace;
    for (std::size_t i : ga.front) {
        result.front.push_back(SequenceChromosome{ga.population[i]});
        result.front_objectives.push_back(ga.objectives[i]);
    }
    // Deduplicate repeated genomes so the emitted front is a set.
    {
        std::vector<std::size_t> keep;
        for (std::size_t i = 0; i < result.front.size(); ++i) {
            bool dup = false;
            for (std::size_t j : keep)
                if (result.front[j].order == result.front[i].order) dup = true;
            if (!dup) keep.push_back(i);
        }
        SequencePlanResult dedup;
        dedup.trace = std::move(result.trace);
        for (std::size_t i : keep) {
            dedup.front.push_back(std::move(result.front[i]));
            dedup.front_objectives.push_back(std::move(result.front_objectives[i]));
        }
        result = std::move(dedup);
    }

    std::size_t best = knee_point(result.front_objectives);
    // Break exact objective ties on the genome for a reproducible pick.
    for (std::size_t i = 0; i < result.front.size(); ++i) {
        if (result.front_objectives[i] == result.front_objectives[best] &&
            result.front[i].order < result.front[best].order)
            best = i;
    }
    result.best = result.front[best];
    return result;
}

}  // namespace disasm
