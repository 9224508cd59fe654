#include <disasm/task_planner.hpp>

#include <algorithm>

namespace disasm {

ArmCapability ArmCapability::unrestricted(const AssemblyModel& model) {
    ArmCapability cap;
    for (auto& v : cap.can) v.assign(static_cast<std::size_t>(model.eta) + 1, 1);
    return cap;
}

ArmCapability ArmCapability::at_fixed_angle(const AssemblyModel& model, double angle_deg) {
    ArmCapability cap;
    const double angle = normalize_angle(angle_deg);
    for (int arm = 1; arm <= 2; ++arm) {
        auto& v = cap.can[static_cast<std::size_t>(arm - 1)];
        v.assign(static_cast<std::size_t>(model.eta) + 1, 0);
        for (const Part& p : model.parts) {
            if (p.label.kind == PartKind::Base) continue;
            for (double a : p.geometry.handling_orientations[static_cast<std::size_t>(arm - 1)]) {
                if (circular_distance(a, angle) < 1e-9) {
                    v[static_cast<std::size_t>(p.id)] = 1;
                    break;
                }
            }
        }
    }
    return cap;
}

ObjectiveVector eval_assignment(const std::vector<int>& removal_order, const std::vector<int>& arms,
                                const AssemblyModel& model) {
    if (arms.size() != removal_order.size())
        throw LengthMismatch("assignment length does not match task count");
    const std::size_t n = removal_order.size();
    const double eta = static_cast<double>(model.eta);

    // Lost parallelism: a task counts when no adjacent task runs on the other
    // arm, so nothing of its neighborhood can be overlapped.
    int c_parallel = 0;
    for (std::size_t i = 0; i < n; ++i) {
        bool overlappable = false;
        if (i > 0 && arms[i - 1] != arms[i]) overlappable = true;
        if (i + 1 < n && arms[i + 1] != arms[i]) overlappable = true;
        if (!overlappable) ++c_parallel;
    }

    int c_change = 0;
    double travel = 0.0;
    for (int arm = 1; arm <= 2; ++arm) {
        int prev = -1;
        for (std::size_t i = 0; i < n; ++i) {
            if (arms[i] != arm) continue;
            if (prev >= 0) {
                const int prev_part = removal_order[static_cast<std::size_t>(prev)];
                const int part = removal_order[i];
                if (model.part(prev_part).label.tool != model.part(part).label.tool) ++c_change;
                travel += distance(model.com(prev_part), model.com(part));
            }
            prev = static_cast<int>(i);
        }
    }

    return {static_cast<double>(c_parallel) / eta, static_cast<double>(c_change) / (eta - 1.0),
            travel / (eta * model.max_com_distance)};
}

TaskPlan materialize_task_plan(const std::vector<int>& removal_order, const std::vector<int>& arms,
                               const AssemblyModel& model, bool first_mount_counts) {
    if (arms.size() != removal_order.size())
        throw LengthMismatch("assignment length does not match task count");
    TaskPlan plan;
    std::array<std::optional<Tool>, 2> mounted;
    for (std::size_t i = 0; i < removal_order.size(); ++i) {
        TaskRecord rec;
        rec.part = removal_order[i];
        rec.kind = model.part(rec.part).label.task_kind;
        rec.arm = arms[i];
        rec.tool = model.part(rec.part).label.tool;
        auto& current = mounted[static_cast<std::size_t>(rec.arm - 1)];
        rec.toolchange_before = current ? *current != rec.tool : first_mount_counts;
        current = rec.tool;
        plan.tasks.push_back(rec);
    }
    return plan;
}

int tool_change_count(const TaskPlan& plan) {
    int n = 0;
    for (const TaskRecord& t : plan.tasks) n += t.toolchange_before ? 1 : 0;
    return n;
}

TaskPlanResult plan_tasks(const std::vector<int>& removal_order, const AssemblyModel& model,
                          const GaConfig& config, const ArmCapability& capability,
                          bool first_mount_counts) {
    const std::size_t n_tasks = removal_order.size();

    auto feasible = [&](const Genome& g) {
        if (g.size() != n_tasks) return false;
        for (std::size_t i = 0; i < n_tasks; ++i) {
            if (g[i] != 1 && g[i] != 2) return false;
            if (!capability.ok(g[i], removal_order[i])) return false;
        }
        return true;
    };

    GaProblem problem;
    problem.feasible = feasible;
    problem.initialize = [&](std::uint64_t seed, int count) {
        std::vector<Genome> out;
        // Small search spaces are enumerated outright.
        if (n_tasks <= 16 && (1u << n_tasks) <= static_cast<unsigned>(count)) {
            std::vector<Genome> all;
            for (unsigned mask = 0; mask < (1u << n_tasks); ++mask) {
                Genome g(n_tasks);
                for (std::size_t i = 0; i < n_tasks; ++i) g[i] = (mask >> i) & 1u ? 2 : 1;
                if (feasible(g)) all.push_back(std::move(g));
            }
            for (int i = 0; !all.empty() && i < count; ++i)
                out.push_back(all[static_cast<std::size_t>(i) % all.size()]);
            return out;
        }
        Rng rng(mix64(seed, 0x7461736bULL));
        for (int c = 0; c < count; ++c) {
            Genome g(n_tasks);
            bool ok = true;
            for (std::size_t i = 0; i < n_tasks; ++i) {
                const bool a1 = capability.ok(1, removal_order[i]);
                const bool a2 = capability.ok(2, removal_order[i]);
                if (!a1 && !a2) {
                    ok = false;
                    break;
                }
                if (a1 && a2)
                    g[i] = (rng() & 1u) ? 2 : 1;
                else
                    g[i] = a1 ? 1 : 2;
            }
            if (ok) out.push_back(std::move(g));
        }
        return out;
    };
    problem.evaluate = [&](const Genome& g) { return eval_assignment(removal_order, g, model); };
    problem.crossover = [](const Genome& a, const Genome& b, Rng& rng) {
        return uniform_crossover(a, b, rng);
    };
    problem.mutate = [](const Genome& g, Rng& rng) { return flip_mutation(g, rng); };

    const GaResult ga = evolve(problem, config);

    TaskPlanResult result;
    result.trace = ga.trace;
    for (std::size_t i : ga.front) {
        bool dup = false;
        for (const auto& seen : result.front)
            if (seen.arms == ga.population[i]) dup = true;
        if (dup) continue;
        result.front.push_back(AssignmentChromosome{ga.population[i]});
        result.front_objectives.push_back(ga.objectives[i]);
    }

    std::size_t best = knee_point(result.front_objectives);
    for (std::size_t i = 0; i < result.front.size(); ++i) {
        if (result.front_objectives[i] == result.front_objectives[best] &&
            result.front[i].arms < result.front[best].arms)
            best = i;
    }
    result.best = result.front[best];
    result.plan = materialize_task_plan(removal_order, result.best.arms, model, first_mount_counts);
    return result;
}

}  // namespace disasm
