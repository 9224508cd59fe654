#include <disasm/scheduler.hpp>

#include <algorithm>
#include <chrono>
#include <limits>
#include <optional>

namespace disasm {

const char* to_string(Resource r) {
    switch (r) {
        case Resource::Arm1S1: return "Arm1_S1";
        case Resource::Arm2S1: return "Arm2_S1";
        case Resource::ExternalAxisS2: return "ExternalAxis_S2";
        case Resource::Arm1S3: return "Arm1_S3";
        case Resource::Arm2S3: return "Arm2_S3";
    }
    return "?";
}

SchedInstance build_jobs(const TaskPlan& task_plan, const MotionPlan& motion_plan,
                         const std::vector<int>& removal_order, bool serialize_stage3) {
    const std::size_t n_jobs = removal_order.size();
    if (task_plan.tasks.size() != n_jobs || motion_plan.tasks.size() != n_jobs)
        throw InconsistentPlan("task plan, motion plan and removal order differ in length");

    std::array<std::size_t, 2> toolchange_cursor{0, 0};
    SchedInstance inst;
    int prev_stage3 = -1;

    for (std::size_t j = 0; j < n_jobs; ++j) {
        const TaskRecord& task = task_plan.tasks[j];
        const MotionTask& motion = motion_plan.tasks[j];
        if (task.part != removal_order[j] || motion.part != removal_order[j])
            throw InconsistentPlan("plans disagree on the part at position " + std::to_string(j));
        const std::size_t arm_idx = static_cast<std::size_t>(task.arm - 1);

        int first = -1, last = -1;
        auto add = [&](int stage, Resource res, std::int64_t dur) {
            if (dur <= 0) throw InconsistentPlan("non-positive duration");
            SchedTask st;
            st.id = static_cast<int>(inst.tasks.size());
            st.job = static_cast<int>(j);
            st.stage = stage;
            st.resource = res;
            st.duration_ms = dur;
            st.part = task.part;
            inst.tasks.push_back(st);
            if (first < 0) first = st.id;
            if (last >= 0) inst.arcs.emplace_back(last, st.id);
            last = st.id;
            return st.id;
        };

        if (task.toolchange_before) {
            const auto& durations = motion_plan.toolchange_durations_ms[arm_idx];
            if (toolchange_cursor[arm_idx] >= durations.size())
                throw InconsistentPlan("motion plan lacks a tool-change duration");
            add(1, task.arm == 1 ? Resource::Arm1S1 : Resource::Arm2S1,
                durations[toolchange_cursor[arm_idx]++]);
        }
        if (motion.pose_adjust_needed)
            add(2, Resource::ExternalAxisS2, motion_plan.pose_adjust_ms);
        const int s3 = add(3, task.arm == 1 ? Resource::Arm1S3 : Resource::Arm2S3,
                           motion.duration_ms);
        if (serialize_stage3 && prev_stage3 >= 0) inst.arcs.emplace_back(prev_stage3, s3);
        prev_stage3 = s3;
    }

    // Unordered no-overlap pairs. Chained stage-3 pairs are already ordered
    // by arcs and need no disjunction.
    const std::size_t n = inst.tasks.size();
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = a + 1; b < n; ++b) {
            const SchedTask& ta = inst.tasks[a];
            const SchedTask& tb = inst.tasks[b];
            const bool same_resource = ta.resource == tb.resource;
            const bool s2_vs_s3 = (ta.stage == 2 && tb.stage == 3) || (ta.stage == 3 && tb.stage == 2);
            const bool s1_vs_s2 = (ta.stage == 1 && tb.stage == 2) || (ta.stage == 2 && tb.stage == 1);
            const bool same_arm_s1_s3 =
                ((ta.stage == 1 && tb.stage == 3) || (ta.stage == 3 && tb.stage == 1)) &&
                ((ta.resource == Resource::Arm1S1 || ta.resource == Resource::Arm1S3) ==
                 (tb.resource == Resource::Arm1S1 || tb.resource == Resource::Arm1S3));
            if (serialize_stage3 && ta.stage == 3 && tb.stage == 3) continue;
            if (same_resource || s2_vs_s3 || s1_vs_s2 || same_arm_s1_s3)
                inst.exclusions.emplace_back(static_cast<int>(a), static_cast<int>(b));
        }
    }
    return inst;
}

namespace {

// Earliest starts by forward critical-path propagation; nullopt on a cycle.
std::optional<std::vector<std::int64_t>> earliest_starts(
    const SchedInstance& inst, const std::vector<std::pair<int, int>>& extra_arcs) {
    const std::size_t n = inst.tasks.size();
    std::vector<std::vector<int>> out(n);
    std::vector<int> indeg(n, 0);
    auto add_arc = [&](const std::pair<int, int>& arc) {
        out[static_cast<std::size_t>(arc.first)].push_back(arc.second);
        ++indeg[static_cast<std::size_t>(arc.second)];
    };
    for (const auto& arc : inst.arcs) add_arc(arc);
    for (const auto& arc : extra_arcs) add_arc(arc);

    std::vector<std::int64_t> start(n, 0);
    std::vector<int> ready;
    for (std::size_t i = 0; i < n; ++i)
        if (indeg[i] == 0) ready.push_back(static_cast<int>(i));
    std::size_t processed = 0;
    for (std::size_t k = 0; k < ready.size(); ++k) {
        const int u = ready[k];
        ++processed;
        const std::int64_t end = start[static_cast<std::size_t>(u)] +
                                 inst.tasks[static_cast<std::size_t>(u)].duration_ms;
        for (int v : out[static_cast<std::size_t>(u)]) {
            start[static_cast<std::size_t>(v)] = std::max(start[static_cast<std::size_t>(v)], end);
            if (--indeg[static_cast<std::size_t>(v)] == 0) ready.push_back(v);
        }
    }
    if (processed != n) return std::nullopt;
    return start;
}

std::int64_t makespan_of(const SchedInstance& inst, const std::vector<std::int64_t>& starts) {
    std::int64_t m = 0;
    for (std::size_t i = 0; i < inst.tasks.size(); ++i)
        m = std::max(m, starts[i] + inst.tasks[i].duration_ms);
    return m;
}

bool overlap(std::int64_t sa, std::int64_t da, std::int64_t sb, std::int64_t db) {
    return sa < sb + db && sb < sa + da;
}

struct BranchState {
    const SchedInstance& inst;
    std::vector<std::pair<int, int>> oriented;
    std::vector<std::int64_t> best_starts;
    std::int64_t best_makespan = std::numeric_limits<std::int64_t>::max();
    bool have_incumbent = false;
    std::chrono::steady_clock::time_point deadline;
    bool timed_out = false;
    long nodes = 0;
};

// Branch order: the earliest violated pair first, orienting the
// removal-order-earlier task first (job, then stage, then id).
bool task_before(const SchedTask& a, const SchedTask& b) {
    if (a.job != b.job) return a.job < b.job;
    if (a.stage != b.stage) return a.stage < b.stage;
    return a.id < b.id;
}

void branch(BranchState& st) {
    if (st.timed_out) return;
    if ((++st.nodes & 0xff) == 0 && std::chrono::steady_clock::now() > st.deadline) {
        st.timed_out = true;
        return;
    }
    const auto starts = earliest_starts(st.inst, st.oriented);
    if (!starts) return;  // orientation introduced a cycle
    if (makespan_of(st.inst, *starts) >= st.best_makespan && st.have_incumbent) return;

    int violated = -1;
    std::int64_t violated_key = 0;
    for (std::size_t p = 0; p < st.inst.exclusions.size(); ++p) {
        const auto [a, b] = st.inst.exclusions[p];
        const auto& ta = st.inst.tasks[static_cast<std::size_t>(a)];
        const auto& tb = st.inst.tasks[static_cast<std::size_t>(b)];
        if (!overlap((*starts)[static_cast<std::size_t>(a)], ta.duration_ms,
                     (*starts)[static_cast<std::size_t>(b)], tb.duration_ms))
            continue;
        const std::int64_t key = std::min((*starts)[static_cast<std::size_t>(a)],
                                          (*starts)[static_cast<std::size_t>(b)]);
        if (violated < 0 || key < violated_key) {
            violated = static_cast<int>(p);
            violated_key = key;
        }
    }
    if (violated < 0) {
        const std::int64_t m = makespan_of(st.inst, *starts);
        if (!st.have_incumbent || m < st.best_makespan) {
            st.best_makespan = m;
            st.best_starts = *starts;
            st.have_incumbent = true;
        }
        return;
    }

    const auto [a, b] = st.inst.exclusions[static_cast<std::size_t>(violated)];
    const bool a_first = task_before(st.inst.tasks[static_cast<std::size_t>(a)],
                                     st.inst.tasks[static_cast<std::size_t>(b)]);
    const std::pair<int, int> preferred = a_first ? std::make_pair(a, b) : std::make_pair(b, a);
    const std::pair<int, int> other = a_first ? std::make_pair(b, a) : std::make_pair(a, b);

    st.oriented.push_back(preferred);
    branch(st);
    st.oriented.back() = other;
    branch(st);
    st.oriented.pop_back();
}

}  // namespace

Schedule solve(const SchedInstance& inst, const SolveOptions& options) {
    if (inst.tasks.empty()) return Schedule{{}, 0, true};
    if (!earliest_starts(inst, {})) throw CyclicPrecedence("precedence arcs contain a cycle");

    BranchState st{inst, {}, {}, std::numeric_limits<std::int64_t>::max(), false,
                   std::chrono::steady_clock::now() + std::chrono::milliseconds(options.timeout_ms),
                   false, 0};
    branch(st);

    if (!st.have_incumbent) {
        // Timed out before any leaf: fall back to the serial schedule over a
        // topological order, which satisfies every disjunction trivially.
        std::vector<int> topo;
        {
            auto starts = earliest_starts(inst, {});
            topo.resize(inst.tasks.size());
            for (std::size_t i = 0; i < topo.size(); ++i) topo[i] = static_cast<int>(i);
            std::sort(topo.begin(), topo.end(), [&](int x, int y) {
                const auto sx = (*starts)[static_cast<std::size_t>(x)];
                const auto sy = (*starts)[static_cast<std::size_t>(y)];
                if (sx != sy) return sx < sy;
                return x < y;
            });
        }
        std::int64_t t = 0;
        st.best_starts.assign(inst.tasks.size(), 0);
        for (int id : topo) {
            st.best_starts[static_cast<std::size_t>(id)] = t;
            t += inst.tasks[static_cast<std::size_t>(id)].duration_ms;
        }
        st.best_makespan = t;
    }

    Schedule result;
    result.starts_ms = st.best_starts;
    result.makespan_ms = st.best_makespan;
    result.optimal = !st.timed_out;
    return result;
}

Schedule oracle_solve(const SchedInstance& inst, std::int64_t horizon_ms) {
    if (inst.tasks.size() > 6)
        throw TooLarge("oracle_solve accepts at most 6 tasks, got " +
                       std::to_string(inst.tasks.size()));
    if (inst.tasks.empty()) return Schedule{{}, 0, true};
    if (!earliest_starts(inst, {})) throw CyclicPrecedence("precedence arcs contain a cycle");

    const std::size_t p = inst.exclusions.size();
    Schedule best;
    bool found = false;
    for (std::uint64_t mask = 0; mask < (1ull << p); ++mask) {
        std::vector<std::pair<int, int>> arcs;
        arcs.reserve(p);
        for (std::size_t i = 0; i < p; ++i) {
            const auto [a, b] = inst.exclusions[i];
            arcs.emplace_back(mask & (1ull << i) ? std::make_pair(b, a) : std::make_pair(a, b));
        }
        const auto starts = earliest_starts(inst, arcs);
        if (!starts) continue;
        const std::int64_t m = makespan_of(inst, *starts);
        if (m > horizon_ms) continue;
        if (!found || m < best.makespan_ms) {
            best.starts_ms = *starts;
            best.makespan_ms = m;
            found = true;
        }
    }
    if (!found) throw Error("no schedule within the horizon");
    best.optimal = true;
    return best;
}

bool validate_schedule(const SchedInstance& inst, const Schedule& schedule, std::string* why) {
    auto fail = [&](const std::string& reason) {
        if (why) *why = reason;
        return false;
    };
    if (schedule.starts_ms.size() != inst.tasks.size()) return fail("size mismatch");
    std::int64_t makespan = 0;
    for (std::size_t i = 0; i < inst.tasks.size(); ++i) {
        if (schedule.starts_ms[i] < 0) return fail("negative start");
        makespan = std::max(makespan, schedule.starts_ms[i] + inst.tasks[i].duration_ms);
    }
    if (makespan != schedule.makespan_ms) return fail("makespan does not match max completion");
    for (const auto& [a, b] : inst.arcs) {
        if (schedule.starts_ms[static_cast<std::size_t>(a)] +
                inst.tasks[static_cast<std::size_t>(a)].duration_ms >
            schedule.starts_ms[static_cast<std::size_t>(b)])
            return fail("arc " + std::to_string(a) + "->" + std::to_string(b) + " violated");
    }
    for (const auto& [a, b] : inst.exclusions) {
        if (overlap(schedule.starts_ms[static_cast<std::size_t>(a)],
                    inst.tasks[static_cast<std::size_t>(a)].duration_ms,
                    schedule.starts_ms[static_cast<std::size_t>(b)],
                    inst.tasks[static_cast<std::size_t>(b)].duration_ms))
            return fail("exclusion " + std::to_string(a) + "," + std::to_string(b) + " overlaps");
    }
    for (std::size_t a = 0; a < inst.tasks.size(); ++a) {
        for (std::size_t b = a + 1; b < inst.tasks.size(); ++b) {
            if (inst.tasks[a].resource != inst.tasks[b].resource) continue;
            if (overlap(schedule.starts_ms[a], inst.tasks[a].duration_ms, schedule.starts_ms[b],
                        inst.tasks[b].duration_ms))
                return fail("resource overlap between " + std::to_string(a) + " and " +
                            std::to_string(b));
        }
    }
    return true;
}

}  // namespace disasm
