#ifndef DISASM_SCHEDULER_HPP
#define DISASM_SCHEDULER_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <disasm/motion_model.hpp>

namespace disasm {

// Execution resources: per-arm tool change, the rotary stage, per-arm
// disassembly.
enum class Resource { Arm1S1, Arm2S1, ExternalAxisS2, Arm1S3, Arm2S3 };
const char* to_string(Resource r);

struct SchedTask {
    int id = 0;    // equals its index in the instance
    int job = 0;   // removal position, 0-based
    int stage = 3; // 1 tool change, 2 pose adjustment, 3 disassembly
    Resource resource = Resource::Arm1S3;
    std::int64_t duration_ms = 0;
    int part = 0;
};

struct SchedInstance {
    std::vector<SchedTask> tasks;
    std::vector<std::pair<int, int>> arcs;        // a finishes before b starts
    std::vector<std::pair<int, int>> exclusions;  // unordered no-overlap pairs
};

// One job per removed part: optional stage 1 and stage 2, mandatory stage 3.
// Arcs chain stages inside a job and serialize stage 3 in removal order;
// exclusions are S2-vs-S3, S1-vs-S2, same-arm S1-vs-S3 and shared resources.
SchedInstance build_jobs(const TaskPlan& task_plan, const MotionPlan& motion_plan,
                         const std::vector<int>& removal_order,
                         bool serialize_stage3 = true);

struct Schedule {
    std::vector<std::int64_t> starts_ms;  // by task id
    std::int64_t makespan_ms = 0;
    bool optimal = true;
};

struct SolveOptions {
    std::int64_t timeout_ms = 30000;  // wall clock; expiry returns the incumbent
};

// Branch and bound over the unordered exclusion pairs with earliest-start
// propagation; returns a makespan-minimal, left-shifted schedule.
Schedule solve(const SchedInstance& instance, const SolveOptions& options = {});

// Exhaustive orientation sweep for instances of at most 6 tasks.
Schedule oracle_solve(const SchedInstance& instance, std::int64_t horizon_ms);

// Checks precedence, exclusion, and resource validity; a failure reason lands
// in why when provided.
bool validate_schedule(const SchedInstance& instance, const Schedule& schedule,
                       std::string* why = nullptr);

}  // namespace disasm

#endif
