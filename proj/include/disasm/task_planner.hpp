#ifndef DISASM_TASK_PLANNER_HPP
#define DISASM_TASK_PLANNER_HPP

#include <array>
#include <vector>

#include <disasm/assembly_model.hpp>
#include <disasm/moga.hpp>

namespace disasm {

// Which arms may handle which parts. With the rotary stage available both
// arms qualify; with the stage fixed, only arms whose orientation list holds
// the fixed angle.
struct ArmCapability {
    std::array<std::vector<char>, 2> can;  // [arm-1][part id]

    bool ok(int arm, int part) const {
        return can[static_cast<std::size_t>(arm - 1)][static_cast<std::size_t>(part)] != 0;
    }
    static ArmCapability unrestricted(const AssemblyModel& model);
    static ArmCapability at_fixed_angle(const AssemblyModel& model, double angle_deg);
};

struct AssignmentChromosome {
    std::vector<int> arms;  // one entry per task in execution order, values 1 or 2
};

struct TaskRecord {
    int part = 0;
    TaskKind kind = TaskKind::Grasp;
    int arm = 1;
    Tool tool = Tool::ParallelGripper;
    bool toolchange_before = false;
};

// Task order is the removal order induced by the sequence; never reordered.
struct TaskPlan {
    std::vector<TaskRecord> tasks;
};

// [f_parallel, f_change, f_distance], all normalized into [0,1].
ObjectiveVector eval_assignment(const std::vector<int>& removal_order, const std::vector<int>& arms,
                                const AssemblyModel& model);

TaskPlan materialize_task_plan(const std::vector<int>& removal_order, const std::vector<int>& arms,
                               const AssemblyModel& model, bool first_mount_counts = true);

int tool_change_count(const TaskPlan& plan);

struct TaskPlanResult {
    AssignmentChromosome best;
    TaskPlan plan;
    std::vector<AssignmentChromosome> front;
    std::vector<ObjectiveVector> front_objectives;
    std::vector<GaTracePoint> trace;
};

TaskPlanResult plan_tasks(const std::vector<int>& removal_order, const AssemblyModel& model,
                          const GaConfig& config, const ArmCapability& capability,
                          bool first_mount_counts = true);

}  // namespace disasm

#endif
