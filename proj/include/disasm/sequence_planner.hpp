#ifndef DISASM_SEQUENCE_PLANNER_HPP
#define DISASM_SEQUENCE_PLANNER_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <disasm/ccc_graph.hpp>
#include <disasm/moga.hpp>
#include <disasm/task_planner.hpp>

namespace disasm {

struct FeasibilityVerdict {
    bool feasible = false;  // removable step by step
    bool stable = false;    // no isolated remaining substructure
    // 0-based removal step of the first failed check, with a reason.
    std::optional<std::pair<int, std::string>> first_violation;

    bool admissible() const { return feasible && stable; }
};

FeasibilityVerdict check_order(const SequenceChromosome& order, const AssemblyModel& model);
bool check_feasible(const SequenceChromosome& order, const AssemblyModel& model);
bool check_stable(const SequenceChromosome& order, const AssemblyModel& model);

// Removal direction used at each step: the first listed direction of the part
// that is interference-free against the parts still present.
std::vector<Direction> chosen_directions(const std::vector<int>& removal_order,
                                         const AssemblyModel& model);

// [f_difficulty, f_efficiency, f_priority, f_allocation]; arms is the arm
// assignment in execution order backing the allocation term.
ObjectiveVector eval_sequence(const SequenceChromosome& order, const std::vector<int>& arms,
                              const AssemblyModel& model);

struct SequencePlannerConfig {
    GaConfig ga;
    GaConfig inner_task_ga{20, 20, 0.9, 0.1, 4, 0};
    ArmCapability capability;
};

struct SequencePlanResult {
    SequenceChromosome best;
    std::vector<SequenceChromosome> front;
    std::vector<ObjectiveVector> front_objectives;
    std::vector<GaTracePoint> trace;
};

// Arm assignment minimizing the task objectives for a fixed removal order,
// found with a reduced-budget assignment GA; used for the allocation term.
std::vector<int> best_assignment(const std::vector<int>& removal_order, const AssemblyModel& model,
                                 const ArmCapability& capability, const GaConfig& inner,
                                 std::uint64_t seed);

SequencePlanResult plan_sequence(const AssemblyModel& model, const SequencePlannerConfig& config);

}  // namespace disasm

#endif
