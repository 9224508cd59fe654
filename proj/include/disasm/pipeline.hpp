#ifndef DISASM_PIPELINE_HPP
#define DISASM_PIPELINE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include <disasm/gantt.hpp>
#include <disasm/scheduler.hpp>
#include <disasm/sequence_planner.hpp>

namespace disasm {

struct PipelineConfig {
    GaConfig sequence_ga;                       // defaults: 100 x 200, cx 0.9, mut 0.1, p 4
    GaConfig task_ga{60, 80, 0.9, 0.1, 4, 0};
    GaConfig inner_task_ga{20, 20, 0.9, 0.1, 4, 0};
    MotionConfig motion;
    SolveOptions scheduler;
    bool allow_parallel_s3 = false;
    bool emit_gantt = true;
    bool emit_dot = false;
};

// Partial override: absent keys keep their defaults.
PipelineConfig config_from_json(const nlohmann::json& j);
PipelineConfig load_config(const std::string& path);  // empty path -> defaults

struct PipelineReport {
    std::vector<int> removal_order;
    std::vector<int> arms;
    int task_count = 0;
    double makespan_s = 0.0;
    std::int64_t makespan_ms = 0;
    int tool_change_count = 0;
    int pose_adjust_count = 0;
    double init_availability = 0.0;
    bool scheduler_optimal = true;
    bool external_axis_used = false;  // emitted plan actually rotates the stage
};

// Full pipeline: sequence -> task -> motion -> schedule. With the external
// axis enabled the fixed-angle plan is also evaluated and the better schedule
// is kept, so enabling the axis never hurts. Artifacts are written into
// out_dir (created if missing) when it is nonempty.
PipelineReport run_pipeline(const AssemblyModel& model, const PipelineConfig& config,
                            std::uint64_t seed, const std::string& out_dir);

struct InitComparisonRow {
    std::uint64_t seed = 0;
    int n_genes = 0;
    double ccc_availability = 0.0;     // NaN when n_genes == 0
    double random_availability = 0.0;
};

std::vector<InitComparisonRow> compare_init(const AssemblyModel& model, int n_genes,
                                            const std::vector<std::uint64_t>& seeds);

// Artifact (de)serialization shared by the CLI and the tests.
nlohmann::ordered_json task_plan_to_json(const TaskPlan& plan);
TaskPlan task_plan_from_json(const nlohmann::json& j);
nlohmann::ordered_json motion_plan_to_json(const MotionPlan& plan);
MotionPlan motion_plan_from_json(const nlohmann::json& j);
nlohmann::ordered_json schedule_to_json(const SchedInstance& instance, const Schedule& schedule);
nlohmann::ordered_json report_to_json(const PipelineReport& report);
std::string trace_to_csv(const std::vector<GaTracePoint>& trace);

}  // namespace disasm

#endif
