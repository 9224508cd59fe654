#ifndef DISASM_MOTION_MODEL_HPP
#define DISASM_MOTION_MODEL_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include <disasm/task_planner.hpp>

namespace disasm {

enum class CameraId { Top, Side };
const char* to_string(CameraId c);

// Parametric duration model: straight-line travel plus fixed per-kind
// operation times. All values are config-file overridable.
struct MotionConfig {
    double arm_speed_mm_s = 250.0;
    std::int64_t grasp_time_ms = 4000;
    std::int64_t suction_time_ms = 3000;
    std::int64_t screw_removal_time_ms = 8000;
    std::int64_t toolchange_time_ms = 10000;
    std::int64_t pose_adjust_time_ms = 2000;  // fixed 2 s stage reorientation
    double camera_tolerance_deg = 10.0;
    Vec3 camera_top_dir{0.0, 0.0, 1.0};   // facing direction a fastener head must take
    Vec3 camera_side_dir{1.0, 0.0, 0.0};
    std::vector<double> stage_angle_grid_deg{0, 45, 90, 135, 180, 225, 270, 315};
    std::array<Vec3, 2> arm_home_mm{Vec3{-400.0, 0.0, 150.0}, Vec3{400.0, 0.0, 150.0}};
    double initial_stage_angle_deg = 0.0;
    bool first_mount_counts = true;
    bool external_axis_enabled = true;

    std::int64_t op_time_ms(TaskKind kind) const;
};

struct MotionTask {
    int part = 0;
    std::int64_t duration_ms = 0;      // travel + operation, rounded up
    double stage_angle_deg = 0.0;
    bool pose_adjust_needed = false;   // angle differs from the previous one
    std::optional<CameraId> camera;    // fasteners only
};

struct MotionPlan {
    std::vector<MotionTask> tasks;  // aligned with the task plan
    std::array<std::vector<std::int64_t>, 2> toolchange_durations_ms;  // per arm, in order
    std::vector<double> stage_trajectory_deg;
    std::int64_t pose_adjust_ms = 2000;

    int pose_adjust_count() const;
};

// Stage angle for one task. Non-fasteners follow the smallest rotation over
// the assigned arm's orientation list; fasteners take the grid angle that
// turns the fastener axis toward a camera, smaller rotation first, ties
// toward the smaller angle value. The axis is treated as an undirected line.
double choose_stage_angle(const TaskRecord& task, const AssemblyModel& model,
                          const MotionConfig& config, double current_angle_deg,
                          std::optional<CameraId>* matched_camera = nullptr);

MotionPlan make_motion_plan(const TaskPlan& plan, const AssemblyModel& model,
                            const MotionConfig& config);

}  // namespace disasm

#endif
