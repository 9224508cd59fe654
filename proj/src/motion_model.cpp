#include <disasm/motion_model.hpp>

#include <algorithm>
#include <cmath>

namespace disasm {

const char* to_string(CameraId c) { return c == CameraId::Top ? "top" : "side"; }

std::int64_t MotionConfig::op_time_ms(TaskKind kind) const {
    switch (kind) {
        case TaskKind::Grasp: return grasp_time_ms;
        case TaskKind::Suction: return suction_time_ms;
        case TaskKind::ScrewRemoval: return screw_removal_time_ms;
    }
    return grasp_time_ms;
}

int MotionPlan::pose_adjust_count() const {
    int n = 0;
    for (const MotionTask& t : tasks) n += t.pose_adjust_needed ? 1 : 0;
    return n;
}

namespace {

Vec3 rotate_z(const Vec3& v, double angle_deg) {
    const double rad = angle_deg * M_PI / 180.0;
    const double c = std::cos(rad), s = std::sin(rad);
    return Vec3{v.x * c - v.y * s, v.x * s + v.y * c, v.z};
}

// Alignment of a fastener axis with a camera facing direction; the axis sign
// is ambiguous in the data, so the test is line-based.
bool faces_camera(const Vec3& axis, double stage_angle, const Vec3& cam, double tol_deg) {
    const Vec3 rotated = rotate_z(axis, stage_angle);
    const double dot = rotated.x * cam.x + rotated.y * cam.y + rotated.z * cam.z;
    const double cam_norm = std::sqrt(cam.x * cam.x + cam.y * cam.y + cam.z * cam.z);
    return std::fabs(dot) / cam_norm >= std::cos(tol_deg * M_PI / 180.0) - 1e-12;
}

std::optional<CameraId> camera_match(const Vec3& axis, double stage_angle,
                                     const MotionConfig& config) {
    if (faces_camera(axis, stage_angle, config.camera_top_dir, config.camera_tolerance_deg))
        return CameraId::Top;
    if (faces_camera(axis, stage_angle, config.camera_side_dir, config.camera_tolerance_deg))
        return CameraId::Side;
    return std::nullopt;
}

}  // namespace

double choose_stage_angle(const TaskRecord& task, const AssemblyModel& model,
                          const MotionConfig& config, double current_angle_deg,
                          std::optional<CameraId>* matched_camera) {
    const Part& part = model.part(task.part);
    const bool fastener = is_fastener(part.label.kind);
    if (matched_camera) *matched_camera = std::nullopt;

    if (!config.external_axis_enabled) {
        const double fixed = normalize_angle(config.initial_stage_angle_deg);
        if (fastener) {
            const auto cam = camera_match(*part.geometry.fastener_axis, fixed, config);
            if (!cam)
                throw NoFacingAngle("part " + std::to_string(task.part) +
                                    ": fastener cannot face a camera with the external axis disabled");
            if (matched_camera) *matched_camera = cam;
        } else {
            bool handleable = false;
            for (double a :
                 part.geometry.handling_orientations[static_cast<std::size_t>(task.arm - 1)])
                if (circular_distance(a, fixed) < 1e-9) handleable = true;
            if (!handleable)
                throw NoFacingAngle("part " + std::to_string(task.part) + ": arm " +
                                    std::to_string(task.arm) +
                                    " cannot handle the part at the fixed stage angle");
        }
        return fixed;
    }

    if (!fastener) return smallest_rotation(model, task.part, task.arm, current_angle_deg);

    const Vec3& axis = *part.geometry.fastener_axis;
    std::optional<double> best;
    std::optional<CameraId> best_cam;
    for (double grid : config.stage_angle_grid_deg) {
        const double angle = normalize_angle(grid);
        const auto cam = camera_match(axis, angle, config);
        if (!cam) continue;
        if (!best) {
            best = angle;
            best_cam = cam;
            continue;
        }
        const double d_new = circular_distance(angle, current_angle_deg);
        const double d_best = circular_distance(*best, current_angle_deg);
        if (d_new < d_best || (d_new == d_best && angle < *best)) {
            best = angle;
            best_cam = cam;
        }
    }
    if (!best)
        throw NoFacingAngle("part " + std::to_string(task.part) +
                            ": no grid angle turns the fastener toward a camera");
    if (matched_camera) *matched_camera = best_cam;
    return *best;
}

MotionPlan make_motion_plan(const TaskPlan& plan, const AssemblyModel& model,
                            const MotionConfig& config) {
    MotionPlan motion;
    motion.pose_adjust_ms = config.pose_adjust_time_ms;
    double stage_angle = normalize_angle(config.initial_stage_angle_deg);
    std::array<Vec3, 2> arm_pos = config.arm_home_mm;

    for (const TaskRecord& task : plan.tasks) {
        MotionTask mt;
        mt.part = task.part;

        std::optional<CameraId> cam;
        const double angle = choose_stage_angle(task, model, config, stage_angle, &cam);
        mt.stage_angle_deg = angle;
        mt.camera = cam;
        mt.pose_adjust_needed = circular_distance(angle, stage_angle) > 1e-9;
        stage_angle = angle;

        Vec3& pos = arm_pos[static_cast<std::size_t>(task.arm - 1)];
        const double travel_mm = distance(pos, model.com(task.part));
        const auto travel_ms = static_cast<std::int64_t>(
            std::ceil(travel_mm / config.arm_speed_mm_s * 1000.0));
        mt.duration_ms = travel_ms + config.op_time_ms(task.kind);
        pos = model.com(task.part);

        if (task.toolchange_before)
            motion.toolchange_durations_ms[static_cast<std::size_t>(task.arm - 1)].push_back(
                config.toolchange_time_ms);

        motion.stage_trajectory_deg.push_back(angle);
        motion.tasks.push_back(mt);
    }
    return motion;
}

}  // namespace disasm
