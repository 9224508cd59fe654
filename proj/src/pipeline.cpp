#include <disasm/pipeline.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <disasm/ccc_graph.hpp>
#include <disasm/model_io.hpp>

namespace disasm {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

void apply_ga(GaConfig& cfg, const json& j) {
    cfg.population_size = j.value("population", cfg.population_size);
    cfg.generations = j.value("generations", cfg.generations);
    cfg.crossover_rate = j.value("crossover_rate", cfg.crossover_rate);
    cfg.mutation_rate = j.value("mutation_rate", cfg.mutation_rate);
    cfg.reference_divisions = j.value("reference_divisions", cfg.reference_divisions);
}

Vec3 vec3_of(const json& j) { return Vec3{j.at(0), j.at(1), j.at(2)}; }

}  // namespace

PipelineConfig config_from_json(const json& j) {
    PipelineConfig cfg;
    if (j.contains("ga")) apply_ga(cfg.sequence_ga, j.at("ga"));
    if (j.contains("task_ga")) apply_ga(cfg.task_ga, j.at("task_ga"));
    if (j.contains("inner_task_ga")) apply_ga(cfg.inner_task_ga, j.at("inner_task_ga"));
    if (j.contains("motion")) {
        const json& m = j.at("motion");
        MotionConfig& mc = cfg.motion;
        mc.arm_speed_mm_s = m.value("arm_speed_mm_s", mc.arm_speed_mm_s);
        mc.grasp_time_ms = m.value("grasp_time_ms", mc.grasp_time_ms);
        mc.suction_time_ms = m.value("suction_time_ms", mc.suction_time_ms);
        mc.screw_removal_time_ms = m.value("screw_removal_time_ms", mc.screw_removal_time_ms);
        mc.toolchange_time_ms = m.value("toolchange_time_ms", mc.toolchange_time_ms);
        mc.pose_adjust_time_ms = m.value("pose_adjust_time_ms", mc.pose_adjust_time_ms);
        mc.camera_tolerance_deg = m.value("camera_tolerance_deg", mc.camera_tolerance_deg);
        if (m.contains("camera_top_dir")) mc.camera_top_dir = vec3_of(m.at("camera_top_dir"));
        if (m.contains("camera_side_dir")) mc.camera_side_dir = vec3_of(m.at("camera_side_dir"));
        if (m.contains("stage_angle_grid_deg"))
            mc.stage_angle_grid_deg = m.at("stage_angle_grid_deg").get<std::vector<double>>();
        if (m.contains("arm1_home_mm")) mc.arm_home_mm[0] = vec3_of(m.at("arm1_home_mm"));
        if (m.contains("arm2_home_mm")) mc.arm_home_mm[1] = vec3_of(m.at("arm2_home_mm"));
        mc.initial_stage_angle_deg = m.value("initial_stage_angle_deg", mc.initial_stage_angle_deg);
        mc.first_mount_counts = m.value("first_mount_counts", mc.first_mount_counts);
        mc.external_axis_enabled = m.value("external_axis_enabled", mc.external_axis_enabled);
    }
    if (j.contains("scheduler")) {
        const json& s = j.at("scheduler");
        cfg.scheduler.timeout_ms = s.value("timeout_ms", cfg.scheduler.timeout_ms);
        cfg.allow_parallel_s3 = s.value("allow_parallel_s3", cfg.allow_parallel_s3);
    }
    if (j.contains("io")) {
        const json& io = j.at("io");
        cfg.emit_gantt = io.value("emit_gantt", cfg.emit_gantt);
        cfg.emit_dot = io.value("emit_dot", cfg.emit_dot);
    }
    return cfg;
}

PipelineConfig load_config(const std::string& path) {
    if (path.empty()) return PipelineConfig{};
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open config " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
    return config_from_json(j);
}

nlohmann::ordered_json task_plan_to_json(const TaskPlan& plan) {
    ordered_json tasks = ordered_json::array();
    for (const TaskRecord& t : plan.tasks) {
        tasks.push_back({{"part", t.part},
                         {"kind", to_string(t.kind)},
                         {"arm", t.arm},
                         {"tool", to_string(t.tool)},
                         {"toolchange_before", t.toolchange_before}});
    }
    return ordered_json{{"tasks", std::move(tasks)}};
}

TaskPlan task_plan_from_json(const json& j) {
    TaskPlan plan;
    try {
        for (const auto& t : j.at("tasks")) {
            TaskRecord rec;
            rec.part = t.at("part").get<int>();
            rec.kind = task_kind_from_string(t.at("kind").get<std::string>());
            rec.arm = t.at("arm").get<int>();
            rec.tool = tool_for(rec.kind);
            rec.toolchange_before = t.at("toolchange_before").get<bool>();
            if (rec.arm != 1 && rec.arm != 2) throw ParseError("arm must be 1 or 2");
            plan.tasks.push_back(rec);
        }
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed task plan: ") + e.what());
    }
    return plan;
}

nlohmann::ordered_json motion_plan_to_json(const MotionPlan& plan) {
    ordered_json tasks = ordered_json::array();
    for (const MotionTask& t : plan.tasks) {
        ordered_json tj{{"part", t.part},
                        {"duration_ms", t.duration_ms},
                        {"stage_angle_deg", t.stage_angle_deg},
                        {"pose_adjust_needed", t.pose_adjust_needed}};
        tj["camera"] = t.camera ? json(to_string(*t.camera)) : json(nullptr);
        tasks.push_back(std::move(tj));
    }
    return ordered_json{{"tasks", std::move(tasks)},
                        {"toolchange_durations_ms",
                         {{"arm1", plan.toolchange_durations_ms[0]},
                          {"arm2", plan.toolchange_durations_ms[1]}}},
                        {"stage_trajectory_deg", plan.stage_trajectory_deg},
                        {"pose_adjust_ms", plan.pose_adjust_ms}};
}

MotionPlan motion_plan_from_json(const json& j) {
    MotionPlan plan;
    try {
        for (const auto& t : j.at("tasks")) {
            MotionTask mt;
            mt.part = t.at("part").get<int>();
            mt.duration_ms = t.at("duration_ms").get<std::int64_t>();
            mt.stage_angle_deg = t.at("stage_angle_deg").get<double>();
            mt.pose_adjust_needed = t.at("pose_adjust_needed").get<bool>();
            if (t.contains("camera") && t.at("camera").is_string())
                mt.camera = t.at("camera").get<std::string>() == "top" ? CameraId::Top
                                                                       : CameraId::Side;
            plan.tasks.push_back(mt);
        }
        const auto& tc = j.at("toolchange_durations_ms");
        plan.toolchange_durations_ms[0] = tc.at("arm1").get<std::vector<std::int64_t>>();
        plan.toolchange_durations_ms[1] = tc.at("arm2").get<std::vector<std::int64_t>>();
        if (j.contains("stage_trajectory_deg"))
            plan.stage_trajectory_deg = j.at("stage_trajectory_deg").get<std::vector<double>>();
        plan.pose_adjust_ms = j.value("pose_adjust_ms", std::int64_t{2000});
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed motion plan: ") + e.what());
    }
    return plan;
}

nlohmann::ordered_json schedule_to_json(const SchedInstance& inst, const Schedule& schedule) {
    ordered_json tasks = ordered_json::array();
    for (const SchedTask& t : inst.tasks) {
        tasks.push_back({{"id", t.id},
                         {"part", t.part},
                         {"job", t.job},
                         {"stage", t.stage},
                         {"resource", to_string(t.resource)},
                         {"start_ms", schedule.starts_ms[static_cast<std::size_t>(t.id)]},
                         {"end_ms", schedule.starts_ms[static_cast<std::size_t>(t.id)] +
                                        t.duration_ms}});
    }
    return ordered_json{{"makespan_ms", schedule.makespan_ms},
                        {"optimal", schedule.optimal},
                        {"tasks", std::move(tasks)}};
}

nlohmann::ordered_json report_to_json(const PipelineReport& r) {
    return ordered_json{{"removal_order", r.removal_order},
                        {"arms", r.arms},
                        {"task_count", r.task_count},
                        {"makespan_s", r.makespan_s},
                        {"makespan_ms", r.makespan_ms},
                        {"tool_change_count", r.tool_change_count},
                        {"pose_adjust_count", r.pose_adjust_count},
                        {"init_availability", r.init_availability},
                        {"scheduler_optimal", r.scheduler_optimal},
                        {"external_axis_used", r.external_axis_used}};
}

std::string trace_to_csv(const std::vector<GaTracePoint>& trace) {
    std::ostringstream os;
    os << "generation,best_scalar";
    if (!trace.empty())
        for (std::size_t j = 0; j < trace.front().best_objectives.size(); ++j)
            os << ",best_f" << j + 1;
    os << "\n";
    os.setf(std::ios::fixed);
    os.precision(9);
    for (const GaTracePoint& t : trace) {
        os << t.generation << "," << t.best_scalar;
        for (double v : t.best_objectives) os << "," << v;
        os << "\n";
    }
    return os.str();
}

namespace {

struct PlanOutcome {
    SequencePlanResult sequence;
    TaskPlanResult tasks;
    MotionPlan motion;
    SchedInstance instance;
    Schedule schedule;
    std::vector<int> removal_order;
    bool axis_enabled = false;
};

PlanOutcome plan_once(const AssemblyModel& model, const PipelineConfig& config, std::uint64_t seed,
                      bool axis_enabled) {
    PlanOutcome out;
    out.axis_enabled = axis_enabled;

    MotionConfig motion_cfg = config.motion;
    motion_cfg.external_axis_enabled = axis_enabled;

    SequencePlannerConfig seq_cfg;
    seq_cfg.ga = config.sequence_ga;
    seq_cfg.ga.rng_seed = mix64(seed, 0x73657175ULL);
    seq_cfg.inner_task_ga = config.inner_task_ga;
    seq_cfg.capability = axis_enabled
                             ? ArmCapability::unrestricted(model)
                             : ArmCapability::at_fixed_angle(model, motion_cfg.initial_stage_angle_deg);
    out.sequence = plan_sequence(model, seq_cfg);
    out.removal_order = out.sequence.best.removal_order();

    GaConfig task_cfg = config.task_ga;
    task_cfg.rng_seed = mix64(seed, 0x7461736bULL);
    out.tasks = plan_tasks(out.removal_order, model, task_cfg, seq_cfg.capability,
                           motion_cfg.first_mount_counts);

    out.motion = make_motion_plan(out.tasks.plan, model, motion_cfg);
    out.instance = build_jobs(out.tasks.plan, out.motion, out.removal_order,
                              !config.allow_parallel_s3);
    out.schedule = solve(out.instance, config.scheduler);
    return out;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path.string());
    out << content;
}

}  // namespace

PipelineReport run_pipeline(const AssemblyModel& model, const PipelineConfig& config,
                            std::uint64_t seed, const std::string& out_dir) {
    PlanOutcome outcome = plan_once(model, config, seed, config.motion.external_axis_enabled);

    if (config.motion.external_axis_enabled) {
        // The fixed-angle plan is a candidate too; keep it when it wins, so
        // the stage is only used where it pays off.
        try {
            PlanOutcome fixed = plan_once(model, config, seed, false);
            if (fixed.schedule.makespan_ms < outcome.schedule.makespan_ms)
                outcome = std::move(fixed);
        } catch (const Error&) {
            // Fixed-angle planning infeasible for this model; nothing to compare.
        }
    }

    PipelineReport report;
    report.removal_order = outcome.removal_order;
    report.arms = outcome.tasks.best.arms;
    report.task_count = static_cast<int>(outcome.removal_order.size());
    report.makespan_ms = outcome.schedule.makespan_ms;
    report.makespan_s = static_cast<double>(outcome.schedule.makespan_ms) / 1000.0;
    report.tool_change_count = tool_change_count(outcome.tasks.plan);
    report.pose_adjust_count = outcome.motion.pose_adjust_count();
    report.scheduler_optimal = outcome.schedule.optimal;
    report.external_axis_used = outcome.axis_enabled && outcome.motion.pose_adjust_count() > 0;

    {
        const auto init = initialize_population(model, config.sequence_ga.population_size,
                                                mix64(seed, 0x73657175ULL));
        int ok = 0;
        for (const auto& chromo : init)
            if (check_order(chromo, model).admissible()) ++ok;
        report.init_availability =
            init.empty() ? 0.0 : static_cast<double>(ok) / static_cast<double>(init.size());
    }

    if (!out_dir.empty()) {
        namespace fs = std::filesystem;
        fs::create_directories(out_dir);
        const fs::path dir(out_dir);

        ordered_json front = ordered_json::array();
        for (std::size_t i = 0; i < outcome.sequence.front.size(); ++i) {
            front.push_back({{"order", outcome.sequence.front[i].order},
                             {"removal_order", outcome.sequence.front[i].removal_order()},
                             {"objectives", outcome.sequence.front_objectives[i]}});
        }
        write_file(dir / "sequence_front.json", ordered_json{{"front", front}}.dump(2) + "\n");
        write_file(dir / "sequence_trace.csv", trace_to_csv(outcome.sequence.trace));
        write_file(dir / "task_trace.csv", trace_to_csv(outcome.tasks.trace));
        write_file(dir / "task_plan.json", task_plan_to_json(outcome.tasks.plan).dump(2) + "\n");
        write_file(dir / "motion_plan.json", motion_plan_to_json(outcome.motion).dump(2) + "\n");
        write_file(dir / "schedule.json",
                   schedule_to_json(outcome.instance, outcome.schedule).dump(2) + "\n");
        if (config.emit_gantt)
            write_file(dir / "gantt.svg", gantt_svg(outcome.instance, outcome.schedule));
        if (config.emit_dot) {
            std::ostringstream dot;
            dump_dot(CccGraph::build(model), model, dot);
            write_file(dir / "ccc_graph.dot", dot.str());
        }
        write_file(dir / "report.json", report_to_json(report).dump(2) + "\n");
    }
    return report;
}

std::vector<InitComparisonRow> compare_init(const AssemblyModel& model, int n_genes,
                                            const std::vector<std::uint64_t>& seeds) {
    std::vector<InitComparisonRow> rows;
    for (std::uint64_t seed : seeds) {
        InitComparisonRow row;
        row.seed = seed;
        row.n_genes = n_genes;
        if (n_genes <= 0) {
            row.ccc_availability = std::nan("");
            row.random_availability = std::nan("");
            rows.push_back(row);
            continue;
        }

        int ccc_ok = 0;
        for (const auto& chromo : initialize_population(model, n_genes, seed))
            if (check_order(chromo, model).admissible()) ++ccc_ok;
        row.ccc_availability = static_cast<double>(ccc_ok) / static_cast<double>(n_genes);

        Rng rng(mix64(seed, 0xba5e11e0ULL));
        std::vector<int> ids = model.non_base_ids();
        int random_ok = 0;
        for (int i = 0; i < n_genes; ++i) {
            shuffle_vec(ids, rng);
            if (check_order(SequenceChromosome{ids}, model).admissible()) ++random_ok;
        }
        row.random_availability = static_cast<double>(random_ok) / static_cast<double>(n_genes);
        rows.push_back(row);
    }
    return rows;
}

}  // namespace disasm
