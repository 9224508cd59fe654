// Disassembly planning CLI: plan (full pipeline), init-compare, schedule-only
// and gen-fixture. Exit codes: 0 success, 2 validation, 3 infeasible,
// 4 scheduler timeout.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include <disasm/fixture_gen.hpp>
#include <disasm/model_io.hpp>
#include <disasm/pipeline.hpp>

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitTimeout = 4;

int run_plan(const std::string& model_path, const std::string& config_path, std::uint64_t seed,
             const std::string& out_dir, bool disable_axis) {
    const disasm::AssemblyModel model = disasm::load_model(model_path);
    disasm::PipelineConfig config = disasm::load_config(config_path);
    if (disable_axis) config.motion.external_axis_enabled = false;

    const disasm::PipelineReport report = disasm::run_pipeline(model, config, seed, out_dir);
    std::cout << disasm::report_to_json(report).dump(2) << "\n";
    return report.scheduler_optimal ? 0 : kExitTimeout;
}

int run_init_compare(const std::string& model_path, int n_genes,
                     const std::vector<std::uint64_t>& seeds, const std::string& out_json) {
    const disasm::AssemblyModel model = disasm::load_model(model_path);
    const auto rows = disasm::compare_init(model, n_genes, seeds);

    std::printf("%-12s %-8s %-16s %-16s\n", "seed", "genes", "ccc", "random");
    nlohmann::ordered_json rows_json = nlohmann::ordered_json::array();
    for (const auto& row : rows) {
        if (row.n_genes <= 0) {
            std::printf("%-12llu %-8d %-16s %-16s\n",
                        static_cast<unsigned long long>(row.seed), row.n_genes, "n/a", "n/a");
        } else {
            std::printf("%-12llu %-8d %-16.4f %-16.4f\n",
                        static_cast<unsigned long long>(row.seed), row.n_genes,
                        row.ccc_availability, row.random_availability);
        }
        rows_json.push_back({{"seed", row.seed},
                             {"n_genes", row.n_genes},
                             {"ccc_availability",
                              row.n_genes > 0 ? nlohmann::json(row.ccc_availability)
                                              : nlohmann::json(nullptr)},
                             {"random_availability",
                              row.n_genes > 0 ? nlohmann::json(row.random_availability)
                                              : nlohmann::json(nullptr)}});
    }
    if (!out_json.empty()) {
        std::ofstream out(out_json);
        out << nlohmann::ordered_json{{"rows", rows_json}}.dump(2) << "\n";
    }
    return 0;
}

int run_schedule_only(const std::string& task_path, const std::string& motion_path,
                      const std::string& config_path, const std::string& out_dir) {
    auto read_json = [](const std::string& path) {
        std::ifstream in(path);
        if (!in) throw disasm::ParseError("cannot open " + path);
        nlohmann::json j;
        in >> j;
        return j;
    };
    const disasm::TaskPlan task_plan = disasm::task_plan_from_json(read_json(task_path));
    const disasm::MotionPlan motion_plan = disasm::motion_plan_from_json(read_json(motion_path));
    const disasm::PipelineConfig config = disasm::load_config(config_path);

    std::vector<int> removal_order;
    for (const auto& t : task_plan.tasks) removal_order.push_back(t.part);

    const auto instance = disasm::build_jobs(task_plan, motion_plan, removal_order,
                                             !config.allow_parallel_s3);
    const auto schedule = disasm::solve(instance, config.scheduler);

    std::filesystem::create_directories(out_dir);
    const std::filesystem::path dir(out_dir);
    {
        std::ofstream out(dir / "schedule.json");
        out << disasm::schedule_to_json(instance, schedule).dump(2) << "\n";
    }
    if (config.emit_gantt) {
        std::ofstream out(dir / "gantt.svg");
        out << disasm::gantt_svg(instance, schedule);
    }
    std::cout << "makespan_ms " << schedule.makespan_ms
              << (schedule.optimal ? "" : " (timeout, best incumbent)") << "\n";
    return schedule.optimal ? 0 : kExitTimeout;
}

int run_gen_fixture(int eta, std::uint64_t seed, bool side_fasteners, bool arm2_shares_zero,
                    const std::string& out_path) {
    disasm::FixtureParams params;
    params.eta = eta;
    params.seed = seed;
    params.side_fasteners = side_fasteners;
    params.arm2_shares_zero = arm2_shares_zero;
    const auto model = disasm::generate_fixture(params);
    disasm::save_model(model, out_path);
    std::cout << "wrote " << out_path << " (eta " << model.eta << ")\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Disassembly sequence, task, motion and schedule planner"};
    app.require_subcommand(1);

    std::string model_path, config_path, out_dir = "out", out_json;
    std::uint64_t seed = 0;
    bool disable_axis = false;

    auto* plan = app.add_subcommand("plan", "Run the full planning pipeline");
    plan->add_option("--model", model_path, "Assembly JSON file")->required();
    plan->add_option("--config", config_path, "Pipeline config JSON");
    plan->add_option("--seed", seed, "RNG seed")->required();
    plan->add_option("--out", out_dir, "Artifact output directory");
    plan->add_flag("--disable-external-axis", disable_axis, "Plan with the rotary stage fixed");

    int n_genes = 100;
    std::vector<std::uint64_t> seeds{1};
    auto* init = app.add_subcommand("init-compare",
                                    "Compare CCC initialization against random permutations");
    init->add_option("--model", model_path, "Assembly JSON file")->required();
    init->add_option("--genes", n_genes, "Chromosomes per initializer");
    init->add_option("--seeds", seeds, "Seeds to evaluate");
    init->add_option("--out", out_json, "Optional JSON output file");

    std::string task_path, motion_path;
    auto* sched = app.add_subcommand("schedule-only", "Schedule existing task and motion plans");
    sched->add_option("--tasks", task_path, "task_plan.json")->required();
    sched->add_option("--motion", motion_path, "motion_plan.json")->required();
    sched->add_option("--config", config_path, "Pipeline config JSON");
    sched->add_option("--out", out_dir, "Artifact output directory");

    int eta = 20;
    bool side_fasteners = false, arm2_zero = false;
    std::string fixture_out = "model.json";
    auto* gen = app.add_subcommand("gen-fixture", "Generate a benchmark assembly");
    gen->add_option("--eta", eta, "Total part count");
    gen->add_option("--seed", seed, "Generator seed");
    gen->add_flag("--side-fasteners", side_fasteners, "Horizontal screw axes");
    gen->add_flag("--arm2-zero", arm2_zero, "Arm 2 shares the 0 degree angle");
    gen->add_option("--out", fixture_out, "Output model path");

    CLI11_PARSE(app, argc, argv);

    try {
        if (plan->parsed()) return run_plan(model_path, config_path, seed, out_dir, disable_axis);
        if (init->parsed()) return run_init_compare(model_path, n_genes, seeds, out_json);
        if (sched->parsed())
            return run_schedule_only(task_path, motion_path, config_path, out_dir);
        if (gen->parsed())
            return run_gen_fixture(eta, seed, side_fasteners, arm2_zero, fixture_out);
    } catch (const disasm::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const disasm::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const disasm::InitializationStalled& e) {
        std::cerr << "infeasible: " << e.what() << "\n";
        return kExitInfeasible;
    } catch (const disasm::NoFeasibleStart& e) {
        std::cerr << "infeasible: " << e.what() << "\n";
        return kExitInfeasible;
    } catch (const disasm::NoFacingAngle& e) {
        std::cerr << "infeasible: " << e.what() << "\n";
        return kExitInfeasible;
    } catch (const disasm::NotAdmissible& e) {
        std::cerr << "infeasible: " << e.what() << "\n";
        return kExitInfeasible;
    } catch (const disasm::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
