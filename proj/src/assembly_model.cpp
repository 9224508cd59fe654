#include <disasm/assembly_model.hpp>

#include <algorithm>
#include <queue>

namespace disasm {

const char* to_string(PartKind k) {
    switch (k) {
        case PartKind::Screw: return "screw";
        case PartKind::Bolt: return "bolt";
        case PartKind::Nut: return "nut";
        case PartKind::Regular: return "regular";
        case PartKind::Base: return "base";
    }
    return "?";
}

const char* to_string(TaskKind k) {
    switch (k) {
        case TaskKind::Grasp: return "grasp";
        case TaskKind::Suction: return "suction";
        case TaskKind::ScrewRemoval: return "screw_removal";
    }
    return "?";
}

const char* to_string(Tool t) {
    switch (t) {
        case Tool::ParallelGripper: return "parallel_gripper";
        case Tool::SuctionGripper: return "suction_gripper";
        case Tool::AirDriver: return "air_driver";
    }
    return "?";
}

const char* to_string(Direction d) {
    static const char* names[kNumDirections] = {"+X", "-X", "+Y", "-Y", "+Z", "-Z"};
    return names[static_cast<int>(d)];
}

PartKind part_kind_from_string(const std::string& s) {
    if (s == "screw") return PartKind::Screw;
    if (s == "bolt") return PartKind::Bolt;
    if (s == "nut") return PartKind::Nut;
    if (s == "regular") return PartKind::Regular;
    if (s == "base") return PartKind::Base;
    throw ParseError("unknown part kind: " + s);
}

TaskKind task_kind_from_string(const std::string& s) {
    if (s == "grasp") return TaskKind::Grasp;
    if (s == "suction") return TaskKind::Suction;
    if (s == "screw_removal") return TaskKind::ScrewRemoval;
    throw ParseError("unknown task kind: " + s);
}

Direction direction_from_string(const std::string& s) {
    for (int d = 0; d < kNumDirections; ++d) {
        if (s == to_string(static_cast<Direction>(d))) return static_cast<Direction>(d);
    }
    throw ParseError("unknown direction: " + s);
}

Tool tool_for(TaskKind k) {
    switch (k) {
        case TaskKind::Grasp: return Tool::ParallelGripper;
        case TaskKind::Suction: return Tool::SuctionGripper;
        case TaskKind::ScrewRemoval: return Tool::AirDriver;
    }
    return Tool::ParallelGripper;
}

RelationMatrices::RelationMatrices(int eta)
    : eta_(eta),
      sym_(static_cast<std::size_t>(eta) * eta, 0),
      dir_(static_cast<std::size_t>(eta) * eta, 0),
      interf_(static_cast<std::size_t>(eta) * eta * kNumDirections, 0) {}

void RelationMatrices::set_contact(int u, int v) {
    sym_[idx(u, v)] |= 1;
    sym_[idx(v, u)] |= 1;
}

void RelationMatrices::set_connection(int u, int v) {
    sym_[idx(u, v)] |= 2;
    sym_[idx(v, u)] |= 2;
}

void RelationMatrices::set_constraint(int u, int v) { dir_[idx(u, v)] = 1; }

void RelationMatrices::set_interference(int u, int v, Direction d) {
    interf_[idx(u, v) * kNumDirections + static_cast<int>(d)] = 1;
}

std::vector<int> AssemblyModel::non_base_ids() const {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(eta) - 1);
    for (const Part& p : parts) {
        if (p.label.kind != PartKind::Base) out.push_back(p.id);
    }
    return out;
}

namespace {

bool constraint_digraph_acyclic(const AssemblyModel& m) {
    // Kahn's method.
    std::vector<int> indeg(static_cast<std::size_t>(m.eta) + 1, 0);
    for (int u = 1; u <= m.eta; ++u)
        for (int v = 1; v <= m.eta; ++v)
            if (m.relations.constraint(u, v)) ++indeg[static_cast<std::size_t>(v)];
    std::queue<int> q;
    for (int v = 1; v <= m.eta; ++v)
        if (indeg[static_cast<std::size_t>(v)] == 0) q.push(v);
    int seen = 0;
    while (!q.empty()) {
        int u = q.front();
        q.pop();
        ++seen;
        for (int v = 1; v <= m.eta; ++v) {
            if (m.relations.constraint(u, v) && --indeg[static_cast<std::size_t>(v)] == 0)
                q.push(v);
        }
    }
    return seen == m.eta;
}

}  // namespace

void validate_model(const AssemblyModel& model) {
    if (model.eta < 1) throw ValidationError("eta must be positive");
    if (static_cast<int>(model.parts.size()) != model.eta)
        throw ValidationError("part count does not match eta");
    for (int i = 0; i < model.eta; ++i) {
        if (model.parts[static_cast<std::size_t>(i)].id != i + 1)
            throw ValidationError("part ids must be exactly 1..eta without gaps");
    }

    int bases = 0;
    for (const Part& p : model.parts) {
        const bool fast = is_fastener(p.label.kind);
        if (fast != (p.label.task_kind == TaskKind::ScrewRemoval))
            throw ValidationError("part " + std::to_string(p.id) +
                                  ": fastener kinds require task_kind screw_removal and only they do");
        if (p.label.tool != tool_for(p.label.task_kind))
            throw ValidationError("part " + std::to_string(p.id) + ": tool does not match task kind");
        if (p.label.kind == PartKind::Base) {
            ++bases;
            continue;
        }
        if (p.geometry.removal_directions.empty())
            throw ValidationError("part " + std::to_string(p.id) + ": no removal directions");
        for (int arm = 0; arm < 2; ++arm) {
            if (p.geometry.handling_orientations[static_cast<std::size_t>(arm)].empty())
                throw ValidationError("part " + std::to_string(p.id) + ": empty orientation list for arm " +
                                      std::to_string(arm + 1));
        }
        if (fast) {
            if (!p.geometry.fastener_axis)
                throw ValidationError("part " + std::to_string(p.id) + ": fastener without fastener_axis");
            const Vec3& a = *p.geometry.fastener_axis;
            const double n = std::sqrt(a.x * a.x + a.y * a.y + a.z * a.z);
            if (std::abs(n - 1.0) > 1e-6)
                throw ValidationError("part " + std::to_string(p.id) + ": fastener_axis is not unit length");
        }
    }
    if (bases != 1) throw ValidationError("model must contain exactly one base part");
    if (model.eta < 2) throw ValidationError("no removable parts");

    for (int u = 1; u <= model.eta; ++u) {
        if (model.relations.contact(u, u) || model.relations.connection(u, u) ||
            model.relations.constraint(u, u))
            throw ValidationError("self relation on part " + std::to_string(u));
        for (int v = u + 1; v <= model.eta; ++v) {
            if (model.relations.connection(u, v) &&
                model.fastener(u) == model.fastener(v))
                throw ValidationError("connection edge " + std::to_string(u) + "-" + std::to_string(v) +
                                      " must join a fastener to a non-fastener");
        }
        for (int d = 0; d < kNumDirections; ++d) {
            if (model.relations.interference(u, u, static_cast<Direction>(d)))
                throw ValidationError("self interference on part " + std::to_string(u));
        }
    }

    if (!constraint_digraph_acyclic(model)) throw ValidationError("cyclic constraints");

    if (model.eta >= 2 && model.max_com_distance <= 0.0)
        throw ValidationError("all parts share one center of mass");

    for (int t : model.recovery_targets) {
        if (t < 1 || t > model.eta) throw ValidationError("recovery target out of range");
        if (t == model.base_id) throw ValidationError("base part cannot be a recovery target");
    }
}

double normalize_angle(double deg) {
    double a = std::fmod(deg, 360.0);
    if (a < 0.0) a += 360.0;
    return a == 360.0 ? 0.0 : a;
}

double circular_distance(double a, double b) {
    double d = std::fabs(normalize_angle(a) - normalize_angle(b));
    return d > 180.0 ? 360.0 - d : d;
}

double smallest_rotation(const AssemblyModel& model, int part_id, int arm, double current_angle) {
    if (arm != 1 && arm != 2) throw Error("arm must be 1 or 2");
    const auto& list = model.part(part_id).geometry.handling_orientations[static_cast<std::size_t>(arm - 1)];
    if (list.empty())
        throw NoOrientation("part " + std::to_string(part_id) + " has no orientations for arm " +
                            std::to_string(arm));
    double best = list.front();
    double best_dist = circular_distance(best, current_angle);
    for (double a : list) {
        const double dist = circular_distance(a, current_angle);
        if (dist < best_dist || (dist == best_dist && a < best)) {
            best = a;
            best_dist = dist;
        }
    }
    return best;
}

}  // namespace disasm
