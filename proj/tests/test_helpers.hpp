#ifndef DISASM_TEST_HELPERS_HPP
#define DISASM_TEST_HELPERS_HPP

#include <algorithm>
#include <string>
#include <vector>

#include <disasm/assembly_model.hpp>

namespace disasm::testing {

inline std::string fixture_path(const std::string& name) {
    return std::string(DISASM_FIXTURE_DIR) + "/" + name;
}

// Small programmatic models for unit tests. Parts are added in id order;
// finalize() fills the derived fields and validates.
class ModelBuilder {
  public:
    ModelBuilder& part(PartKind kind, TaskKind task, Vec3 com,
                       std::vector<Direction> dirs = {Direction::PosZ},
                       std::optional<Vec3> axis = std::nullopt) {
        Part p;
        p.id = static_cast<int>(model_.parts.size()) + 1;
        p.label.kind = kind;
        p.label.task_kind = task;
        p.label.tool = tool_for(task);
        p.geometry.center_of_mass = com;
        if (kind != PartKind::Base) {
            p.geometry.removal_directions = std::move(dirs);
            p.geometry.handling_orientations[0] = {0.0};
            p.geometry.handling_orientations[1] = {180.0};
        }
        if (is_fastener(kind) && !axis) axis = Vec3{0, 0, 1};
        p.geometry.fastener_axis = axis;
        model_.parts.push_back(std::move(p));
        return *this;
    }
    ModelBuilder& base(Vec3 com = {0, 0, 0}) { return part(PartKind::Base, TaskKind::Grasp, com); }
    ModelBuilder& screw(Vec3 com) { return part(PartKind::Screw, TaskKind::ScrewRemoval, com); }
    ModelBuilder& regular(Vec3 com, TaskKind task = TaskKind::Grasp) {
        return part(PartKind::Regular, task, com);
    }

    ModelBuilder& orientations(int id, std::vector<double> arm1, std::vector<double> arm2) {
        model_.parts[static_cast<std::size_t>(id - 1)].geometry.handling_orientations = {
            std::move(arm1), std::move(arm2)};
        return *this;
    }
    ModelBuilder& contact(int u, int v) {
        contacts_.emplace_back(u, v);
        return *this;
    }
    ModelBuilder& connection(int u, int v) {
        connections_.emplace_back(u, v);
        return *this;
    }
    ModelBuilder& constraint(int u, int v) {
        constraints_.emplace_back(u, v);
        return *this;
    }
    ModelBuilder& interference(int u, int v, Direction d) {
        interferences_.push_back({u, v, d});
        return *this;
    }
    ModelBuilder& target(int id) {
        model_.recovery_targets.push_back(id);
        return *this;
    }

    AssemblyModel finalize(bool validate = true) {
        AssemblyModel m = model_;
        m.eta = static_cast<int>(m.parts.size());
        m.relations = RelationMatrices(m.eta);
        for (auto [u, v] : contacts_) m.relations.set_contact(u, v);
        for (auto [u, v] : connections_) m.relations.set_connection(u, v);
        for (auto [u, v] : constraints_) m.relations.set_constraint(u, v);
        for (auto [u, v, d] : interferences_) m.relations.set_interference(u, v, d);
        for (const Part& p : m.parts)
            if (p.label.kind == PartKind::Base) m.base_id = p.id;
        for (int u = 1; u <= m.eta; ++u)
            for (int v = u + 1; v <= m.eta; ++v)
                m.max_com_distance = std::max(m.max_com_distance, distance(m.com(u), m.com(v)));
        if (validate) validate_model(m);
        return m;
    }

  private:
    struct Interf {
        int u, v;
        Direction d;
    };
    AssemblyModel model_;
    std::vector<std::pair<int, int>> contacts_, connections_, constraints_;
    std::vector<Interf> interferences_;
};

// Independent replay oracle over a removal (execution) order, coded directly
// against the relation matrices; returns {feasible, stable}.
inline std::pair<bool, bool> replay_oracle(const std::vector<int>& removal,
                                           const AssemblyModel& m) {
    std::vector<bool> removed(static_cast<std::size_t>(m.eta) + 1, false);
    bool feasible = true;
    bool stable = true;

    auto reach_all = [&]() {
        std::vector<int> stack{m.base_id};
        std::vector<bool> seen(static_cast<std::size_t>(m.eta) + 1, false);
        seen[static_cast<std::size_t>(m.base_id)] = true;
        while (!stack.empty()) {
            const int u = stack.back();
            stack.pop_back();
            for (int v = 1; v <= m.eta; ++v) {
                if (removed[static_cast<std::size_t>(v)] || seen[static_cast<std::size_t>(v)])
                    continue;
                if (m.relations.contact(u, v) || m.relations.connection(u, v)) {
                    seen[static_cast<std::size_t>(v)] = true;
                    stack.push_back(v);
                }
            }
        }
        for (int v = 1; v <= m.eta; ++v)
            if (!removed[static_cast<std::size_t>(v)] && !seen[static_cast<std::size_t>(v)])
                return false;
        return true;
    };

    for (int u : removal) {
        if (feasible) {
            for (int v = 1; v <= m.eta; ++v) {
                if (v == u || removed[static_cast<std::size_t>(v)]) continue;
                if (m.relations.constraint(v, u)) feasible = false;
                if (!m.fastener(u) && m.fastener(v) && m.relations.connection(u, v))
                    feasible = false;
            }
            bool any_dir = false;
            for (Direction d : m.part(u).geometry.removal_directions) {
                bool hit = false;
                for (int v = 1; v <= m.eta; ++v)
                    if (v != u && !removed[static_cast<std::size_t>(v)] &&
                        m.relations.interference(u, v, d))
                        hit = true;
                if (!hit) any_dir = true;
            }
            if (!any_dir) feasible = false;
        }
        removed[static_cast<std::size_t>(u)] = true;
        if (stable && !reach_all()) stable = false;
    }
    return {feasible, stable};
}

}  // namespace disasm::testing

#endif
