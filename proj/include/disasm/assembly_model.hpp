#ifndef DISASM_ASSEMBLY_MODEL_HPP
#define DISASM_ASSEMBLY_MODEL_HPP

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <disasm/errors.hpp>

namespace disasm {

enum class PartKind { Screw, Bolt, Nut, Regular, Base };
enum class TaskKind { Grasp, Suction, ScrewRemoval };
enum class Tool { ParallelGripper, SuctionGripper, AirDriver };

// Six canonical axis-aligned extraction directions.
enum class Direction : int { PosX = 0, NegX = 1, PosY = 2, NegY = 3, PosZ = 4, NegZ = 5 };
inline constexpr int kNumDirections = 6;

const char* to_string(PartKind k);
const char* to_string(TaskKind k);
const char* to_string(Tool t);
const char* to_string(Direction d);
PartKind part_kind_from_string(const std::string& s);
TaskKind task_kind_from_string(const std::string& s);
Direction direction_from_string(const std::string& s);

inline bool is_fastener(PartKind k) {
    return k == PartKind::Screw || k == PartKind::Bolt || k == PartKind::Nut;
}
Tool tool_for(TaskKind k);

struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;
};
inline double distance(const Vec3& a, const Vec3& b) {
    const double dx = a.x - b.x, dy = a.y - b.y, dz = a.z - b.z;
    return std::sqrt(dx * dx + dy * dy + dz * dz);
}

struct PartLabel {
    PartKind kind = PartKind::Regular;
    TaskKind task_kind = TaskKind::Grasp;
    Tool tool = Tool::ParallelGripper;
};

struct PartGeometry {
    Vec3 center_of_mass;                                      // mm
    std::vector<Direction> removal_directions;                // nonempty for non-base
    std::array<std::vector<double>, 2> handling_orientations; // deg in [0,360), per arm
    std::optional<Vec3> fastener_axis;                        // unit vector, fasteners only
};

struct Part {
    int id = 0;
    PartLabel label;
    PartGeometry geometry;
};

// Boolean parts relations, 1-based part ids.
class RelationMatrices {
  public:
    RelationMatrices() = default;
    explicit RelationMatrices(int eta);

    bool contact(int u, int v) const { return sym_[idx(u, v)] & 1; }
    bool connection(int u, int v) const { return sym_[idx(u, v)] & 2; }
    bool constraint(int u, int v) const { return dir_[idx(u, v)]; }
    bool interference(int u, int v, Direction d) const {
        return interf_[idx(u, v) * kNumDirections + static_cast<int>(d)];
    }

    void set_contact(int u, int v);
    void set_connection(int u, int v);
    void set_constraint(int u, int v);  // u must be removed before v
    void set_interference(int u, int v, Direction d);

    int eta() const { return eta_; }

  private:
    std::size_t idx(int u, int v) const {
        return static_cast<std::size_t>(u - 1) * eta_ + (v - 1);
    }
    int eta_ = 0;
    std::vector<std::uint8_t> sym_;     // bit0 contact, bit1 connection
    std::vector<std::uint8_t> dir_;     // constraint
    std::vector<std::uint8_t> interf_;  // eta*eta*6
};

// Immutable after load; safe to share read-only across workers.
struct AssemblyModel {
    int eta = 0;
    std::vector<Part> parts;  // sorted by id, ids are exactly 1..eta
    RelationMatrices relations;
    std::vector<int> recovery_targets;

    int base_id = 0;
    double max_com_distance = 0.0;  // max pairwise COM distance, > 0 for eta >= 2

    const Part& part(int id) const { return parts[static_cast<std::size_t>(id - 1)]; }
    bool fastener(int id) const { return is_fastener(part(id).label.kind); }
    const Vec3& com(int id) const { return part(id).geometry.center_of_mass; }
    std::vector<int> non_base_ids() const;
};

// Checks all structural invariants; throws ValidationError on the first failure.
void validate_model(const AssemblyModel& model);

// Normalizes an angle to [0, 360).
double normalize_angle(double deg);
// Absolute circular distance between two angles, in [0, 180].
double circular_distance(double a, double b);

// Handling orientation for (part, arm) closest to current_angle; ties toward
// the smaller angle value. arm is 1 or 2.
double smallest_rotation(const AssemblyModel& model, int part_id, int arm, double current_angle);

}  // namespace disasm

#endif
