#include <disasm/model_io.hpp>

#include <algorithm>
#include <fstream>
#include <tuple>

namespace disasm {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

Vec3 parse_vec3(const json& j, const char* what) {
    if (!j.is_array() || j.size() != 3 || !j[0].is_number() || !j[1].is_number() || !j[2].is_number())
        throw ParseError(std::string(what) + " must be an array of 3 numbers");
    return Vec3{j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

bool looks_dense(const json& j, int eta) {
    if (!j.is_array() || static_cast<int>(j.size()) != eta) return false;
    for (const auto& row : j) {
        if (!row.is_array() || static_cast<int>(row.size()) != eta) return false;
        for (const auto& cell : row) {
            if (cell.is_boolean()) continue;
            if (cell.is_number_integer()) {
                const int v = cell.get<int>();
                if (v != 0 && v != 1) return false;
            } else {
                return false;
            }
        }
    }
    return true;
}

bool cell_true(const json& c) { return c.is_boolean() ? c.get<bool>() : c.get<int>() != 0; }

int parse_id(const json& j, int eta, const char* what) {
    if (!j.is_number_integer()) throw ParseError(std::string(what) + ": part id must be an integer");
    const int id = j.get<int>();
    if (id < 1 || id > eta)
        throw ValidationError(std::string(what) + ": part id " + std::to_string(id) + " out of range");
    return id;
}

template <typename Setter>
void parse_relation(const json& j, int eta, const char* what, bool symmetric, Setter set) {
    if (j.is_null()) return;
    if (!j.is_array()) throw ParseError(std::string(what) + " must be an array");
    if (looks_dense(j, eta)) {
        for (int u = 1; u <= eta; ++u) {
            for (int v = 1; v <= eta; ++v) {
                if (!cell_true(j[static_cast<std::size_t>(u - 1)][static_cast<std::size_t>(v - 1)]))
                    continue;
                if (symmetric &&
                    !cell_true(j[static_cast<std::size_t>(v - 1)][static_cast<std::size_t>(u - 1)]))
                    throw ValidationError(std::string(what) + " matrix is not symmetric");
                set(u, v);
            }
        }
        return;
    }
    for (const auto& pair : j) {
        if (!pair.is_array() || pair.size() != 2)
            throw ParseError(std::string(what) + " entries must be [u, v] pairs");
        set(parse_id(pair[0], eta, what), parse_id(pair[1], eta, what));
    }
}

Direction parse_dir(const json& j) {
    if (j.is_string()) return direction_from_string(j.get<std::string>());
    if (j.is_number_integer()) {
        const int d = j.get<int>();
        if (d < 0 || d >= kNumDirections) throw ParseError("direction index out of range");
        return static_cast<Direction>(d);
    }
    throw ParseError("direction must be a string or an index");
}

}  // namespace

AssemblyModel model_from_json(const json& j) {
    AssemblyModel m;
    try {
        if (!j.is_object()) throw ParseError("top level must be an object");
        if (!j.contains("eta") || !j.at("eta").is_number_integer())
            throw ParseError("missing integer key 'eta'");
        m.eta = j.at("eta").get<int>();
        if (m.eta < 1) throw ValidationError("eta must be positive");

        if (!j.contains("parts") || !j.at("parts").is_array()) throw ParseError("missing array key 'parts'");
        m.parts.resize(static_cast<std::size_t>(m.eta));
        std::vector<char> seen(static_cast<std::size_t>(m.eta) + 1, 0);
        for (const auto& pj : j.at("parts")) {
            Part p;
            p.id = parse_id(pj.at("id"), m.eta, "parts");
            if (seen[static_cast<std::size_t>(p.id)])
                throw ValidationError("duplicate part id " + std::to_string(p.id));
            seen[static_cast<std::size_t>(p.id)] = 1;

            p.label.kind = part_kind_from_string(pj.at("kind").get<std::string>());
            if (pj.contains("task_kind"))
                p.label.task_kind = task_kind_from_string(pj.at("task_kind").get<std::string>());
            else
                p.label.task_kind =
                    is_fastener(p.label.kind) ? TaskKind::ScrewRemoval : TaskKind::Grasp;
            p.label.tool = tool_for(p.label.task_kind);

            p.geometry.center_of_mass = parse_vec3(pj.at("com_mm"), "com_mm");
            if (pj.contains("removal_dirs")) {
                for (const auto& d : pj.at("removal_dirs"))
                    p.geometry.removal_directions.push_back(parse_dir(d));
            }
            if (pj.contains("orientations")) {
                const auto& o = pj.at("orientations");
                static const char* arm_keys[2] = {"arm1", "arm2"};
                for (int a = 0; a < 2; ++a) {
                    if (!o.contains(arm_keys[a])) continue;
                    for (const auto& ang : o.at(arm_keys[a])) {
                        if (!ang.is_number()) throw ParseError("orientation angles must be numbers");
                        p.geometry.handling_orientations[static_cast<std::size_t>(a)].push_back(
                            normalize_angle(ang.get<double>()));
                    }
                }
            }
            if (pj.contains("fastener_axis"))
                p.geometry.fastener_axis = parse_vec3(pj.at("fastener_axis"), "fastener_axis");
            m.parts[static_cast<std::size_t>(p.id - 1)] = std::move(p);
        }
        for (int id = 1; id <= m.eta; ++id) {
            if (!seen[static_cast<std::size_t>(id)])
                throw ValidationError("missing part id " + std::to_string(id));
        }

        m.relations = RelationMatrices(m.eta);
        parse_relation(j.value("contact", json()), m.eta, "contact", true,
                       [&](int u, int v) { m.relations.set_contact(u, v); });
        parse_relation(j.value("connection", json()), m.eta, "connection", true,
                       [&](int u, int v) { m.relations.set_connection(u, v); });
        parse_relation(j.value("constraint", json()), m.eta, "constraint", false,
                       [&](int u, int v) { m.relations.set_constraint(u, v); });
        if (j.contains("interference")) {
            const auto& ij = j.at("interference");
            if (!ij.is_array()) throw ParseError("interference must be a triplet list");
            for (const auto& t : ij) {
                if (!t.is_array() || t.size() != 3)
                    throw ParseError("interference entries must be [u, v, dir] triplets");
                const int u = parse_id(t[0], m.eta, "interference");
                const int v = parse_id(t[1], m.eta, "interference");
                m.relations.set_interference(u, v, parse_dir(t[2]));
            }
        }
        if (j.contains("recovery_targets")) {
            for (const auto& t : j.at("recovery_targets"))
                m.recovery_targets.push_back(parse_id(t, m.eta, "recovery_targets"));
        }
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed assembly file: ") + e.what());
    }

    for (const Part& p : m.parts) {
        if (p.label.kind == PartKind::Base) m.base_id = p.id;
    }
    for (int u = 1; u <= m.eta; ++u)
        for (int v = u + 1; v <= m.eta; ++v)
            m.max_com_distance = std::max(m.max_com_distance, distance(m.com(u), m.com(v)));

    validate_model(m);
    return m;
}

AssemblyModel load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
    return model_from_json(j);
}

nlohmann::ordered_json model_to_json(const AssemblyModel& m) {
    ordered_json j;
    j["eta"] = m.eta;
    j["parts"] = ordered_json::array();
    for (const Part& p : m.parts) {
        ordered_json pj;
        pj["id"] = p.id;
        pj["kind"] = to_string(p.label.kind);
        pj["task_kind"] = to_string(p.label.task_kind);
        pj["com_mm"] = {p.geometry.center_of_mass.x, p.geometry.center_of_mass.y,
                        p.geometry.center_of_mass.z};
        ordered_json dirs = ordered_json::array();
        for (Direction d : p.geometry.removal_directions) dirs.push_back(to_string(d));
        pj["removal_dirs"] = std::move(dirs);
        pj["orientations"] = {{"arm1", p.geometry.handling_orientations[0]},
                              {"arm2", p.geometry.handling_orientations[1]}};
        if (p.geometry.fastener_axis) {
            pj["fastener_axis"] = {p.geometry.fastener_axis->x, p.geometry.fastener_axis->y,
                                   p.geometry.fastener_axis->z};
        }
        j["parts"].push_back(std::move(pj));
    }

    std::vector<std::pair<int, int>> contact, connection, constraint;
    std::vector<std::tuple<int, int, int>> interference;
    for (int u = 1; u <= m.eta; ++u) {
        for (int v = 1; v <= m.eta; ++v) {
            if (u < v && m.relations.contact(u, v)) contact.emplace_back(u, v);
            if (u < v && m.relations.connection(u, v)) connection.emplace_back(u, v);
            if (m.relations.constraint(u, v)) constraint.emplace_back(u, v);
            for (int d = 0; d < kNumDirections; ++d) {
                if (m.relations.interference(u, v, static_cast<Direction>(d)))
                    interference.emplace_back(u, v, d);
            }
        }
    }
    auto pairs_json = [](const std::vector<std::pair<int, int>>& pairs) {
        ordered_json a = ordered_json::array();
        for (auto [u, v] : pairs) a.push_back({u, v});
        return a;
    };
    j["contact"] = pairs_json(contact);
    j["connection"] = pairs_json(connection);
    j["constraint"] = pairs_json(constraint);
    ordered_json ij = ordered_json::array();
    for (auto [u, v, d] : interference)
        ij.push_back({u, v, to_string(static_cast<Direction>(d))});
    j["interference"] = std::move(ij);
    j["recovery_targets"] = m.recovery_targets;
    return j;
}

void save_model(const AssemblyModel& model, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path);
    out << model_to_json(model).dump(2) << "\n";
}

}  // namespace disasm
