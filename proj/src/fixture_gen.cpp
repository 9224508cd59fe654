#include <disasm/fixture_gen.hpp>

#include <algorithm>

#include <disasm/rng.hpp>

namespace disasm {

namespace {

double jitter(Rng& rng, double lo, double hi) { return lo + (hi - lo) * rand_real01(rng); }

std::vector<double> orientation_list(Rng& rng, bool arm2, bool arm2_shares_zero) {
    std::vector<double> list;
    if (!arm2) {
        list.push_back(0.0);
        if (rng() & 1u) list.push_back((rng() & 1u) ? 45.0 : 315.0);
    } else {
        if (arm2_shares_zero) list.push_back(0.0);
        list.push_back(180.0);
        if (rng() & 1u) list.push_back((rng() & 1u) ? 135.0 : 225.0);
    }
    std::sort(list.begin(), list.end());
    return list;
}

struct DeckSpec {
    int screws = 2;
    int sides = 0;
};

}  // namespace

AssemblyModel generate_fixture(const FixtureParams& params) {
    if (params.eta < 4) throw Error("fixture needs at least 4 parts");
    Rng rng(mix64(params.seed, 0x6669780aULL));

    // Partition the non-base budget into decks of plate + screws (+ side
    // part/screw pairs), at least two decks once the budget allows.
    const int budget = params.eta - 1;
    int n_decks = std::max(1, std::min(budget / 3, std::max(2, budget / 6)));
    std::vector<DeckSpec> decks(static_cast<std::size_t>(n_decks));
    int extras = budget - 3 * n_decks;
    while (extras > 0) {
        auto& deck = decks[rand_below(rng, decks.size())];
        if (extras >= 2 && deck.sides < 2 && rand_real01(rng) < 0.6) {
            ++deck.sides;
            extras -= 2;
        } else {
            ++deck.screws;
            --extras;
        }
    }

    AssemblyModel m;
    m.eta = params.eta;
    m.relations = RelationMatrices(params.eta);

    auto add_part = [&](PartKind kind, TaskKind task, Vec3 com, std::vector<Direction> dirs,
                        std::optional<Vec3> axis) {
        Part p;
        p.id = static_cast<int>(m.parts.size()) + 1;
        p.label.kind = kind;
        p.label.task_kind = task;
        p.label.tool = tool_for(task);
        p.geometry.center_of_mass = com;
        p.geometry.removal_directions = std::move(dirs);
        if (kind != PartKind::Base) {
            p.geometry.handling_orientations[0] = orientation_list(rng, false, false);
            p.geometry.handling_orientations[1] =
                orientation_list(rng, true, params.arm2_shares_zero);
        }
        p.geometry.fastener_axis = axis;
        m.parts.push_back(std::move(p));
        return static_cast<int>(m.parts.size());
    };

    const int base = add_part(PartKind::Base, TaskKind::Grasp, Vec3{0, 0, 0}, {}, std::nullopt);
    m.base_id = base;

    std::vector<int> plate_of_deck;
    std::vector<std::vector<int>> screws_of_deck;
    std::vector<int> side_part_ids;

    for (int d = 1; d <= n_decks; ++d) {
        const DeckSpec& spec = decks[static_cast<std::size_t>(d - 1)];
        const Vec3 plate_com{jitter(rng, -25, 25), jitter(rng, -25, 25), 16.0 * d};
        const int below = d == 1 ? base : plate_of_deck[static_cast<std::size_t>(d - 2)];

        const int plate = add_part(PartKind::Regular, TaskKind::Suction, plate_com,
                                   {Direction::PosZ}, std::nullopt);
        m.relations.set_contact(plate, below);

        std::vector<int> screws;
        for (int s = 0; s < spec.screws; ++s) {
            const double sx = (s % 2 == 0 ? 1.0 : -1.0) * jitter(rng, 30, 70);
            const double sy = (s / 2 % 2 == 0 ? 1.0 : -1.0) * jitter(rng, 30, 70);
            const int screw =
                add_part(PartKind::Screw, TaskKind::ScrewRemoval,
                         Vec3{plate_com.x + sx, plate_com.y + sy, plate_com.z + 4.0},
                         {Direction::PosZ}, Vec3{0, 0, 1});
            m.relations.set_connection(screw, plate);
            m.relations.set_connection(screw, below);
            screws.push_back(screw);
        }

        for (int s = 0; s < spec.sides; ++s) {
            const double sign = s % 2 == 0 ? 1.0 : -1.0;
            const Vec3 side_com{plate_com.x + sign * jitter(rng, 90, 130),
                                plate_com.y + jitter(rng, -40, 40), plate_com.z};
            const Direction out = sign > 0 ? Direction::PosX : Direction::NegX;
            const int side =
                add_part(PartKind::Regular, TaskKind::Grasp, side_com, {out}, std::nullopt);
            m.relations.set_contact(side, plate);
            side_part_ids.push_back(side);

            const bool horizontal = params.side_fasteners;
            const int sscrew = add_part(
                PartKind::Screw, TaskKind::ScrewRemoval,
                Vec3{side_com.x + sign * (horizontal ? 12.0 : 8.0), side_com.y,
                     side_com.z + (horizontal ? 0.0 : 6.0)},
                horizontal ? std::vector<Direction>{out} : std::vector<Direction>{Direction::PosZ},
                horizontal ? Vec3{sign, 0, 0} : Vec3{0, 0, 1});
            m.relations.set_connection(sscrew, side);
            m.relations.set_connection(sscrew, plate);
        }

        if (d >= 2) {
            const int prev_plate = plate_of_deck[static_cast<std::size_t>(d - 2)];
            m.relations.set_constraint(plate, prev_plate);
            m.relations.set_interference(prev_plate, plate, Direction::PosZ);
            for (int s : screws_of_deck[static_cast<std::size_t>(d - 2)]) {
                m.relations.set_constraint(plate, s);
                m.relations.set_interference(s, plate, Direction::PosZ);
            }
        }
        plate_of_deck.push_back(plate);
        screws_of_deck.push_back(std::move(screws));
    }

    // Recovery target buried mid-structure: a middle side part when present,
    // otherwise a middle plate.
    if (!side_part_ids.empty()) {
        m.recovery_targets.push_back(side_part_ids[side_part_ids.size() / 2]);
    } else {
        m.recovery_targets.push_back(plate_of_deck[plate_of_deck.size() / 2]);
    }

    for (int u = 1; u <= m.eta; ++u)
        for (int v = u + 1; v <= m.eta; ++v)
            m.max_com_distance = std::max(m.max_com_distance, distance(m.com(u), m.com(v)));

    validate_model(m);
    return m;
}

}  // namespace disasm
