#ifndef DISASM_FIXTURE_GEN_HPP
#define DISASM_FIXTURE_GEN_HPP

#include <cstdint>

#include <disasm/assembly_model.hpp>

namespace disasm {

// Procedural benchmark assemblies: stacked plates fastened by screws, with
// optional side-mounted components. Upper plates cover the screws and the
// plate below them, mirroring the structural constraints of real housings.
struct FixtureParams {
    int eta = 20;  // total part count including the base, at least 4
    std::uint64_t seed = 1;
    bool side_fasteners = false;  // horizontal screw axes that need the side camera
    bool arm2_shares_zero = false;  // give arm 2 the 0 degree angle as well
};

AssemblyModel generate_fixture(const FixtureParams& params);

}  // namespace disasm

#endif
