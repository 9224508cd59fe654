#ifndef DISASM_GANTT_HPP
#define DISASM_GANTT_HPP

#include <string>

#include <disasm/scheduler.hpp>

namespace disasm {

// Swimlane chart with one row each for Arm1, Arm2 and ExternalAxis; bars are
// colored by stage and labeled with the part id.
std::string gantt_svg(const SchedInstance& instance, const Schedule& schedule);

}  // namespace disasm

#endif
