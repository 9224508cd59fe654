#ifndef DISASM_ERRORS_HPP
#define DISASM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace disasm {

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// assembly-model
struct ParseError : Error {
    using Error::Error;
};
struct ValidationError : Error {
    using Error::Error;
};
struct NoOrientation : Error {
    using Error::Error;
};

// ccc-init
struct InitializationStalled : Error {
    using Error::Error;
};

// moga-engine
struct NoFeasibleStart : Error {
    using Error::Error;
};

// sequence-planner / task-planner
struct NotAdmissible : Error {
    using Error::Error;
};
struct LengthMismatch : Error {
    using Error::Error;
};

// motion-model
struct NoFacingAngle : Error {
    using Error::Error;
};

// cp-scheduler
struct InconsistentPlan : Error {
    using Error::Error;
};
struct CyclicPrecedence : Error {
    using Error::Error;
};
struct TooLarge : Error {
    using Error::Error;
};

}  // namespace disasm

#endif
