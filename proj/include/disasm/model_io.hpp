#ifndef DISASM_MODEL_IO_HPP
#define DISASM_MODEL_IO_HPP

#include <string>

#include <json.hpp>

#include <disasm/assembly_model.hpp>

namespace disasm {

// Assembly JSON format. Matrices accept dense eta x eta 0/1 arrays or sparse
// pair lists; interference is a sparse [u, v, dir] triplet list.
AssemblyModel model_from_json(const nlohmann::json& j);
AssemblyModel load_model(const std::string& path);

// Canonical form: sparse sorted pair/triplet lists, one object per part.
nlohmann::ordered_json model_to_json(const AssemblyModel& model);
void save_model(const AssemblyModel& model, const std::string& path);

}  // namespace disasm

#endif
