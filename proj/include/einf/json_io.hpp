#pragma once

#include <string>

#include "json.hpp"

#include "einf/gamma_mod.hpp"

namespace einf {

using json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

// Module files: either explicit generator matrices or a "builtin" descriptor.
// Faults raise ErrorKind::Schema with a JSON pointer at the front of the message.
Module module_from_json(const json& j, const std::string& where = "");
GradedModule graded_from_json(const json& j);
json module_to_json(const Module& m);
json graded_to_json(const GradedModule& g);

json read_json_file(const std::string& path);
Module load_module(const std::string& path);
GradedModule load_graded(const std::string& path);

json invariants_to_json(const AbelianGroupInvariants& g);

}  // namespace einf
