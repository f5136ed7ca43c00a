#pragma once

// JSON module files. A file names its kind (type_d, type_a, da, complex),
// its algebras ("left", "right"; tags like "WT" or "WA.2"), the generators
// with idempotents and optional gradings, and the operation table:
//
//   {"from": "x", "inputs": ["rho_2", "rho_3"], "coef": "rho_23", "to": "y"}
//
// "inputs" is omitted for delta terms and "coef" for A-infinity operations.
// Alexander gradings may be half-integers; Maslov labels are read mod 2.

#include "borsut/structures.hpp"

#include <string>

namespace borsut {

struct LoadedModule {
    ModPtr module;
    std::string note;
};

// ParseError on malformed files, unknown names or a missing idempotent.
LoadedModule load_module_text(const std::string& text);
LoadedModule load_module(const std::string& path);
// Round-trips through load_module_text; keys in a fixed order.
std::string dump_module_json(const Bimodule& m, const std::string& note = "");

// "WT" (summand 1), "WA.2", "F2".
AlgebraPtr algebra_from_tag(const std::string& tag);

} // namespace borsut
