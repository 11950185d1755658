#pragma once

#include <string>

#include "cdu/ddt.hpp"
#include "cdu/func.hpp"
#include "json.hpp"

namespace cdu {
namespace io {

// {"p": 2, "n": 4, "modulus": [c0, ..., cn]?} — omitted modulus selects the
// default irreducible polynomial.
FieldSpec field_spec_from_json(const nlohmann::json& j);
nlohmann::json field_spec_to_json(const FieldSpec& spec);
FieldRef field_from_json(const nlohmann::json& j, const FieldOptions& opt = {});

// Text table format: header line "p n c0,c1,...,cn", then q lines holding
// the value at x = 0, 1, ..., q-1.
FuncTable parse_table_text(const std::string& text, const FieldOptions& opt = {});
std::string format_table_text(const FuncTable& F);

// JSON variant: {"field": {...}, "values": [v0, ..., v_{q-1}]}.
FuncTable table_from_json(const nlohmann::json& j, const FieldOptions& opt = {});
nlohmann::json table_to_json(const FuncTable& F);

// Path-based load/save; a .json suffix selects the JSON variant.
FuncTable load_table(const std::string& path, const FieldOptions& opt = {});
void save_table(const FuncTable& F, const std::string& path);

// Construction description {"kind": "...", ...}. Kinds: gold {k},
// kasami {k}, inverse, power {e}, poly {coeffs}, identity, constant {v},
// affine {coeffs, step?, shift?}, gold_shift {s, k, alpha},
// piecewise2 {s, f, g}, piecewise3 {s, t, f, g, h}, chain {ks, fs},
// concat {s, pieces}, table {values}, table_file {path}.
FuncTable build_function(FieldRef ctx, const nlohmann::json& spec);

nlohmann::json uniformity_to_json(const UniformityReport& rep);
nlohmann::json scan_to_json(const OutsideScanReport& rep);

// CSV with a header row of b values and one row per a.
std::string ddt_csv(const DdtTable& table);

nlohmann::json load_json(const std::string& path);
std::string load_text(const std::string& path);
void save_text(const std::string& path, const std::string& text);

}  // namespace io
}  // namespace cdu
