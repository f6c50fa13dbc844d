#pragma once

#include <json.hpp>

#include <stdexcept>
#include <string>

#include "theta4/quotient.hpp"
#include "theta4/theta.hpp"

namespace theta4::io {

using nlohmann::json;

// Malformed or unreadable input; the CLI maps it to exit code 2.
struct InputError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

json read_json_file(const std::string& path);
// Pretty-printed with a trailing newline; identical values give identical bytes.
void write_json_file(const std::string& path, const json& j);

// {"variables": [...], "degree": d, "terms": {"i,j,k,l": "p/q", ...}}
json to_json(const HomogeneousForm& f);
HomogeneousForm form_from_json(const json& j);

// {"points": [["x","y","z"], ...]}
json points_to_json(const std::vector<std::vector<Rational>>& pts);
std::vector<std::vector<Rational>> points_from_json(const json& j);
// Hex FNV-1a digest of the canonical points document.
std::string points_digest(const std::vector<std::vector<Rational>>& pts);

json to_json(const delpezzo::Tritangent& t);
json to_json(const quotient::Inventory& inv);
quotient::Inventory inventory_from_json(const json& j);

json to_json(const quotient::QuotientRequest& r);
quotient::QuotientRequest request_from_json(const json& j);
json to_json(const quotient::QuotientResult& r);

json to_json(const theta::RiemannMatrix& m);
theta::RiemannMatrix riemann_from_json(const json& j);

std::vector<int> parse_label_list(const std::string& s);  // "1,2,3,4,5"

}  // namespace theta4::io
