#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "theta4/exact.hpp"
#include "theta4/f2.hpp"

namespace theta4::delpezzo {

struct PointConfig {
  std::vector<std::vector<Rational>> points;  // 8 points, last nonzero coordinate 1
};

// Throws std::invalid_argument naming the violated condition.
PointConfig validate_general_position(const std::vector<std::vector<Rational>>& points);

const std::vector<std::string>& plane_vars();  // x, y, z
const std::vector<std::string>& space_vars();  // x0..x3

// Weighted polynomial in (s, t, z[, w]) with weights (1, 1, 2[, 3]).
using WeightedPoly = std::map<std::vector<int>, Rational>;

struct AnticanonicalData {
  HomogeneousForm s, t, z, w;
  // Weighted-degree-6 relation among s, t, z, w with w^2 coefficient 1.
  WeightedPoly relation;
  // After completing the square in w: (w + a/2)^2 = branch(s, t, z).
  WeightedPoly branch;
  int cubic_dim = 0, sextic_dim = 0, nonic_dim = 0;

  // Binary forms f_{2k} with branch = c z^3 + f2 z^2 + f4 z + f6; c kept separately.
  Rational z3_coefficient() const;
  HomogeneousForm binary_coefficient(int zpower) const;  // variables s, t
};

// Echelon conventions: monomial columns in grevlex order (x > y > z).
AnticanonicalData anticanonical_basis(const PointConfig& cfg);

struct SpaceSextic {
  HomogeneousForm cone;   // x1^2 - x0 x2
  HomogeneousForm cubic;  // monic in its leading graded-lex term
};

SpaceSextic build_curve(const AnticanonicalData& data);

enum class ExceptionalType { T06, T15, T24, T33 };
std::string type_name(ExceptionalType t);  // "(0,6)" ...
ExceptionalType parse_type(const std::string& s);

struct Tritangent {
  HomogeneousForm plane;  // linear in x0..x3, monic in its first nonzero coefficient
  f2::Label label;
  ExceptionalType type = ExceptionalType::T33;
  std::vector<int> source;  // plane point indices of the exceptional pair
};

// All 120 planes, labeled; jobs as in parallel_for.
std::vector<Tritangent> tritangents(const PointConfig& cfg, const AnticanonicalData& data, int jobs = 0);

// Fills in labels from type and source.
void label_tritangents(std::vector<Tritangent>& tris);
f2::Label label_for(ExceptionalType type, const std::vector<int>& source);

// Plane sextic double at all eight points for an exceptional pair.
HomogeneousForm exceptional_sextic(const PointConfig& cfg, ExceptionalType type, const std::vector<int>& source);

// Unique curve of the given degree with the given multiplicities; throws otherwise.
HomogeneousForm unique_plane_curve(const PointConfig& cfg, int degree, const std::vector<int>& mults);

// Coordinates of a sextic in the basis {s^2, st, t^2, z}, or throws.
std::array<Rational, 4> sextic_coordinates(const AnticanonicalData& data, const HomogeneousForm& sextic);

}  // namespace theta4::delpezzo
