#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "theta4/bigcomplex.hpp"
#include "theta4/contact.hpp"
#include "theta4/delpezzo.hpp"
#include "theta4/labels.hpp"

namespace theta4::quotient {

using LabelVec = std::vector<int>;
using LabelPair = std::pair<LabelVec, LabelVec>;

// A selection whose determinants or interpolation are numerically degenerate.
struct DegenerateSelection : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Denominator regular, numerator determinant singular.
struct VanishingNumerator : DegenerateSelection {
  using DegenerateSelection::DegenerateSelection;
};

struct RestartsExhausted : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Curve, labeled tritangents and their exact contact cubics.
struct Inventory {
  delpezzo::PointConfig config;
  delpezzo::SpaceSextic curve;
  std::vector<delpezzo::Tritangent> tritangents;
  std::vector<contact::ContactDivisor> contacts;  // same order as tritangents
  int precision = 0;                              // of the stored contact points

  std::size_t index_of(const LabelVec& label) const;
};

Inventory build_inventory(const std::vector<std::vector<Rational>>& points, int precision, int jobs = 0);

struct QuotientRequest {
  LabelVec p1, p2;
  int precision = 60;
  std::uint64_t seed = 0;
  int max_restarts = 8;
  int jobs = 1;
};

struct PairSelection {
  LabelVec q1, q1bar;
  std::vector<LabelPair> r_pairs, s_pairs;  // 5 each; index 3 is the auxiliary pair, index 4 the common one
};

// q1 = smallest member of the Steiner set of p1 + p2 (seed 0), or a seeded-random member.
LabelPair decompose(const LabelVec& p1, const LabelVec& p2, std::uint64_t seed = 0);

// attempt 0 with seed 0 is the lexicographic selection; anything else is drawn from
// a generator seeded by (seed, attempt).
PairSelection select_pairs(const LabelVec& p1, const LabelVec& p2, std::uint64_t seed, int attempt);

// Quadric monomials in graded-lex order: x0^2, x0x1, x0x2, x0x3, x1^2, x1x2, x1x3, x2^2, x2x3, x3^2.
const std::vector<Exponent>& quadric_monomials();

struct TetradQuadric {
  std::vector<LabelVec> labels;
  std::vector<BigComplex> coeffs;  // over quadric_monomials()
  std::vector<BigFloat> singular_values;
  int null_dimension = 0;
};

// Numerical nullspace dimension of the evaluation matrix of the contact points.
struct NullspaceInfo {
  int dimension = 0;
  std::vector<BigFloat> singular_values;    // descending
  std::vector<std::vector<BigComplex>> basis;  // right singular vectors of the null part
};
NullspaceInfo quadric_nullspace(const std::vector<contact::ProjPoint>& points);

// Runs at the current default precision. Throws DegenerateSelection unless the
// nullspace has dimension 2.
TetradQuadric interpolate_tetrad_quadric(const std::vector<LabelVec>& labels,
                                         const std::vector<contact::ProjPoint>& points);

BigComplex evaluate_quadric(const std::vector<BigComplex>& coeffs, const contact::ProjPoint& p);

struct EvalOptions {
  std::vector<Rational> cone_shift;                  // empty, or 8 multiples of the cone (Q^r_1..4, Q^s_1..4)
  std::map<LabelVec, Rational> plane_scale;          // tritangent rescaling
  std::function<BigComplex(const LabelVec&, int)> point_scale;  // multiplier for contact point k
  bool swap_q1 = false;                              // exchange the roles of q1 and q1bar
};

struct QuotientResult {
  BigComplex value;
  std::optional<Rational> exact;
  int sign_exponent = 0;
  int restarts = 0;
  int precision = 0;
  PairSelection selection;
};

// One evaluation of the square-root-free formula for a fixed selection, at `precision`
// digits (guard digits included by the caller). Throws DegenerateSelection.
BigComplex evaluate_selection(const Inventory& inv, const PairSelection& sel, int sign_exponent, int precision,
                              const EvalOptions& opts = {}, int jobs = 1);

QuotientResult assemble_quotient(const QuotientRequest& req, const Inventory& inv, const EvalOptions& opts = {});

// Default height bound 10^(floor(0.4 * precision) - 2).
std::optional<Rational> rational_reconstruct(const BigComplex& x, int precision,
                                             std::optional<Integer> max_height = std::nullopt);

using Line = std::array<Rational, 3>;
// Lines in the order beta_1, beta_2, beta_3, beta_12, beta_13, beta_23.
Rational weber_quotient(const std::array<Line, 6>& lines, int n);

constexpr int kGuardDigits = 20;

// Even label of the theta constant that vanishes because the curve lies on a cone.
inline LabelVec cone_label() { return {9}; }

}  // namespace theta4::quotient
