#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "theta4/bigcomplex.hpp"
#include "theta4/f2.hpp"

namespace theta4::theta {

struct InvalidRiemann : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Exact complex rational, so the matrix can be re-read at any precision.
struct ComplexRational {
  Rational re, im;
  bool operator==(const ComplexRational&) const = default;
};
ComplexRational parse_complex_rational(const std::string& s);  // "1.07847i", "-0.16325", "0.3-2.1e-2i"
std::string to_string(const ComplexRational& z);

struct RiemannMatrix {
  int g = 0;
  int stated_digits = 0;
  std::vector<std::vector<ComplexRational>> tau;
};

struct RiemannDiagnostics {
  double symmetry_defect = 0;   // max |tau_ij - tau_ji|
  double min_eigenvalue = 0;    // of Im tau
  double tolerance = 0;         // 10^(-stated_digits + 1)
};

// Throws InvalidRiemann on a non-square matrix, a symmetry defect above tolerance,
// or Im tau not positive definite.
RiemannDiagnostics validate_riemann(const RiemannMatrix& tau);

// Integer characteristic [eps; eps'] of the series; entries are not reduced mod 2.
struct Characteristic {
  std::vector<int> eps, epsp;
};
Characteristic from_form(const f2::QuadraticForm& q);

struct ThetaValue {
  BigComplex value;
  Characteristic characteristic;
  int truncation_radius = 0;
  BigFloat tail_bound;
};

int truncation_radius(double lambda_min, int g, int digits);

// Series over n + eps/2 with every coordinate within `radius` of -eps/2 (default: the
// radius for `digits`). Runs at digits + 10 working precision; the result carries that
// precision.
ThetaValue theta(const Characteristic& ch, const std::vector<BigComplex>& z, const RiemannMatrix& tau, int digits,
                 std::optional<int> radius = std::nullopt);
ThetaValue theta(const f2::QuadraticForm& q, const std::vector<BigComplex>& z, const RiemannMatrix& tau, int digits);

struct ThetaConstant {
  f2::QuadraticForm characteristic;
  ThetaValue value;
};

// All 2^(2g) constants theta[q](0), in QuadraticForm::index order. jobs == 1 is the
// serial reference; otherwise the 2^g eps-classes are summed in parallel.
std::vector<ThetaConstant> all_theta_constants(const RiemannMatrix& tau, int digits, int jobs = 0);
std::vector<ThetaConstant> all_even_theta_constants(const RiemannMatrix& tau, int digits, int jobs = 0);

// 10^(-(stated_digits - 2)): what a matrix given to stated_digits decimals can support.
double cross_check_tolerance(int stated_digits);

// Even constants with |theta| below the threshold.
std::vector<ThetaConstant> vanishing_constants(const std::vector<ThetaConstant>& even, double threshold);

// Search for the pair (a, b) of non-vanishing even characteristics whose fourth-power
// quotient is closest to the target, restricted to pairs that some symplectic relabeling
// can send (vanishing label, p1, p2) to: the pairing of a - z0 with b - z0 must equal
// `pairing`, the pairing of p1 - z with p2 - z on the label side.
struct PairMatch {
  f2::QuadraticForm a, b, vanishing;
  BigComplex ratio;
  double error = 0;
  int candidates = 0;        // pairs passing the relabeling filter
  int within_tolerance = 0;  // of those, pairs matching to `tolerance`
};
PairMatch match_quotient(const std::vector<ThetaConstant>& even, const BigComplex& target, int pairing,
                         double vanish_threshold, double tolerance);

}  // namespace theta4::theta
