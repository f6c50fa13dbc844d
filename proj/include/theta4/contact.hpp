#pragma once

#include <vector>

#include "theta4/bigcomplex.hpp"
#include "theta4/delpezzo.hpp"
#include "theta4/exact.hpp"

namespace theta4::contact {

// c[k] is the coefficient of s^(d-k) t^k.
struct BinaryForm {
  std::vector<Rational> c;

  int degree() const { return static_cast<int>(c.size()) - 1; }
  bool is_zero() const;
  BinaryForm swapped() const;  // (s:t) -> (t:s)
  friend BinaryForm operator*(const BinaryForm& a, const BinaryForm& b);
  friend BinaryForm operator+(const BinaryForm& a, const BinaryForm& b);
  friend BinaryForm operator*(const Rational& k, const BinaryForm& a);
  friend bool operator==(const BinaryForm& a, const BinaryForm& b) { return a.c == b.c; }
};

BinaryForm binary_power(const BinaryForm& f, int k);

// Plane a(s,t) + b z pulled back along (s,t,z) -> (s^2, st, t^2, z).
struct ConeRestriction {
  BinaryForm a;  // degree 2
  Rational b;
};

ConeRestriction restrict_to_cone(const HomogeneousForm& plane);

// G(s,t) = b^3 * cubic(s^2, st, t^2, -a/b), a binary sextic.
BinaryForm restricted_sextic(const HomogeneousForm& plane, const delpezzo::SpaceSextic& curve);

// Exact h with G = c h^2, c constant, h monic in its leading nonzero coefficient.
// Throws std::runtime_error("... not a perfect square ...") otherwise.
struct SquareRoot {
  BinaryForm h;
  Rational cofactor;
};
SquareRoot binary_square_root(const BinaryForm& g);
BinaryForm contact_cubic(const HomogeneousForm& plane, const delpezzo::SpaceSextic& curve);

using ProjPoint = std::vector<BigComplex>;

// Roots (s:t) of a binary form with rational coefficients, at `precision` digits.
std::vector<std::pair<BigComplex, BigComplex>> binary_roots(const BinaryForm& h, int precision);

// Lifts of the roots of h to (s^2, st, t^2, -a(s,t)/b), normalized to unit max modulus.
std::vector<ProjPoint> contact_points(const BinaryForm& h, const ConeRestriction& r, int precision);

struct ContactDivisor {
  f2::Label label;
  BinaryForm h;
  std::vector<ProjPoint> points;
  int precision = 0;
};

ContactDivisor contact_divisor(const delpezzo::Tritangent& t, const delpezzo::SpaceSextic& curve, int precision);
std::vector<ContactDivisor> all_contacts(const std::vector<delpezzo::Tritangent>& tris,
                                         const delpezzo::SpaceSextic& curve, int precision, int jobs = 0);

// |f(P)| / max|coefficient| at P normalized to unit max modulus.
BigFloat relative_residual(const HomogeneousForm& f, const ProjPoint& p);

}  // namespace theta4::contact
