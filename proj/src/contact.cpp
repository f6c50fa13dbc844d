#include "theta4/contact.hpp"

#include <algorithm>
#include <stdexcept>

#include "theta4/parallel.hpp"

namespace theta4::contact {

namespace {

void trim_zero(BinaryForm& f) {
  if (f.c.empty()) f.c.push_back(0);
}

// Dehomogenize at t = 1: coefficient of s^m is c[d - m].
UniPoly dehomogenize(const BinaryForm& f) {
  std::vector<Rational> u(f.c.rbegin(), f.c.rend());
  return UniPoly(std::move(u));
}

BinaryForm homogenize(const UniPoly& p, int degree) {
  BinaryForm f{std::vector<Rational>(static_cast<std::size_t>(degree + 1), Rational(0))};
  for (int m = 0; m <= p.degree(); ++m) f.c[static_cast<std::size_t>(degree - m)] = p[m];
  return f;
}

UniPoly exact_div(const UniPoly& a, const UniPoly& b) {
  auto [q, r] = divmod(a, b);
  if (!r.is_zero()) throw std::logic_error("inexact polynomial division");
  return q;
}

// Yun's square-free decomposition: returns a_1, a_2, ... with f = lc * prod a_i^i.
std::vector<UniPoly> squarefree_parts(const UniPoly& f0) {
  std::vector<UniPoly> parts;
  if (f0.degree() <= 0) return parts;
  UniPoly f = f0.monic();
  UniPoly a0 = poly_gcd_univariate(f, f.derivative());
  UniPoly b = exact_div(f, a0);
  UniPoly d = exact_div(f.derivative(), a0) - b.derivative();
  while (b.degree() > 0) {
    UniPoly a = poly_gcd_univariate(b, d);
    parts.push_back(a);
    b = exact_div(b, a);
    d = exact_div(d, a) - b.derivative();
  }
  return parts;
}

BigComplex big(const Rational& r) { return BigComplex(to_big(r)); }

BigComplex eval_uni(const std::vector<BigComplex>& coeffs_low_first, const BigComplex& x) {
  BigComplex acc;
  for (std::size_t i = coeffs_low_first.size(); i-- > 0;) acc = acc * x + coeffs_low_first[i];
  return acc;
}

// Roots of a monic polynomial of degree <= 3 by closed form.
std::vector<BigComplex> closed_form_roots(const std::vector<BigComplex>& m) {
  const int deg = static_cast<int>(m.size()) - 1;
  if (deg == 0) return {};
  if (deg == 1) return {-m[0]};
  if (deg == 2) {
    BigComplex b = m[1], c = m[0];
    BigComplex disc = sqrt(b * b - BigComplex(BigFloat(4)) * c);
    // Avoid cancellation: q = -(b + sign * disc) / 2 with |q| maximal.
    BigComplex q1 = b + disc, q2 = b - disc;
    BigComplex q = (norm(q1) >= norm(q2) ? q1 : q2) * BigComplex(BigFloat(-0.5));
    if (norm(q) == 0) return {BigComplex(), BigComplex()};
    return {q, c / q};
  }
  BigComplex a = m[2], b = m[1], c = m[0];
  BigComplex three(BigFloat(3)), two(BigFloat(2)), a3 = a / three;
  BigComplex p = b - a * a3;
  BigComplex q = two * a3 * a3 * a3 - a3 * b + c;
  BigComplex d = sqrt(q * q / BigComplex(BigFloat(4)) + p * p * p / BigComplex(BigFloat(27)));
  BigComplex half_q = q / two;
  BigComplex u1 = -half_q + d, u2 = -half_q - d;
  BigComplex u3 = norm(u1) >= norm(u2) ? u1 : u2;
  std::vector<BigComplex> roots;
  if (norm(u3) == 0) {
    for (int k = 0; k < 3; ++k) roots.push_back(-a3);
    return roots;
  }
  BigComplex u = cbrt(u3);
  BigFloat h = boost::multiprecision::sqrt(BigFloat(3)) / 2;
  BigComplex w(BigFloat(-0.5), h);
  BigComplex wk(BigFloat(1));
  for (int k = 0; k < 3; ++k) {
    BigComplex uk = wk * u;
    roots.push_back(uk - p / (three * uk) - a3);
    wk *= w;
  }
  return roots;
}

}  // namespace

bool BinaryForm::is_zero() const {
  return std::all_of(c.begin(), c.end(), [](const Rational& v) { return v == 0; });
}

BinaryForm BinaryForm::swapped() const { return BinaryForm{std::vector<Rational>(c.rbegin(), c.rend())}; }

BinaryForm operator*(const BinaryForm& a, const BinaryForm& b) {
  BinaryForm r{std::vector<Rational>(a.c.size() + b.c.size() - 1, Rational(0))};
  for (std::size_t i = 0; i < a.c.size(); ++i)
    for (std::size_t j = 0; j < b.c.size(); ++j) r.c[i + j] += a.c[i] * b.c[j];
  return r;
}

BinaryForm operator+(const BinaryForm& a, const BinaryForm& b) {
  if (a.c.size() != b.c.size()) throw std::invalid_argument("binary forms of different degrees");
  BinaryForm r = a;
  for (std::size_t i = 0; i < b.c.size(); ++i) r.c[i] += b.c[i];
  return r;
}

BinaryForm operator*(const Rational& k, const BinaryForm& a) {
  BinaryForm r = a;
  for (auto& v : r.c) v *= k;
  return r;
}

BinaryForm binary_power(const BinaryForm& f, int k) {
  BinaryForm r{{Rational(1)}};
  for (int i = 0; i < k; ++i) r = r * f;
  return r;
}

ConeRestriction restrict_to_cone(const HomogeneousForm& plane) {
  if (plane.degree() != 1 || plane.nvars() != 4) throw std::invalid_argument("expected a plane in x0..x3");
  ConeRestriction r;
  r.a.c = {plane.coeff({1, 0, 0, 0}), plane.coeff({0, 1, 0, 0}), plane.coeff({0, 0, 1, 0})};
  r.b = plane.coeff({0, 0, 0, 1});
  if (r.b == 0) throw std::invalid_argument("plane passes through the cone vertex (x3 coefficient is zero)");
  return r;
}

BinaryForm restricted_sextic(const HomogeneousForm& plane, const delpezzo::SpaceSextic& curve) {
  auto r = restrict_to_cone(plane);
  BinaryForm neg_a = Rational(-1) * r.a;
  BinaryForm g{std::vector<Rational>(7, Rational(0))};
  for (const auto& [e, coef] : curve.cubic.terms()) {
    // x0^i x1^j x2^k x3^l -> s^(2i+j) t^(j+2k) (-a)^l b^(3-l)
    int i = e[0], j = e[1], k = e[2], l = e[3];
    BinaryForm mono{std::vector<Rational>(static_cast<std::size_t>(2 * (i + j + k) + 1), Rational(0))};
    mono.c[static_cast<std::size_t>(j + 2 * k)] = 1;
    Rational bp = 1;
    for (int n = 0; n < 3 - l; ++n) bp *= r.b;
    g = g + (coef * bp) * (mono * binary_power(neg_a, l));
  }
  trim_zero(g);
  return g;
}

SquareRoot binary_square_root(const BinaryForm& g) {
  if (g.is_zero()) throw std::runtime_error("restricted sextic vanishes identically, not a perfect square");
  if (g.degree() % 2 != 0) throw std::runtime_error("odd-degree binary form is not a perfect square");
  const int d = g.degree();
  UniPoly gu = dehomogenize(g);
  int t_mult = d - gu.degree();  // multiplicity of the root (1:0)
  if (t_mult % 2 != 0) throw std::runtime_error("binary form is not a perfect square (odd multiplicity at infinity)");
  UniPoly hu(std::vector<Rational>{Rational(1)});
  auto parts = squarefree_parts(gu);
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const int mult = static_cast<int>(i) + 1;
    if (parts[i].degree() <= 0) continue;
    if (mult % 2 != 0) throw std::runtime_error("binary form is not a perfect square");
    for (int k = 0; k < mult / 2; ++k) hu = hu * parts[i];
  }
  SquareRoot out;
  out.h = homogenize(hu, d / 2);
  auto lead = std::find_if(out.h.c.begin(), out.h.c.end(), [](const Rational& v) { return v != 0; });
  Rational l = *lead;
  for (auto& v : out.h.c) v /= l;
  BinaryForm h2 = out.h * out.h;
  // cofactor from the first nonzero coefficient, then an exact comparison.
  std::size_t k = 0;
  while (h2.c[k] == 0) ++k;
  out.cofactor = g.c[k] / h2.c[k];
  if (!(out.cofactor * h2 == g)) throw std::runtime_error("binary form is not a perfect square up to a constant");
  return out;
}

BinaryForm contact_cubic(const HomogeneousForm& plane, const delpezzo::SpaceSextic& curve) {
  auto sq = binary_square_root(restricted_sextic(plane, curve));
  if (sq.h.degree() != 3) throw std::runtime_error("contact form does not have degree 3");
  return sq.h;
}

namespace {

// Both helpers run at the current default precision and never touch it.
std::vector<std::pair<BigComplex, BigComplex>> roots_here(const BinaryForm& h, int precision) {
  std::vector<std::pair<BigComplex, BigComplex>> out;
  const int d = h.degree();
  int lead_zero = 0;
  while (lead_zero <= d && h.c[static_cast<std::size_t>(lead_zero)] == 0) ++lead_zero;
  if (lead_zero > d) throw std::invalid_argument("zero binary form has no roots");
  for (int k = 0; k < lead_zero; ++k) out.emplace_back(BigComplex(BigFloat(1)), BigComplex());
  // Remaining roots solve sum_{k>=lead_zero} c_k x^(d-k) = 0 with x = s/t.
  const int m = d - lead_zero;
  std::vector<BigComplex> exact_low;  // low degree first, original scale
  for (int p = 0; p <= m; ++p) exact_low.push_back(big(h.c[static_cast<std::size_t>(d - p)]));
  std::vector<BigComplex> monic_low;
  for (const auto& c : exact_low) monic_low.push_back(c / exact_low.back());
  auto roots = closed_form_roots(monic_low);
  std::vector<BigComplex> deriv;
  for (int p = 1; p <= m; ++p) deriv.push_back(exact_low[static_cast<std::size_t>(p)] * BigComplex(BigFloat(p)));
  BigFloat tol = ten_pow_neg(precision - 5);
  for (auto& x : roots) {
    for (int step = 0; step < 4; ++step) {
      BigComplex dv = eval_uni(deriv, x);
      if (norm(dv) == 0) break;  // repeated root: leave the closed form value
      BigComplex dx = eval_uni(exact_low, x) / dv;
      x -= dx;
      BigFloat scale = abs(x) > 1 ? abs(x) : BigFloat(1);
      if (abs(dx) <= tol * scale) break;
    }
    out.emplace_back(x, BigComplex(BigFloat(1)));
  }
  return out;
}

std::vector<ProjPoint> lift_here(const BinaryForm& h, const ConeRestriction& r, int precision) {
  auto roots = roots_here(h, precision);
  std::vector<ProjPoint> pts;
  BigComplex b = big(r.b);
  for (const auto& [s, t] : roots) {
    BigComplex a = big(r.a.c[0]) * s * s + big(r.a.c[1]) * s * t + big(r.a.c[2]) * t * t;
    pts.push_back(normalize_max_modulus({s * s, s * t, t * t, -a / b}));
  }
  return pts;
}

}  // namespace

std::vector<std::pair<BigComplex, BigComplex>> binary_roots(const BinaryForm& h, int precision) {
  PrecisionScope scope(precision);
  return roots_here(h, precision);
}

std::vector<ProjPoint> contact_points(const BinaryForm& h, const ConeRestriction& r, int precision) {
  PrecisionScope scope(precision);
  return lift_here(h, r, precision);
}

ContactDivisor contact_divisor(const delpezzo::Tritangent& t, const delpezzo::SpaceSextic& curve, int precision) {
  ContactDivisor d;
  d.label = t.label;
  d.h = contact_cubic(t.plane, curve);
  d.points = contact_points(d.h, restrict_to_cone(t.plane), precision);
  d.precision = precision;
  return d;
}

std::vector<ContactDivisor> all_contacts(const std::vector<delpezzo::Tritangent>& tris,
                                         const delpezzo::SpaceSextic& curve, int precision, int jobs) {
  // The default precision is process-wide: set it once here, workers only read it.
  std::vector<ContactDivisor> out(tris.size());
  PrecisionScope scope(precision);
  parallel_for(tris.size(), jobs, [&](std::size_t i) {
    out[i].label = tris[i].label;
    out[i].h = contact_cubic(tris[i].plane, curve);
    out[i].points = lift_here(out[i].h, restrict_to_cone(tris[i].plane), precision);
    out[i].precision = precision;
  });
  return out;
}

BigFloat relative_residual(const HomogeneousForm& f, const ProjPoint& p) {
  auto q = normalize_max_modulus(p);
  BigFloat mx = 0;
  for (const auto& [e, c] : f.terms()) mx = std::max(mx, boost::multiprecision::abs(to_big(c)));
  if (mx == 0) return BigFloat(0);
  return abs(evaluate(f, q)) / mx;
}

}  // namespace theta4::contact
