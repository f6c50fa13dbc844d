#include "theta4/quotient.hpp"

#include <algorithm>
#include <random>

#include "theta4/parallel.hpp"

namespace theta4::quotient {

namespace {

const LabelSystem& labels() { return genus4_labels(); }

void require_even(const LabelVec& p, const char* name) {
  bool ok = false;
  try {
    ok = labels().is_even_label(p);
  } catch (const std::invalid_argument&) {
    ok = false;
  }
  if (!ok) throw std::invalid_argument(std::string("label parity: ") + name + " must be an even label");
}

std::mt19937_64 rng_for(std::uint64_t seed, int attempt) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(attempt), 0x7e7au};
  return std::mt19937_64(seq);
}

BigComplex monomial_value(const Exponent& e, const contact::ProjPoint& p) {
  BigComplex v(BigFloat(1));
  for (std::size_t i = 0; i < e.size(); ++i)
    for (int k = 0; k < e[i]; ++k) v *= p[i];
  return v;
}

std::vector<BigComplex> cone_vector() {
  std::vector<BigComplex> c(quadric_monomials().size());
  for (std::size_t k = 0; k < c.size(); ++k) {
    if (quadric_monomials()[k] == Exponent{0, 2, 0, 0}) c[k] = BigComplex(BigFloat(1));
    if (quadric_monomials()[k] == Exponent{1, 0, 1, 0}) c[k] = BigComplex(BigFloat(-1));
  }
  return c;
}

BigComplex hdot(const std::vector<BigComplex>& a, const std::vector<BigComplex>& b) {
  BigComplex s;
  for (std::size_t i = 0; i < a.size(); ++i) s += conj(a[i]) * b[i];
  return s;
}

BigComplex det3(const std::array<std::array<BigComplex, 3>, 3>& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

// det[Q_j(P_i)], j = 0..2, with the conditioning test.
BigComplex checked_det(const std::vector<std::vector<BigComplex>>& q, const std::vector<contact::ProjPoint>& pts,
                       const BigFloat& tol) {
  std::array<std::array<BigComplex, 3>, 3> m;
  BigFloat scale = 1;
  for (std::size_t i = 0; i < 3; ++i) {
    BigFloat rowmax = 0;
    for (std::size_t j = 0; j < 3; ++j) {
      m[i][j] = evaluate_quadric(q[j], pts[i]);
      rowmax = std::max(rowmax, abs(m[i][j]));
    }
    scale *= rowmax;
  }
  BigComplex d = det3(m);
  if (scale == 0 || abs(d) < tol * scale) throw DegenerateSelection("quadric determinant is numerically singular");
  return d;
}

BigFloat coeff_scale(const std::vector<BigComplex>& c) {
  BigFloat mx = 0;
  for (const auto& v : c) mx = std::max(mx, abs(v));
  return mx;
}

BigComplex checked_value(const BigComplex& v, const BigFloat& scale, const BigFloat& tol, const char* what) {
  if (abs(v) < tol * scale) throw DegenerateSelection(std::string(what) + " vanishes at a contact point");
  return v;
}

}  // namespace

std::size_t Inventory::index_of(const LabelVec& label) const {
  for (std::size_t i = 0; i < tritangents.size(); ++i)
    if (tritangents[i].label.indices == label) return i;
  throw std::invalid_argument("no tritangent with the requested label");
}

Inventory build_inventory(const std::vector<std::vector<Rational>>& points, int precision, int jobs) {
  Inventory inv;
  inv.config = delpezzo::validate_general_position(points);
  auto data = delpezzo::anticanonical_basis(inv.config);
  inv.curve = delpezzo::build_curve(data);
  inv.tritangents = delpezzo::tritangents(inv.config, data, jobs);
  inv.contacts = contact::all_contacts(inv.tritangents, inv.curve, precision, jobs);
  inv.precision = precision;
  return inv;
}

LabelPair decompose(const LabelVec& p1, const LabelVec& p2, std::uint64_t seed) {
  require_even(p1, "p1");
  require_even(p2, "p2");
  if (p1 == p2) throw std::invalid_argument("decompose needs p1 != p2");
  auto v = f2::symmetric_difference(p1, p2);
  auto pairs = labels().steiner_pairs(v);
  if (seed == 0) return pairs.front();
  auto rng = rng_for(seed, -1);
  auto k = std::uniform_int_distribution<std::size_t>(0, 2 * pairs.size() - 1)(rng);
  const auto& pr = pairs[k / 2];
  return k % 2 == 0 ? pr : LabelPair{pr.second, pr.first};
}

PairSelection select_pairs(const LabelVec& p1, const LabelVec& p2, std::uint64_t seed, int attempt) {
  PairSelection sel;
  if (seed == 0 && attempt == 0) {
    std::tie(sel.q1, sel.q1bar) = decompose(p1, p2, 0);
  } else {
    auto rng = rng_for(seed, attempt);
    std::tie(sel.q1, sel.q1bar) = decompose(p1, p2, rng() | 1u);
  }
  auto r = labels().steiner_pairs(f2::symmetric_difference(p1, sel.q1));
  auto s = labels().steiner_pairs(f2::symmetric_difference(p1, sel.q1bar));
  if (seed != 0 || attempt != 0) {
    auto rng = rng_for(seed, attempt);
    std::shuffle(r.begin(), r.end(), rng);
    std::shuffle(s.begin(), s.end(), rng);
  }
  sel.r_pairs.assign(r.begin(), r.begin() + 5);
  sel.s_pairs.assign(s.begin(), s.begin() + 5);
  return sel;
}

const std::vector<Exponent>& quadric_monomials() {
  static const std::vector<Exponent> m = monomials(4, 2);
  return m;
}

BigComplex evaluate_quadric(const std::vector<BigComplex>& coeffs, const contact::ProjPoint& p) {
  BigComplex acc;
  const auto& mons = quadric_monomials();
  for (std::size_t k = 0; k < mons.size(); ++k) acc += coeffs[k] * monomial_value(mons[k], p);
  return acc;
}

NullspaceInfo quadric_nullspace(const std::vector<contact::ProjPoint>& points) {
  const auto& mons = quadric_monomials();
  const std::size_t m = points.size(), n = mons.size();
  const long digits = static_cast<long>(BigFloat::default_precision());
  // One-sided Jacobi: columns of a are orthogonalized by the same rotations applied to v.
  std::vector<std::vector<BigComplex>> a(n, std::vector<BigComplex>(m)), v(n, std::vector<BigComplex>(n));
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < m; ++i) a[j][i] = monomial_value(mons[j], points[i]);
    v[j][j] = BigComplex(BigFloat(1));
  }
  const BigFloat eps = ten_pow_neg(digits - 2);
  for (int sweep = 0; sweep < 80; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        BigFloat alpha = 0, beta = 0;
        BigComplex gamma;
        for (std::size_t i = 0; i < m; ++i) {
          alpha += norm(a[p][i]);
          beta += norm(a[q][i]);
          gamma += conj(a[p][i]) * a[q][i];
        }
        BigFloat g = abs(gamma);
        if (g == 0 || g <= eps * boost::multiprecision::sqrt(alpha * beta)) continue;
        rotated = true;
        BigComplex phase_conj = conj(gamma) / BigComplex(g);
        BigFloat zeta = (beta - alpha) / (2 * g);
        BigFloat t = (zeta >= 0 ? BigFloat(1) : BigFloat(-1)) /
                     (boost::multiprecision::abs(zeta) + boost::multiprecision::sqrt(1 + zeta * zeta));
        BigFloat c = 1 / boost::multiprecision::sqrt(1 + t * t), s = c * t;
        BigComplex cc(c), ss(s);
        for (auto* mat : {&a, &v}) {
          auto& cp = (*mat)[p];
          auto& cq = (*mat)[q];
          for (std::size_t i = 0; i < cp.size(); ++i) {
            BigComplex x = cp[i], y = cq[i] * phase_conj;
            cp[i] = cc * x - ss * y;
            cq[i] = ss * x + cc * y;
          }
        }
      }
    if (!rotated) break;
  }
  std::vector<std::pair<BigFloat, std::size_t>> sv;
  for (std::size_t j = 0; j < n; ++j) {
    BigFloat s = 0;
    for (const auto& x : a[j]) s += norm(x);
    sv.emplace_back(boost::multiprecision::sqrt(s), j);
  }
  std::sort(sv.begin(), sv.end(), [](const auto& x, const auto& y) { return x.first > y.first; });
  NullspaceInfo info;
  const BigFloat cut = sv.front().first * ten_pow_neg(digits / 2);
  for (const auto& [s, j] : sv) {
    info.singular_values.push_back(s);
    if (s < cut) {
      ++info.dimension;
      info.basis.push_back(v[j]);
    }
  }
  return info;
}

TetradQuadric interpolate_tetrad_quadric(const std::vector<LabelVec>& tetrad, const std::vector<contact::ProjPoint>& pts) {
  auto ns = quadric_nullspace(pts);
  TetradQuadric tq{tetrad, {}, ns.singular_values, ns.dimension};
  if (ns.dimension != 2)
    throw DegenerateSelection("tetrad quadric nullspace has dimension " + std::to_string(ns.dimension));
  auto c = cone_vector();
  const auto& n1 = ns.basis[0];
  const auto& n2 = ns.basis[1];
  BigComplex c1 = hdot(c, n1), c2 = hdot(c, n2);
  // The cone must lie in the span: its component orthogonal to n1, n2 has to vanish.
  std::vector<BigComplex> resid = c;
  for (std::size_t k = 0; k < c.size(); ++k) resid[k] -= n1[k] * conj(c1) + n2[k] * conj(c2);
  BigFloat tol = ten_pow_neg(static_cast<long>(BigFloat::default_precision()) / 2);
  if (coeff_scale(resid) > tol) throw DegenerateSelection("cone is not in the tetrad nullspace");
  std::vector<BigComplex> q(c.size());
  for (std::size_t k = 0; k < c.size(); ++k) q[k] = c2 * n1[k] - c1 * n2[k];
  BigFloat mx = coeff_scale(q);
  if (mx == 0) throw DegenerateSelection("tetrad quadric collapsed onto the cone");
  std::size_t lead = 0;
  while (abs(q[lead]) < mx * ten_pow_neg(10)) ++lead;
  BigComplex l = q[lead];
  for (auto& x : q) x /= l;
  tq.coeffs = std::move(q);
  return tq;
}

BigComplex evaluate_selection(const Inventory& inv, const PairSelection& sel0, int n, int precision,
                              const EvalOptions& opts, int jobs) {
  PairSelection sel = sel0;
  if (opts.swap_q1) {
    std::swap(sel.q1, sel.q1bar);
    std::swap(sel.r_pairs, sel.s_pairs);
  }
  PrecisionScope scope(precision);
  const BigFloat tol = ten_pow_neg(precision / 2);

  std::map<LabelVec, std::vector<contact::ProjPoint>> pts;
  std::map<LabelVec, std::vector<BigComplex>> planes;
  auto need = [&](const LabelVec& l) {
    if (pts.count(l)) return;
    std::size_t i = inv.index_of(l);
    const auto& t = inv.tritangents[i];
    auto p = contact::contact_points(inv.contacts[i].h, contact::restrict_to_cone(t.plane), precision);
    if (opts.point_scale)
      for (std::size_t k = 0; k < p.size(); ++k) {
        BigComplex f = opts.point_scale(l, static_cast<int>(k));
        for (auto& x : p[k]) x *= f;
      }
    pts[l] = p;
    Rational sc = 1;
    if (auto it = opts.plane_scale.find(l); it != opts.plane_scale.end()) sc = it->second;
    std::vector<BigComplex> coeffs;
    for (int v = 0; v < 4; ++v) {
      Exponent e(4, 0);
      e[static_cast<std::size_t>(v)] = 1;
      coeffs.push_back(BigComplex(t.plane.coeff(e) * sc));
    }
    planes[l] = coeffs;
  };
  need(sel.q1);
  need(sel.q1bar);
  for (const auto* side : {&sel.r_pairs, &sel.s_pairs})
    for (const auto& [a, b] : *side) {
      need(a);
      need(b);
    }

  // Q^r_1..4 then Q^s_1..4, each through the tetrad {x_i, x̄_i, x_5, x̄_5}.
  std::vector<std::vector<LabelVec>> tetrads;
  for (const auto* side : {&sel.r_pairs, &sel.s_pairs})
    for (std::size_t i = 0; i < 4; ++i)
      tetrads.push_back({(*side)[i].first, (*side)[i].second, (*side)[4].first, (*side)[4].second});
  std::vector<TetradQuadric> quads(tetrads.size());
  parallel_for(tetrads.size(), jobs, [&](std::size_t k) {
    std::vector<contact::ProjPoint> p;
    for (const auto& l : tetrads[k]) {
      const auto& lp = pts.at(l);
      p.insert(p.end(), lp.begin(), lp.end());
    }
    quads[k] = interpolate_tetrad_quadric(tetrads[k], p);
  });
  if (!opts.cone_shift.empty()) {
    if (opts.cone_shift.size() != quads.size()) throw std::invalid_argument("cone_shift needs 8 entries");
    auto c = cone_vector();
    for (std::size_t k = 0; k < quads.size(); ++k)
      for (std::size_t j = 0; j < c.size(); ++j) quads[k].coeffs[j] += BigComplex(opts.cone_shift[k]) * c[j];
  }
  std::vector<std::vector<BigComplex>> qr, qs;
  for (std::size_t k = 0; k < 3; ++k) {
    qr.push_back(quads[k].coeffs);
    qs.push_back(quads[4 + k].coeffs);
  }
  const auto& qr4 = quads[3].coeffs;
  const auto& qs4 = quads[7].coeffs;
  const auto& A = pts.at(sel.q1);
  const auto& B = pts.at(sel.q1bar);

  BigComplex den = checked_det(qr, B, tol) * checked_det(qs, A, tol);
  BigComplex num;
  try {
    num = checked_det(qs, B, tol) * checked_det(qr, A, tol);
  } catch (const DegenerateSelection&) {
    throw VanishingNumerator("numerator determinant is numerically singular");
  }
  num *= num;
  den *= den;

  auto beta = [&](const LabelVec& l, const contact::ProjPoint& p) {
    const auto& c = planes.at(l);
    BigComplex v;
    for (std::size_t k = 0; k < 4; ++k) v += c[k] * p[k];
    BigFloat pscale = 0;
    for (const auto& x : p) pscale = std::max(pscale, abs(x));
    return checked_value(v, coeff_scale(c) * pscale, tol, "tritangent form");
  };
  auto quad = [&](const std::vector<BigComplex>& q, const contact::ProjPoint& p) {
    BigFloat pscale = 0;
    for (const auto& x : p) pscale = std::max(pscale, abs(x));
    return checked_value(evaluate_quadric(q, p), coeff_scale(q) * pscale * pscale, tol, "auxiliary quadric");
  };
  const auto& r4 = sel.r_pairs[3];
  const auto& s4 = sel.s_pairs[3];
  for (const auto& P : B) {
    BigComplex a = quad(qr4, P), b = quad(qs4, P);
    num *= beta(s4.first, P) * beta(s4.second, P) * a * a;
    den *= beta(r4.first, P) * beta(r4.second, P) * b * b;
  }
  for (const auto& P : A) {
    BigComplex a = quad(qs4, P), b = quad(qr4, P);
    num *= beta(r4.first, P) * beta(r4.second, P) * a * a;
    den *= beta(s4.first, P) * beta(s4.second, P) * b * b;
  }
  BigComplex value = num / den;
  return (n & 1) ? -value : value;
}

QuotientResult assemble_quotient(const QuotientRequest& req, const Inventory& inv, const EvalOptions& opts) {
  require_even(req.p1, "p1");
  require_even(req.p2, "p2");
  if (req.precision < 10) throw std::invalid_argument("precision must be at least 10 digits");
  if (req.max_restarts < 0) throw std::invalid_argument("max_restarts must be non-negative");
  QuotientResult res;
  res.precision = req.precision;
  if (req.p1 == req.p2) {
    PrecisionScope scope(req.precision + kGuardDigits);
    res.value = BigComplex(BigFloat(1));
    res.exact = Rational(1);
    return res;
  }
  res.sign_exponent = genus4_labels().sign_exponent(req.p1, req.p2);
  const int wp = req.precision + kGuardDigits;
  std::string last_error;
  int zero_votes = 0;
  for (int attempt = 0; attempt <= req.max_restarts; ++attempt) {
    PairSelection sel = select_pairs(req.p1, req.p2, req.seed, attempt);
    try {
      res.value = evaluate_selection(inv, sel, res.sign_exponent, wp, opts, req.jobs);
    } catch (const VanishingNumerator& e) {
      // two independent selections with a regular denominator: the quotient is zero
      if (++zero_votes == 2) {
        PrecisionScope scope(wp);
        res.value = BigComplex(BigFloat(0));
        res.exact = Rational(0);
        res.selection = sel;
        res.restarts = attempt;
        return res;
      }
      last_error = e.what();
      continue;
    } catch (const DegenerateSelection& e) {
      last_error = e.what();
      continue;
    }
    res.selection = sel;
    res.restarts = attempt;
    PrecisionScope scope(wp);
    res.exact = rational_reconstruct(res.value, req.precision);
    return res;
  }
  throw RestartsExhausted("all " + std::to_string(req.max_restarts + 1) + " selections degenerate; last: " + last_error);
}

std::optional<Rational> rational_reconstruct(const BigComplex& x, int precision, std::optional<Integer> max_height) {
  Integer h;
  if (max_height) {
    h = *max_height;
  } else {
    mpz_ui_pow_ui(h.get_mpz_t(), 10, static_cast<unsigned long>(std::max(1, static_cast<int>(0.4 * precision) - 2)));
  }
  const BigFloat tol = ten_pow_neg(static_cast<long>(0.8 * precision));
  const BigFloat mag = std::max(BigFloat(1), boost::multiprecision::abs(x.re));
  if (boost::multiprecision::abs(x.im) >= tol * mag) return std::nullopt;
  const BigFloat target = x.re;
  BigFloat y = target;
  Integer p0 = 1, q0 = 0, p1 = 0, q1 = 1;  // convergents h_{k-1}, h_{k-2}
  for (int step = 0; step < 400; ++step) {
    Integer a;
    mpfr_get_z(a.get_mpz_t(), y.backend().data(), MPFR_RNDD);
    Integer p = a * p0 + p1, q = a * q0 + q1;
    if (abs(p) >= h || q >= h) return std::nullopt;
    Rational r(p, q);
    r.canonicalize();
    if (boost::multiprecision::abs(target - to_big(r)) < tol * mag) return r;
    BigFloat frac = y - to_big(Rational(a));
    if (frac == 0) return std::nullopt;
    y = 1 / frac;
    p1 = p0;
    q1 = q0;
    p0 = p;
    q0 = q;
  }
  return std::nullopt;
}

Rational weber_quotient(const std::array<Line, 6>& l, int n) {
  // Indices: 0 -> 1, 1 -> 2, 2 -> 3, 3 -> 12, 4 -> 13, 5 -> 23.
  auto d = [&](int a, int b, int c) -> Rational {
    const auto &x = l[static_cast<std::size_t>(a)], &y = l[static_cast<std::size_t>(b)], &z = l[static_cast<std::size_t>(c)];
    return x[0] * (y[1] * z[2] - y[2] * z[1]) - x[1] * (y[0] * z[2] - y[2] * z[0]) + x[2] * (y[0] * z[1] - y[1] * z[0]);
  };
  Rational num = d(0, 1, 2) * d(0, 3, 4) * d(3, 1, 5) * d(4, 5, 2);
  Rational den = d(5, 4, 3) * d(5, 2, 1) * d(2, 4, 0) * d(1, 0, 3);
  if (den == 0) throw std::invalid_argument("a denominator determinant vanishes");
  Rational v = num / den;
  return (n & 1) ? Rational(-v) : v;
}

}  // namespace theta4::quotient
