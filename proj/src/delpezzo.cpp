#include "theta4/delpezzo.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "theta4/parallel.hpp"

namespace theta4::delpezzo {

namespace {

std::string pname(std::size_t i) { return "P" + std::to_string(i + 1); }

Rational det3(const std::vector<Rational>& a, const std::vector<Rational>& b, const std::vector<Rational>& c) {
  return a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) + a[2] * (b[0] * c[1] - b[1] * c[0]);
}

// Column permutation listing degree-d monomials (graded-lex basis) in grevlex-descending order.
std::vector<std::size_t> grevlex_order(const std::vector<Exponent>& basis) {
  std::vector<std::size_t> idx(basis.size());
  std::iota(idx.begin(), idx.end(), 0);
  auto key = [&](std::size_t i) {
    std::vector<int> k;
    for (auto it = basis[i].rbegin(); it != basis[i].rend(); ++it) k.push_back(-*it);
    return k;
  };
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return key(a) > key(b); });
  return idx;
}

// Grevlex reduced-echelon basis of the curves of degree d with the given multiplicities.
std::vector<HomogeneousForm> echelon_system(const PointConfig& cfg, int degree, const std::vector<int>& mults) {
  auto basis = monomials(3, degree);
  auto ns = nullspace(vanishing_matrix(cfg.points, degree, mults), basis.size());
  auto rows = reduced_echelon(ns, grevlex_order(basis));
  std::vector<HomogeneousForm> out;
  for (const auto& r : rows) out.push_back(HomogeneousForm::from_dense(plane_vars(), degree, basis, r));
  return out;
}

bool in_span(const std::vector<HomogeneousForm>& gens, const HomogeneousForm& f) {
  auto basis = monomials(3, f.degree());
  RationalMatrix a(basis.size(), std::vector<Rational>(gens.size()));
  for (std::size_t j = 0; j < gens.size(); ++j) {
    auto col = gens[j].dense(basis);
    for (std::size_t i = 0; i < basis.size(); ++i) a[i][j] = col[i];
  }
  return solve(a, f.dense(basis)).has_value();
}

WeightedPoly wmul(const WeightedPoly& a, const WeightedPoly& b) {
  WeightedPoly out;
  for (const auto& [ea, ca] : a)
    for (const auto& [eb, cb] : b) {
      std::vector<int> e(ea.size());
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      out[e] += ca * cb;
    }
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return out;
}

}  // namespace

const std::vector<std::string>& plane_vars() {
  static const std::vector<std::string> v{"x", "y", "z"};
  return v;
}

const std::vector<std::string>& space_vars() {
  static const std::vector<std::string> v{"x0", "x1", "x2", "x3"};
  return v;
}

PointConfig validate_general_position(const std::vector<std::vector<Rational>>& raw) {
  if (raw.size() != 8) throw std::invalid_argument("expected 8 points, got " + std::to_string(raw.size()));
  PointConfig cfg;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (raw[i].size() != 3) throw std::invalid_argument(pname(i) + " is not a plane point");
    auto p = raw[i];
    auto last = std::find_if(p.rbegin(), p.rend(), [](const Rational& c) { return c != 0; });
    if (last == p.rend()) throw std::invalid_argument(pname(i) + " is the zero vector");
    Rational sc = *last;
    for (auto& c : p) c /= sc;
    cfg.points.push_back(p);
  }
  const auto& P = cfg.points;
  for (std::size_t i = 0; i < 8; ++i)
    for (std::size_t j = i + 1; j < 8; ++j)
      if (P[i] == P[j]) throw std::invalid_argument("duplicate points " + pname(i) + ", " + pname(j));
  for (std::size_t i = 0; i < 8; ++i)
    for (std::size_t j = i + 1; j < 8; ++j)
      for (std::size_t k = j + 1; k < 8; ++k)
        if (det3(P[i], P[j], P[k]) == 0)
          throw std::invalid_argument("collinear points " + pname(i) + ", " + pname(j) + ", " + pname(k));
  for (std::size_t skip1 = 0; skip1 < 8; ++skip1)
    for (std::size_t skip2 = skip1 + 1; skip2 < 8; ++skip2) {
      std::vector<std::vector<Rational>> six;
      for (std::size_t i = 0; i < 8; ++i)
        if (i != skip1 && i != skip2) six.push_back(P[i]);
      if (rank(vanishing_matrix(six, 2, std::vector<int>(6, 1)), 6) < 6)
        throw std::invalid_argument("six points on a conic (all but " + pname(skip1) + ", " + pname(skip2) + ")");
    }
  for (std::size_t i = 0; i < 8; ++i) {
    std::vector<int> m(8, 1);
    m[i] = 2;
    if (!nullspace(vanishing_matrix(P, 3, m), 10).empty())
      throw std::invalid_argument("a cubic through all eight points is singular at " + pname(i));
  }
  return cfg;
}

Rational AnticanonicalData::z3_coefficient() const {
  auto it = branch.find({0, 0, 3});
  return it == branch.end() ? Rational(0) : it->second;
}

HomogeneousForm AnticanonicalData::binary_coefficient(int zpower) const {
  HomogeneousForm f({"s", "t"}, 6 - 2 * zpower);
  for (const auto& [e, c] : branch)
    if (e[2] == zpower) f.set({e[0], e[1]}, c);
  return f;
}

AnticanonicalData anticanonical_basis(const PointConfig& cfg) {
  AnticanonicalData d;
  auto cubics = echelon_system(cfg, 3, std::vector<int>(8, 1));
  d.cubic_dim = static_cast<int>(cubics.size());
  if (d.cubic_dim != 2) throw std::runtime_error("cubics through the eight points: dimension " + std::to_string(d.cubic_dim));
  d.s = cubics[0];
  d.t = cubics[1];

  auto sextics = echelon_system(cfg, 6, std::vector<int>(8, 2));
  d.sextic_dim = static_cast<int>(sextics.size());
  if (d.sextic_dim != 4) throw std::runtime_error("double sextics: dimension " + std::to_string(d.sextic_dim));
  std::vector<HomogeneousForm> quad{d.s * d.s, d.s * d.t, d.t * d.t};
  for (const auto& q : quad)
    if (!in_span(sextics, q)) throw std::runtime_error("products of the cubic pencil are not double sextics");
  d.z = sextics[3];
  if (in_span(quad, d.z)) throw std::runtime_error("echelon sextic lies in the span of s^2, st, t^2");

  auto nonics = echelon_system(cfg, 9, std::vector<int>(8, 3));
  d.nonic_dim = static_cast<int>(nonics.size());
  if (d.nonic_dim != 7) throw std::runtime_error("triple nonics: dimension " + std::to_string(d.nonic_dim));
  std::vector<HomogeneousForm> cubes{d.s * quad[0], d.s * quad[1], d.s * quad[2], d.t * quad[2], d.s * d.z, d.t * d.z};
  bool found = false;
  for (const auto& n : nonics)
    if (!in_span(cubes, n)) {
      d.w = n;
      found = true;
      break;
    }
  if (!found) throw std::runtime_error("no new generator among the triple nonics");

  // Weighted-degree-6 monomials s^a t^b z^c w^e, evaluated as plane polynomials of degree 18.
  std::vector<std::vector<int>> wm;
  for (int e = 0; e <= 2; ++e)
    for (int c = 0; c <= 3; ++c) {
      int rem = 6 - 3 * e - 2 * c;
      if (rem < 0) continue;
      for (int a = rem; a >= 0; --a) wm.push_back({a, rem - a, c, e});
    }
  std::vector<HomogeneousForm> sp, tp, zp, wp;
  for (int k = 0; k <= 6; ++k) {
    sp.push_back(d.s.pow(k));
    tp.push_back(d.t.pow(k));
  }
  for (int k = 0; k <= 3; ++k) zp.push_back(d.z.pow(k));
  for (int k = 0; k <= 2; ++k) wp.push_back(d.w.pow(k));
  auto basis18 = monomials(3, 18);
  RationalMatrix m(basis18.size(), std::vector<Rational>(wm.size()));
  for (std::size_t j = 0; j < wm.size(); ++j) {
    const auto& e = wm[j];
    auto prod = sp[static_cast<std::size_t>(e[0])] * tp[static_cast<std::size_t>(e[1])] *
                zp[static_cast<std::size_t>(e[2])] * wp[static_cast<std::size_t>(e[3])];
    auto col = prod.dense(basis18);
    for (std::size_t i = 0; i < basis18.size(); ++i) m[i][j] = col[i];
  }
  auto ns = nullspace(m, wm.size());
  if (ns.size() != 1) throw std::runtime_error("weighted relation space has dimension " + std::to_string(ns.size()));
  Rational w2;
  for (std::size_t j = 0; j < wm.size(); ++j)
    if (wm[j] == std::vector<int>{0, 0, 0, 2}) w2 = ns[0][j];
  if (w2 == 0) throw std::runtime_error("relation has no w^2 term");
  WeightedPoly lin, rest;
  for (std::size_t j = 0; j < wm.size(); ++j) {
    Rational c = ns[0][j] / w2;
    if (c == 0) continue;
    d.relation[wm[j]] = c;
    std::vector<int> stz(wm[j].begin(), wm[j].begin() + 3);
    if (wm[j][3] == 1) lin[stz] = c;
    if (wm[j][3] == 0) rest[stz] = c;
  }
  // w^2 + a w + r = 0  =>  (w + a/2)^2 = a^2/4 - r.
  d.branch = wmul(lin, lin);
  for (auto& [e, c] : d.branch) c /= 4;
  for (const auto& [e, c] : rest) d.branch[e] -= c;
  std::erase_if(d.branch, [](const auto& kv) { return kv.second == 0; });
  return d;
}

SpaceSextic build_curve(const AnticanonicalData& data) {
  SpaceSextic c{HomogeneousForm(space_vars(), 2), HomogeneousForm(space_vars(), 3)};
  c.cone.set({0, 2, 0, 0}, 1);
  c.cone.set({1, 0, 1, 0}, -1);
  for (const auto& [e, coef] : data.branch) {
    int i = e[0], j = e[1], k = e[2];
    if ((i + j) % 2 != 0 || i + j + 2 * k != 6) throw std::logic_error("branch term of wrong weight");
    Exponent x = (i % 2 == 0) ? Exponent{i / 2, 0, j / 2, k} : Exponent{(i - 1) / 2, 1, (j - 1) / 2, k};
    c.cubic.add_term(x, coef);
  }
  c.cubic = c.cubic.monic();
  return c;
}

std::string type_name(ExceptionalType t) {
  switch (t) {
    case ExceptionalType::T06: return "(0,6)";
    case ExceptionalType::T15: return "(1,5)";
    case ExceptionalType::T24: return "(2,4)";
    case ExceptionalType::T33: return "(3,3)";
  }
  return "?";
}

ExceptionalType parse_type(const std::string& s) {
  for (auto t : {ExceptionalType::T06, ExceptionalType::T15, ExceptionalType::T24, ExceptionalType::T33})
    if (type_name(t) == s) return t;
  throw std::invalid_argument("unknown exceptional type '" + s + "'");
}

f2::Label label_for(ExceptionalType type, const std::vector<int>& src) {
  std::vector<int> idx;
  auto all_but = [&](std::vector<int> skip) {
    std::vector<int> out;
    for (int i = 1; i <= 8; ++i)
      if (std::find(skip.begin(), skip.end(), i) == skip.end()) out.push_back(i);
    return out;
  };
  switch (type) {
    case ExceptionalType::T06: idx = all_but(src); break;
    case ExceptionalType::T15:
      idx = all_but(src);
      idx.push_back(9);
      break;
    case ExceptionalType::T24: idx = src; break;
    case ExceptionalType::T33:
      idx = src;
      idx.push_back(9);
      break;
  }
  return f2::Label::make(4, idx);
}

void label_tritangents(std::vector<Tritangent>& tris) {
  std::vector<std::vector<int>> seen;
  for (auto& t : tris) {
    t.label = label_for(t.type, t.source);
    if (std::find(seen.begin(), seen.end(), t.label.indices) != seen.end())
      throw std::runtime_error("label collision");
    seen.push_back(t.label.indices);
  }
}

HomogeneousForm unique_plane_curve(const PointConfig& cfg, int degree, const std::vector<int>& mults) {
  auto basis = monomials(3, degree);
  auto ns = nullspace(vanishing_matrix(cfg.points, degree, mults), basis.size());
  if (ns.size() != 1)
    throw std::runtime_error("expected a unique curve of degree " + std::to_string(degree) + ", found dimension " +
                             std::to_string(ns.size()));
  return HomogeneousForm::from_dense(plane_vars(), degree, basis, ns[0]);
}

HomogeneousForm exceptional_sextic(const PointConfig& cfg, ExceptionalType type, const std::vector<int>& src) {
  auto with = [](int base, const std::vector<int>& idx, int val) {
    std::vector<int> m(8, base);
    for (int i : idx) m[static_cast<std::size_t>(i - 1)] = val;
    return m;
  };
  switch (type) {
    case ExceptionalType::T06: return unique_plane_curve(cfg, 6, with(2, src, 3));
    case ExceptionalType::T15:
      return unique_plane_curve(cfg, 1, with(0, src, 1)) * unique_plane_curve(cfg, 5, with(2, src, 1));
    case ExceptionalType::T24:
      return unique_plane_curve(cfg, 2, with(1, src, 0)) * unique_plane_curve(cfg, 4, with(1, src, 2));
    case ExceptionalType::T33: {
      auto ci = with(1, {src[0]}, 2);
      ci[static_cast<std::size_t>(src[1] - 1)] = 0;
      auto cj = with(1, {src[1]}, 2);
      cj[static_cast<std::size_t>(src[0] - 1)] = 0;
      return unique_plane_curve(cfg, 3, ci) * unique_plane_curve(cfg, 3, cj);
    }
  }
  throw std::logic_error("bad exceptional type");
}

std::array<Rational, 4> sextic_coordinates(const AnticanonicalData& data, const HomogeneousForm& sextic) {
  auto basis = monomials(3, 6);
  std::vector<HomogeneousForm> gens{data.s * data.s, data.s * data.t, data.t * data.t, data.z};
  RationalMatrix a(basis.size(), std::vector<Rational>(4));
  for (std::size_t j = 0; j < 4; ++j) {
    auto col = gens[j].dense(basis);
    for (std::size_t i = 0; i < basis.size(); ++i) a[i][j] = col[i];
  }
  auto x = solve(a, sextic.dense(basis));
  if (!x) throw std::runtime_error("sextic is not in the span of s^2, st, t^2, z");
  return {(*x)[0], (*x)[1], (*x)[2], (*x)[3]};
}

std::vector<Tritangent> tritangents(const PointConfig& cfg, const AnticanonicalData& data, int jobs) {
  std::vector<Tritangent> tris;
  for (int i = 1; i <= 8; ++i) tris.push_back({HomogeneousForm(), {}, ExceptionalType::T06, {i}});
  for (int i = 1; i <= 8; ++i)
    for (int j = i + 1; j <= 8; ++j) tris.push_back({HomogeneousForm(), {}, ExceptionalType::T15, {i, j}});
  for (int i = 1; i <= 8; ++i)
    for (int j = i + 1; j <= 8; ++j)
      for (int k = j + 1; k <= 8; ++k) tris.push_back({HomogeneousForm(), {}, ExceptionalType::T24, {i, j, k}});
  for (int i = 1; i <= 8; ++i)
    for (int j = i + 1; j <= 8; ++j) tris.push_back({HomogeneousForm(), {}, ExceptionalType::T33, {i, j}});

  parallel_for(tris.size(), jobs, [&](std::size_t n) {
    auto& t = tris[n];
    auto x = sextic_coordinates(data, exceptional_sextic(cfg, t.type, t.source));
    HomogeneousForm plane(space_vars(), 1);
    for (int v = 0; v < 4; ++v) {
      Exponent e(4, 0);
      e[static_cast<std::size_t>(v)] = 1;
      plane.set(e, x[static_cast<std::size_t>(v)]);
    }
    t.plane = plane.monic();
  });
  label_tritangents(tris);
  return tris;
}

}  // namespace theta4::delpezzo
