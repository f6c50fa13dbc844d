#include "theta4/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace theta4::io {

namespace {

std::string exponent_key(const Exponent& e) {
  std::string s;
  for (std::size_t i = 0; i < e.size(); ++i) s += (i ? "," : "") + std::to_string(e[i]);
  return s;
}

Exponent parse_exponent_key(const std::string& k, std::size_t n) {
  Exponent e;
  std::stringstream ss(k);
  std::string part;
  while (std::getline(ss, part, ',')) {
    std::size_t used = 0;
    int v = std::stoi(part, &used);
    if (used != part.size() || v < 0) throw InputError("bad exponent key '" + k + "'");
    e.push_back(v);
  }
  if (e.size() != n) throw InputError("exponent key '" + k + "' has wrong arity");
  return e;
}

json rationals(const std::vector<Rational>& v) {
  json a = json::array();
  for (const auto& r : v) a.push_back(to_string(r));
  return a;
}

std::vector<Rational> parse_rationals(const json& a) {
  std::vector<Rational> out;
  for (const auto& x : a) out.push_back(parse_rational(x.get<std::string>()));
  return out;
}

// Wraps library and json exceptions from parsing into InputError.
template <class F>
auto guarded(const char* what, F&& f) {
  try {
    return f();
  } catch (const InputError&) {
    throw;
  } catch (const std::exception& e) {
    throw InputError(std::string("malformed ") + what + ": " + e.what());
  }
}

}  // namespace

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError("malformed JSON in '" + path + "': " + e.what());
  }
}

void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << j.dump(1) << '\n';
}

json to_json(const HomogeneousForm& f) {
  json j;
  j["variables"] = f.variables();
  j["degree"] = f.degree();
  j["terms"] = json::object();
  for (const auto& [e, c] : f.terms()) j["terms"][exponent_key(e)] = to_string(c);
  return j;
}

HomogeneousForm form_from_json(const json& j) {
  return guarded("form", [&] {
    auto vars = j.at("variables").get<std::vector<std::string>>();
    HomogeneousForm f(vars, j.at("degree").get<int>());
    for (const auto& [k, v] : j.at("terms").items()) {
      Exponent e = parse_exponent_key(k, vars.size());
      int deg = 0;
      for (int x : e) deg += x;
      if (deg != f.degree()) throw InputError("term '" + k + "' has the wrong degree");
      f.add_term(e, parse_rational(v.get<std::string>()));
    }
    return f;
  });
}

json points_to_json(const std::vector<std::vector<Rational>>& pts) {
  json a = json::array();
  for (const auto& p : pts) a.push_back(rationals(p));
  return json{{"points", a}};
}

std::vector<std::vector<Rational>> points_from_json(const json& j) {
  return guarded("points file", [&] {
    if (!j.is_object() || !j.contains("points")) throw InputError("points file needs a \"points\" array");
    std::vector<std::vector<Rational>> out;
    for (const auto& p : j.at("points")) {
      auto v = parse_rationals(p);
      if (v.size() != 3) throw InputError("each point needs 3 homogeneous coordinates");
      out.push_back(std::move(v));
    }
    return out;
  });
}

std::string points_digest(const std::vector<std::vector<Rational>>& pts) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : points_to_json(pts).dump()) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

json to_json(const delpezzo::Tritangent& t) {
  std::vector<Rational> plane;
  for (int v = 0; v < 4; ++v) {
    Exponent e(4, 0);
    e[static_cast<std::size_t>(v)] = 1;
    plane.push_back(t.plane.coeff(e));
  }
  return json{{"label", t.label.indices}, {"type", delpezzo::type_name(t.type)}, {"source", t.source},
              {"plane", rationals(plane)}};
}

json to_json(const quotient::Inventory& inv) {
  json tris = json::array();
  for (std::size_t i = 0; i < inv.tritangents.size(); ++i) {
    json t = to_json(inv.tritangents[i]);
    const auto& c = inv.contacts[i];
    t["contact_cubic"] = rationals(c.h.c);
    json pts = json::array();
    for (const auto& p : c.points) {
      json q = json::array();
      for (const auto& x : p) q.push_back(to_string(x, inv.precision));
      pts.push_back(q);
    }
    t["contact_points"] = pts;
    tris.push_back(t);
  }
  json j;
  j["format"] = "theta4-inventory";
  j["version"] = 1;
  j["provenance"] = {{"generator", "theta4"}, {"points_digest", points_digest(inv.config.points)},
                     {"precision", inv.precision}};
  j["points"] = points_to_json(inv.config.points)["points"];
  j["cone"] = to_json(inv.curve.cone);
  j["cubic"] = to_json(inv.curve.cubic);
  j["tritangents"] = tris;
  return j;
}

quotient::Inventory inventory_from_json(const json& j) {
  return guarded("inventory", [&] {
    if (j.value("format", "") != "theta4-inventory") throw InputError("not an inventory file");
    quotient::Inventory inv;
    inv.config = delpezzo::validate_general_position(points_from_json(json{{"points", j.at("points")}}));
    inv.curve.cone = form_from_json(j.at("cone"));
    inv.curve.cubic = form_from_json(j.at("cubic"));
    inv.precision = j.at("provenance").at("precision").get<int>();
    PrecisionScope scope(inv.precision);
    for (const auto& t : j.at("tritangents")) {
      delpezzo::Tritangent tri;
      auto plane = parse_rationals(t.at("plane"));
      if (plane.size() != 4) throw InputError("plane needs 4 coefficients");
      tri.plane = HomogeneousForm::from_dense(delpezzo::space_vars(), 1, monomials(4, 1), plane);
      tri.label = f2::Label::make(4, t.at("label").get<std::vector<int>>());
      tri.type = delpezzo::parse_type(t.at("type").get<std::string>());
      tri.source = t.at("source").get<std::vector<int>>();
      contact::ContactDivisor cd;
      cd.label = tri.label;
      cd.h.c = parse_rationals(t.at("contact_cubic"));
      cd.precision = inv.precision;
      for (const auto& p : t.at("contact_points")) {
        contact::ProjPoint q;
        for (const auto& x : p) q.push_back(parse_complex(x.get<std::string>()));
        cd.points.push_back(std::move(q));
      }
      inv.tritangents.push_back(std::move(tri));
      inv.contacts.push_back(std::move(cd));
    }
    return inv;
  });
}

json to_json(const quotient::QuotientRequest& r) {
  return json{{"p1", r.p1}, {"p2", r.p2}, {"precision", r.precision}, {"seed", r.seed}};
}

quotient::QuotientRequest request_from_json(const json& j) {
  return guarded("quotient request", [&] {
    quotient::QuotientRequest r;
    r.p1 = j.at("p1").get<std::vector<int>>();
    r.p2 = j.at("p2").get<std::vector<int>>();
    r.precision = j.value("precision", 60);
    r.seed = j.value("seed", std::uint64_t{0});
    return r;
  });
}

json to_json(const quotient::QuotientResult& r) {
  json j;
  PrecisionScope scope(r.precision + quotient::kGuardDigits);
  j["value_decimal"] = to_decimal(r.value.re, r.precision);
  j["value_rational"] = r.exact ? json(to_string(*r.exact)) : json(nullptr);
  j["sign_exponent_n"] = r.sign_exponent;
  j["restarts"] = r.restarts;
  return j;
}

json to_json(const theta::RiemannMatrix& m) {
  json rows = json::array();
  for (const auto& row : m.tau) {
    json r = json::array();
    for (const auto& z : row) r.push_back(theta::to_string(z));
    rows.push_back(r);
  }
  return json{{"g", m.g}, {"digits", m.stated_digits}, {"tau", rows}};
}

theta::RiemannMatrix riemann_from_json(const json& j) {
  return guarded("Riemann matrix", [&] {
    theta::RiemannMatrix m;
    m.g = j.at("g").get<int>();
    m.stated_digits = j.at("digits").get<int>();
    for (const auto& row : j.at("tau")) {
      std::vector<theta::ComplexRational> r;
      for (const auto& z : row) r.push_back(theta::parse_complex_rational(z.get<std::string>()));
      m.tau.push_back(std::move(r));
    }
    return m;
  });
}

std::vector<int> parse_label_list(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, ',')) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(part, &used);
    } catch (const std::exception&) {
      throw InputError("malformed label '" + s + "'");
    }
    if (used != part.size()) throw InputError("malformed label '" + s + "'");
    out.push_back(v);
  }
  if (out.empty()) throw InputError("empty label");
  return out;
}

}  // namespace theta4::io
