// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "theta4/io.hpp"
#include "theta4/labels.hpp"

using namespace theta4;

namespace {

const std::vector<int> kP1{1, 2, 3, 4, 5}, kP2{3, 4, 5, 6, 9};
constexpr int kPrecision = 60;
constexpr double kAgreeDigits = 45;     // choice independence at 60 digits
constexpr double kDecimalDigits = 25;   // match to the printed decimal
constexpr double kResidual = 1e-50;     // contact points
constexpr double kThetaTol = 1e-3;      // 5-decimal Riemann matrix
constexpr double kReferenceSeconds = 120;
constexpr double kCombinatoricsSeconds = 30;

std::string data_file(const std::string& name) { return std::string(THETA4_DATA_DIR) + "/" + name; }

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double agreeing_digits(const BigComplex& a, const BigComplex& b) {
  PrecisionScope s(90);
  BigFloat d = abs(a - b), m = abs(b);
  if (d == 0) return 90;
  return static_cast<double>(-boost::multiprecision::log10(d / m));
}

int failures = 0;

void report(int id, const std::string& name, bool ok, const std::string& detail) {
  std::cout << (ok ? "[PASS] " : "[FAIL] ") << "criterion " << id << ": " << name << " -- " << detail << std::endl;
  if (!ok) ++failures;
}

void guarded(int id, const std::string& name, const std::function<void()>& body) {
  try {
    body();
  } catch (const std::exception& e) {
    report(id, name, false, std::string("exception: ") + e.what());
  }
}

quotient::QuotientRequest request(const std::vector<int>& a, const std::vector<int>& b, std::uint64_t seed = 0) {
  quotient::QuotientRequest r;
  r.p1 = a;
  r.p2 = b;
  r.precision = kPrecision;
  r.seed = seed;
  r.jobs = 1;
  return r;
}

}  // namespace

int main() {
  const auto points = io::points_from_json(io::read_json_file(data_file("delpezzo8_points.json")));
  const auto reference = io::read_json_file(data_file("delpezzo8_reference.json"));
  quotient::Inventory inv;
  quotient::QuotientResult ref;

  guarded(1, "reference quotient", [&] {
    auto t0 = std::chrono::steady_clock::now();
    inv = quotient::build_inventory(points, kPrecision, 1);
    ref = quotient::assemble_quotient(request(kP1, kP2), inv);
    double secs = seconds_since(t0);
    bool exact = ref.exact && to_string(*ref.exact) == reference["quotient"]["value_rational"].get<std::string>();
    double digits;
    {
      PrecisionScope s(90);
      digits = agreeing_digits(ref.value, BigComplex(BigFloat(reference["quotient"]["value_decimal"].get<std::string>())));
    }
    std::ostringstream d;
    d << "rational " << (ref.exact ? to_string(*ref.exact) : std::string("none")) << ", digits vs printed decimal "
      << digits << " (need >= " << kDecimalDigits << "), n=" << ref.sign_exponent << ", " << secs << " s (limit "
      << kReferenceSeconds << ")";
    report(1, "reference quotient", exact && digits >= kDecimalDigits && secs < kReferenceSeconds, d.str());
  });

  guarded(2, "example geometry", [&] {
    bool cone = inv.curve.cone == io::form_from_json(reference["cone"]);
    bool cubic = inv.curve.cubic == io::form_from_json(reference["cubic"]);
    int counts[4] = {0, 0, 0, 0};
    for (const auto& t : inv.tritangents) counts[static_cast<int>(t.type)]++;
    int matched = 0;
    for (const auto& r : reference["planes_33"]) {
      auto label = r["label"].get<std::vector<int>>();
      std::vector<Rational> want;
      for (const auto& c : r["plane"]) want.push_back(parse_rational(c.get<std::string>()));
      for (const auto& t : inv.tritangents)
        if (t.label.indices == label && t.type == delpezzo::ExceptionalType::T33 && t.plane.dense(monomials(4, 1)) == want)
          ++matched;
    }
    std::ostringstream d;
    d << "cone " << (cone ? "exact" : "differs") << ", cubic " << (cubic ? "exact" : "differs") << ", planes "
      << matched << "/21, total " << inv.tritangents.size() << ", types " << counts[0] << "/" << counts[1] << "/"
      << counts[2] << "/" << counts[3];
    report(2, "example geometry",
           cone && cubic && matched == 21 && inv.tritangents.size() == 120 && counts[0] == 8 && counts[1] == 28 &&
               counts[2] == 56 && counts[3] == 28,
           d.str());
  });

  guarded(3, "numeric theta cross-check", [&] {
    auto tau = io::riemann_from_json(io::read_json_file(data_file("delpezzo8_riemann.json")));
    theta::validate_riemann(tau);
    auto even = theta::all_even_theta_constants(tau, 15, 0);
    auto zeros = theta::vanishing_constants(even, kThetaTol);
    const auto& L = genus4_labels();
    auto z = L.form(quotient::cone_label());
    int pairing = f2::pairing(f2::difference(L.form(kP1), z), f2::difference(L.form(kP2), z));
    std::ostringstream d;
    d << even.size() << " even constants, " << zeros.size() << " with |theta| < " << kThetaTol;
    bool ok = even.size() == 136 && zeros.size() == 1;
    if (zeros.size() == 1) {
      auto m = theta::match_quotient(even, ref.value, pairing, kThetaTol, kThetaTol);
      PrecisionScope s(25);
      d << " (" << f2::serialize(m.vanishing) << "), matched " << f2::serialize(m.a) << " / " << f2::serialize(m.b)
        << " ratio " << to_string(m.ratio, 10) << ", |diff| " << m.error << " (tol " << kThetaTol << "), "
        << m.within_tolerance << " of " << m.candidates << " admissible pairs within tol";
      ok = ok && m.error < kThetaTol;
    }
    report(3, "numeric theta cross-check", ok, d.str());
  });

  guarded(4, "combinatorial suites", [&] {
    auto t0 = std::chrono::steady_clock::now();
    bool counts = true;
    for (int g = 1; g <= 4; ++g) {
      int even = 0, odd = 0;
      for (const auto& q : f2::all_forms(g)) (f2::arf(q) ? odd : even)++;
      counts &= even == (1 << (g - 1)) * ((1 << g) + 1) && odd == (1 << (g - 1)) * ((1 << g) - 1);
    }
    // Arf through 100 random symplectic bases
    std::mt19937_64 rng(1);
    bool arf_ok = true;
    for (int trial = 0; trial < 100; ++trial) {
      const int g = 2 + trial % 3;
      f2::SymplecticBasis b{g, {}, {}};
      for (int i = 0; i < g; ++i) {
        b.e.push_back(f2::F2Vector::from_parts(g, 1u << i, 0));
        b.f.push_back(f2::F2Vector::from_parts(g, 0, 1u << i));
      }
      std::uniform_int_distribution<std::uint32_t> d(1, (1u << (2 * g)) - 1);
      for (int k = 0; k < 40; ++k) {
        f2::F2Vector v{g, d(rng)};
        for (auto* side : {&b.e, &b.f})
          for (auto& x : *side)
            if (f2::pairing(x, v)) x = x + v;
      }
      arf_ok &= b.is_symplectic();
      for (const auto& q : f2::all_forms(g)) {
        int a = 0;
        for (int i = 0; i < g; ++i) a ^= q(b.e[static_cast<std::size_t>(i)]) & q(b.f[static_cast<std::size_t>(i)]);
        arf_ok &= a == f2::arf(q);
      }
    }
    bool aronhold = true;
    int bases = 0;
    for (int g = 1; g <= 4; ++g)
      for (const auto& q : f2::all_forms(g))
        for (int mu = 0; mu <= 1; ++mu, ++bases)
          aronhold &= f2::has_aronhold_property(f2::aronhold_from_fundamental(f2::standard_fundamental_set(g), q, mu));
    bool steiner = true;
    std::set<int> sizes3;
    for (int g : {3, 4}) {
      const std::uint32_t n = 1u << (2 * g);
      for (std::uint32_t v = 1; v < n; ++v) steiner &= f2::steiner_set(f2::F2Vector{g, v}).member_count() == (g == 3 ? 12u : 56u);
      for (std::uint32_t v = 1; v < n; ++v)
        for (std::uint32_t w = v + 1; w < n; ++w) {
          f2::F2Vector a{g, v}, b{g, w};
          int s = f2::steiner_intersection_size(a, b);
          steiner &= s == f2::expected_intersection_size(g, f2::pairing(a, b));
          if (g == 3) sizes3.insert(s);
        }
    }
    bool pattern = sizes3 == std::set<int>{4, 6};
    double secs = seconds_since(t0);
    std::ostringstream d;
    d << "counts " << (counts ? "ok" : "bad") << ", arf over 100 bases " << (arf_ok ? "ok" : "bad") << ", "
      << bases << " Aronhold bases " << (aronhold ? "ok" : "bad") << ", Steiner 12/56 and pairing law "
      << (steiner ? "ok" : "bad") << ", g=3 sizes {" << (sizes3.count(4) ? "4" : "") << (sizes3.count(6) ? ",6" : "")
      << "}, " << secs << " s (limit " << kCombinatoricsSeconds << ")";
    report(4, "combinatorial suites", counts && arf_ok && aronhold && steiner && pattern && secs < kCombinatoricsSeconds,
           d.str());
  });

  guarded(5, "choice independence", [&] {
    double worst_seed = 1e9;
    for (std::uint64_t seed = 1; seed <= 10; ++seed)
      worst_seed = std::min(worst_seed, agreeing_digits(quotient::assemble_quotient(request(kP1, kP2, seed * 104729), inv).value, ref.value));
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> d(1, 60);
    quotient::EvalOptions cone;
    for (int k = 0; k < 8; ++k) cone.cone_shift.push_back(Rational(d(rng) - 30, d(rng)));
    double cone_digits = agreeing_digits(quotient::assemble_quotient(request(kP1, kP2), inv, cone).value, ref.value);
    quotient::EvalOptions planes;
    for (const auto& t : inv.tritangents) planes.plane_scale[t.label.indices] = Rational(d(rng) - 30 == 0 ? 7 : d(rng) - 30, d(rng));
    double plane_digits = agreeing_digits(quotient::assemble_quotient(request(kP1, kP2), inv, planes).value, ref.value);
    quotient::EvalOptions pts;
    pts.point_scale = [](const std::vector<int>& l, int k) {
      std::uint32_t m = f2::mask_of_indices(l);
      return BigComplex(to_big(Rational(static_cast<long>(m % 13) + 1, 3 + k)), to_big(Rational(static_cast<long>(m % 7) - 3, 5)));
    };
    double point_digits = agreeing_digits(quotient::assemble_quotient(request(kP1, kP2), inv, pts).value, ref.value);
    std::vector<std::vector<int>> labels;
    for (const auto& l : genus4_labels().even_labels())
      if (l != quotient::cone_label()) labels.push_back(l);
    std::uniform_int_distribution<std::size_t> pick(0, labels.size() - 1);
    double chain = 1e9;
    for (int trial = 0; trial < 5; ++trial) {
      auto a = labels[pick(rng)], b = labels[pick(rng)], c = labels[pick(rng)];
      while (b == a) b = labels[pick(rng)];
      while (c == a || c == b) c = labels[pick(rng)];
      auto ab = quotient::assemble_quotient(request(a, b), inv).value;
      auto bc = quotient::assemble_quotient(request(b, c), inv).value;
      auto ac = quotient::assemble_quotient(request(a, c), inv).value;
      PrecisionScope s(90);
      chain = std::min(chain, agreeing_digits(ab * bc, ac));
    }
    std::ostringstream o;
    o << "agreeing digits: seeds " << worst_seed << ", cone " << cone_digits << ", planes " << plane_digits
      << ", points " << point_digits << ", chain " << chain << " (need >= " << kAgreeDigits << ")";
    double worst = std::min({worst_seed, cone_digits, plane_digits, point_digits, chain});
    report(5, "choice independence", worst >= kAgreeDigits, o.str());
  });

  guarded(6, "contact exactness", [&] {
    int squares = 0;
    for (const auto& t : inv.tritangents) {
      auto g = contact::restricted_sextic(t.plane, inv.curve);
      auto r = contact::binary_square_root(g);
      if (r.cofactor * (r.h * r.h) == g) ++squares;
    }
    PrecisionScope s(kPrecision);
    BigFloat worst = 0;
    for (std::size_t i = 0; i < inv.tritangents.size(); ++i)
      for (const auto& p : inv.contacts[i].points)
        for (const auto* f : {&inv.curve.cone, &inv.curve.cubic, &inv.tritangents[i].plane})
          worst = std::max(worst, contact::relative_residual(*f, p));
    std::ostringstream d;
    d << squares << "/120 exact squares, worst residual " << to_decimal(worst, 3) << " (limit " << kResidual << ")";
    report(6, "contact exactness", squares == 120 && worst < BigFloat(kResidual), d.str());
  });

  guarded(7, "Weber evaluator", [&] {
    std::mt19937_64 rng(77);
    std::uniform_int_distribution<int> d(-9, 9);
    auto rnd = [&] { return Rational(d(rng), 1 + std::abs(d(rng))); };
    int trials = 0, ok = 0;
    while (trials < 10) {
      std::array<quotient::Line, 6> l;
      for (auto& x : l)
        for (auto& c : x) c = rnd();
      Rational v;
      try {
        v = quotient::weber_quotient(l, 0);
      } catch (const std::invalid_argument&) {
        continue;
      }
      std::array<std::array<Rational, 3>, 3> a;
      for (auto& r : a)
        for (auto& c : r) c = rnd();
      auto scaled = l, moved = l;
      for (auto& x : scaled) {
        Rational c = rnd();
        if (c == 0) c = 3;
        for (auto& e : x) e *= c;
      }
      for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = 0; j < 3; ++j) {
          moved[i][j] = 0;
          for (std::size_t k = 0; k < 3; ++k) moved[i][j] += l[i][k] * a[k][j];
        }
      Rational det = a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
                     a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
      if (det == 0) continue;
      ++trials;
      if (quotient::weber_quotient(scaled, 0) == v && quotient::weber_quotient(moved, 0) == v &&
          quotient::weber_quotient(l, 1) == -v)
        ++ok;
    }
    report(7, "Weber evaluator", ok == trials, std::to_string(ok) + "/" + std::to_string(trials) +
                                                   " trials exact under rescaling, linear change and n-flip");
  });

  std::cout << (failures ? "acceptance: FAILED (" + std::to_string(failures) + ")" : std::string("acceptance: all passed"))
            << std::endl;
  return failures ? 1 : 0;
}
