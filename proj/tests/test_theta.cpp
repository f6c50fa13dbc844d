#include <gtest/gtest.h>

#include <complex>
#include <random>

#include "theta4/io.hpp"
#include "theta4/labels.hpp"
#include "theta4/theta.hpp"

using namespace theta4;
using namespace theta4::theta;

namespace {

const RiemannMatrix& example_tau() {
  static const RiemannMatrix m =
      io::riemann_from_json(io::read_json_file(std::string(THETA4_DATA_DIR) + "/delpezzo8_riemann.json"));
  return m;
}

// Low-precision table shared by the checks on the example matrix.
const std::vector<ThetaConstant>& table() {
  static const std::vector<ThetaConstant> t = all_theta_constants(example_tau(), 12, 0);
  return t;
}

// Direct double-precision sum over a box, no recurrences.
std::complex<double> naive_theta(const RiemannMatrix& m, const std::vector<int>& eps, const std::vector<int>& epsp,
                                 const std::vector<std::complex<double>>& z, int R) {
  const int g = m.g;
  std::vector<std::vector<std::complex<double>>> tau(static_cast<std::size_t>(g));
  for (int i = 0; i < g; ++i)
    for (int j = 0; j < g; ++j) {
      const auto& c = m.tau[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      tau[static_cast<std::size_t>(i)].emplace_back(c.re.get_d(), c.im.get_d());
    }
  const std::complex<double> I(0, 1);
  std::complex<double> sum = 0;
  std::vector<int> n(static_cast<std::size_t>(g), -R);
  while (true) {
    std::vector<double> chi(static_cast<std::size_t>(g));
    for (int k = 0; k < g; ++k) chi[static_cast<std::size_t>(k)] = n[static_cast<std::size_t>(k)] + eps[static_cast<std::size_t>(k)] / 2.0;
    std::complex<double> e = 0;
    for (int i = 0; i < g; ++i) {
      for (int j = 0; j < g; ++j) e += M_PI * I * chi[static_cast<std::size_t>(i)] * tau[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] * chi[static_cast<std::size_t>(j)];
      e += 2.0 * M_PI * I * chi[static_cast<std::size_t>(i)] * (z[static_cast<std::size_t>(i)] + epsp[static_cast<std::size_t>(i)] / 2.0);
    }
    sum += std::exp(e);
    int k = 0;
    for (; k < g; ++k) {
      if (n[static_cast<std::size_t>(k)] < R) {
        ++n[static_cast<std::size_t>(k)];
        break;
      }
      n[static_cast<std::size_t>(k)] = -R;
    }
    if (k == g) break;
  }
  return sum;
}

std::complex<double> to_std(const BigComplex& z) { return {static_cast<double>(z.re), static_cast<double>(z.im)}; }

RiemannMatrix genus2_tau() {
  RiemannMatrix m;
  m.g = 2;
  m.stated_digits = 30;
  m.tau = {{parse_complex_rational("0.3+1.2i"), parse_complex_rational("0.1-0.25i")},
           {parse_complex_rational("0.1-0.25i"), parse_complex_rational("-0.4+0.9i")}};
  return m;
}

}  // namespace

TEST(Riemann, ParsesAndValidatesExample) {
  const auto& m = example_tau();
  EXPECT_EQ(m.g, 4);
  EXPECT_EQ(m.tau[0][0].im, parse_rational("107847/100000"));
  EXPECT_EQ(m.tau[2][3].re, parse_rational("-653/4000"));
  auto d = validate_riemann(m);
  EXPECT_EQ(d.symmetry_defect, 0);
  EXPECT_NEAR(d.min_eigenvalue, 0.565359, 1e-5);
}

TEST(Riemann, ParsesEntries) {
  EXPECT_EQ(parse_complex_rational("1.07847i"), (ComplexRational{0, parse_rational("107847/100000")}));
  EXPECT_EQ(parse_complex_rational("0.3-2.1e-2i"), (ComplexRational{parse_rational("3/10"), parse_rational("-21/1000")}));
  EXPECT_EQ(parse_complex_rational("-653/4000+0/1i"), (ComplexRational{parse_rational("-653/4000"), 0}));
  auto z = ComplexRational{parse_rational("1/3"), parse_rational("-2/7")};
  EXPECT_EQ(parse_complex_rational(to_string(z)), z);
  EXPECT_THROW(parse_complex_rational("1.5x"), std::invalid_argument);
  EXPECT_THROW(parse_complex_rational("1/0"), std::invalid_argument);
}

TEST(Riemann, RejectsBadMatrices) {
  auto neg = example_tau();
  neg.tau[0][0].im = -neg.tau[0][0].im;
  EXPECT_THROW(validate_riemann(neg), InvalidRiemann);
  auto asym = example_tau();
  asym.tau[0][1].re += Rational(1, 100);
  EXPECT_THROW(validate_riemann(asym), InvalidRiemann);
  auto tiny = example_tau();
  tiny.tau[0][1].re += Rational(1, 10000000);
  EXPECT_NO_THROW(validate_riemann(tiny));
  auto ragged = example_tau();
  ragged.tau[1].pop_back();
  EXPECT_THROW(validate_riemann(ragged), InvalidRiemann);
}

TEST(Theta, MatchesNaiveDoubleSum) {
  auto m = genus2_tau();
  std::vector<std::complex<double>> z = {{0.13, -0.07}, {-0.2, 0.05}};
  PrecisionScope s(30);
  std::vector<BigComplex> zb = {BigComplex(to_big(Rational(13, 100)), to_big(Rational(-7, 100))),
                                BigComplex(to_big(Rational(-1, 5)), to_big(Rational(1, 20)))};
  for (int e = 0; e < 4; ++e)
    for (int ep = 0; ep < 4; ++ep) {
      Characteristic ch{{e & 1, e >> 1}, {ep & 1, ep >> 1}};
      auto v = theta::theta(ch, zb, m, 20);
      auto ref = naive_theta(m, ch.eps, ch.epsp, z, 12);
      EXPECT_LT(std::abs(to_std(v.value) - ref), 1e-12) << e << " " << ep;
      EXPECT_LT(v.tail_bound, ten_pow_neg(20));
    }
}

TEST(Theta, OddConstantsVanish) {
  int odd = 0;
  for (const auto& c : table()) {
    if (f2::arf(c.characteristic) == 0) continue;
    ++odd;
    PrecisionScope s(22);
    EXPECT_LT(abs(c.value.value), ten_pow_neg(12 - 5)) << f2::serialize(c.characteristic);
  }
  EXPECT_EQ(odd, 120);
}

TEST(Theta, TableMatchesSingleEvaluations) {
  PrecisionScope s(22);
  std::vector<BigComplex> zero(4);
  for (std::uint32_t idx : {0u, 17u, 77u, 200u, 255u}) {
    auto q = f2::QuadraticForm::from_index(4, idx);
    auto v = theta::theta(q, zero, example_tau(), 12);
    EXPECT_LT(abs(v.value - table()[idx].value.value), ten_pow_neg(11));
  }
}

TEST(Theta, ParallelTableMatchesSerial) {
  auto m = genus2_tau();
  auto ser = all_theta_constants(m, 20, 1);
  auto par = all_theta_constants(m, 20, 0);
  ASSERT_EQ(ser.size(), 16u);
  PrecisionScope s(30);
  for (std::size_t i = 0; i < ser.size(); ++i) EXPECT_EQ(abs(ser[i].value.value - par[i].value.value), 0);
  EXPECT_EQ(all_even_theta_constants(m, 20, 1).size(), 10u);
}

TEST(Theta, CharacteristicShiftChangesOnlySign) {
  auto m = genus2_tau();
  PrecisionScope s(30);
  std::vector<BigComplex> z = {BigComplex(to_big(Rational(1, 7)), to_big(Rational(1, 11))), BigComplex(to_big(Rational(-2, 9)))};
  Characteristic base{{1, 0}, {1, 1}};
  auto v = theta::theta(base, z, m, 20);
  // eps + 2m, eps' + 2n with m = (1, -1), n = (1, 0): sign (-1)^(n.eps) = -1
  Characteristic shifted{{3, -2}, {3, 1}};
  auto w = theta::theta(shifted, z, m, 20);
  EXPECT_LT(abs(w.value + v.value), ten_pow_neg(18));
  Characteristic shifted2{{1, 0}, {1, 3}};  // n = (0, 1), n.eps = 0
  EXPECT_LT(abs(theta::theta(shifted2, z, m, 20).value - v.value), ten_pow_neg(18));
}

TEST(Theta, ParityUnderNegation) {
  auto m = genus2_tau();
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> d(-30, 30);
  PrecisionScope s(30);
  for (int trial = 0; trial < 4; ++trial) {
    std::vector<BigComplex> z, mz;
    for (int k = 0; k < 2; ++k) {
      BigComplex c(to_big(Rational(d(rng), 100)), to_big(Rational(d(rng), 100)));
      z.push_back(c);
      mz.push_back(-c);
    }
    for (std::uint32_t idx = 0; idx < 16; ++idx) {
      auto q = f2::QuadraticForm::from_index(2, idx);
      auto a = theta::theta(q, z, m, 20).value, b = theta::theta(q, mz, m, 20).value;
      BigComplex expect = f2::arf(q) ? -a : a;
      EXPECT_LT(abs(b - expect), ten_pow_neg(18));
    }
  }
}

TEST(Theta, HalfPeriodShift) {
  // theta[e; e'](z + (tau a + b)/2) = exp(-pi i a.tau.a/4 - pi i a.z - pi i a.(e' + b)/2) theta[e + a; e' + b](z)
  auto m = genus2_tau();
  PrecisionScope s(40);
  const std::vector<int> a = {1, 0}, b = {0, 1};
  Characteristic ch{{0, 1}, {1, 0}};
  std::vector<BigComplex> z = {BigComplex(to_big(Rational(1, 9)), to_big(Rational(-1, 13))),
                               BigComplex(to_big(Rational(3, 17)), to_big(Rational(1, 19)))};
  std::vector<std::vector<BigComplex>> tau(2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      tau[static_cast<std::size_t>(i)].emplace_back(to_big(m.tau[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].re),
                                                    to_big(m.tau[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].im));
  std::vector<BigComplex> zs = z;
  BigComplex ata, az, aeb;
  for (std::size_t i = 0; i < 2; ++i) {
    BigComplex shift(BigFloat(b[i]));
    for (std::size_t j = 0; j < 2; ++j) {
      shift += tau[i][j] * BigComplex(BigFloat(a[j]));
      ata += BigComplex(BigFloat(a[i] * a[j])) * tau[i][j];
    }
    zs[i] += shift / BigComplex(BigFloat(2));
    az += BigComplex(BigFloat(a[i])) * z[i];
    aeb += BigComplex(BigFloat(a[i] * (ch.epsp[i] + b[i])));
  }
  BigComplex ipi(BigFloat(0), big_pi());
  BigComplex factor = exp(-ipi * (ata / BigComplex(BigFloat(4)) + az + aeb / BigComplex(BigFloat(2))));
  Characteristic moved{{ch.eps[0] + a[0], ch.eps[1] + a[1]}, {ch.epsp[0] + b[0], ch.epsp[1] + b[1]}};
  auto lhs = theta::theta(ch, zs, m, 25).value;
  auto rhs = factor * theta::theta(moved, z, m, 25).value;
  EXPECT_LT(abs(lhs - rhs), ten_pow_neg(25 - 10));
}

TEST(Theta, PrecisionDoubling) {
  auto m = genus2_tau();
  std::vector<BigComplex> zero(2);
  auto lo = theta::theta(Characteristic{{1, 1}, {0, 0}}, zero, m, 20);
  auto hi = theta::theta(Characteristic{{1, 1}, {0, 0}}, zero, m, 40);
  PrecisionScope s(50);
  EXPECT_LT(abs(lo.value - hi.value), ten_pow_neg(18));
}

TEST(Theta, TailBoundIsCertified) {
  auto m = genus2_tau();
  std::vector<BigComplex> zero(2);
  Characteristic ch{{0, 1}, {1, 1}};
  auto v = theta::theta(ch, zero, m, 15);
  auto wider = theta::theta(ch, zero, m, 15, v.truncation_radius + 2);
  PrecisionScope s(25);
  EXPECT_LT(abs(v.value - wider.value), v.tail_bound + ten_pow_neg(22));
  EXPECT_LT(v.tail_bound, ten_pow_neg(15));
  EXPECT_EQ(truncation_radius(0.565359, 4, 15), 11);
}

TEST(Theta, ExampleHasOneVanishingEvenConstant) {
  std::vector<ThetaConstant> even;
  for (const auto& c : table())
    if (f2::arf(c.characteristic) == 0) even.push_back(c);
  EXPECT_EQ(even.size(), 136u);
  auto zeros = vanishing_constants(even, cross_check_tolerance(example_tau().stated_digits));
  ASSERT_EQ(zeros.size(), 1u);
  PrecisionScope s(22);
  EXPECT_LT(abs(zeros[0].value.value), ten_pow_neg(5));
  EXPECT_EQ(f2::serialize(zeros[0].characteristic), "0111|1110");
}

TEST(Theta, ExampleQuotientMatch) {
  std::vector<ThetaConstant> even;
  for (const auto& c : table())
    if (f2::arf(c.characteristic) == 0) even.push_back(c);
  const auto& L = genus4_labels();
  auto z = L.form({9});
  int pairing = f2::pairing(f2::difference(L.form({1, 2, 3, 4, 5}), z), f2::difference(L.form({3, 4, 5, 6, 9}), z));
  PrecisionScope s(30);
  BigComplex target(to_big(parse_rational("388285435266921829/1618395584522100000")));
  double tol = cross_check_tolerance(example_tau().stated_digits);
  EXPECT_DOUBLE_EQ(tol, 1e-3);
  auto m = match_quotient(even, target, pairing, tol, tol);
  EXPECT_LT(m.error, tol);
  EXPECT_GT(m.within_tolerance, 0);
  EXPECT_NEAR(static_cast<double>(m.ratio.re), 0.239934, 5e-6);
}
