#include "theta4/theta.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cctype>
#include <bit>
#include <cmath>

#include "theta4/parallel.hpp"

namespace theta4::theta {

namespace {

Rational parse_decimal(const std::string& s) {
  std::size_t i = 0;
  bool neg = false;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) neg = s[i++] == '-';
  Integer mant = 0;
  long scale = 0;
  bool digits = false, dot = false;
  for (; i < s.size(); ++i) {
    char c = s[i];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      mant = mant * 10 + (c - '0');
      digits = true;
      if (dot) --scale;
    } else if (c == '.' && !dot) {
      dot = true;
    } else {
      break;
    }
  }
  if (!digits) throw std::invalid_argument("malformed decimal '" + s + "'");
  if (!dot && i < s.size() && s[i] == '/') {  // exact "p/q", as written back out
    Integer q = 0;
    bool qdigits = false;
    for (++i; i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])); ++i, qdigits = true) q = q * 10 + (s[i] - '0');
    if (!qdigits || q == 0 || i != s.size()) throw std::invalid_argument("malformed decimal '" + s + "'");
    Rational r(mant, q);
    r.canonicalize();
    return neg ? Rational(-r) : r;
  }
  if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
    std::size_t used = 0;
    long e = 0;
    try {
      e = std::stol(s.substr(i + 1), &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("malformed exponent in '" + s + "'");
    }
    if (used != s.size() - i - 1) throw std::invalid_argument("malformed decimal '" + s + "'");
    scale += e;
    i = s.size();
  }
  if (i != s.size()) throw std::invalid_argument("malformed decimal '" + s + "'");
  Integer p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(scale)));
  Rational r = scale >= 0 ? Rational(mant * p) : Rational(mant, p);
  r.canonicalize();
  return neg ? Rational(-r) : r;
}

long floor_half(int e) { return e >= 0 ? e / 2 : -((1 - e) / 2); }

struct Prepared {
  int g;
  std::vector<std::vector<BigComplex>> tau;
  double lambda_min;
};

Prepared prepare(const RiemannMatrix& m) {
  auto diag = validate_riemann(m);
  Prepared p{m.g, {}, diag.min_eigenvalue};
  for (const auto& row : m.tau) {
    std::vector<BigComplex> r;
    for (const auto& z : row) r.emplace_back(to_big(z.re), to_big(z.im));
    p.tau.push_back(std::move(r));
  }
  return p;
}

BigComplex i_pi() { return BigComplex(BigFloat(0), big_pi()); }

// Sum of exp(pi i chi.tau.chi + 2 pi i chi.w), chi = n + eps/2, each n_k in a window of
// 2R+1 integers around -eps_k/2. With `buckets`, partial sums are split by n mod 2
// (bit k = parity of n_k). The last coordinate runs by a two-term recurrence.
std::vector<BigComplex> lattice_sum(const Prepared& p, const std::vector<int>& eps, const std::vector<BigComplex>& w,
                                    int R, bool buckets) {
  const int g = p.g;
  const int L = g - 1;
  const BigComplex ipi = i_pi();
  std::vector<long> lo(static_cast<std::size_t>(g));
  for (int k = 0; k < g; ++k) lo[static_cast<std::size_t>(k)] = -R - floor_half(eps[static_cast<std::size_t>(k)]);
  std::vector<BigComplex> out(buckets ? (1u << g) : 1u);
  const auto& tLL = p.tau[static_cast<std::size_t>(L)][static_cast<std::size_t>(L)];
  const BigComplex step = exp(BigComplex(BigFloat(2)) * ipi * tLL);
  const BigFloat half_eL = BigFloat(eps[static_cast<std::size_t>(L)]) / 2;

  std::vector<long> n(static_cast<std::size_t>(g), 0);
  for (int k = 0; k < L; ++k) n[static_cast<std::size_t>(k)] = lo[static_cast<std::size_t>(k)];
  std::vector<BigFloat> chi(static_cast<std::size_t>(g));
  while (true) {
    for (int k = 0; k < L; ++k)
      chi[static_cast<std::size_t>(k)] =
          BigFloat(n[static_cast<std::size_t>(k)]) + BigFloat(eps[static_cast<std::size_t>(k)]) / 2;
    BigComplex quad, lin, wsum;
    for (int k = 0; k < L; ++k) {
      const auto ck = BigComplex(chi[static_cast<std::size_t>(k)]);
      for (int l = 0; l < L; ++l)
        quad += ck * p.tau[static_cast<std::size_t>(k)][static_cast<std::size_t>(l)] * BigComplex(chi[static_cast<std::size_t>(l)]);
      lin += ck * p.tau[static_cast<std::size_t>(k)][static_cast<std::size_t>(L)];
      wsum += ck * w[static_cast<std::size_t>(k)];
    }
    lin *= BigComplex(BigFloat(2));
    BigFloat c0 = BigFloat(lo[static_cast<std::size_t>(L)]) + half_eL;
    BigComplex cL(c0);
    BigComplex expo = ipi * (quad + lin * cL + tLL * cL * cL) +
                      BigComplex(BigFloat(2)) * ipi * (wsum + cL * w[static_cast<std::size_t>(L)]);
    BigComplex term = exp(expo);
    BigComplex ratio = exp(ipi * (lin + tLL * (BigComplex(BigFloat(2)) * cL + BigComplex(BigFloat(1)))) +
                           BigComplex(BigFloat(2)) * ipi * w[static_cast<std::size_t>(L)]);
    unsigned prefix = 0;
    for (int k = 0; k < L; ++k)
      if (n[static_cast<std::size_t>(k)] & 1) prefix |= 1u << k;
    for (long j = 0; j <= 2L * R; ++j) {
      long nL = lo[static_cast<std::size_t>(L)] + j;
      unsigned bucket = buckets ? (prefix | (static_cast<unsigned>(nL & 1) << L)) : 0u;
      out[bucket] += term;
      term *= ratio;
      ratio *= step;
    }
    int k = 0;
    for (; k < L; ++k) {
      auto& nk = n[static_cast<std::size_t>(k)];
      if (nk < lo[static_cast<std::size_t>(k)] + 2L * R) {
        ++nk;
        break;
      }
      nk = lo[static_cast<std::size_t>(k)];
    }
    if (k == L) break;
  }
  return out;
}

// Bound on the omitted shells |n - center|_inf = k > R, each point with max |chi_k| >= k - 1/2.
BigFloat tail_bound(double lambda_min, int g, int R, const BigFloat& im_w_l1) {
  BigFloat lam = BigFloat(lambda_min) * (1 - ten_pow_neg(9));
  BigFloat pi = big_pi(), sum = 0;
  for (int k = R + 1; k <= R + 40; ++k) {
    BigFloat kk = BigFloat(k) - BigFloat(1) / 2;
    BigFloat shell = 2 * g * boost::multiprecision::pow(BigFloat(2 * k + 1), g - 1);
    sum += shell * boost::multiprecision::exp(-pi * lam * kk * kk + 2 * pi * im_w_l1 * (k + 1));
  }
  return 2 * sum;
}

}  // namespace

ComplexRational parse_complex_rational(const std::string& raw) {
  std::string s;
  for (char c : raw)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw std::invalid_argument("empty complex number");
  if (s.back() != 'i') return {parse_decimal(s), Rational(0)};
  std::string body = s.substr(0, s.size() - 1);
  // split at the last sign that is not part of an exponent or the leading sign
  std::size_t cut = std::string::npos;
  for (std::size_t k = body.size(); k-- > 1;)
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      cut = k;
      break;
    }
  auto imag = [&](const std::string& t) {
    if (t.empty() || t == "+") return Rational(1);
    if (t == "-") return Rational(-1);
    return parse_decimal(t);
  };
  if (cut == std::string::npos) return {Rational(0), imag(body)};
  return {parse_decimal(body.substr(0, cut)), imag(body.substr(cut))};
}

std::string to_string(const ComplexRational& z) {
  return theta4::to_string(z.re) + (z.im >= 0 ? "+" : "") + theta4::to_string(z.im) + "i";
}

RiemannDiagnostics validate_riemann(const RiemannMatrix& m) {
  if (m.g < 1 || static_cast<int>(m.tau.size()) != m.g) throw InvalidRiemann("Riemann matrix must be g x g");
  for (const auto& row : m.tau)
    if (static_cast<int>(row.size()) != m.g) throw InvalidRiemann("Riemann matrix must be g x g");
  if (m.stated_digits < 1) throw InvalidRiemann("stated digits must be positive");
  RiemannDiagnostics d;
  d.tolerance = std::pow(10.0, -m.stated_digits + 1);
  Eigen::MatrixXd im(m.g, m.g);
  for (int i = 0; i < m.g; ++i)
    for (int j = 0; j < m.g; ++j) {
      const auto& a = m.tau[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      const auto& b = m.tau[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
      double dr = Rational(a.re - b.re).get_d(), di = Rational(a.im - b.im).get_d();
      d.symmetry_defect = std::max(d.symmetry_defect, std::hypot(dr, di));
      im(i, j) = Rational((a.im + b.im) / 2).get_d();
    }
  if (d.symmetry_defect > d.tolerance)
    throw InvalidRiemann("Riemann matrix is not symmetric (defect " + std::to_string(d.symmetry_defect) + ")");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(im, Eigen::EigenvaluesOnly);
  d.min_eigenvalue = es.eigenvalues().minCoeff();
  if (!(d.min_eigenvalue > 0))
    throw InvalidRiemann("imaginary part is not positive definite (min eigenvalue " +
                         std::to_string(d.min_eigenvalue) + ")");
  return d;
}

Characteristic from_form(const f2::QuadraticForm& q) {
  Characteristic c;
  for (int k = 0; k < q.genus; ++k) {
    c.eps.push_back(static_cast<int>((q.eps >> k) & 1));
    c.epsp.push_back(static_cast<int>((q.epsp >> k) & 1));
  }
  return c;
}

int truncation_radius(double lambda_min, int g, int digits) {
  if (!(lambda_min > 0)) throw InvalidRiemann("imaginary part is not positive definite");
  double x = (digits * std::log(10.0) + g * std::log(2.0)) / (M_PI * lambda_min);
  return static_cast<int>(std::ceil(std::sqrt(x))) + g + 2;
}

ThetaValue theta(const Characteristic& ch, const std::vector<BigComplex>& z, const RiemannMatrix& tau, int digits,
                 std::optional<int> radius) {
  if (static_cast<int>(ch.eps.size()) != tau.g || static_cast<int>(ch.epsp.size()) != tau.g ||
      static_cast<int>(z.size()) != tau.g)
    throw std::invalid_argument("theta: dimension mismatch");
  PrecisionScope scope(digits + 10);
  Prepared p = prepare(tau);
  ThetaValue out;
  out.characteristic = ch;
  out.truncation_radius = radius ? *radius : truncation_radius(p.lambda_min, p.g, digits);
  std::vector<BigComplex> w;
  BigFloat im_l1 = 0;
  for (int k = 0; k < p.g; ++k) {
    // z arrives at the caller's precision; rebuild at ours
    BigComplex zk(BigFloat(z[static_cast<std::size_t>(k)].re, static_cast<unsigned>(digits + 10)),
                  BigFloat(z[static_cast<std::size_t>(k)].im, static_cast<unsigned>(digits + 10)));
    w.push_back(zk + BigComplex(BigFloat(ch.epsp[static_cast<std::size_t>(k)]) / 2));
    im_l1 += boost::multiprecision::abs(zk.im);
  }
  out.value = lattice_sum(p, ch.eps, w, out.truncation_radius, false)[0];
  out.tail_bound = tail_bound(p.lambda_min, p.g, out.truncation_radius, im_l1);
  return out;
}

ThetaValue theta(const f2::QuadraticForm& q, const std::vector<BigComplex>& z, const RiemannMatrix& tau, int digits) {
  return theta(from_form(q), z, tau, digits);
}

std::vector<ThetaConstant> all_theta_constants(const RiemannMatrix& tau, int digits, int jobs) {
  PrecisionScope scope(digits + 10);
  Prepared p = prepare(tau);
  const int g = p.g;
  const unsigned n = 1u << g;
  const int R = truncation_radius(p.lambda_min, g, digits);
  const BigFloat tail = tail_bound(p.lambda_min, g, R, BigFloat(0));
  const std::vector<BigComplex> zero(static_cast<std::size_t>(g));
  std::vector<std::vector<BigComplex>> sums(n);
  parallel_for(n, jobs, [&](std::size_t e) {
    std::vector<int> eps;
    for (int k = 0; k < g; ++k) eps.push_back(static_cast<int>((e >> k) & 1));
    sums[e] = lattice_sum(p, eps, zero, R, true);
  });
  // exp(pi i chi_k) = (-1)^(n_k) i^(eps_k), so the eps' phase of bucket b is
  // (-1)^|b & eps'| i^|eps & eps'|.
  std::vector<ThetaConstant> out(std::size_t{1} << (2 * g));
  for (unsigned e = 0; e < n; ++e)
    for (unsigned ep = 0; ep < n; ++ep) {
      BigComplex acc;
      for (unsigned b = 0; b < n; ++b) {
        const auto& s = sums[e][b];
        if (std::popcount(b & ep) & 1)
          acc -= s;
        else
          acc += s;
      }
      switch (std::popcount(e & ep) % 4) {
        case 1: acc = BigComplex(-acc.im, acc.re); break;
        case 2: acc = -acc; break;
        case 3: acc = BigComplex(acc.im, -acc.re); break;
        default: break;
      }
      f2::QuadraticForm q{g, e, ep};
      out[q.index()] = ThetaConstant{q, ThetaValue{acc, from_form(q), R, tail}};
    }
  return out;
}

std::vector<ThetaConstant> all_even_theta_constants(const RiemannMatrix& tau, int digits, int jobs) {
  std::vector<ThetaConstant> out;
  for (auto& c : all_theta_constants(tau, digits, jobs))
    if (f2::arf(c.characteristic) == 0) out.push_back(std::move(c));
  return out;
}

double cross_check_tolerance(int stated_digits) { return std::pow(10.0, -(stated_digits - 2)); }

std::vector<ThetaConstant> vanishing_constants(const std::vector<ThetaConstant>& even, double threshold) {
  std::vector<ThetaConstant> out;
  for (const auto& c : even)
    if (abs(c.value.value) < threshold) out.push_back(c);
  return out;
}

PairMatch match_quotient(const std::vector<ThetaConstant>& even, const BigComplex& target, int pairing,
                         double vanish_threshold, double tolerance) {
  auto zero = vanishing_constants(even, vanish_threshold);
  if (zero.size() != 1)
    throw std::runtime_error("expected exactly one vanishing even constant, found " + std::to_string(zero.size()));
  PairMatch best;
  best.vanishing = zero[0].characteristic;
  best.error = INFINITY;
  const unsigned prec = target.precision();
  for (const auto& a : even) {
    if (a.characteristic == best.vanishing) continue;
    for (const auto& b : even) {
      if (b.characteristic == best.vanishing || b.characteristic == a.characteristic) continue;
      auto u = f2::difference(a.characteristic, best.vanishing), v = f2::difference(b.characteristic, best.vanishing);
      if (f2::pairing(u, v) != (pairing & 1)) continue;
      ++best.candidates;
      BigComplex r = pow(a.value.value / b.value.value, 4);
      BigComplex t(BigFloat(target.re, prec), BigFloat(target.im, prec));
      double err = static_cast<double>(abs(r - t));
      if (err < tolerance) ++best.within_tolerance;
      if (err < best.error) {
        best.error = err;
        best.a = a.characteristic;
        best.b = b.characteristic;
        best.ratio = r;
      }
    }
  }
  return best;
}

}  // namespace theta4::theta
