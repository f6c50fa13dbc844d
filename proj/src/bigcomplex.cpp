#include "theta4/bigcomplex.hpp"

#include <boost/math/constants/constants.hpp>

#include <cctype>
#include <sstream>
#include <stdexcept>

namespace theta4 {

PrecisionScope::PrecisionScope(int digits) : previous_(BigFloat::default_precision()) {
  if (digits < 10) throw std::invalid_argument("working precision below 10 digits");
  BigFloat::default_precision(static_cast<unsigned>(digits));
}

PrecisionScope::~PrecisionScope() { BigFloat::default_precision(previous_); }

BigFloat to_big(const Rational& r) {
  BigFloat x;
  mpfr_set_q(x.backend().data(), r.get_mpq_t(), MPFR_RNDN);
  return x;
}

BigFloat big_pi() { return boost::math::constants::pi<BigFloat>(); }

BigFloat ten_pow_neg(long k) { return boost::multiprecision::pow(BigFloat(10), BigFloat(-k)); }

BigComplex& BigComplex::operator+=(const BigComplex& o) {
  re += o.re;
  im += o.im;
  return *this;
}

BigComplex& BigComplex::operator-=(const BigComplex& o) {
  re -= o.re;
  im -= o.im;
  return *this;
}

BigComplex& BigComplex::operator*=(const BigComplex& o) {
  BigFloat r = re * o.re - im * o.im;
  im = re * o.im + im * o.re;
  re = std::move(r);
  return *this;
}

BigComplex& BigComplex::operator/=(const BigComplex& o) {
  BigFloat d = o.re * o.re + o.im * o.im;
  if (d == 0) throw std::domain_error("complex division by zero");
  BigFloat r = (re * o.re + im * o.im) / d;
  im = (im * o.re - re * o.im) / d;
  re = std::move(r);
  return *this;
}

BigComplex operator+(BigComplex a, const BigComplex& b) { return a += b; }
BigComplex operator-(BigComplex a, const BigComplex& b) { return a -= b; }
BigComplex operator-(const BigComplex& a) { return BigComplex(-a.re, -a.im); }
BigComplex operator*(BigComplex a, const BigComplex& b) { return a *= b; }
BigComplex operator/(BigComplex a, const BigComplex& b) { return a /= b; }

BigComplex conj(const BigComplex& z) { return BigComplex(z.re, -z.im); }
BigFloat norm(const BigComplex& z) { return z.re * z.re + z.im * z.im; }
BigFloat abs(const BigComplex& z) { return boost::multiprecision::hypot(z.re, z.im); }

BigComplex polar(const BigFloat& r, const BigFloat& theta) {
  return BigComplex(r * boost::multiprecision::cos(theta), r * boost::multiprecision::sin(theta));
}

BigComplex sqrt(const BigComplex& z) {
  if (z.re == 0 && z.im == 0) return z;
  BigFloat m = abs(z);
  BigFloat a = boost::multiprecision::sqrt((m + boost::multiprecision::abs(z.re)) / 2);
  if (z.re >= 0) return BigComplex(a, z.im / (2 * a));
  BigFloat b = z.im >= 0 ? a : BigFloat(-a);
  return BigComplex(boost::multiprecision::abs(z.im) / (2 * a), b);
}

BigComplex cbrt(const BigComplex& z) {
  if (z.re == 0 && z.im == 0) return z;
  BigFloat r = boost::multiprecision::cbrt(abs(z));
  BigFloat th = boost::multiprecision::atan2(z.im, z.re) / 3;
  return polar(r, th);
}

BigComplex exp(const BigComplex& z) { return polar(boost::multiprecision::exp(z.re), z.im); }

BigComplex pow(const BigComplex& z, int k) {
  if (k < 0) return BigComplex(BigFloat(1)) / pow(z, -k);
  BigComplex r(BigFloat(1)), b = z;
  while (k) {
    if (k & 1) r *= b;
    b *= b;
    k >>= 1;
  }
  return r;
}

std::string to_decimal(const BigFloat& x, int digits) {
  std::ostringstream os;
  os << std::setprecision(digits) << std::scientific << x;
  std::string s = os.str();
  // Plain positional form for moderate exponents keeps files readable.
  auto epos = s.find('e');
  if (epos == std::string::npos) return s;
  int ex = std::stoi(s.substr(epos + 1));
  if (ex < -8 || ex > 20) return s;
  std::ostringstream fx;
  fx << std::setprecision(std::max(0, digits - 1 - ex)) << std::fixed << x;
  return fx.str();
}

std::string to_string(const BigComplex& z, int digits) {
  std::string r = to_decimal(z.re, digits);
  if (z.im == 0) return r;
  std::string i = to_decimal(boost::multiprecision::abs(z.im), digits);
  return r + (z.im < 0 ? "-" : "+") + i + "i";
}

namespace {

BigFloat parse_real(const std::string& s, const std::string& whole) {
  if (s.empty()) throw std::invalid_argument("malformed complex number '" + whole + "'");
  std::size_t i = (s[0] == '+' || s[0] == '-') ? 1 : 0;
  bool digit = false, dot = false;
  for (; i < s.size(); ++i) {
    char c = s[i];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digit = true;
    } else if (c == '.' && !dot) {
      dot = true;
    } else if ((c == 'e' || c == 'E') && digit) {
      std::size_t j = i + 1;
      if (j < s.size() && (s[j] == '+' || s[j] == '-')) ++j;
      if (j == s.size()) throw std::invalid_argument("malformed complex number '" + whole + "'");
      for (; j < s.size(); ++j)
        if (!std::isdigit(static_cast<unsigned char>(s[j])))
          throw std::invalid_argument("malformed complex number '" + whole + "'");
      break;
    } else {
      throw std::invalid_argument("malformed complex number '" + whole + "'");
    }
  }
  if (!digit) throw std::invalid_argument("malformed complex number '" + whole + "'");
  return BigFloat(s);
}

}  // namespace

BigComplex parse_complex(const std::string& raw) {
  std::string s;
  for (char c : raw)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw std::invalid_argument("empty complex number");
  if (s.back() != 'i') return BigComplex(parse_real(s, raw));
  std::string body = s.substr(0, s.size() - 1);
  // Split at the last sign that is not the leading sign and not an exponent sign.
  std::size_t split = std::string::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  auto imag_of = [&](const std::string& t) {
    if (t.empty() || t == "+") return BigFloat(1);
    if (t == "-") return BigFloat(-1);
    return parse_real(t, raw);
  };
  if (split == std::string::npos) return BigComplex(BigFloat(0), imag_of(body));
  return BigComplex(parse_real(body.substr(0, split), raw), imag_of(body.substr(split)));
}

BigComplex evaluate(const HomogeneousForm& f, const std::vector<BigComplex>& point) {
  if (static_cast<int>(point.size()) != f.nvars()) throw std::invalid_argument("point dimension mismatch");
  for (const auto& c : point)
    if (c.re.precision() != point[0].re.precision() || c.im.precision() != point[0].re.precision())
      throw std::invalid_argument("coordinates carry different precisions");
  // Power tables, then one pass over the terms.
  std::vector<std::vector<BigComplex>> powers(point.size());
  for (std::size_t i = 0; i < point.size(); ++i) {
    powers[i].push_back(BigComplex(BigFloat(1)));
    for (int k = 1; k <= f.degree(); ++k) powers[i].push_back(powers[i].back() * point[i]);
  }
  BigComplex acc;
  for (const auto& [e, c] : f.terms()) {
    BigComplex t(to_big(c));
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i]) t *= powers[i][static_cast<std::size_t>(e[i])];
    acc += t;
  }
  return acc;
}

std::vector<BigComplex> normalize_max_modulus(const std::vector<BigComplex>& p) {
  std::size_t best = 0;
  BigFloat bn = -1;
  for (std::size_t i = 0; i < p.size(); ++i) {
    BigFloat n = norm(p[i]);
    if (n > bn) {
      bn = n;
      best = i;
    }
  }
  if (bn <= 0) throw std::invalid_argument("cannot normalize the zero vector");
  std::vector<BigComplex> out;
  out.reserve(p.size());
  for (const auto& c : p) out.push_back(c / p[best]);
  return out;
}

}  // namespace theta4
