#pragma once

#include <boost/multiprecision/mpfr.hpp>

#include <string>
#include <vector>

#include "theta4/exact.hpp"

namespace theta4 {

using BigFloat = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                               boost::multiprecision::et_off>;

// Sets the default BigFloat precision (decimal digits) for the lifetime of the scope.
// The default lives in a process-wide static, so never open one inside a parallel region.
class PrecisionScope {
 public:
  explicit PrecisionScope(int digits);
  ~PrecisionScope();
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  unsigned previous_;
};

BigFloat to_big(const Rational& r);
BigFloat big_pi();
// 10^(-k) at the current default precision.
BigFloat ten_pow_neg(long k);

struct BigComplex {
  BigFloat re, im;

  BigComplex() : re(0), im(0) {}
  BigComplex(BigFloat r) : re(std::move(r)), im(0) {}  // NOLINT: implicit real promotion
  BigComplex(BigFloat r, BigFloat i) : re(std::move(r)), im(std::move(i)) {}
  explicit BigComplex(const Rational& r) : re(to_big(r)), im(0) {}

  unsigned precision() const { return re.precision(); }

  BigComplex& operator+=(const BigComplex& o);
  BigComplex& operator-=(const BigComplex& o);
  BigComplex& operator*=(const BigComplex& o);
  BigComplex& operator/=(const BigComplex& o);
};

BigComplex operator+(BigComplex a, const BigComplex& b);
BigComplex operator-(BigComplex a, const BigComplex& b);
BigComplex operator-(const BigComplex& a);
BigComplex operator*(BigComplex a, const BigComplex& b);
BigComplex operator/(BigComplex a, const BigComplex& b);

BigComplex conj(const BigComplex& z);
BigFloat norm(const BigComplex& z);  // |z|^2
BigFloat abs(const BigComplex& z);
BigComplex sqrt(const BigComplex& z);  // principal branch
BigComplex cbrt(const BigComplex& z);  // principal branch, arg in (-pi/3, pi/3]
BigComplex exp(const BigComplex& z);
BigComplex pow(const BigComplex& z, int k);
BigComplex polar(const BigFloat& r, const BigFloat& theta);

// Decimal "a+bi" / "a-bi" / "a" / "bi" with `digits` significant digits per part.
std::string to_string(const BigComplex& z, int digits);
std::string to_decimal(const BigFloat& x, int digits);
BigComplex parse_complex(const std::string& s);

// Evaluation at a complex point. All coordinates must carry the same precision.
BigComplex evaluate(const HomogeneousForm& f, const std::vector<BigComplex>& point);

// Divides by the coordinate of largest modulus.
std::vector<BigComplex> normalize_max_modulus(const std::vector<BigComplex>& p);

}  // namespace theta4
