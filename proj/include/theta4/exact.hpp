#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace theta4 {

using Integer = mpz_class;
using Rational = mpq_class;

// Accepts "p/q", "p" and signed forms; rejects anything else.
Rational parse_rational(const std::string& s);
// Always "p/q", denominator included even when 1.
std::string to_string(const Rational& r);

using Exponent = std::vector<int>;

// Descending lexicographic order, which is graded-lex for equal degrees.
struct ExponentGreater {
  bool operator()(const Exponent& a, const Exponent& b) const { return a > b; }
};

// All exponent vectors of total degree `degree` in `nvars` variables, graded-lex descending.
std::vector<Exponent> monomials(int nvars, int degree);

class HomogeneousForm {
 public:
  using Terms = std::map<Exponent, Rational, ExponentGreater>;

  HomogeneousForm() = default;
  HomogeneousForm(std::vector<std::string> variables, int degree);

  static HomogeneousForm from_dense(std::vector<std::string> variables, int degree,
                                    const std::vector<Exponent>& basis,
                                    const std::vector<Rational>& coeffs);

  const std::vector<std::string>& variables() const { return vars_; }
  int nvars() const { return static_cast<int>(vars_.size()); }
  int degree() const { return degree_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  Rational coeff(const Exponent& e) const;
  void set(const Exponent& e, const Rational& c);
  void add_term(const Exponent& e, const Rational& c);

  std::vector<Rational> dense(const std::vector<Exponent>& basis) const;
  HomogeneousForm derivative(int var) const;
  // Divides by the first nonzero coefficient in term order.
  HomogeneousForm monic() const;

  HomogeneousForm& operator+=(const HomogeneousForm& o);
  HomogeneousForm& operator-=(const HomogeneousForm& o);
  HomogeneousForm& operator*=(const Rational& c);

  friend HomogeneousForm operator+(HomogeneousForm a, const HomogeneousForm& b) { return a += b; }
  friend HomogeneousForm operator-(HomogeneousForm a, const HomogeneousForm& b) { return a -= b; }
  friend HomogeneousForm operator*(HomogeneousForm a, const Rational& c) { return a *= c; }
  friend HomogeneousForm operator*(const Rational& c, HomogeneousForm a) { return a *= c; }
  friend HomogeneousForm operator*(const HomogeneousForm& a, const HomogeneousForm& b);
  friend bool operator==(const HomogeneousForm& a, const HomogeneousForm& b);

  HomogeneousForm pow(int k) const;
  Rational evaluate(const std::vector<Rational>& point) const;
  std::string to_string() const;

 private:
  void check_compatible(const HomogeneousForm& o) const;

  std::vector<std::string> vars_;
  int degree_ = 0;
  Terms terms_;
};

using RationalMatrix = std::vector<std::vector<Rational>>;

// Fraction-free (Bareiss) row reduction. Returns pivot columns; `m` is replaced by an
// integer row-echelon form whose first rank() rows are nonzero.
struct BareissResult {
  std::vector<std::vector<Integer>> rows;
  std::vector<std::size_t> pivots;
  std::size_t rank() const { return pivots.size(); }
};
BareissResult bareiss(const RationalMatrix& m, std::size_t ncols);

std::size_t rank(const RationalMatrix& m, std::size_t ncols);

// Reduced-echelon basis of the right nullspace: one vector per free column, equal to 1
// there and 0 at the other free columns.
std::vector<std::vector<Rational>> nullspace(const RationalMatrix& m, std::size_t ncols);

// Exact solution of A x = b, or nullopt when inconsistent. Free variables are set to 0.
std::optional<std::vector<Rational>> solve(const RationalMatrix& a, const std::vector<Rational>& b);

// Reduced row-echelon form of the span of `rows`, with pivots searched in the column
// order given by `column_order` (a permutation of 0..n-1). Zero rows dropped.
RationalMatrix reduced_echelon(const RationalMatrix& rows, const std::vector<std::size_t>& column_order);

// Rows: every partial derivative of order m_i - 1 at P_i (Euler's relation gives lower
// orders for free); columns: degree-d monomials in graded-lex order.
RationalMatrix vanishing_matrix(const std::vector<std::vector<Rational>>& points, int degree,
                                const std::vector<int>& multiplicities);

// Dense univariate polynomial with coefficients low degree first, no trailing zeros.
class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(std::vector<Rational> coeffs);

  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
  bool is_zero() const { return c_.empty(); }
  const std::vector<Rational>& coeffs() const { return c_; }
  Rational operator[](int i) const;
  Rational leading() const;

  UniPoly derivative() const;
  UniPoly monic() const;
  Rational evaluate(const Rational& x) const;

  friend UniPoly operator+(const UniPoly& a, const UniPoly& b);
  friend UniPoly operator-(const UniPoly& a, const UniPoly& b);
  friend UniPoly operator*(const UniPoly& a, const UniPoly& b);
  friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.c_ == b.c_; }

 private:
  void trim();
  std::vector<Rational> c_;
};

// Quotient and remainder; throws on division by zero.
std::pair<UniPoly, UniPoly> divmod(const UniPoly& a, const UniPoly& b);
// Monic gcd; gcd(0, 0) is rejected.
UniPoly poly_gcd_univariate(const UniPoly& a, const UniPoly& b);

}  // namespace theta4
