#include "theta4/exact.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace theta4 {

Rational parse_rational(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty rational");
  auto slash = s.find('/');
  auto is_int = [](const std::string& t) {
    std::size_t i = (!t.empty() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
    if (i >= t.size()) return false;
    return std::all_of(t.begin() + static_cast<long>(i), t.end(), [](char c) { return c >= '0' && c <= '9'; });
  };
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!is_int(num) || !is_int(den) || den[0] == '-' || den[0] == '+')
    throw std::invalid_argument("malformed rational '" + s + "'");
  if (num[0] == '+') num.erase(0, 1);
  Integer d(den);
  if (d == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
  Rational r(Integer(num), d);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& r) {
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

std::vector<Exponent> monomials(int nvars, int degree) {
  std::vector<Exponent> out;
  if (nvars <= 0 || degree < 0) return out;
  Exponent e(static_cast<std::size_t>(nvars), 0);
  std::function<void(int, int)> rec = [&](int var, int left) {
    if (var == nvars - 1) {
      e[static_cast<std::size_t>(var)] = left;
      out.push_back(e);
      return;
    }
    for (int k = left; k >= 0; --k) {
      e[static_cast<std::size_t>(var)] = k;
      rec(var + 1, left - k);
    }
  };
  rec(0, degree);
  return out;
}

HomogeneousForm::HomogeneousForm(std::vector<std::string> variables, int degree)
    : vars_(std::move(variables)), degree_(degree) {
  if (degree < 0) throw std::invalid_argument("negative degree");
}

HomogeneousForm HomogeneousForm::from_dense(std::vector<std::string> variables, int degree,
                                            const std::vector<Exponent>& basis,
                                            const std::vector<Rational>& coeffs) {
  if (basis.size() != coeffs.size()) throw std::invalid_argument("basis/coefficient size mismatch");
  HomogeneousForm f(std::move(variables), degree);
  for (std::size_t i = 0; i < basis.size(); ++i) f.set(basis[i], coeffs[i]);
  return f;
}

Rational HomogeneousForm::coeff(const Exponent& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

void HomogeneousForm::set(const Exponent& e, const Rational& c) {
  if (static_cast<int>(e.size()) != nvars()) throw std::invalid_argument("exponent length mismatch");
  if (std::accumulate(e.begin(), e.end(), 0) != degree_) throw std::invalid_argument("exponent degree mismatch");
  if (c == 0)
    terms_.erase(e);
  else
    terms_[e] = c;
}

void HomogeneousForm::add_term(const Exponent& e, const Rational& c) { set(e, coeff(e) + c); }

std::vector<Rational> HomogeneousForm::dense(const std::vector<Exponent>& basis) const {
  std::vector<Rational> out;
  out.reserve(basis.size());
  for (const auto& e : basis) out.push_back(coeff(e));
  std::size_t found = 0;
  for (const auto& c : out) found += (c != 0);
  if (found != terms_.size()) throw std::invalid_argument("form has terms outside the given basis");
  return out;
}

HomogeneousForm HomogeneousForm::derivative(int var) const {
  if (var < 0 || var >= nvars()) throw std::invalid_argument("bad variable index");
  HomogeneousForm d(vars_, std::max(0, degree_ - 1));
  if (degree_ == 0) return d;
  for (const auto& [e, c] : terms_) {
    int k = e[static_cast<std::size_t>(var)];
    if (k == 0) continue;
    Exponent e2 = e;
    --e2[static_cast<std::size_t>(var)];
    d.add_term(e2, c * k);
  }
  return d;
}

HomogeneousForm HomogeneousForm::monic() const {
  if (terms_.empty()) return *this;
  HomogeneousForm out = *this;
  out *= 1 / Rational(terms_.begin()->second);
  return out;
}

void HomogeneousForm::check_compatible(const HomogeneousForm& o) const {
  if (vars_ != o.vars_) throw std::invalid_argument("variable lists differ");
}

HomogeneousForm& HomogeneousForm::operator+=(const HomogeneousForm& o) {
  check_compatible(o);
  if (o.degree_ != degree_ && !o.is_zero() && !is_zero()) throw std::invalid_argument("degree mismatch in sum");
  if (is_zero()) degree_ = o.degree_;
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

HomogeneousForm& HomogeneousForm::operator-=(const HomogeneousForm& o) {
  HomogeneousForm neg = o;
  neg *= Rational(-1);
  return *this += neg;
}

HomogeneousForm& HomogeneousForm::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

HomogeneousForm operator*(const HomogeneousForm& a, const HomogeneousForm& b) {
  a.check_compatible(b);
  HomogeneousForm out(a.vars_, a.degree_ + b.degree_);
  Exponent e(a.vars_.size());
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      Rational& slot = out.terms_[e];
      slot += ca * cb;
    }
  }
  for (auto it = out.terms_.begin(); it != out.terms_.end();) {
    if (it->second == 0)
      it = out.terms_.erase(it);
    else
      ++it;
  }
  return out;
}

bool operator==(const HomogeneousForm& a, const HomogeneousForm& b) {
  if (a.vars_ != b.vars_) return false;
  if (a.is_zero() && b.is_zero()) return true;
  return a.degree_ == b.degree_ && a.terms_ == b.terms_;
}

HomogeneousForm HomogeneousForm::pow(int k) const {
  if (k < 0) throw std::invalid_argument("negative power");
  HomogeneousForm r(vars_, 0);
  r.set(Exponent(vars_.size(), 0), 1);
  for (int i = 0; i < k; ++i) r = r * *this;
  return r;
}

Rational HomogeneousForm::evaluate(const std::vector<Rational>& p) const {
  if (static_cast<int>(p.size()) != nvars()) throw std::invalid_argument("point dimension mismatch");
  Rational acc = 0;
  for (const auto& [e, c] : terms_) {
    Rational t = c;
    for (std::size_t i = 0; i < e.size(); ++i)
      for (int k = 0; k < e[i]; ++k) t *= p[i];
    acc += t;
  }
  return acc;
}

std::string HomogeneousForm::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    os << (first ? "" : " + ") << "(" << c.get_str() << ")";
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      os << "*" << vars_[i];
      if (e[i] > 1) os << "^" << e[i];
    }
    first = false;
  }
  return os.str();
}

namespace {

std::vector<Integer> integerize(const std::vector<Rational>& row, std::size_t ncols) {
  Integer l = 1;
  for (std::size_t j = 0; j < ncols; ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), row[j].get_den_mpz_t());
  std::vector<Integer> out(ncols);
  for (std::size_t j = 0; j < ncols; ++j) out[j] = row[j].get_num() * (l / row[j].get_den());
  return out;
}

}  // namespace

BareissResult bareiss(const RationalMatrix& m, std::size_t ncols) {
  BareissResult res;
  for (const auto& r : m) {
    if (r.size() != ncols) throw std::invalid_argument("ragged matrix");
    res.rows.push_back(integerize(r, ncols));
  }
  auto& a = res.rows;
  const std::size_t nrows = a.size();
  Integer prev = 1;
  std::size_t row = 0;
  for (std::size_t col = 0; col < ncols && row < nrows; ++col) {
    std::size_t p = row;
    while (p < nrows && a[p][col] == 0) ++p;
    if (p == nrows) continue;
    std::swap(a[p], a[row]);
    const Integer& piv = a[row][col];
    for (std::size_t i = row + 1; i < nrows; ++i) {
      for (std::size_t j = col + 1; j < ncols; ++j) {
        Integer t = piv * a[i][j] - a[i][col] * a[row][j];
        mpz_divexact(a[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      a[i][col] = 0;
    }
    prev = piv;
    res.pivots.push_back(col);
    ++row;
  }
  return res;
}

std::size_t rank(const RationalMatrix& m, std::size_t ncols) { return bareiss(m, ncols).rank(); }

namespace {

// Back-substitution on an integer echelon form, with x fixed at the free columns.
void back_substitute(const BareissResult& e, std::vector<Rational>& x, std::size_t ncols) {
  for (std::size_t k = e.rank(); k-- > 0;) {
    std::size_t pc = e.pivots[k];
    Rational acc = 0;
    for (std::size_t j = pc + 1; j < ncols; ++j)
      if (x[j] != 0 && e.rows[k][j] != 0) acc += Rational(e.rows[k][j]) * x[j];
    x[pc] = -acc / Rational(e.rows[k][pc]);
  }
}

}  // namespace

std::vector<std::vector<Rational>> nullspace(const RationalMatrix& m, std::size_t ncols) {
  BareissResult e = bareiss(m, ncols);
  std::vector<bool> is_pivot(ncols, false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<std::vector<Rational>> basis;
  for (std::size_t f = 0; f < ncols; ++f) {
    if (is_pivot[f]) continue;
    std::vector<Rational> x(ncols, Rational(0));
    x[f] = 1;
    back_substitute(e, x, ncols);
    basis.push_back(std::move(x));
  }
  return basis;
}

std::optional<std::vector<Rational>> solve(const RationalMatrix& a, const std::vector<Rational>& b) {
  if (a.size() != b.size()) throw std::invalid_argument("rhs size mismatch");
  std::size_t ncols = a.empty() ? 0 : a[0].size();
  RationalMatrix aug = a;
  for (std::size_t i = 0; i < aug.size(); ++i) aug[i].push_back(b[i]);
  BareissResult e = bareiss(aug, ncols + 1);
  if (!e.pivots.empty() && e.pivots.back() == ncols) return std::nullopt;
  std::vector<Rational> x(ncols + 1, Rational(0));
  x[ncols] = -1;
  back_substitute(e, x, ncols + 1);
  x.pop_back();
  return x;
}

RationalMatrix reduced_echelon(const RationalMatrix& rows, const std::vector<std::size_t>& order) {
  RationalMatrix a = rows;
  const std::size_t n = order.size();
  std::size_t r = 0;
  for (std::size_t oc = 0; oc < n && r < a.size(); ++oc) {
    std::size_t col = order[oc];
    std::size_t p = r;
    while (p < a.size() && a[p][col] == 0) ++p;
    if (p == a.size()) continue;
    std::swap(a[p], a[r]);
    Rational inv = 1 / a[r][col];
    for (auto& v : a[r]) v *= inv;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i == r || a[i][col] == 0) continue;
      Rational f = a[i][col];
      for (std::size_t j = 0; j < n; ++j) a[i][j] -= f * a[r][j];
    }
    ++r;
  }
  a.resize(r);
  return a;
}

RationalMatrix vanishing_matrix(const std::vector<std::vector<Rational>>& points, int degree,
                                const std::vector<int>& mults) {
  if (points.size() != mults.size()) throw std::invalid_argument("points/multiplicities size mismatch");
  if (points.empty()) return {};
  const int nv = static_cast<int>(points[0].size());
  const auto cols = monomials(nv, degree);
  RationalMatrix out;
  for (std::size_t pi = 0; pi < points.size(); ++pi) {
    std::vector<Rational> p = points[pi];
    if (static_cast<int>(p.size()) != nv) throw std::invalid_argument("point dimension mismatch");
    auto last = std::find_if(p.rbegin(), p.rend(), [](const Rational& c) { return c != 0; });
    if (last == p.rend()) throw std::invalid_argument("degenerate point (all coordinates zero)");
    Rational scale = *last;
    for (auto& c : p) c /= scale;
    if (mults[pi] <= 0) continue;
    for (const auto& alpha : monomials(nv, mults[pi] - 1)) {
      std::vector<Rational> row(cols.size(), Rational(0));
      for (std::size_t c = 0; c < cols.size(); ++c) {
        const auto& e = cols[c];
        Rational v = 1;
        for (int i = 0; i < nv && v != 0; ++i) {
          int ei = e[static_cast<std::size_t>(i)], ai = alpha[static_cast<std::size_t>(i)];
          if (ei < ai) {
            v = 0;
            break;
          }
          for (int k = 0; k < ai; ++k) v *= (ei - k);
          for (int k = 0; k < ei - ai; ++k) v *= p[static_cast<std::size_t>(i)];
        }
        row[c] = v;
      }
      out.push_back(std::move(row));
    }
  }
  return out;
}

UniPoly::UniPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

void UniPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Rational UniPoly::operator[](int i) const {
  return (i < 0 || i > degree()) ? Rational(0) : c_[static_cast<std::size_t>(i)];
}

Rational UniPoly::leading() const { return c_.empty() ? Rational(0) : c_.back(); }

UniPoly UniPoly::derivative() const {
  std::vector<Rational> d;
  for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i] * static_cast<long>(i));
  return UniPoly(std::move(d));
}

UniPoly UniPoly::monic() const {
  if (c_.empty()) return *this;
  std::vector<Rational> d = c_;
  Rational l = c_.back();
  for (auto& v : d) v /= l;
  return UniPoly(std::move(d));
}

Rational UniPoly::evaluate(const Rational& x) const {
  Rational acc = 0;
  for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
  return acc;
}

UniPoly operator+(const UniPoly& a, const UniPoly& b) {
  std::vector<Rational> r(std::max(a.c_.size(), b.c_.size()), Rational(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] += b.c_[i];
  return UniPoly(std::move(r));
}

UniPoly operator-(const UniPoly& a, const UniPoly& b) {
  std::vector<Rational> r(std::max(a.c_.size(), b.c_.size()), Rational(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] -= b.c_[i];
  return UniPoly(std::move(r));
}

UniPoly operator*(const UniPoly& a, const UniPoly& b) {
  if (a.is_zero() || b.is_zero()) return UniPoly();
  std::vector<Rational> r(a.c_.size() + b.c_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
  return UniPoly(std::move(r));
}

std::pair<UniPoly, UniPoly> divmod(const UniPoly& a, const UniPoly& b) {
  if (b.is_zero()) throw std::invalid_argument("polynomial division by zero");
  std::vector<Rational> rem = a.coeffs();
  const int db = b.degree();
  if (a.degree() < db) return {UniPoly(), a};
  std::vector<Rational> q(static_cast<std::size_t>(a.degree() - db + 1), Rational(0));
  Rational lb = b.leading();
  for (int k = a.degree() - db; k >= 0; --k) {
    Rational f = rem[static_cast<std::size_t>(k + db)] / lb;
    q[static_cast<std::size_t>(k)] = f;
    if (f == 0) continue;
    for (int j = 0; j <= db; ++j) rem[static_cast<std::size_t>(k + j)] -= f * b[j];
  }
  return {UniPoly(std::move(q)), UniPoly(std::move(rem))};
}

UniPoly poly_gcd_univariate(const UniPoly& a, const UniPoly& b) {
  if (a.is_zero() && b.is_zero()) throw std::invalid_argument("gcd(0, 0) is undefined");
  UniPoly x = a.monic(), y = b.monic();
  while (!y.is_zero()) {
    UniPoly r = divmod(x, y).second.monic();
    x = std::move(y);
    y = std::move(r);
  }
  return x;
}

}  // namespace theta4
