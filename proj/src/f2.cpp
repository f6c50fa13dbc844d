#include "theta4/f2.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <stdexcept>

namespace theta4::f2 {

namespace {

void check_genus(int g) {
  if (g < 1 || g > kMaxGenus) throw std::invalid_argument("genus out of range");
}

int parity(std::uint32_t x) { return std::popcount(x) & 1; }

// Coordinates in QV ⊔ V: bit 2g flags a form, low 2g bits carry (eps | eps' << g).
// A vector (lambda, mu) shifts characteristics by (mu, lambda), hence its code.
std::uint32_t code_of(const QuadraticForm& q) { return (1u << (2 * q.genus)) | q.eps | (q.epsp << q.genus); }
std::uint32_t code_of(F2Vector v) { return v.mu() | (v.lambda() << v.genus); }

// Mask m over the basis with XOR_{i in m} basis[i] = target, or throw.
std::uint32_t express(const std::vector<std::uint32_t>& basis, std::uint32_t target) {
  std::vector<std::uint32_t> val(32, 0), comb(32, 0);
  auto reduce = [&](std::uint32_t& v, std::uint32_t& c) {
    for (int b = 31; b >= 0; --b)
      if ((v >> b & 1) && val[static_cast<std::size_t>(b)]) {
        v ^= val[static_cast<std::size_t>(b)];
        c ^= comb[static_cast<std::size_t>(b)];
      }
  };
  for (std::size_t i = 0; i < basis.size(); ++i) {
    std::uint32_t v = basis[i], c = 1u << i;
    reduce(v, c);
    if (v == 0) throw std::invalid_argument("Aronhold forms are linearly dependent");
    auto top = static_cast<std::size_t>(std::bit_width(v) - 1);
    val[top] = v;
    comb[top] = c;
  }
  std::uint32_t c = 0;
  reduce(target, c);
  if (target != 0) throw std::invalid_argument("element outside the span");
  return c;
}

std::vector<std::uint32_t> basis_codes(const AronholdBasis& a) {
  if (static_cast<int>(a.forms.size()) != 2 * a.genus + 1) throw std::invalid_argument("Aronhold basis has wrong size");
  std::vector<std::uint32_t> out;
  for (const auto& q : a.forms) out.push_back(code_of(q));
  return out;
}

}  // namespace

F2Vector F2Vector::from_parts(int g, std::uint32_t lambda, std::uint32_t mu) {
  check_genus(g);
  std::uint32_t m = (1u << g) - 1;
  return F2Vector{g, (lambda & m) | ((mu & m) << g)};
}

F2Vector operator+(F2Vector a, F2Vector b) {
  if (a.genus != b.genus) throw std::invalid_argument("genus mismatch");
  return F2Vector{a.genus, a.bits ^ b.bits};
}

int pairing(F2Vector u, F2Vector v) {
  if (u.genus != v.genus) throw std::invalid_argument("genus mismatch");
  return parity((u.lambda() & v.mu()) ^ (v.lambda() & u.mu()));
}

int QuadraticForm::operator()(F2Vector w) const {
  if (w.genus != genus) throw std::invalid_argument("genus mismatch");
  return parity(eps & w.lambda()) ^ parity(epsp & w.mu()) ^ parity(w.lambda() & w.mu());
}

QuadraticForm QuadraticForm::from_index(int g, std::uint32_t idx) {
  check_genus(g);
  std::uint32_t m = (1u << g) - 1;
  return QuadraticForm{g, idx & m, (idx >> g) & m};
}

int arf(const QuadraticForm& q) { return parity(q.eps & q.epsp); }

QuadraticForm act(const QuadraticForm& q, F2Vector v) {
  if (q.genus != v.genus) throw std::invalid_argument("genus mismatch");
  return QuadraticForm{q.genus, q.eps ^ v.mu(), q.epsp ^ v.lambda()};
}

F2Vector difference(const QuadraticForm& a, const QuadraticForm& b) {
  if (a.genus != b.genus) throw std::invalid_argument("genus mismatch");
  return F2Vector::from_parts(a.genus, a.epsp ^ b.epsp, a.eps ^ b.eps);
}

bool is_syzygetic(const QuadraticForm& a, const QuadraticForm& b, const QuadraticForm& c) {
  if (a.genus != b.genus || b.genus != c.genus) throw std::invalid_argument("genus mismatch");
  if (a == b || b == c || a == c) throw std::invalid_argument("syzygy test needs pairwise distinct forms");
  QuadraticForm d{a.genus, a.eps ^ b.eps ^ c.eps, a.epsp ^ b.epsp ^ c.epsp};
  return (arf(a) ^ arf(b) ^ arf(c) ^ arf(d)) == 0;
}

std::vector<QuadraticForm> all_forms(int g) {
  check_genus(g);
  std::vector<QuadraticForm> out;
  for (std::uint32_t i = 0; i < (1u << (2 * g)); ++i) out.push_back(QuadraticForm::from_index(g, i));
  return out;
}

std::string serialize(const QuadraticForm& q) {
  std::string s;
  for (int i = 0; i < q.genus; ++i) s += ((q.eps >> i) & 1) ? '1' : '0';
  s += '|';
  for (int i = 0; i < q.genus; ++i) s += ((q.epsp >> i) & 1) ? '1' : '0';
  return s;
}

QuadraticForm parse_characteristic(const std::string& s) {
  auto bar = s.find('|');
  if (bar == std::string::npos || bar == 0 || s.size() != 2 * bar + 1)
    throw std::invalid_argument("malformed characteristic '" + s + "'");
  int g = static_cast<int>(bar);
  check_genus(g);
  QuadraticForm q{g, 0, 0};
  for (int i = 0; i < g; ++i) {
    char a = s[static_cast<std::size_t>(i)], b = s[bar + 1 + static_cast<std::size_t>(i)];
    if ((a != '0' && a != '1') || (b != '0' && b != '1')) throw std::invalid_argument("malformed characteristic '" + s + "'");
    q.eps |= static_cast<std::uint32_t>(a - '0') << i;
    q.epsp |= static_cast<std::uint32_t>(b - '0') << i;
  }
  return q;
}

Label Label::make(int g, std::vector<int> idx) {
  check_genus(g);
  std::sort(idx.begin(), idx.end());
  if (std::adjacent_find(idx.begin(), idx.end()) != idx.end()) throw std::invalid_argument("repeated label index");
  for (int i : idx)
    if (i < 1 || i > 2 * g + 1) throw std::invalid_argument("label index out of range");
  if (idx.size() % 2 == 0) throw std::invalid_argument("label must have odd cardinality");
  return Label{g, std::move(idx)};
}

std::uint32_t Label::mask() const { return mask_of_indices(indices); }

std::vector<int> symmetric_difference(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out;
  std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::vector<int> indices_of_mask(std::uint32_t mask) {
  std::vector<int> out;
  for (int i = 0; mask; ++i, mask >>= 1)
    if (mask & 1) out.push_back(i + 1);
  return out;
}

std::uint32_t mask_of_indices(const std::vector<int>& idx) {
  std::uint32_t m = 0;
  for (int i : idx) m |= 1u << (i - 1);
  return m;
}

bool is_fundamental_set(const std::vector<F2Vector>& f) {
  if (f.empty()) return false;
  int g = f[0].genus;
  if (static_cast<int>(f.size()) != 2 * g + 1) return false;
  std::uint32_t sum = 0;
  for (auto v : f) {
    if (v.genus != g) return false;
    sum ^= v.bits;
  }
  if (sum != 0) return false;
  for (std::size_t i = 0; i < f.size(); ++i)
    for (std::size_t j = i + 1; j < f.size(); ++j)
      if (pairing(f[i], f[j]) != 1) return false;
  return true;
}

std::vector<F2Vector> standard_fundamental_set(int g) {
  check_genus(g);
  std::vector<F2Vector> out;
  F2Vector prefix{g, 0}, total{g, 0};
  for (int i = 0; i < g; ++i) {
    F2Vector e = F2Vector::from_parts(g, 1u << i, 0), f = F2Vector::from_parts(g, 0, 1u << i);
    out.push_back(e + prefix);
    out.push_back(f + prefix);
    total = total + out[out.size() - 2] + out.back();
    prefix = prefix + e + f;
  }
  out.push_back(total);
  return out;
}

AronholdBasis aronhold_from_fundamental(const std::vector<F2Vector>& f, const QuadraticForm& q, int mu) {
  if (!is_fundamental_set(f)) throw std::invalid_argument("not a fundamental set");
  if (q.genus != f[0].genus) throw std::invalid_argument("genus mismatch");
  F2Vector w{q.genus, 0};
  for (auto v : f)
    if (q(v) == (mu & 1)) w = w + v;
  AronholdBasis a{q.genus, {}};
  for (auto v : f) a.forms.push_back(act(q, w + v));
  return a;
}

bool has_aronhold_property(const AronholdBasis& a) {
  const int n = 2 * a.genus + 1;
  if (static_cast<int>(a.forms.size()) != n) return false;
  int by_len[4] = {-1, -1, -1, -1};
  for (std::uint32_t m = 1; m < (1u << n); ++m) {
    int len = std::popcount(m);
    if (len % 2 == 0) continue;
    QuadraticForm s{a.genus, 0, 0};
    for (int i = 0; i < n; ++i)
      if (m >> i & 1) {
        s.eps ^= a.forms[static_cast<std::size_t>(i)].eps;
        s.epsp ^= a.forms[static_cast<std::size_t>(i)].epsp;
      }
    int& slot = by_len[len % 4];
    if (slot == -1)
      slot = arf(s);
    else if (slot != arf(s))
      return false;
  }
  return true;
}

QuadraticForm label_to_form(const AronholdBasis& a, const Label& l) {
  if (l.genus != a.genus) throw std::invalid_argument("genus mismatch");
  if (l.indices.size() % 2 == 0) throw std::invalid_argument("label must have odd cardinality");
  QuadraticForm s{a.genus, 0, 0};
  for (int i : l.indices) {
    if (i < 1 || i > 2 * a.genus + 1) throw std::invalid_argument("label index out of range");
    s.eps ^= a.forms[static_cast<std::size_t>(i - 1)].eps;
    s.epsp ^= a.forms[static_cast<std::size_t>(i - 1)].epsp;
  }
  return s;
}

Label form_to_label(const AronholdBasis& a, const QuadraticForm& q) {
  return Label{a.genus, indices_of_mask(express(basis_codes(a), code_of(q)))};
}

F2Vector subset_to_vector(const AronholdBasis& a, const std::vector<int>& idx) {
  if (idx.size() % 2 != 0) throw std::invalid_argument("vector subsets have even cardinality");
  const int g = a.genus;
  std::uint32_t eps = 0, epsp = 0;
  for (int i : idx) {
    if (i < 1 || i > 2 * g + 1) throw std::invalid_argument("subset index out of range");
    eps ^= a.forms[static_cast<std::size_t>(i - 1)].eps;
    epsp ^= a.forms[static_cast<std::size_t>(i - 1)].epsp;
  }
  return F2Vector::from_parts(g, epsp, eps);
}

std::vector<int> vector_to_subset(const AronholdBasis& a, F2Vector v) {
  if (v.genus != a.genus) throw std::invalid_argument("genus mismatch");
  return indices_of_mask(express(basis_codes(a), code_of(v)));
}

bool SteinerSet::contains(const QuadraticForm& q) const {
  for (const auto& [a, b] : pairs)
    if (a == q || b == q) return true;
  return false;
}

std::vector<QuadraticForm> SteinerSet::members() const {
  std::vector<QuadraticForm> out;
  for (const auto& [a, b] : pairs) {
    out.push_back(a);
    out.push_back(b);
  }
  std::sort(out.begin(), out.end());
  return out;
}

SteinerSet steiner_set(F2Vector v) {
  if (v.is_zero()) throw std::invalid_argument("Steiner set needs a nonzero vector");
  SteinerSet s{v, {}};
  for (const auto& q : all_forms(v.genus)) {
    if (arf(q) != 1 || q(v) != 0) continue;
    QuadraticForm p = act(q, v);
    if (q < p) s.pairs.emplace_back(q, p);
  }
  return s;
}

int steiner_intersection_size(F2Vector v, F2Vector w) {
  if (v.is_zero() || w.is_zero() || v == w) throw std::invalid_argument("need distinct nonzero vectors");
  auto a = steiner_set(v).members(), b = steiner_set(w).members();
  std::vector<QuadraticForm> c;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(c));
  return static_cast<int>(c.size());
}

int expected_intersection_size(int g, int p) {
  if (g < 2) throw std::invalid_argument("genus too small for Steiner intersections");
  return p == 0 ? (1 << (g - 1)) * ((1 << (g - 2)) - 1) : (1 << (g - 2)) * ((1 << (g - 1)) - 1);
}

QuadraticForm SymplecticBasis::coordinates(const QuadraticForm& q) const {
  QuadraticForm out{genus, 0, 0};
  for (int i = 0; i < genus; ++i) {
    out.eps |= static_cast<std::uint32_t>(q(f[static_cast<std::size_t>(i)])) << i;
    out.epsp |= static_cast<std::uint32_t>(q(e[static_cast<std::size_t>(i)])) << i;
  }
  return out;
}

bool SymplecticBasis::is_symplectic() const {
  for (int i = 0; i < genus; ++i)
    for (int j = 0; j < genus; ++j) {
      auto ui = static_cast<std::size_t>(i), uj = static_cast<std::size_t>(j);
      if (pairing(e[ui], e[uj]) != 0 || pairing(f[ui], f[uj]) != 0) return false;
      if (pairing(e[ui], f[uj]) != (i == j ? 1 : 0)) return false;
    }
  return true;
}

SymplecticBasis symplectic_basis_from_steiner(const std::vector<SteinerSet>& sets) {
  if (sets.empty()) throw std::invalid_argument("no Steiner sets given");
  const int g = sets[0].base.genus;
  if (g < 2) throw std::invalid_argument("Steiner selection needs genus >= 2");
  const std::size_t words = ((1u << (2 * g)) + 63) / 64;
  std::vector<std::vector<std::uint64_t>> bits(sets.size(), std::vector<std::uint64_t>(words, 0));
  for (std::size_t k = 0; k < sets.size(); ++k)
    for (const auto& q : sets[k].members()) bits[k][q.index() / 64] |= 1ull << (q.index() % 64);
  auto inter = [&](std::size_t a, std::size_t b) {
    int c = 0;
    for (std::size_t w = 0; w < words; ++w) c += std::popcount(bits[a][w] & bits[b][w]);
    return c;
  };
  const int same = expected_intersection_size(g, 0), dual = expected_intersection_size(g, 1);

  std::vector<std::size_t> chosen;  // position p: kind p%2 (0=e, 1=f), index p/2
  std::function<bool()> rec = [&]() -> bool {
    const std::size_t pos = chosen.size();
    if (pos == static_cast<std::size_t>(2 * g)) return true;
    for (std::size_t c = 0; c < sets.size(); ++c) {
      bool ok = true;
      for (std::size_t p = 0; p < pos && ok; ++p) {
        if (chosen[p] == c) {
          ok = false;
          break;
        }
        bool partner = (p / 2 == pos / 2) && (p % 2 != pos % 2);
        ok = inter(chosen[p], c) == (partner ? dual : same);
      }
      if (!ok) continue;
      chosen.push_back(c);
      if (rec()) return true;
      chosen.pop_back();
    }
    return false;
  };
  if (!rec()) throw std::runtime_error("no symplectic pattern among the Steiner sets");
  SymplecticBasis b{g, {}, {}};
  for (std::size_t p = 0; p < chosen.size(); ++p) (p % 2 == 0 ? b.e : b.f).push_back(sets[chosen[p]].base);
  return b;
}

}  // namespace theta4::f2
