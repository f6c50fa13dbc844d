#include "theta4/labels.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace theta4 {

LabelSystem::LabelSystem(int genus) : g_(genus) {
  if (genus < 2 || genus > f2::kMaxGenus) throw std::invalid_argument("label system needs 2 <= genus <= 6");
  basis_ = f2::aronhold_from_fundamental(f2::standard_fundamental_set(genus), f2::QuadraticForm{genus, 0, 0}, 0);
  const std::uint32_t n = 2u * static_cast<std::uint32_t>(genus) + 1;
  for (std::uint32_t m = 1; m < (1u << n); ++m) {
    if (std::popcount(m) % 2 != 0) continue;
    sets_.push_back(f2::steiner_set(f2::subset_to_vector(basis_, f2::indices_of_mask(m))));
  }
  symp_ = f2::symplectic_basis_from_steiner(sets_);
}

std::vector<std::vector<int>> LabelSystem::steiner_basis_subsets() const {
  std::vector<std::vector<int>> out;
  for (int i = 0; i < g_; ++i) {
    out.push_back(f2::vector_to_subset(basis_, symp_.e[static_cast<std::size_t>(i)]));
    out.push_back(f2::vector_to_subset(basis_, symp_.f[static_cast<std::size_t>(i)]));
  }
  return out;
}

f2::QuadraticForm LabelSystem::form(const std::vector<int>& label) const {
  return f2::label_to_form(basis_, f2::Label::make(g_, label));
}

f2::F2Vector LabelSystem::vector(const std::vector<int>& subset) const {
  std::vector<int> s = subset;
  std::sort(s.begin(), s.end());
  for (int i : s)
    if (i < 1 || i > 2 * g_ + 1) throw std::invalid_argument("subset index out of range");
  if (std::adjacent_find(s.begin(), s.end()) != s.end()) throw std::invalid_argument("repeated subset index");
  return f2::subset_to_vector(basis_, s);
}

bool LabelSystem::is_even_label(const std::vector<int>& label) const {
  return label.size() % 2 == 1 && f2::arf(form(label)) == 0;
}

bool LabelSystem::is_odd_label(const std::vector<int>& label) const {
  return label.size() % 2 == 1 && f2::arf(form(label)) == 1;
}

f2::QuadraticForm LabelSystem::characteristic(const std::vector<int>& label) const {
  return symp_.coordinates(form(label));
}

std::vector<int> LabelSystem::label_of_characteristic(const f2::QuadraticForm& c) const {
  if (c.genus != g_) throw std::invalid_argument("genus mismatch");
  for (const auto& q : f2::all_forms(g_))
    if (symp_.coordinates(q) == c) return f2::form_to_label(basis_, q).indices;
  throw std::logic_error("characteristic not reached");
}

std::vector<std::pair<std::vector<int>, std::vector<int>>> LabelSystem::steiner_pairs(const std::vector<int>& v) const {
  auto base = vector(v);
  if (base.is_zero()) throw std::invalid_argument("Steiner set needs a nonzero vector");
  std::vector<std::pair<std::vector<int>, std::vector<int>>> out;
  for (const auto& [a, b] : f2::steiner_set(base).pairs) {
    auto la = f2::form_to_label(basis_, a).indices, lb = f2::form_to_label(basis_, b).indices;
    if (lb < la) std::swap(la, lb);
    out.emplace_back(la, lb);
  }
  std::sort(out.begin(), out.end());
  return out;
}

int LabelSystem::sign_exponent(const std::vector<int>& p1, const std::vector<int>& p2) const {
  auto c1 = characteristic(p1), c2 = characteristic(p2);
  return std::popcount((c1.eps ^ c2.eps) & (c1.epsp ^ c2.epsp)) & 1;
}

std::vector<std::vector<int>> LabelSystem::even_labels() const {
  std::vector<std::vector<int>> out;
  for (const auto& q : f2::all_forms(g_))
    if (f2::arf(q) == 0) out.push_back(f2::form_to_label(basis_, q).indices);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::vector<int>> LabelSystem::odd_labels() const {
  std::vector<std::vector<int>> out;
  for (const auto& q : f2::all_forms(g_))
    if (f2::arf(q) == 1) out.push_back(f2::form_to_label(basis_, q).indices);
  std::sort(out.begin(), out.end());
  return out;
}

const LabelSystem& genus4_labels() {
  static const LabelSystem sys(4);
  return sys;
}

}  // namespace theta4
