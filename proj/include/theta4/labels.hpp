#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "theta4/f2.hpp"

namespace theta4 {

// Label calculus for one genus: subsets of {1..2g+1} with odd cardinality name forms,
// even nonempty ones name nonzero vectors. Characteristics are taken relative to the
// symplectic basis read off from the Steiner sets, which depends only on the labels.
class LabelSystem {
 public:
  explicit LabelSystem(int genus);

  int genus() const { return g_; }
  const f2::AronholdBasis& aronhold() const { return basis_; }
  const f2::SymplecticBasis& steiner_basis() const { return symp_; }
  // Base vectors of the chosen Steiner sets, as even subsets: e_1, f_1, e_2, f_2, ...
  std::vector<std::vector<int>> steiner_basis_subsets() const;

  f2::QuadraticForm form(const std::vector<int>& label) const;
  f2::F2Vector vector(const std::vector<int>& subset) const;
  bool is_even_label(const std::vector<int>& label) const;
  bool is_odd_label(const std::vector<int>& label) const;
  // Characteristic [eps; eps'] in Steiner coordinates.
  f2::QuadraticForm characteristic(const std::vector<int>& label) const;
  std::vector<int> label_of_characteristic(const f2::QuadraticForm& c) const;

  // Steiner pairs {L, L + v} of odd labels, each pair sorted, pairs in lexicographic order.
  std::vector<std::pair<std::vector<int>, std::vector<int>>> steiner_pairs(const std::vector<int>& v) const;

  // a(q0 + p1 + p2) in Steiner coordinates.
  int sign_exponent(const std::vector<int>& p1, const std::vector<int>& p2) const;

  std::vector<std::vector<int>> even_labels() const;
  std::vector<std::vector<int>> odd_labels() const;

 private:
  int g_;
  f2::AronholdBasis basis_;
  std::vector<f2::SteinerSet> sets_;  // ascending by subset bitmask of the base vector
  f2::SymplecticBasis symp_;
};

// Shared genus-4 instance.
const LabelSystem& genus4_labels();

}  // namespace theta4
