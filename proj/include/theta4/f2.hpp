#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace theta4::f2 {

constexpr int kMaxGenus = 6;

// Bits 0..g-1 hold lambda, bits g..2g-1 hold mu, for v = sum lambda_i e_i + mu_i f_i.
struct F2Vector {
  int genus = 1;
  std::uint32_t bits = 0;

  static F2Vector from_parts(int g, std::uint32_t lambda, std::uint32_t mu);
  std::uint32_t lambda() const { return bits & ((1u << genus) - 1); }
  std::uint32_t mu() const { return bits >> genus; }
  bool is_zero() const { return bits == 0; }

  friend F2Vector operator+(F2Vector a, F2Vector b);
  friend bool operator==(F2Vector a, F2Vector b) { return a.genus == b.genus && a.bits == b.bits; }
  friend bool operator<(F2Vector a, F2Vector b) { return a.bits < b.bits; }
};

int pairing(F2Vector u, F2Vector v);

// q = [eps; eps'] with q(lambda, mu) = eps.lambda + eps'.mu + lambda.mu; adding v = (lambda, mu)
// shifts eps by mu and eps' by lambda.
struct QuadraticForm {
  int genus = 1;
  std::uint32_t eps = 0, epsp = 0;

  int operator()(F2Vector w) const;
  std::uint32_t index() const { return eps | (epsp << genus); }
  static QuadraticForm from_index(int g, std::uint32_t idx);

  friend bool operator==(const QuadraticForm& a, const QuadraticForm& b) {
    return a.genus == b.genus && a.eps == b.eps && a.epsp == b.epsp;
  }
  friend bool operator<(const QuadraticForm& a, const QuadraticForm& b) { return a.index() < b.index(); }
};

int arf(const QuadraticForm& q);
QuadraticForm act(const QuadraticForm& q, F2Vector v);
// The unique v with q1 + v = q2.
F2Vector difference(const QuadraticForm& q1, const QuadraticForm& q2);
bool is_syzygetic(const QuadraticForm& q1, const QuadraticForm& q2, const QuadraticForm& q3);

std::vector<QuadraticForm> all_forms(int g);

// "eps|eps'" with bit i of each part as the (i+1)-th character.
std::string serialize(const QuadraticForm& q);
QuadraticForm parse_characteristic(const std::string& s);

// Odd-cardinality subset of {1..2g+1}, sorted ascending.
struct Label {
  int genus = 1;
  std::vector<int> indices;

  static Label make(int g, std::vector<int> idx);
  std::uint32_t mask() const;  // bit i-1 for index i
  friend bool operator==(const Label& a, const Label& b) { return a.genus == b.genus && a.indices == b.indices; }
  friend bool operator<(const Label& a, const Label& b) { return a.indices < b.indices; }
};

// Symmetric difference of sorted index sets.
std::vector<int> symmetric_difference(const std::vector<int>& a, const std::vector<int>& b);
std::vector<int> indices_of_mask(std::uint32_t mask);
std::uint32_t mask_of_indices(const std::vector<int>& idx);

struct AronholdBasis {
  int genus = 1;
  std::vector<QuadraticForm> forms;
};

bool is_fundamental_set(const std::vector<F2Vector>& f);
// Pairwise azygetic, summing to zero; built from the standard symplectic basis.
std::vector<F2Vector> standard_fundamental_set(int g);
AronholdBasis aronhold_from_fundamental(const std::vector<F2Vector>& f, const QuadraticForm& q, int mu = 0);
// Arf of every odd-length sub-sum depends only on the length mod 4.
bool has_aronhold_property(const AronholdBasis& a);

QuadraticForm label_to_form(const AronholdBasis& a, const Label& l);
Label form_to_label(const AronholdBasis& a, const QuadraticForm& q);
// Even subsets name vectors: the sum of the indexed forms.
F2Vector subset_to_vector(const AronholdBasis& a, const std::vector<int>& idx);
std::vector<int> vector_to_subset(const AronholdBasis& a, F2Vector v);

struct SteinerSet {
  F2Vector base;
  std::vector<std::pair<QuadraticForm, QuadraticForm>> pairs;  // first < second

  bool contains(const QuadraticForm& q) const;
  std::size_t member_count() const { return 2 * pairs.size(); }
  std::vector<QuadraticForm> members() const;
};

SteinerSet steiner_set(F2Vector v);
int steiner_intersection_size(F2Vector v, F2Vector w);
// Intersection size predicted from the pairing: 2^{g-1}(2^{g-2}-1) if <v,w>=0, else 2^{g-2}(2^{g-1}-1).
int expected_intersection_size(int g, int pairing_value);

struct SymplecticBasis {
  int genus = 1;
  std::vector<F2Vector> e, f;

  // Characteristic of q relative to this basis: eps_i = q(f_i), eps'_i = q(e_i).
  QuadraticForm coordinates(const QuadraticForm& q) const;
  bool is_symplectic() const;
};

// Picks S_{e_1}, S_{f_1}, S_{e_2}, ... in that order, scanning `sets` in the given order
// with backtracking, so that the intersection sizes follow the symplectic pattern.
SymplecticBasis symplectic_basis_from_steiner(const std::vector<SteinerSet>& sets);

}  // namespace theta4::f2
