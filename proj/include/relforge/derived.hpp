#ifndef RELFORGE_DERIVED_HPP_
#define RELFORGE_DERIVED_HPP_

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "relforge/core.hpp"
#include "relforge/monoid.hpp"
#include "relforge/relation.hpp"

namespace relforge {

//! The monoid of ALL one-variable relations over a small base carrier,
//! under pointwise set addition. It has 2^(order^2) elements; the identity
//! is the constant-{0} relation and sits at index 0.
//!
//! Elements are coded by concatenating the cell masks (cell for input x in
//! bits x*order..), except that the coding swaps the identity relation
//! with code 0 so the Monoid invariant (identity at element 0) holds.
class DerivedSystem {
 public:
  const Monoid& monoid() const { return monoid_; }
  unsigned base_order() const { return base_; }

  Relation element(elem_t idx) const { return decode(swap_identity(idx)); }

  elem_t index_of(const Relation& r) const {
    if (r.arity() != 1 || r.order() != base_)
      fail(errc::shape_error,
           "element must be an arity-1 relation over the base carrier");
    return swap_identity(encode(r));
  }

  friend DerivedSystem derived_operator_system(const Monoid& m);

 private:
  DerivedSystem(Monoid monoid, unsigned base, elem_t id_code)
      : monoid_(std::move(monoid)), base_(base), id_code_(id_code) {}

  elem_t swap_identity(elem_t code) const {
    if (code == 0) return id_code_;
    if (code == id_code_) return 0;
    return code;
  }

  Relation decode(elem_t code) const {
    Relation r(1, base_);
    const std::uint64_t cell_mask = (std::uint64_t{1} << base_) - 1;
    for (elem_t x = 0; x < base_; ++x)
      r.set_cell(x, ValueSet::from_bits((code >> (x * base_)) & cell_mask));
    return r;
  }

  elem_t encode(const Relation& r) const {
    elem_t code = 0;
    for (elem_t x = 0; x < base_; ++x)
      code |= static_cast<elem_t>(r.cell(x).bits()) << (x * base_);
    return code;
  }

  Monoid monoid_;
  unsigned base_;
  elem_t id_code_;
};

inline DerivedSystem derived_operator_system(const Monoid& m) {
  const unsigned n = m.order();
  if (n > 3)
    fail(errc::carrier_too_large,
         "2^(order^2) elements are only enumerable for order <= 3");
  const unsigned count = 1u << (n * n);
  const std::uint64_t cell_mask = (std::uint64_t{1} << n) - 1;

  elem_t id_code = 0;
  for (elem_t x = 0; x < n; ++x) id_code |= elem_t{1} << (x * n);
  auto swap_id = [&](elem_t code) -> elem_t {
    return code == 0 ? id_code : code == id_code ? 0 : code;
  };

  // pointwise set addition on codes
  auto sum_codes = [&](elem_t a, elem_t b) {
    elem_t out = 0;
    for (elem_t x = 0; x < n; ++x) {
      const ValueSet va = ValueSet::from_bits((a >> (x * n)) & cell_mask);
      const ValueSet vb = ValueSet::from_bits((b >> (x * n)) & cell_mask);
      out |= static_cast<elem_t>(m.set_sum(va, vb).bits()) << (x * n);
    }
    return out;
  };

  std::vector<elem_t> table(std::size_t{count} * count);
  for (elem_t i = 0; i < count; ++i)
    for (elem_t j = 0; j < count; ++j)
      table[std::size_t{i} * count + j] =
          swap_id(sum_codes(swap_id(i), swap_id(j)));
  return DerivedSystem(Monoid::from_flat_table(count, std::move(table)), n,
                       id_code);
}

//! A subset of a monoid validated as a submonoid, reindexed so the parent
//! identity is element 0.
struct Submonoid {
  Monoid monoid;
  std::vector<elem_t> parent_elements;  // sub index -> parent element
};

//! Check a subset for closure and for containing the identity, and return
//! the induced monoid on success.
inline Submonoid submonoid_closure(const Monoid& parent,
                                   std::vector<elem_t> elements) {
  std::vector<elem_t> elems;
  for (elem_t e : elements) {
    if (e >= parent.order())
      fail(errc::range_error, "element " + std::to_string(e) +
                                  " is outside the parent carrier");
    if (std::find(elems.begin(), elems.end(), e) == elems.end())
      elems.push_back(e);
  }
  const auto id_pos = std::find(elems.begin(), elems.end(), elem_t{0});
  if (id_pos == elems.end())
    fail(errc::missing_identity, "subset does not contain the identity 0");
  std::rotate(elems.begin(), id_pos, id_pos + 1);

  const unsigned k = static_cast<unsigned>(elems.size());
  std::vector<elem_t> table(std::size_t{k} * k);
  for (unsigned i = 0; i < k; ++i)
    for (unsigned j = 0; j < k; ++j) {
      const elem_t sum = parent.add(elems[i], elems[j]);
      const auto pos = std::find(elems.begin(), elems.end(), sum);
      if (pos == elems.end())
        fail(errc::not_closed, std::to_string(elems[i]) + " + " +
                                   std::to_string(elems[j]) + " = " +
                                   std::to_string(sum) +
                                   " escapes the subset");
      table[std::size_t{i} * k + j] =
          static_cast<elem_t>(pos - elems.begin());
    }
  return Submonoid{Monoid::from_flat_table(k, std::move(table)),
                   std::move(elems)};
}

//! Brute-force monoid isomorphism fixing the identity: phi with
//! phi(x + y) = phi(x) + phi(y) and phi(0) = 0, as sub index mapping.
inline std::optional<std::vector<elem_t>> find_isomorphism(const Monoid& a,
                                                           const Monoid& b) {
  if (a.order() != b.order()) return std::nullopt;
  const unsigned k = a.order();
  if (k > 9) fail(errc::carrier_too_large, "isomorphism search is factorial");
  std::vector<elem_t> phi(k);
  for (elem_t i = 0; i < k; ++i) phi[i] = i;
  do {
    bool ok = true;
    for (elem_t x = 0; x < k && ok; ++x)
      for (elem_t y = 0; y < k && ok; ++y)
        ok = phi[a.add(x, y)] == b.add(phi[x], phi[y]);
    if (ok) return phi;
  } while (std::next_permutation(phi.begin() + 1, phi.end()));
  return std::nullopt;
}

}  // namespace relforge

#endif  // RELFORGE_DERIVED_HPP_
