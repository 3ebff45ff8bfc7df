#ifndef RELFORGE_VALUESET_HPP_
#define RELFORGE_VALUESET_HPP_

#include <bit>
#include <cstdint>
#include <initializer_list>

#include "relforge/core.hpp"

namespace relforge {

//! A subset of the carrier {0..order-1}, stored as a 64-bit mask.
//!
//! Value sets are the cells of a relation table: the empty set is an
//! undefined point, a singleton a single-valued one, anything larger a
//! many-valued one.
class ValueSet {
 public:
  static constexpr unsigned max_order = 64;

  constexpr ValueSet() = default;

  static constexpr ValueSet none() { return ValueSet(); }

  static constexpr ValueSet single(elem_t v) {
    return ValueSet(std::uint64_t{1} << v);
  }

  //! The full carrier {0..order-1}.
  static constexpr ValueSet all(unsigned order) {
    return ValueSet(order >= 64 ? ~std::uint64_t{0}
                                : (std::uint64_t{1} << order) - 1);
  }

  static constexpr ValueSet of(std::initializer_list<elem_t> vs) {
    ValueSet s;
    for (elem_t v : vs) s.insert(v);
    return s;
  }

  static constexpr ValueSet from_bits(std::uint64_t raw) {
    return ValueSet(raw);
  }

  constexpr std::uint64_t bits() const { return bits_; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr unsigned size() const { return std::popcount(bits_); }
  constexpr bool contains(elem_t v) const {
    return (bits_ >> v) & std::uint64_t{1};
  }
  constexpr void insert(elem_t v) { bits_ |= std::uint64_t{1} << v; }
  constexpr bool subset_of(ValueSet other) const {
    return (bits_ & ~other.bits_) == 0;
  }

  //! Smallest member; only meaningful when non-empty.
  constexpr elem_t min() const {
    return static_cast<elem_t>(std::countr_zero(bits_));
  }

  //! Visit members in ascending order.
  template <class F>
  constexpr void for_each(F&& f) const {
    for (std::uint64_t rest = bits_; rest != 0; rest &= rest - 1)
      f(static_cast<elem_t>(std::countr_zero(rest)));
  }

  friend constexpr ValueSet operator|(ValueSet a, ValueSet b) {
    return ValueSet(a.bits_ | b.bits_);
  }
  friend constexpr ValueSet operator&(ValueSet a, ValueSet b) {
    return ValueSet(a.bits_ & b.bits_);
  }
  constexpr ValueSet& operator|=(ValueSet o) {
    bits_ |= o.bits_;
    return *this;
  }
  friend constexpr bool operator==(ValueSet, ValueSet) = default;

 private:
  constexpr explicit ValueSet(std::uint64_t raw) : bits_(raw) {}
  std::uint64_t bits_ = 0;
};

//! Point classification per value-set cardinality: no solution, single
//! solution, polykeys.
enum class PointClass { undefined, single, many };

constexpr PointClass classify(ValueSet s) {
  if (s.empty()) return PointClass::undefined;
  return s.size() == 1 ? PointClass::single : PointClass::many;
}

inline const char* point_class_name(PointClass c) {
  switch (c) {
    case PointClass::undefined: return "Undefined";
    case PointClass::single: return "Single";
    case PointClass::many: return "Many";
  }
  return "?";
}

}  // namespace relforge

#endif  // RELFORGE_VALUESET_HPP_
