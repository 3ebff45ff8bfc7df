#ifndef RELFORGE_RANDOM_HPP_
#define RELFORGE_RANDOM_HPP_

#include <cstdint>
#include <random>

#include "relforge/relation.hpp"

namespace relforge {

//! Seed-reproducible generator. mt19937_64 has a standardized output
//! sequence; the derived draws below avoid std distributions so identical
//! seeds give identical streams on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  //! Uniform value in 0..n-1.
  std::uint32_t below(std::uint32_t n) {
    return static_cast<std::uint32_t>(next() % n);
  }

  //! Uniform double in [0,1).
  double unit() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

  bool chance(double p) { return unit() < p; }

  //! Derive an independent stream, e.g. one per sample.
  Rng split() { return Rng(next() ^ 0x9e3779b97f4a7c15ULL); }

 private:
  std::mt19937_64 engine_;
};

//! Each (point, value) pair is included independently with probability
//! `density`, giving a controllable mix of undefined, single-valued and
//! many-valued points.
inline Relation random_relation(Rng& rng, unsigned arity, unsigned order,
                                double density) {
  Relation r(arity, order);
  for (std::size_t i = 0; i < r.point_count(); ++i) {
    ValueSet cell;
    for (elem_t v = 0; v < order; ++v)
      if (rng.chance(density)) cell.insert(v);
    r.set_cell(i, cell);
  }
  return r;
}

//! Exactly one uniform value per point.
inline Relation random_single_valued_total(Rng& rng, unsigned arity,
                                           unsigned order) {
  Relation r(arity, order);
  for (std::size_t i = 0; i < r.point_count(); ++i)
    r.set_cell(i, ValueSet::single(rng.below(order)));
  return r;
}

}  // namespace relforge

#endif  // RELFORGE_RANDOM_HPP_
