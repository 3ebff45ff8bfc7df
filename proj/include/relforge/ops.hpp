#ifndef RELFORGE_OPS_HPP_
#define RELFORGE_OPS_HPP_

#include <algorithm>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "relforge/core.hpp"
#include "relforge/monoid.hpp"
#include "relforge/relation.hpp"

namespace relforge {

//! A permutation (i1,...,iM,i0) of the tuple slots (1,...,M,0).
//!
//! Applied to a relation it rearranges every tuple: the new tuple is
//! (b_{i1},...,b_{iM},b_{i0}). The arity-1 spec (0,1) is the converse.
class TransformSpec {
 public:
  explicit TransformSpec(std::vector<unsigned> positions)
      : positions_(std::move(positions)) {
    if (positions_.empty())
      fail(errc::not_a_permutation, "spec must have arity+1 entries");
    std::vector<bool> seen(positions_.size(), false);
    for (unsigned p : positions_) {
      if (p >= positions_.size() || seen[p])
        fail(errc::not_a_permutation,
             "entries must be a permutation of 1.." +
                 std::to_string(positions_.size() - 1) + ",0");
      seen[p] = true;
    }
  }

  TransformSpec(std::initializer_list<unsigned> positions)
      : TransformSpec(std::vector<unsigned>(positions)) {}

  static TransformSpec identity(unsigned arity) {
    std::vector<unsigned> p(arity + 1);
    for (unsigned j = 0; j < arity; ++j) p[j] = j + 1;
    p[arity] = 0;
    return TransformSpec(std::move(p));
  }

  //! The arity-2 argument swap (2,1,0).
  static TransformSpec swap2() { return TransformSpec({2, 1, 0}); }

  //! The arity-1 converse (0,1).
  static TransformSpec converse1() { return TransformSpec({0, 1}); }

  unsigned arity() const {
    return static_cast<unsigned>(positions_.size()) - 1;
  }

  std::span<const unsigned> positions() const { return positions_; }

  //! Slot lookup: slot(k) for k in 1..M is i_k, slot(0) is i_0.
  unsigned slot(unsigned label) const {
    return positions_[label == 0 ? arity() : label - 1];
  }

  //! The spec equivalent to applying *this first, then `next`:
  //! transform(transform(R, a), b) == transform(R, a.then(b)).
  TransformSpec then(const TransformSpec& next) const {
    if (next.arity() != arity())
      fail(errc::arity_mismatch, "cannot chain specs of different arity");
    std::vector<unsigned> p(positions_.size());
    for (unsigned j = 0; j < positions_.size(); ++j) {
      const unsigned label = j == arity() ? 0 : j + 1;
      p[j] = slot(next.slot(label));
    }
    return TransformSpec(std::move(p));
  }

  TransformSpec inverse() const {
    std::vector<unsigned> p(positions_.size());
    for (unsigned j = 0; j < positions_.size(); ++j) {
      const unsigned label = j == arity() ? 0 : j + 1;
      // find where `label` was sent
      for (unsigned k = 0; k < positions_.size(); ++k) {
        if (positions_[k] == label) {
          p[j] = k == arity() ? 0 : k + 1;
          break;
        }
      }
    }
    return TransformSpec(std::move(p));
  }

  friend bool operator==(const TransformSpec&, const TransformSpec&) = default;

 private:
  std::vector<unsigned> positions_;
};

//! All (M+1)! transformation specs of a given arity, lexicographic by
//! position sequence.
inline std::vector<TransformSpec> all_transform_specs(unsigned arity) {
  std::vector<unsigned> labels(arity + 1);
  for (unsigned j = 0; j < arity; ++j) labels[j] = j + 1;
  labels[arity] = 0;
  std::sort(labels.begin(), labels.end());
  std::vector<TransformSpec> out;
  do {
    out.emplace_back(labels);
  } while (std::next_permutation(labels.begin(), labels.end()));
  return out;
}

namespace detail {

inline void require_same_shape(const Relation& a, const Relation& b) {
  if (a.arity() != b.arity())
    fail(errc::arity_mismatch, "arities " + std::to_string(a.arity()) +
                                   " and " + std::to_string(b.arity()) +
                                   " differ");
  if (a.order() != b.order())
    fail(errc::order_mismatch, "orders " + std::to_string(a.order()) +
                                   " and " + std::to_string(b.order()) +
                                   " differ");
}

inline void require_beta(const Relation& r, const Relation& beta) {
  if (beta.arity() != 1)
    fail(errc::arity_mismatch, "composition needs an arity-1 relation");
  if (beta.order() != r.order())
    fail(errc::order_mismatch, "orders " + std::to_string(r.order()) +
                                   " and " + std::to_string(beta.order()) +
                                   " differ");
}

}  // namespace detail

//! Pointwise sum: at each point the value set is { a+b | a in R1(p),
//! b in R2(p) }. An undefined side absorbs, two singletons stay single,
//! anything else goes many-valued.
inline Relation add(const Relation& r1, const Relation& r2, const Monoid& m) {
  detail::require_same_shape(r1, r2);
  if (r1.order() != m.order())
    fail(errc::order_mismatch, "relation order " + std::to_string(r1.order()) +
                                   " does not match monoid order " +
                                   std::to_string(m.order()));
  Relation out(r1.arity(), r1.order());
  for (std::size_t i = 0; i < out.point_count(); ++i)
    out.set_cell(i, m.set_sum(r1.cell(i), r2.cell(i)));
  return out;
}

//! Slot permutation of the tuple-set view.
inline Relation transform(const Relation& r, const TransformSpec& t) {
  if (t.arity() != r.arity())
    fail(errc::not_a_permutation, "spec must have arity+1 entries");
  const unsigned m = r.arity();
  Relation out(m, r.order());
  std::vector<elem_t> p(m), q(m);
  for (std::size_t i = 0; i < r.point_count(); ++i) {
    r.decode_point(i, p);
    r.cell(i).for_each([&](elem_t v) {
      // old tuple (p..., v); coordinate at old slot label
      auto old_coord = [&](unsigned label) { return label == 0 ? v : p[label - 1]; };
      for (unsigned j = 0; j < m; ++j) q[j] = old_coord(t.slot(j + 1));
      ValueSet cell = out.at(q);
      cell.insert(old_coord(t.slot(0)));
      out.set(q, cell);
    });
  }
  return out;
}

//! Converse of an arity-1 relation.
inline Relation converse(const Relation& r) {
  if (r.arity() != 1)
    fail(errc::arity_mismatch, "converse is the arity-1 transform (0,1)");
  return transform(r, TransformSpec::converse1());
}

//! ith-parameter composition R x_i beta (i in 1..M): substitute beta into
//! argument i, i.e. (..,b_i,..,b0) in result iff some y has (b_i,y) in beta
//! and (..,y,..,b0) in R.
inline Relation compose_arg(const Relation& r, unsigned i,
                            const Relation& beta) {
  if (i < 1 || i > r.arity())
    fail(errc::bad_index, "argument index " + std::to_string(i) +
                              " is outside 1.." + std::to_string(r.arity()));
  detail::require_beta(r, beta);
  Relation out(r.arity(), r.order());
  std::vector<elem_t> p(r.arity());
  for (std::size_t idx = 0; idx < out.point_count(); ++idx) {
    out.decode_point(idx, p);
    ValueSet cell;
    std::vector<elem_t> q(p.begin(), p.end());
    eval1(beta, p[i - 1]).for_each([&](elem_t y) {
      q[i - 1] = y;
      cell |= r.at(q);
    });
    out.set_cell(idx, cell);
  }
  return out;
}

//! Value-slot composition R x_0 beta: value sets become beta-preimages,
//! (args,c) in result iff some y has (args,y) in R and (c,y) in beta.
inline Relation compose_val(const Relation& r, const Relation& beta) {
  detail::require_beta(r, beta);
  Relation out(r.arity(), r.order());
  for (std::size_t idx = 0; idx < out.point_count(); ++idx) {
    const ValueSet rv = r.cell(idx);
    ValueSet cell;
    for (elem_t c = 0; c < r.order(); ++c)
      if (!(eval1(beta, c) & rv).empty()) cell.insert(c);
    out.set_cell(idx, cell);
  }
  return out;
}

//! False (dummy) extension to a higher arity: the value at a point depends
//! only on the coordinates at `positions` (1-based target positions of the
//! source variables, in source-variable order); all other coordinates range
//! freely.
inline Relation extend_false(const Relation& r, unsigned target_arity,
                             std::span<const unsigned> positions) {
  if (positions.size() != r.arity() || target_arity < r.arity())
    fail(errc::bad_positions,
         "need one distinct target position per source variable");
  std::vector<bool> used(target_arity + 1, false);
  for (unsigned p : positions) {
    if (p < 1 || p > target_arity || used[p])
      fail(errc::bad_positions, "position " + std::to_string(p) +
                                    " is not a distinct index in 1.." +
                                    std::to_string(target_arity));
    used[p] = true;
  }
  Relation out(target_arity, r.order());
  std::vector<elem_t> q(target_arity), p(r.arity());
  for (std::size_t idx = 0; idx < out.point_count(); ++idx) {
    out.decode_point(idx, q);
    for (std::size_t j = 0; j < positions.size(); ++j) p[j] = q[positions[j] - 1];
    out.set_cell(idx, r.at(p));
  }
  return out;
}

inline Relation extend_false(const Relation& r, unsigned target_arity,
                             std::initializer_list<unsigned> positions) {
  return extend_false(
      r, target_arity,
      std::span<const unsigned>(positions.begin(), positions.size()));
}

}  // namespace relforge

#endif  // RELFORGE_OPS_HPP_
