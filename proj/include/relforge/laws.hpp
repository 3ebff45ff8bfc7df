#ifndef RELFORGE_LAWS_HPP_
#define RELFORGE_LAWS_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "relforge/core.hpp"
#include "relforge/io.hpp"
#include "relforge/monoid.hpp"
#include "relforge/ops.hpp"
#include "relforge/random.hpp"
#include "relforge/relation.hpp"

namespace relforge {

//! Cellwise containment: every value set of `a` inside the matching one
//! of `b`.
inline bool subrelation(const Relation& a, const Relation& b) {
  if (a.arity() != b.arity() || a.order() != b.order()) return false;
  for (std::size_t i = 0; i < a.point_count(); ++i)
    if (!a.cell(i).subset_of(b.cell(i))) return false;
  return true;
}

struct LawCounterexample {
  //! Named inputs, each as canonical relation text.
  std::vector<std::pair<std::string, std::string>> inputs;
  //! Differing point and both cell values.
  std::string detail;
};

struct LawReport {
  std::string law;
  bool holds = true;
  std::string note;
  std::optional<LawCounterexample> counterexample;
};

namespace detail {

inline std::string one_line(const Relation& r) {
  std::string s = io::print_relation(r);
  for (char& c : s)
    if (c == '\n') c = ';';
  if (!s.empty() && s.back() == ';') s.pop_back();
  return s;
}

inline void report_gap(LawReport& rep,
                       std::vector<std::pair<std::string, const Relation*>>
                           inputs,
                       const Relation& lhs, const Relation& rhs,
                       const std::string& law_text) {
  if (!rep.holds) return;  // keep the first counterexample
  rep.holds = false;
  LawCounterexample ce;
  for (auto& [name, rel] : inputs) ce.inputs.emplace_back(name, one_line(*rel));
  for (std::size_t i = 0; i < lhs.point_count(); ++i)
    if (lhs.cell(i) != rhs.cell(i)) {
      const auto p = lhs.point_of(i);
      std::string pt;
      for (elem_t c : p) pt += (pt.empty() ? "" : ",") + std::to_string(c);
      ce.detail = law_text + " differs at point (" + pt + "): " +
                  io::print_value_set(lhs.cell(i)) + " vs " +
                  io::print_value_set(rhs.cell(i));
      break;
    }
  rep.counterexample = std::move(ce);
}

}  // namespace detail

//! Property run of the whole law suite over seeded random relations.
//! Returns one report per law group, in a fixed order. The distributivity
//! law is checked in its corrected scope: equality for single-valued total
//! unary relations, containment for arbitrary ones.
inline std::vector<LawReport> check_laws(const Monoid& m, unsigned samples,
                                         std::uint64_t seed) {
  if (samples < 1) fail(errc::range_error, "need at least one sample");
  Rng rng(seed);
  const unsigned n = m.order();
  const double densities[] = {0.25, 0.5, 0.85};

  LawReport addition{"addition commutative+associative", true, "", {}};
  LawReport transposal{"argument compositions commute", true, "", {}};
  LawReport distributive{
      "composition distributes over addition",
      true,
      "equality for single-valued total unary relations, containment "
      "otherwise",
      {}};
  LawReport group{"transformations form a group", true, "", {}};
  LawReport exchange{"swap exchanges argument compositions", true, "", {}};
  LawReport swap_add{"swap distributes over addition", true, "", {}};

  const auto specs = all_transform_specs(2);
  const TransformSpec ident = TransformSpec::identity(2);
  const TransformSpec swap = TransformSpec::swap2();

  // spec-level group axioms are finite; check them once up front
  for (const auto& t1 : specs) {
    if (!(ident.then(t1) == t1 && t1.then(ident) == t1 &&
          t1.then(t1.inverse()) == ident))
      group.holds = false;
    for (const auto& t2 : specs)
      for (const auto& t3 : specs)
        if (!(t1.then(t2).then(t3) == t1.then(t2.then(t3))))
          group.holds = false;
  }
  if (!group.holds)
    group.counterexample = LawCounterexample{{}, "spec algebra is broken"};

  for (unsigned s = 0; s < samples; ++s) {
    const double d = densities[s % 3];
    Relation r1 = random_relation(rng, 2, n, d);
    Relation r2 = random_relation(rng, 2, n, densities[(s + 1) % 3]);
    Relation r3 = random_relation(rng, 2, n, densities[(s + 2) % 3]);
    Relation beta1 = random_relation(rng, 1, n, d);
    Relation beta2 = random_relation(rng, 1, n, densities[(s + 1) % 3]);
    Relation beta_fn = random_single_valued_total(rng, 1, n);

    {
      Relation lhs = add(r1, r2, m), rhs = add(r2, r1, m);
      if (lhs != rhs)
        detail::report_gap(addition, {{"R1", &r1}, {"R2", &r2}}, lhs, rhs,
                           "R1+R2 vs R2+R1");
      Relation la = add(add(r1, r2, m), r3, m);
      Relation ra = add(r1, add(r2, r3, m), m);
      if (la != ra)
        detail::report_gap(addition, {{"R1", &r1}, {"R2", &r2}, {"R3", &r3}},
                           la, ra, "(R1+R2)+R3 vs R1+(R2+R3)");
    }
    {
      Relation lhs = compose_arg(compose_arg(r1, 1, beta1), 2, beta2);
      Relation rhs = compose_arg(compose_arg(r1, 2, beta2), 1, beta1);
      if (lhs != rhs)
        detail::report_gap(transposal,
                           {{"R", &r1}, {"beta1", &beta1}, {"beta2", &beta2}},
                           lhs, rhs, "R x1 beta1 x2 beta2 vs swapped order");
    }
    for (unsigned slot = 1; slot <= 2; ++slot) {
      Relation lhs = compose_arg(add(r1, r2, m), slot, beta_fn);
      Relation rhs =
          add(compose_arg(r1, slot, beta_fn), compose_arg(r2, slot, beta_fn), m);
      if (lhs != rhs)
        detail::report_gap(distributive,
                           {{"R1", &r1}, {"R2", &r2}, {"beta", &beta_fn}}, lhs,
                           rhs, "(R1+R2) x_i beta vs sum of compositions");
      Relation lhs_any = compose_arg(add(r1, r2, m), slot, beta1);
      Relation rhs_any =
          add(compose_arg(r1, slot, beta1), compose_arg(r2, slot, beta1), m);
      if (!subrelation(lhs_any, rhs_any))
        detail::report_gap(distributive,
                           {{"R1", &r1}, {"R2", &r2}, {"beta", &beta1}},
                           lhs_any, rhs_any,
                           "(R1+R2) x_i beta not inside sum of compositions");
    }
    {
      for (const auto& t1 : specs)
        for (const auto& t2 : specs) {
          Relation lhs = transform(transform(r1, t1), t2);
          Relation rhs = transform(r1, t1.then(t2));
          if (lhs != rhs)
            detail::report_gap(group, {{"R", &r1}}, lhs, rhs,
                               "chained transforms vs composed spec");
        }
    }
    {
      Relation lhs = compose_arg(transform(r1, swap), 1, beta1);
      Relation rhs = transform(compose_arg(r1, 2, beta1), swap);
      if (lhs != rhs)
        detail::report_gap(exchange, {{"R", &r1}, {"beta", &beta1}}, lhs, rhs,
                           "swap(R) x1 beta vs swap(R x2 beta)");
      Relation lhs2 = compose_arg(transform(r1, swap), 2, beta1);
      Relation rhs2 = transform(compose_arg(r1, 1, beta1), swap);
      if (lhs2 != rhs2)
        detail::report_gap(exchange, {{"R", &r1}, {"beta", &beta1}}, lhs2,
                           rhs2, "swap(R) x2 beta vs swap(R x1 beta)");
    }
    {
      Relation lhs = transform(add(r1, r2, m), swap);
      Relation rhs = add(transform(r1, swap), transform(r2, swap), m);
      if (lhs != rhs)
        detail::report_gap(swap_add, {{"R1", &r1}, {"R2", &r2}}, lhs, rhs,
                           "swap(R1+R2) vs swap(R1)+swap(R2)");
    }
  }

  return {addition, transposal, distributive, group, exchange, swap_add};
}

//! The distributivity equality genuinely fails for many-valued unary
//! relations (the left side forces one shared witness, the right side picks
//! witnesses per summand). Directed search for a concrete gap, starting
//! from the two-valued relation 0 -> {0,1}.
struct DistributivityGap {
  Relation r1, r2, beta;
  unsigned slot;
  std::vector<elem_t> point;
  ValueSet lhs_cell, rhs_cell;
};

inline std::optional<DistributivityGap> find_distributivity_equality_gap(
    const Monoid& m) {
  const unsigned n = m.order();
  if (n < 2) return std::nullopt;
  Relation beta0(1, n);
  beta0.set_cell(0, ValueSet::of({0, 1}));

  // sparse candidates: single-tuple relations
  std::vector<Relation> sparse;
  for (elem_t x = 0; x < n; ++x)
    for (elem_t y = 0; y < n; ++y)
      for (elem_t v = 0; v < n; ++v) {
        Relation r(2, n);
        r.set({x, y}, ValueSet::single(v));
        sparse.push_back(std::move(r));
      }

  for (const Relation& r1 : sparse)
    for (const Relation& r2 : sparse)
      for (unsigned slot = 1; slot <= 2; ++slot) {
        Relation lhs = compose_arg(add(r1, r2, m), slot, beta0);
        Relation rhs =
            add(compose_arg(r1, slot, beta0), compose_arg(r2, slot, beta0), m);
        if (lhs == rhs) continue;
        for (std::size_t i = 0; i < lhs.point_count(); ++i)
          if (lhs.cell(i) != rhs.cell(i))
            return DistributivityGap{r1,       r2,          beta0,
                                     slot,     lhs.point_of(i),
                                     lhs.cell(i), rhs.cell(i)};
      }
  return std::nullopt;
}

//! Exhaustive law suite at order 2: every law over every relation of
//! arity <= 2 and every unary relation. Result tables are precomputed with
//! the generic operations once, then the quantifier loops are index
//! lookups.
inline std::vector<LawReport> check_laws_exhaustive_order2() {
  const Monoid m = Monoid::mod(2);
  const std::vector<Relation> rel2 = enumerate_relations(2, 2);  // 256
  const std::vector<Relation> rel1 = enumerate_relations(1, 2);  // 16

  auto pack2 = [](const Relation& r) {
    unsigned v = 0;
    for (std::size_t i = 0; i < 4; ++i)
      v |= static_cast<unsigned>(r.cell(i).bits()) << (2 * i);
    return v;
  };

  // result-index tables
  std::vector<std::uint8_t> add_t(256 * 256), comp_t[2], tr_t;
  comp_t[0].resize(256 * 16);
  comp_t[1].resize(256 * 16);
  const auto specs = all_transform_specs(2);
  tr_t.resize(specs.size() * 256);
  for (unsigned a = 0; a < 256; ++a) {
    for (unsigned b = 0; b < 256; ++b)
      add_t[a * 256 + b] =
          static_cast<std::uint8_t>(pack2(add(rel2[a], rel2[b], m)));
    for (unsigned b = 0; b < 16; ++b) {
      comp_t[0][a * 16 + b] =
          static_cast<std::uint8_t>(pack2(compose_arg(rel2[a], 1, rel1[b])));
      comp_t[1][a * 16 + b] =
          static_cast<std::uint8_t>(pack2(compose_arg(rel2[a], 2, rel1[b])));
    }
    for (std::size_t t = 0; t < specs.size(); ++t)
      tr_t[t * 256 + a] =
          static_cast<std::uint8_t>(pack2(transform(rel2[a], specs[t])));
  }
  std::size_t swap_idx = 0, ident_idx = 0;
  for (std::size_t t = 0; t < specs.size(); ++t) {
    if (specs[t] == TransformSpec::swap2()) swap_idx = t;
    if (specs[t] == TransformSpec::identity(2)) ident_idx = t;
  }
  std::vector<bool> beta_fn(16);
  for (unsigned b = 0; b < 16; ++b) {
    bool fn = true;
    for (std::size_t i = 0; i < 2; ++i) fn &= rel1[b].cell(i).size() == 1;
    beta_fn[b] = fn;
  }

  LawReport addition{"addition commutative+associative", true,
                     "exhaustive at order 2, arity 1 and 2", {}};
  LawReport transposal{"argument compositions commute", true,
                       "exhaustive at order 2", {}};
  LawReport distributive{
      "composition distributes over addition",
      true,
      "exhaustive at order 2: equality for single-valued total unary "
      "relations, containment otherwise",
      {}};
  LawReport group{"transformations form a group", true,
                  "exhaustive at order 2", {}};
  LawReport exchange{"swap exchanges argument compositions", true,
                     "exhaustive at order 2", {}};
  LawReport swap_add{"swap distributes over addition", true,
                     "exhaustive at order 2", {}};
  auto flag = [](LawReport& rep, const std::string& what) {
    if (rep.holds) {
      rep.holds = false;
      rep.counterexample = LawCounterexample{{}, what};
    }
  };

  for (unsigned a = 0; a < 256; ++a)
    for (unsigned b = 0; b < 256; ++b) {
      if (add_t[a * 256 + b] != add_t[b * 256 + a])
        flag(addition, "commutativity fails at pair " + std::to_string(a) +
                           "," + std::to_string(b));
      if (tr_t[swap_idx * 256 + add_t[a * 256 + b]] !=
          add_t[tr_t[swap_idx * 256 + a] * 256 + tr_t[swap_idx * 256 + b]])
        flag(swap_add, "swap/addition fails at pair " + std::to_string(a) +
                           "," + std::to_string(b));
      for (unsigned c = 0; c < 256; ++c)
        if (add_t[add_t[a * 256 + b] * 256 + c] !=
            add_t[a * 256 + add_t[b * 256 + c]])
          flag(addition, "associativity fails at triple " + std::to_string(a) +
                             "," + std::to_string(b) + "," + std::to_string(c));
    }

  // arity-1 addition, exhaustively as well
  {
    std::vector<std::uint8_t> add1(16 * 16);
    auto pack1 = [](const Relation& r) {
      return static_cast<unsigned>(r.cell(0).bits()) |
             static_cast<unsigned>(r.cell(1).bits()) << 2;
    };
    for (unsigned a = 0; a < 16; ++a)
      for (unsigned b = 0; b < 16; ++b)
        add1[a * 16 + b] =
            static_cast<std::uint8_t>(pack1(add(rel1[a], rel1[b], m)));
    for (unsigned a = 0; a < 16; ++a)
      for (unsigned b = 0; b < 16; ++b) {
        if (add1[a * 16 + b] != add1[b * 16 + a])
          flag(addition, "arity-1 commutativity fails");
        for (unsigned c = 0; c < 16; ++c)
          if (add1[add1[a * 16 + b] * 16 + c] != add1[a * 16 + add1[b * 16 + c]])
            flag(addition, "arity-1 associativity fails");
      }
  }

  for (unsigned a = 0; a < 256; ++a)
    for (unsigned b1 = 0; b1 < 16; ++b1)
      for (unsigned b2 = 0; b2 < 16; ++b2)
        if (comp_t[1][comp_t[0][a * 16 + b1] * 16 + b2] !=
            comp_t[0][comp_t[1][a * 16 + b2] * 16 + b1])
          flag(transposal, "transposal fails at relation " + std::to_string(a));

  for (unsigned a = 0; a < 256; ++a)
    for (unsigned b = 0; b < 256; ++b)
      for (unsigned be = 0; be < 16; ++be)
        for (unsigned slot = 0; slot < 2; ++slot) {
          const unsigned lhs = comp_t[slot][add_t[a * 256 + b] * 16 + be];
          const unsigned rhs =
              add_t[comp_t[slot][a * 16 + be] * 256 + comp_t[slot][b * 16 + be]];
          if (beta_fn[be] && lhs != rhs)
            flag(distributive, "equality fails for functional beta " +
                                   std::to_string(be));
          if ((lhs & ~rhs) != 0)
            flag(distributive,
                 "containment fails for beta " + std::to_string(be));
        }

  for (std::size_t t1 = 0; t1 < specs.size(); ++t1) {
    if (!(specs[ident_idx].then(specs[t1]) == specs[t1] &&
          specs[t1].then(specs[ident_idx]) == specs[t1] &&
          specs[t1].then(specs[t1].inverse()) == specs[ident_idx]))
      flag(group, "group axioms fail on the spec algebra");
    for (std::size_t t2 = 0; t2 < specs.size(); ++t2) {
      const auto composed = specs[t1].then(specs[t2]);
      std::size_t ci = 0;
      while (!(specs[ci] == composed)) ++ci;  // closure: must be found
      for (unsigned a = 0; a < 256; ++a)
        if (tr_t[t2 * 256 + tr_t[t1 * 256 + a]] != tr_t[ci * 256 + a])
          flag(group, "transform action disagrees with spec composition");
      for (std::size_t t3 = 0; t3 < specs.size(); ++t3)
        if (!(specs[t1].then(specs[t2]).then(specs[t3]) ==
              specs[t1].then(specs[t2].then(specs[t3]))))
          flag(group, "spec composition is not associative");
    }
  }

  for (unsigned a = 0; a < 256; ++a)
    for (unsigned be = 0; be < 16; ++be) {
      if (comp_t[0][tr_t[swap_idx * 256 + a] * 16 + be] !=
          tr_t[swap_idx * 256 + comp_t[1][a * 16 + be]])
        flag(exchange, "swap/x1 exchange fails at relation " +
                           std::to_string(a));
      if (comp_t[1][tr_t[swap_idx * 256 + a] * 16 + be] !=
          tr_t[swap_idx * 256 + comp_t[0][a * 16 + be]])
        flag(exchange, "swap/x2 exchange fails at relation " +
                           std::to_string(a));
    }

  return {addition, transposal, distributive, group, exchange, swap_add};
}

}  // namespace relforge

#endif  // RELFORGE_LAWS_HPP_
