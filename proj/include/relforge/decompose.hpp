#ifndef RELFORGE_DECOMPOSE_HPP_
#define RELFORGE_DECOMPOSE_HPP_

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "relforge/core.hpp"
#include "relforge/expr.hpp"
#include "relforge/monoid.hpp"
#include "relforge/ops.hpp"
#include "relforge/relation.hpp"

namespace relforge {

//! A relation with exactly one non-zero point: value set V at `point`,
//! {0} everywhere else.
struct SingularRelation {
  Relation relation;
  std::vector<elem_t> point;
  ValueSet value;
};

enum class DecompMethod { trivial, nested, compact };

inline const char* decomp_method_name(DecompMethod m) {
  switch (m) {
    case DecompMethod::trivial: return "trivial";
    case DecompMethod::nested: return "nested";
    case DecompMethod::compact: return "compact";
  }
  return "?";
}

//! A verified superposition of one-variable relations.
//!
//! The location relations are independent of the decomposed relation's
//! values (they only address points), while each term's value relation is
//! a function of the target: relations that differ only in values get the
//! same location family and different value families.
struct DecompositionResult {
  Expr expr;
  DecompMethod method;
  std::size_t term_count;
  //! Per term: the argument indicators in argument order, then any
  //! collapse relations in application order (nested form only).
  std::vector<std::vector<Relation>> location_relations;
  //! Per term: the relation applied outermost.
  std::vector<Relation> value_relations;
};

//! One singular relation per point of R; their sum reproduces R exactly,
//! undefined points included (an empty value set absorbs under addition).
inline std::vector<SingularRelation> singular_split(const Relation& r) {
  std::vector<SingularRelation> out;
  out.reserve(r.point_count());
  for (std::size_t i = 0; i < r.point_count(); ++i) {
    Relation s = Relation::zero(r.arity(), r.order());
    s.set_cell(i, r.cell(i));
    out.push_back({std::move(s), r.point_of(i), r.cell(i)});
  }
  return out;
}

namespace detail {

//! Location relation: target -> {1}, everything else -> {0}.
inline Relation indicator(unsigned order, elem_t target) {
  Relation g = Relation::zero(1, order);
  g.set_cell(target, ValueSet::single(1));
  return g;
}

//! Value relation: hit -> v, everything else -> {0}.
inline Relation value_relation(unsigned order, elem_t hit, ValueSet v) {
  Relation f = Relation::zero(1, order);
  f.set_cell(hit, v);
  return f;
}

struct SingularTerm {
  Expr expr;
  std::vector<Relation> locations;
  Relation value;
};

//! Flat form: f[ g_1(x_1) + ... + g_M(x_M) ].
//!
//! Each indicator contributes 1 exactly when its coordinate matches, so
//! the inner sum lands on s_k after k matches; f fires V only on s_M.
//! Sound whenever s_0..s_M are pairwise distinct, i.e. D >= M.
inline SingularTerm singular_term_flat(const SingularRelation& s,
                                       const Monoid& m) {
  const unsigned arity = s.relation.arity();
  if (m.faithfulness() < arity)
    fail(errc::faithfulness_too_low,
         "flat form needs faithfulness degree >= " + std::to_string(arity) +
             ", monoid has " + std::to_string(m.faithfulness()));
  std::vector<Relation> gs;
  std::vector<Expr> addends;
  for (unsigned j = 0; j < arity; ++j) {
    gs.push_back(indicator(m.order(), s.point[j]));
    addends.push_back(Expr::apply(gs.back(), Expr::var(j + 1)));
  }
  Relation f = value_relation(m.order(), m.iterated_one(arity), s.value);
  Expr e = Expr::apply(f, Expr::sum(std::move(addends)));
  return {std::move(e), std::move(gs), std::move(f)};
}

//! Nested form: a left-associated chain that folds two matched
//! coordinates at a time through a collapse relation (s_2 -> {1}), so only
//! s_0, s_1, s_2 need to be distinct (D >= 2) regardless of arity.
inline SingularTerm singular_term_nested(const SingularRelation& s,
                                         const Monoid& m) {
  const unsigned arity = s.relation.arity();
  if (arity <= 2) return singular_term_flat(s, m);
  if (m.faithfulness() < 2)
    fail(errc::faithfulness_too_low,
         "nested form needs faithfulness degree >= 2, monoid has " +
             std::to_string(m.faithfulness()));

  std::vector<Relation> gs;
  for (unsigned j = 0; j < arity; ++j)
    gs.push_back(indicator(m.order(), s.point[j]));
  const Relation collapse =
      value_relation(m.order(), m.iterated_one(2), ValueSet::single(1));

  Expr chain = Expr::sum({Expr::apply(gs[0], Expr::var(1)),
                          Expr::apply(gs[1], Expr::var(2))});
  std::vector<Relation> locations = gs;
  for (unsigned j = 2; j < arity; ++j) {
    chain = Expr::sum({Expr::apply(collapse, std::move(chain)),
                       Expr::apply(gs[j], Expr::var(j + 1))});
    locations.push_back(collapse);
  }
  Relation f = value_relation(m.order(), m.iterated_one(2), s.value);
  Expr e = Expr::apply(f, std::move(chain));
  return {std::move(e), std::move(locations), std::move(f)};
}

}  // namespace detail

//! Flat one-term superposition of a singular relation (needs D >= arity).
inline Expr decompose_singular(const SingularRelation& s, const Monoid& m) {
  if (s.relation.order() != m.order())
    fail(errc::order_mismatch, "singular relation and monoid orders differ");
  return detail::singular_term_flat(s, m).expr;
}

//! Nested one-term superposition (needs only D >= 2; reduces to the flat
//! form at arity <= 2).
inline Expr decompose_singular_nested(const SingularRelation& s,
                                      const Monoid& m) {
  if (s.relation.order() != m.order())
    fail(errc::order_mismatch, "singular relation and monoid orders differ");
  return detail::singular_term_nested(s, m).expr;
}

struct DecomposeOptions {
  //! Drop terms whose value set is exactly {0}; sound because 0 is the
  //! identity. At least one term is always kept.
  bool prune_zero = false;
};

//! Superposition of a whole relation: one term per point, flat when the
//! faithfulness degree allows, nested otherwise. The result is tabulated
//! against R before returning.
inline DecompositionResult decompose(const Relation& r, const Monoid& m,
                                     DecomposeOptions opts = {}) {
  if (r.order() != m.order())
    fail(errc::order_mismatch, "relation order " + std::to_string(r.order()) +
                                   " does not match monoid order " +
                                   std::to_string(m.order()));
  if (m.order() < 3)
    fail(errc::order_too_small,
         "superposition needs order >= 3 (order-2 singular relations of two "
         "variables have none)");
  if (m.faithfulness() < 2)
    fail(errc::faithfulness_too_low,
         "superposition needs faithfulness degree >= 2, monoid has " +
             std::to_string(m.faithfulness()));

  const bool flat = m.faithfulness() >= r.arity();
  std::vector<Expr> terms;
  DecompositionResult out{Expr::var(1),
                          flat ? DecompMethod::trivial : DecompMethod::nested,
                          0,
                          {},
                          {}};
  for (SingularRelation& s : singular_split(r)) {
    if (opts.prune_zero && s.value == ValueSet::single(0)) continue;
    detail::SingularTerm t = flat ? detail::singular_term_flat(s, m)
                                  : detail::singular_term_nested(s, m);
    terms.push_back(std::move(t.expr));
    out.location_relations.push_back(std::move(t.locations));
    out.value_relations.push_back(std::move(t.value));
  }
  if (terms.empty()) {
    // everything pruned: R is constant {0}; keep one term so the sum is
    // well-formed
    SingularRelation first = singular_split(r).front();
    detail::SingularTerm t = flat ? detail::singular_term_flat(first, m)
                                  : detail::singular_term_nested(first, m);
    terms.push_back(std::move(t.expr));
    out.location_relations.push_back(std::move(t.locations));
    out.value_relations.push_back(std::move(t.value));
  }
  out.expr = Expr::sum(std::move(terms));
  out.term_count = out.expr.term_count();

  if (expr_to_relation(out.expr, r.arity(), m) != r)
    fail(errc::decomposition_mismatch,
         "internal: superposition does not tabulate back to its source");
  return out;
}

//! What an exhaustive search over single-term superpositions (and bounded
//! multi-term sums) finds for a target relation at order 2.
struct ImpossibilityReport {
  Relation target;
  std::size_t single_term_candidates = 0;  // 16^3
  bool single_term_found = false;
  //! (term count L, representable with <= L terms)
  std::vector<std::pair<unsigned, bool>> multi_term;
  std::string summary;
};

//! Exhaustively try every (f, g1, g2) in the 16 one-variable relations at
//! order 2 as a single-term superposition f[g1(x1)+g2(x2)] of `target`,
//! then grow bounded multi-term sums from the achievable single-term
//! tables.
inline ImpossibilityReport impossibility_search_order2(
    const Monoid& m, const Relation& target, unsigned max_terms = 3) {
  if (m.order() != 2 || target.order() != 2 || target.arity() != 2)
    fail(errc::order_mismatch,
         "search is specific to order 2, arity 2 targets");

  const std::vector<Relation> unary = enumerate_relations(1, 2);
  ImpossibilityReport rep{target, 0, false, {}, ""};

  // pack an order-2 arity-2 relation into 8 bits (2 bits per cell)
  auto pack = [](const Relation& r) {
    unsigned v = 0;
    for (std::size_t i = 0; i < 4; ++i)
      v |= static_cast<unsigned>(r.cell(i).bits()) << (2 * i);
    return static_cast<std::uint8_t>(v);
  };
  const std::uint8_t target_key = pack(target);

  std::vector<bool> single(256, false);
  for (const Relation& f : unary)
    for (const Relation& g1 : unary)
      for (const Relation& g2 : unary) {
        ++rep.single_term_candidates;
        Expr e = Expr::apply(f, Expr::sum({Expr::apply(g1, Expr::var(1)),
                                           Expr::apply(g2, Expr::var(2))}));
        const std::uint8_t key = pack(expr_to_relation(e, 2, m));
        single[key] = true;
        if (key == target_key) rep.single_term_found = true;
      }
  rep.multi_term.emplace_back(1, rep.single_term_found);

  // L-term sums are L-fold set-sums of the achievable single-term tables
  auto unpack = [&](std::uint8_t key) {
    Relation r(2, 2);
    for (std::size_t i = 0; i < 4; ++i)
      r.set_cell(i, ValueSet::from_bits((key >> (2 * i)) & 3));
    return r;
  };
  std::vector<bool> reach = single;
  for (unsigned terms = 2; terms <= max_terms; ++terms) {
    std::vector<bool> next(256, false);
    for (unsigned a = 0; a < 256; ++a) {
      if (!reach[a]) continue;
      for (unsigned b = 0; b < 256; ++b) {
        if (!single[b]) continue;
        next[pack(add(unpack(static_cast<std::uint8_t>(a)),
                      unpack(static_cast<std::uint8_t>(b)), m))] = true;
      }
    }
    reach = std::move(next);
    rep.multi_term.emplace_back(terms, static_cast<bool>(reach[target_key]));
  }

  rep.summary = "single-term search over " +
                std::to_string(rep.single_term_candidates) + " candidates: " +
                (rep.single_term_found ? "representable" : "no representation");
  for (const auto& [terms, found] : rep.multi_term)
    if (terms > 1)
      rep.summary += "; " + std::to_string(terms) + " terms: " +
                     (found ? "representable" : "no representation");
  return rep;
}

//! Default target: the order-2 singular relation with 1 at (0,0).
inline ImpossibilityReport impossibility_search_order2(const Monoid& m,
                                                       unsigned max_terms = 3) {
  Relation target = Relation::zero(2, 2);
  target.set({0, 0}, ValueSet::single(1));
  return impossibility_search_order2(m, target, max_terms);
}

//! The fixed location families of the compact (N+1)-term scheme for
//! two-variable relations. Rows, per term (value row notation):
//!   1: (1,0,...,0)        with (N-2,...,2,1,0,0)
//!   2: (0,0,1,2,...,N-2)  with (0,...,0,1)
//!   3: (N-2,...,2,1,0,0)  with (0,...,0,1)
//!   4+: (N-1,...,2,1,0)   with the indicator row of 0, 1, ..., N-3
struct CompactFamily {
  std::vector<Relation> loc1, loc2;  // x-side and y-side, one pair per term
};

inline CompactFamily compact_location_family(const Monoid& m, unsigned terms) {
  const unsigned n = m.order();
  if (n < 2) fail(errc::order_too_small, "compact family needs order >= 2");
  auto row = [&](auto&& f) {
    std::vector<elem_t> r(n);
    for (elem_t x = 0; x < n; ++x) r[x] = static_cast<elem_t>(f(x));
    return Relation::function_row(n, r);
  };
  auto point_row = [&](elem_t hit) {
    return row([&](elem_t x) { return x == hit ? 1 : 0; });
  };
  const Relation down_two = row([&](elem_t x) { return x + 2 <= n ? n - 2 - x : 0; });
  const Relation down_one = row([&](elem_t x) { return n - 1 - x; });
  const Relation up_shift = row([&](elem_t x) { return x >= 1 ? x - 1 : 0; });

  CompactFamily fam;
  auto push = [&](const Relation& a, const Relation& b) {
    if (fam.loc1.size() < terms) {
      fam.loc1.push_back(a);
      fam.loc2.push_back(b);
    }
  };
  push(point_row(0), down_two);
  push(up_shift, point_row(n - 1));
  push(down_two, point_row(n - 1));
  for (elem_t j = 0; j + 2 < n; ++j) push(down_one, point_row(j));
  return fam;
}

//! Experimental bounded search for a compact decomposition of an arity-2
//! relation: the location families above are fixed, the per-term value
//! tables are solved for by backtracking, and any solution is verified by
//! tabulation. Returns nothing when the bounded search exhausts its node
//! budget or the whole space without a solution.
inline std::optional<DecompositionResult> compact_decompose_search(
    const Relation& r, const Monoid& m, unsigned term_budget,
    std::uint64_t node_budget = 4'000'000) {
  if (r.arity() != 2)
    fail(errc::unsupported_arity, "compact search handles arity 2 only");
  if (r.order() != m.order())
    fail(errc::order_mismatch, "relation order " + std::to_string(r.order()) +
                                   " does not match monoid order " +
                                   std::to_string(m.order()));
  if (term_budget == 0) return std::nullopt;
  const unsigned n = m.order();

  // with one term per point available, the trivial assignment always works
  if (term_budget >= n * n) return decompose(r, m);

  const unsigned terms = std::min(term_budget, n + 1);
  const CompactFamily fam = compact_location_family(m, terms);

  // entry selected by term t at point (x,y)
  auto entry_of = [&](unsigned t, elem_t x, elem_t y) {
    return m.add(eval1(fam.loc1[t], x).min(), eval1(fam.loc2[t], y).min());
  };

  // unknown value-table entries; the last entry of every term after the
  // first is pinned to {0} as in the printed scheme
  constexpr unsigned kPinned = ~0u;
  std::vector<std::vector<unsigned>> var_id(terms,
                                            std::vector<unsigned>(n, kPinned));
  std::vector<std::pair<unsigned, elem_t>> vars;  // (term, element)

  struct PointConstraint {
    std::vector<unsigned> entries;  // variable ids, kPinned for pinned {0}
    ValueSet want;
    unsigned last_var = 0;  // variable completing this constraint
  };
  std::vector<PointConstraint> points;

  for (elem_t x = 0; x < n; ++x)
    for (elem_t y = 0; y < n; ++y) {
      PointConstraint pc;
      pc.want = r.at({x, y});
      for (unsigned t = 0; t < terms; ++t) {
        const elem_t e = entry_of(t, x, y);
        const bool pinned = t > 0 && e + 1 == n;
        if (pinned) {
          pc.entries.push_back(kPinned);
          continue;
        }
        if (var_id[t][e] == kPinned) {
          var_id[t][e] = static_cast<unsigned>(vars.size());
          vars.emplace_back(t, e);
        }
        pc.entries.push_back(var_id[t][e]);
      }
      points.push_back(std::move(pc));
    }
  for (auto& pc : points) {
    unsigned last = 0;
    for (unsigned v : pc.entries)
      if (v != kPinned) last = std::max(last, v);
    pc.last_var = last;
  }

  // candidate values, deterministic: singletons first, then larger sets,
  // empty last
  std::vector<ValueSet> domain;
  for (unsigned sz = 1; sz <= n; ++sz)
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask)
      if (std::popcount(mask) == sz) domain.push_back(ValueSet::from_bits(mask));
  domain.push_back(ValueSet::none());

  std::vector<ValueSet> assign(vars.size());
  std::uint64_t nodes = 0;

  auto complete_ok = [&](const PointConstraint& pc) {
    ValueSet acc = ValueSet::single(0);
    for (unsigned v : pc.entries)
      acc = m.set_sum(acc, v == kPinned ? ValueSet::single(0) : assign[v]);
    return acc == pc.want;
  };

  auto search = [&](auto&& self, unsigned depth) -> bool {
    if (depth == vars.size()) return true;
    for (ValueSet cand : domain) {
      if (++nodes > node_budget) return false;
      assign[depth] = cand;
      bool ok = true;
      for (const auto& pc : points) {
        bool involves = false;
        for (unsigned v : pc.entries) involves |= v == depth;
        // an empty entry absorbs, so a defined point rules it out at once
        if (involves && cand.empty() && !pc.want.empty()) {
          ok = false;
          break;
        }
        if (pc.last_var == depth && !complete_ok(pc)) {
          ok = false;
          break;
        }
      }
      if (ok && self(self, depth + 1)) return true;
    }
    return false;
  };
  if (!search(search, 0)) return std::nullopt;

  // assemble and verify
  std::vector<Expr> exprs;
  DecompositionResult out{Expr::var(1), DecompMethod::compact, 0, {}, {}};
  for (unsigned t = 0; t < terms; ++t) {
    Relation h = Relation::zero(1, n);
    for (elem_t e = 0; e < n; ++e)
      if (var_id[t][e] != kPinned) h.set_cell(e, assign[var_id[t][e]]);
    exprs.push_back(
        Expr::apply(h, Expr::sum({Expr::apply(fam.loc1[t], Expr::var(1)),
                                  Expr::apply(fam.loc2[t], Expr::var(2))})));
    out.location_relations.push_back({fam.loc1[t], fam.loc2[t]});
    out.value_relations.push_back(std::move(h));
  }
  out.expr = Expr::sum(std::move(exprs));
  out.term_count = out.expr.term_count();
  if (expr_to_relation(out.expr, 2, m) != r)
    fail(errc::decomposition_mismatch,
         "internal: compact solution does not tabulate back to its source");
  return out;
}

}  // namespace relforge

#endif  // RELFORGE_DECOMPOSE_HPP_
