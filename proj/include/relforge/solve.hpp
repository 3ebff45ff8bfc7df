#ifndef RELFORGE_SOLVE_HPP_
#define RELFORGE_SOLVE_HPP_

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "relforge/core.hpp"
#include "relforge/decompose.hpp"
#include "relforge/derived.hpp"
#include "relforge/expr.hpp"
#include "relforge/monoid.hpp"
#include "relforge/ops.hpp"
#include "relforge/random.hpp"
#include "relforge/relation.hpp"

namespace relforge {

//! The equation (x R1 a) R3 (x R2 b) = c over a shared carrier.
struct DoubleBranchesEquation {
  Relation r1, r2, r3;
  elem_t a, b, c;
};

namespace detail {

inline void require_equation(const DoubleBranchesEquation& eq) {
  if (eq.r1.arity() != 2 || eq.r2.arity() != 2 || eq.r3.arity() != 2)
    fail(errc::arity_mismatch, "double-branches relations must have arity 2");
  if (eq.r1.order() != eq.r3.order() || eq.r2.order() != eq.r3.order())
    fail(errc::order_mismatch, "equation relations must share one carrier");
  if (eq.a >= eq.r3.order() || eq.b >= eq.r3.order() || eq.c >= eq.r3.order())
    fail(errc::range_error, "constants a, b, c must be carrier elements");
}

}  // namespace detail

//! Reference semantics: x solves the equation when some u in R1(x,a) and
//! v in R2(x,b) give c in R3(u,v).
inline ValueSet brute_solve(const DoubleBranchesEquation& eq) {
  detail::require_equation(eq);
  ValueSet out;
  for (elem_t x = 0; x < eq.r3.order(); ++x) {
    const ValueSet u_set = eq.r1.at({x, eq.a});
    const ValueSet v_set = eq.r2.at({x, eq.b});
    bool hit = false;
    u_set.for_each([&](elem_t u) {
      v_set.for_each(
          [&](elem_t v) { hit |= eq.r3.at({u, v}).contains(eq.c); });
    });
    if (hit) out.insert(x);
  }
  return out;
}

enum class SolveMethod { brute, pipeline };

struct SolveOutcome {
  ValueSet solution_set;
  //! The arity-3 solution relation with x = W(a,b,c); pipeline only.
  std::optional<Relation> w;
  //! Superposition of W in the variables (a,b,c); filled by
  //! pipeline_formula.
  std::optional<Expr> formula;
  SolveMethod method = SolveMethod::brute;
};

//! The term-rewriting solver. For every term f[g1(u)+g2(v)] of a
//! two-variable decomposition of R3:
//!   - push g1, g2 inward over the branches: compose each branch relation
//!     at the value slot with the converse of its location relation,
//!   - extend both to three variables (x,a,b) and add them,
//!   - undo f by composing with its converse at the value slot,
//! then sum the terms, turn the value slot around to get W, and read the
//! solution set off W(a,b,c).
//!
//! Agrees with brute_solve exactly when R1 and R2 are single-valued and
//! total; for many-valued branches each term may pick its witnesses
//! independently, so the result can only grow (never lose a brute-force
//! solution).
inline SolveOutcome pipeline_solve(const DoubleBranchesEquation& eq,
                                   const Monoid& m,
                                   const DecompositionResult& d) {
  detail::require_equation(eq);
  if (eq.r3.order() != m.order())
    fail(errc::order_mismatch, "equation carrier does not match the monoid");
  if (expr_to_relation(d.expr, 2, m) != eq.r3)
    fail(errc::decomposition_mismatch,
         "decomposition does not tabulate to R3");
  if (d.location_relations.size() != d.value_relations.size())
    fail(errc::decomposition_mismatch, "malformed decomposition families");

  std::optional<Relation> r5;
  for (std::size_t i = 0; i < d.value_relations.size(); ++i) {
    if (d.location_relations[i].size() != 2)
      fail(errc::decomposition_mismatch,
           "pipeline needs flat two-variable terms");
    const Relation& g1 = d.location_relations[i][0];
    const Relation& g2 = d.location_relations[i][1];
    const Relation& f = d.value_relations[i];

    const Relation a_part =
        extend_false(compose_val(eq.r1, converse(g1)), 3, {1, 2});
    const Relation b_part =
        extend_false(compose_val(eq.r2, converse(g2)), 3, {1, 3});
    const Relation term = compose_val(add(a_part, b_part, m), converse(f));
    r5 = r5 ? add(*r5, term, m) : term;
  }

  const Relation w = transform(*r5, TransformSpec({2, 3, 0, 1}));
  SolveOutcome out;
  out.solution_set = w.at({eq.a, eq.b, eq.c});
  out.w = w;
  out.method = SolveMethod::pipeline;
  return out;
}

//! Same, with the default superposition of R3.
inline SolveOutcome pipeline_solve(const DoubleBranchesEquation& eq,
                                   const Monoid& m) {
  return pipeline_solve(eq, m, decompose(eq.r3, m));
}

//! Superposition of the solution relation W in the variables (a,b,c),
//! verified by tabulation; also stored in the outcome.
inline Expr pipeline_formula(const DoubleBranchesEquation& eq, const Monoid& m,
                             SolveOutcome& outcome) {
  detail::require_equation(eq);
  if (!outcome.w)
    fail(errc::decomposition_mismatch,
         "formula needs a pipeline outcome carrying W");
  DecompositionResult d = decompose(*outcome.w, m);
  outcome.formula = d.expr;
  return d.expr;
}

//! Instantiating the carrier with functions: the three-function subset
//! {(0,0,0),(2,0,1),(1,0,2)} of the derived operator system, checked for
//! closure, matched to the base monoid by isomorphism, and exercised by
//! transporting equations across and solving on both sides.
struct OperatorDemoReport {
  unsigned base_order = 0;
  std::size_t derived_order = 0;
  std::vector<elem_t> subset_indices;
  std::vector<elem_t> iso;  // base index -> submonoid index
  std::size_t checked = 0;
  std::size_t matched = 0;
  std::string summary;

  bool all_match() const { return checked > 0 && matched == checked; }
};

namespace detail {

inline Relation transport_relation(const Relation& r,
                                   const std::vector<elem_t>& phi) {
  Relation out(r.arity(), r.order());
  std::vector<elem_t> p(r.arity()), q(r.arity());
  for (std::size_t i = 0; i < r.point_count(); ++i) {
    r.decode_point(i, p);
    for (unsigned j = 0; j < r.arity(); ++j) q[j] = phi[p[j]];
    ValueSet cell;
    r.cell(i).for_each([&](elem_t v) { cell.insert(phi[v]); });
    out.set(q, cell);
  }
  return out;
}

inline ValueSet transport_set(ValueSet s, const std::vector<elem_t>& phi) {
  ValueSet out;
  s.for_each([&](elem_t v) { out.insert(phi[v]); });
  return out;
}

}  // namespace detail

inline OperatorDemoReport operator_instantiation_demo(const Monoid& m) {
  if (m.order() != 3)
    fail(errc::order_mismatch, "the demo instantiates an order-3 carrier");

  const DerivedSystem sys = derived_operator_system(m);
  OperatorDemoReport rep;
  rep.base_order = m.order();
  rep.derived_order = sys.monoid().order();

  const std::vector<std::vector<elem_t>> rows = {
      {0, 0, 0}, {2, 0, 1}, {1, 0, 2}};
  for (const auto& row : rows)
    rep.subset_indices.push_back(
        sys.index_of(Relation::function_row(3, row)));

  // throws NotClosed when the subset fails closure under this monoid
  const Submonoid sub = submonoid_closure(sys.monoid(), rep.subset_indices);

  const auto iso = find_isomorphism(m, sub.monoid);
  if (!iso) {
    rep.summary = "subset is closed but not isomorphic to the base monoid";
    return rep;
  }
  rep.iso = *iso;

  // transported equations: solve over the base carrier and over the
  // function carrier, compare through the isomorphism
  Rng rng(0x5ec5u);
  std::vector<std::array<Relation, 3>> triples;
  triples.push_back({random_single_valued_total(rng, 2, 3),
                     random_single_valued_total(rng, 2, 3),
                     random_relation(rng, 2, 3, 0.6)});
  triples.push_back({random_relation(rng, 2, 3, 0.5),
                     random_relation(rng, 2, 3, 0.5),
                     random_relation(rng, 2, 3, 0.5)});
  triples.push_back({random_relation(rng, 2, 3, 0.3),
                     random_single_valued_total(rng, 2, 3),
                     random_single_valued_total(rng, 2, 3)});

  for (const auto& t : triples) {
    const Relation tr1 = detail::transport_relation(t[0], rep.iso);
    const Relation tr2 = detail::transport_relation(t[1], rep.iso);
    const Relation tr3 = detail::transport_relation(t[2], rep.iso);
    for (elem_t a = 0; a < 3; ++a)
      for (elem_t b = 0; b < 3; ++b)
        for (elem_t c = 0; c < 3; ++c) {
          const DoubleBranchesEquation base{t[0], t[1], t[2], a, b, c};
          const DoubleBranchesEquation lifted{
              tr1, tr2, tr3, rep.iso[a], rep.iso[b], rep.iso[c]};
          const ValueSet base_brute = brute_solve(base);
          const ValueSet lifted_brute = brute_solve(lifted);
          const ValueSet base_pipe = pipeline_solve(base, m).solution_set;
          const ValueSet lifted_pipe =
              pipeline_solve(lifted, sub.monoid).solution_set;
          ++rep.checked;
          if (detail::transport_set(base_brute, rep.iso) == lifted_brute &&
              detail::transport_set(base_pipe, rep.iso) == lifted_pipe)
            ++rep.matched;
        }
  }

  rep.summary =
      "derived system of " + std::to_string(rep.derived_order) +
      " one-variable relations; subset closed, isomorphic to the base; " +
      std::to_string(rep.matched) + "/" + std::to_string(rep.checked) +
      " transported solution sets match";
  return rep;
}

}  // namespace relforge

#endif  // RELFORGE_SOLVE_HPP_
