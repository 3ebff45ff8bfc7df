#ifndef RELFORGE_CORE_HPP_
#define RELFORGE_CORE_HPP_

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace relforge {

//! Carrier elements are ordinal indices 0..order-1.
using elem_t = std::uint32_t;

//! Failure codes carried by Error. One code per contract violation the
//! library can detect; messages name the offending pair/triple/cell.
enum class errc {
  // monoid construction and subset checks
  not_associative,
  no_identity_at_zero,
  not_commutative,
  carrier_too_large,
  not_closed,
  missing_identity,
  // relation operations
  arity_mismatch,
  order_mismatch,
  not_a_permutation,
  bad_index,
  bad_positions,
  // decomposition
  faithfulness_too_low,
  order_too_small,
  unsupported_arity,
  no_solution_within_budget,
  decomposition_mismatch,
  // text formats
  syntax_error,
  range_error,
  shape_error,
};

inline const char* errc_name(errc c) {
  switch (c) {
    case errc::not_associative: return "NotAssociative";
    case errc::no_identity_at_zero: return "NoIdentityAtZero";
    case errc::not_commutative: return "NotCommutative";
    case errc::carrier_too_large: return "CarrierTooLarge";
    case errc::not_closed: return "NotClosed";
    case errc::missing_identity: return "MissingIdentity";
    case errc::arity_mismatch: return "ArityMismatch";
    case errc::order_mismatch: return "OrderMismatch";
    case errc::not_a_permutation: return "NotAPermutation";
    case errc::bad_index: return "BadIndex";
    case errc::bad_positions: return "BadPositions";
    case errc::faithfulness_too_low: return "FaithfulnessTooLow";
    case errc::order_too_small: return "OrderTooSmall";
    case errc::unsupported_arity: return "UnsupportedArity";
    case errc::no_solution_within_budget: return "NoSolutionWithinBudget";
    case errc::decomposition_mismatch: return "DecompositionMismatch";
    case errc::syntax_error: return "SyntaxError";
    case errc::range_error: return "RangeError";
    case errc::shape_error: return "ShapeError";
  }
  return "UnknownError";
}

class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& msg)
      : std::runtime_error(std::string(errc_name(code)) + ": " + msg),
        code_(code) {}

  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& msg) {
  throw Error(code, msg);
}

//! order^arity with an overflow guard; table sizes in this library must
//! stay enumerable.
inline std::size_t checked_pow(std::size_t base, unsigned exp,
                               std::size_t limit = std::size_t{1} << 28) {
  std::size_t r = 1;
  for (unsigned i = 0; i < exp; ++i) {
    if (base != 0 && r > limit / base)
      fail(errc::range_error, "table of " + std::to_string(base) + "^" +
                                  std::to_string(exp) + " points is too large");
    r *= base;
  }
  return r;
}

}  // namespace relforge

#endif  // RELFORGE_CORE_HPP_
