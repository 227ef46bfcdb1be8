#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "pcsp/affine.hpp"
#include "pcsp/blp.hpp"
#include "pcsp/core.hpp"
#include "pcsp/polymorphism.hpp"

namespace pcsp {

/** No usable arity at or above M * ell^2 (or the bound overflows the cap). */
class ArityUnavailable : public Error {
 public:
  using Error::Error;
};

/** The supplied function failed the polymorphism check. */
class NotPolymorphism : public Error {
 public:
  using Error::Error;
};

/** A rounding invariant or the final check failed; indicates a bug or
 *  inconsistent witnesses. */
class RoundingFailure : public Error {
 public:
  using Error::Error;
};

/**
 * ell: least common denominator of the LP point; M: largest absolute value
 * in the affine point, at least 1; L = u * ell + v with 0 <= v < ell.
 */
struct RoundingParams {
  std::int64_t ell = 1;
  std::int64_t M = 1;
  std::int64_t L = 1;
  std::int64_t u = 1;
  std::int64_t v = 0;

  std::int64_t min_arity() const { return M * ell * ell; }
  bool operator==(const RoundingParams&) const = default;
};

std::int64_t witness_denominator(const BlpPoint& blp);
std::int64_t witness_magnitude(const AffinePoint& aff);

/// Params with the given arity; throws ArityUnavailable when L < M * ell^2.
RoundingParams rounding_params_for_arity(const BlpPoint& blp, const AffinePoint& aff, std::int64_t L);

/// Params with L the smallest arity >= M * ell^2 accepted by `available`,
/// searched up to `max_arity`.
RoundingParams rounding_params(const BlpPoint& blp, const AffinePoint& aff,
                               const std::function<bool(std::int64_t)>& available,
                               std::int64_t max_arity = 50'000'000);

/**
 * W[i][a] = u*ell*w_i(a) + v*r_i(a) and P[j][t] likewise. Verified on
 * construction: nonnegative integers, rows summing to L, and marginals
 * sum_{t : t[k] = a} P[j][t] = W[scope_j[k]][a].
 */
struct RoundedCounts {
  std::int64_t total = 0;
  std::vector<std::vector<std::int64_t>> W;
  std::vector<std::vector<std::int64_t>> P;
};

RoundedCounts compute_counts(const RoundingParams& params, const BlpPoint& blp,
                             const AffinePoint& aff, const RelaxationLayout& layout);
RoundedCounts compute_counts(const RoundingParams& params, const BlpPoint& blp,
                             const AffinePoint& aff, const Instance& instance,
                             const RelationalStructure& a);

/// One set of counts per block, block b using L_b = u_b * ell + v_b.
std::vector<RoundedCounts> compute_block_counts(const BlpPoint& blp, const AffinePoint& aff,
                                                const RelaxationLayout& layout,
                                                const std::vector<std::int64_t>& block_sizes);

struct RoundOptions {
  /// Run is_polymorphism on f first (may raise SizeGuardError at large arity).
  bool verify_polymorphism = true;
  PolymorphismLimits limits;
};

/// X_i = f(histogram W_i); the result is checked against B before returning.
Assignment round(const PromiseTemplate& tmpl, const Instance& instance, const BlpPoint& blp,
                 const AffinePoint& aff, const SymmetricFunction& f, RoundOptions options = {});

/// Block version: X_i = f(W_{1,i}, ..., W_{k,i}); every block needs L_b >= M * ell^2.
Assignment round(const PromiseTemplate& tmpl, const Instance& instance, const BlpPoint& blp,
                 const AffinePoint& aff, const BlockSymmetricFunction& f, RoundOptions options = {});

}  // namespace pcsp
