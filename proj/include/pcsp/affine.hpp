#pragma once

#include <optional>
#include <vector>

#include "pcsp/blp.hpp"
#include "pcsp/layout.hpp"
#include "pcsp/linalg.hpp"

namespace pcsp {

/**
 * The affine relaxation: the same rows as the basic LP but over integer
 * (possibly negative) unknowns r_i(a), q_j(y). `zero_fixed` marks columns
 * forced to zero by refinement.
 */
struct AffineSystem {
  RelaxationLayout layout;
  std::vector<bool> zero_fixed;
};

struct AffinePoint {
  std::vector<std::vector<BigInt>> r;  ///< r[i][a]
  std::vector<std::vector<BigInt>> q;  ///< q[j][t]

  std::vector<BigInt> flatten(const RelaxationLayout& layout) const;
  static AffinePoint from_columns(const RelaxationLayout& layout, const std::vector<BigInt>& values);

  bool operator==(const AffinePoint&) const = default;
};

AffineSystem build_affine(const Instance& instance, const RelationalStructure& a);

/// Fixes to zero every column whose value in `support` is exactly zero.
AffineSystem refine(const AffineSystem& system, const BlpPoint& support);

/// An integer point of the (refined) system, or nullopt if the lattice is empty.
std::optional<AffinePoint> affine_feasible(const AffineSystem& system);

}  // namespace pcsp
