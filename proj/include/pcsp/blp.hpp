#pragma once

#include <optional>
#include <vector>

#include "pcsp/layout.hpp"
#include "pcsp/linalg.hpp"

namespace pcsp {

/** The basic LP of an instance over A: every column nonnegative. */
struct BlpSystem {
  RelaxationLayout layout;
  LinearSystem lp;
};

/**
 * A point of the basic LP: w[i][a] per variable and value, p[j][t] per
 * constraint and tuple index of R_j^A.
 */
struct BlpPoint {
  std::vector<std::vector<BigRational>> w;
  std::vector<std::vector<BigRational>> p;

  /// Values in layout column order.
  std::vector<BigRational> flatten(const RelaxationLayout& layout) const;
  static BlpPoint from_columns(const RelaxationLayout& layout,
                               const std::vector<BigRational>& values);
  /// support()[c] is true iff column c is strictly positive.
  std::vector<bool> support(const RelaxationLayout& layout) const;

  bool operator==(const BlpPoint&) const = default;
};

BlpSystem build_blp(const Instance& instance, const RelationalStructure& a);

enum class InteriorStrategy {
  /// Average the phase-1 vertex with one maximizer for every column that is
  /// not yet positive in an earlier point.
  Covering,
  /// Average one maximizer per column, uniformly over all columns.
  EveryColumn,
};

/// A feasible point of maximal support, or nullopt when the LP is empty.
std::optional<BlpPoint> relative_interior_point(
    const BlpSystem& system, InteriorStrategy strategy = InteriorStrategy::Covering);

}  // namespace pcsp
