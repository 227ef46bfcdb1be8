#pragma once

#include <vector>

#include "pcsp/core.hpp"

namespace pcsp {

/**
 * Column and row layout shared by the basic LP and the affine relaxation of
 * an instance over a structure A.
 *
 * Columns: one per (variable i, value a), laid out as i * |A| + a, followed
 * by one per (constraint j, tuple index t in R_j^A) starting at
 * tuple_offset[j]. Rows come in three kinds:
 *   - VariableSum:   sum_a x_i(a) = 1                  (one per variable)
 *   - ConstraintSum: sum_t y_j(t) = 1                  (one per constraint)
 *   - Marginal:      sum_{t : t[k] = a} y_j(t) - x_i(a) = 0
 *                    (one per constraint j, position k, value a; i is the
 *                    k-th variable of constraint j)
 */
struct RelaxationLayout {
  enum class RowKind { VariableSum, ConstraintSum, Marginal };

  struct Row {
    RowKind kind;
    int index;     ///< variable i or constraint j
    int position;  ///< Marginal only
    int value;     ///< Marginal only
    std::vector<std::pair<int, int>> terms;  ///< (column, coefficient)
    int rhs;
  };

  int num_variables = 0;
  int num_values = 0;
  std::vector<std::vector<Tuple>> relations;  ///< copy of A's relations
  std::vector<int> relation_of;               ///< constraint -> A symbol
  std::vector<Tuple> scopes;                  ///< constraint -> variables
  std::vector<int> tuple_offset;
  int num_columns = 0;
  std::vector<Row> rows;

  int num_constraints() const { return static_cast<int>(scopes.size()); }
  const std::vector<Tuple>& tuples(int j) const { return relations[relation_of[j]]; }
  int variable_column(int i, int a) const { return i * num_values + a; }
  int tuple_column(int j, int t) const { return tuple_offset[j] + t; }
};

RelaxationLayout build_layout(const Instance& instance, const RelationalStructure& a);

}  // namespace pcsp
