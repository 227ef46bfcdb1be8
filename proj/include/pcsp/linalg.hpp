#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "pcsp/core.hpp"
#include "pcsp/rational.hpp"

namespace pcsp {

class InfeasibleSystem : public Error {
 public:
  using Error::Error;
};

class UnboundedObjective : public Error {
 public:
  using Error::Error;
};

/**
 * Equality rows over rational coefficients with per-variable sign and
 * fixed-to-zero flags. Variables are positional, 0..num_variables-1.
 */
struct LinearSystem {
  struct Row {
    std::vector<std::pair<int, BigRational>> terms;
    BigRational rhs;
  };

  int num_variables = 0;
  std::vector<Row> rows;
  std::vector<bool> nonnegative;  ///< size num_variables
  std::vector<bool> fixed_zero;   ///< size num_variables

  explicit LinearSystem(int n = 0) : num_variables(n), nonnegative(n, true), fixed_zero(n, false) {}

  void add_row(std::vector<std::pair<int, BigRational>> terms, BigRational rhs) {
    rows.push_back(Row{std::move(terms), std::move(rhs)});
  }
  /// Throws ValidationError when a row references an undeclared variable.
  void validate() const;
  /// Exact residual check of every row, sign flag and fixed-zero flag.
  bool satisfied_by(const std::vector<BigRational>& point) const;
};

struct LpResult {
  bool feasible = false;
  std::vector<BigRational> point;  ///< empty when infeasible
};

/**
 * Dense two-phase simplex over exact rationals with Bland's rule.
 *
 * Phase 1 runs on construction; afterwards `maximize` may be called any
 * number of times and each call restarts phase 2 from the phase-1 basis.
 * Free variables are split into a difference of two nonnegative columns and
 * fixed-zero variables are dropped.
 */
class SimplexSolver {
 public:
  explicit SimplexSolver(const LinearSystem& system);

  bool feasible() const { return feasible_; }
  /// The phase-1 vertex (throws InfeasibleSystem when infeasible).
  std::vector<BigRational> point() const;
  /// Maximizes one original variable; returns (value, attaining vertex).
  std::pair<BigRational, std::vector<BigRational>> maximize(int variable) const;
  std::pair<BigRational, std::vector<BigRational>> maximize(
      const std::vector<std::pair<int, BigRational>>& objective) const;

  std::size_t pivots() const { return pivots_; }

 private:
  struct Tableau {
    std::vector<std::vector<BigRational>> rows;  // each row: columns..., rhs
    std::vector<int> basis;
  };

  void pivot(Tableau& t, std::vector<BigRational>& cost, int row, int col) const;
  std::vector<BigRational> extract(const Tableau& t) const;

  const LinearSystem* system_;
  int num_columns_ = 0;
  // column -> (original variable, sign)
  std::vector<std::pair<int, int>> column_origin_;
  Tableau tableau_;
  bool feasible_ = false;
  mutable std::size_t pivots_ = 0;
};

LpResult lp_feasible(const LinearSystem& system);
/// Throws InfeasibleSystem or UnboundedObjective.
std::pair<BigRational, std::vector<BigRational>> lp_maximize(const LinearSystem& system,
                                                             int variable);

/** Dense row-major integer matrix. */
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(std::size_t(rows) * cols) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  BigInt& operator()(int r, int c) { return data_[std::size_t(r) * cols_ + c]; }
  const BigInt& operator()(int r, int c) const { return data_[std::size_t(r) * cols_ + c]; }

  static IntMatrix identity(int n);
  IntMatrix operator*(const IntMatrix& other) const;
  std::vector<BigInt> operator*(const std::vector<BigInt>& x) const;
  bool operator==(const IntMatrix&) const = default;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<BigInt> data_;
};

/**
 * Column-style Hermite normal form H = A * U with U unimodular. H is in
 * lower echelon form: pivot k sits at (pivot_rows[k], k), is positive, and
 * entries left of it in its row are reduced into [0, pivot).
 */
struct HermiteForm {
  IntMatrix h;
  IntMatrix u;
  std::vector<int> pivot_rows;
};

HermiteForm hermite_normal_form(const IntMatrix& a);

/// Some integer x with A x = b, or nullopt. Throws ValidationError on a
/// dimension mismatch.
std::optional<std::vector<BigInt>> integer_solve(const IntMatrix& a, const std::vector<BigInt>& b);

}  // namespace pcsp
