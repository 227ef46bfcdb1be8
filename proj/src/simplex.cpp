#include <algorithm>
#include <sstream>

#include "pcsp/linalg.hpp"

namespace pcsp {

std::string to_string(const BigRational& q) {
  std::ostringstream out;
  out << numerator_of(q);
  if (denominator_of(q) != 1) out << '/' << denominator_of(q);
  return out.str();
}

std::string to_string(const BigInt& z) { return z.str(); }

namespace {

bool is_integer_text(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (s[i] < '0' || s[i] > '9') return false;
  return true;
}

}  // namespace

BigInt parse_integer(std::string_view text) {
  if (!is_integer_text(text)) throw ValidationError("malformed integer '" + std::string(text) + "'");
  std::string s(text);
  if (s[0] == '+') s.erase(0, 1);
  return BigInt(s);
}

BigRational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return BigRational(parse_integer(text));
  BigInt num = parse_integer(text.substr(0, slash));
  std::string_view den_text = text.substr(slash + 1);
  if (!den_text.empty() && (den_text[0] == '-' || den_text[0] == '+'))
    throw ValidationError("malformed rational '" + std::string(text) + "'");
  BigInt den = parse_integer(den_text);
  if (den == 0) throw ValidationError("zero denominator in '" + std::string(text) + "'");
  return BigRational(num, den);
}

BigInt lcm(const BigInt& a, const BigInt& b) {
  if (a == 0 || b == 0) return 0;
  return boost::multiprecision::lcm(a, b);
}

void LinearSystem::validate() const {
  if (static_cast<int>(nonnegative.size()) != num_variables ||
      static_cast<int>(fixed_zero.size()) != num_variables)
    throw ValidationError("flag vectors do not match the variable count");
  for (const Row& row : rows)
    for (const auto& [v, c] : row.terms)
      if (v < 0 || v >= num_variables) throw ValidationError("row references an undeclared variable");
}

bool LinearSystem::satisfied_by(const std::vector<BigRational>& point) const {
  if (static_cast<int>(point.size()) != num_variables) return false;
  for (int v = 0; v < num_variables; ++v) {
    if (nonnegative[v] && point[v] < 0) return false;
    if (fixed_zero[v] && point[v] != 0) return false;
  }
  for (const Row& row : rows) {
    BigRational sum = 0;
    for (const auto& [v, c] : row.terms) sum += c * point[v];
    if (sum != row.rhs) return false;
  }
  return true;
}

SimplexSolver::SimplexSolver(const LinearSystem& system) : system_(&system) {
  system.validate();
  std::vector<std::vector<int>> columns_of(system.num_variables);
  for (int v = 0; v < system.num_variables; ++v) {
    if (system.fixed_zero[v]) continue;
    columns_of[v].push_back(num_columns_++);
    column_origin_.emplace_back(v, 1);
    if (!system.nonnegative[v]) {
      columns_of[v].push_back(num_columns_++);
      column_origin_.emplace_back(v, -1);
    }
  }

  const int width = num_columns_ + 1;
  for (const auto& row : system.rows) {
    std::vector<BigRational> dense(width);
    for (const auto& [v, c] : row.terms) {
      const auto& cols = columns_of[v];
      if (cols.empty()) continue;
      dense[cols[0]] += c;
      if (cols.size() == 2) dense[cols[1]] -= c;
    }
    dense[num_columns_] = row.rhs;
    if (dense[num_columns_] < 0)
      for (auto& x : dense) x = -x;
    tableau_.rows.push_back(std::move(dense));
    tableau_.basis.push_back(-1);
  }

  // Phase 1: maximize -(sum of artificials). Artificial columns are never
  // stored; a row whose basis entry is -1 still carries its artificial.
  const int m = static_cast<int>(tableau_.rows.size());
  // cost[j] is the reduced cost of column j; cost[last] holds minus the
  // objective value, which starts at -(sum of rhs).
  std::vector<BigRational> cost(width);
  for (const auto& row : tableau_.rows)
    for (int j = 0; j < width; ++j)
      if (row[j] != 0) cost[j] += row[j];

  auto basis_rank = [&](int r) {
    return tableau_.basis[r] < 0 ? num_columns_ + r : tableau_.basis[r];
  };

  while (true) {
    int enter = -1;
    for (int j = 0; j < num_columns_; ++j)
      if (cost[j] > 0) {
        enter = j;
        break;
      }
    if (enter < 0) break;
    int leave = -1;
    BigRational best;
    for (int r = 0; r < m; ++r) {
      const auto& a = tableau_.rows[r][enter];
      if (a <= 0) continue;
      BigRational ratio = tableau_.rows[r][num_columns_] / a;
      if (leave < 0 || ratio < best || (ratio == best && basis_rank(r) < basis_rank(leave))) {
        leave = r;
        best = ratio;
      }
    }
    // Phase 1 is bounded above by zero, so a leaving row always exists.
    pivot(tableau_, cost, leave, enter);
  }

  feasible_ = cost[num_columns_] == 0;
  if (!feasible_) return;

  // Drive zero-level artificials out of the basis; drop redundant rows.
  for (int r = 0; r < static_cast<int>(tableau_.rows.size());) {
    if (tableau_.basis[r] >= 0) {
      ++r;
      continue;
    }
    int col = -1;
    for (int j = 0; j < num_columns_; ++j)
      if (tableau_.rows[r][j] != 0) {
        col = j;
        break;
      }
    if (col < 0) {
      tableau_.rows.erase(tableau_.rows.begin() + r);
      tableau_.basis.erase(tableau_.basis.begin() + r);
      continue;
    }
    std::vector<BigRational> scratch(width);
    pivot(tableau_, scratch, r, col);
    ++r;
  }
}

void SimplexSolver::pivot(Tableau& t, std::vector<BigRational>& cost, int row, int col) const {
  ++pivots_;
  const int width = num_columns_ + 1;
  auto& prow = t.rows[row];
  BigRational inv = 1 / prow[col];
  std::vector<int> nz;
  for (int j = 0; j < width; ++j)
    if (prow[j] != 0) {
      prow[j] *= inv;
      nz.push_back(j);
    }
  auto eliminate = [&](std::vector<BigRational>& target) {
    if (target[col] == 0) return;
    BigRational factor = target[col];
    for (int j : nz) target[j] -= factor * prow[j];
  };
  for (int r = 0; r < static_cast<int>(t.rows.size()); ++r)
    if (r != row) eliminate(t.rows[r]);
  eliminate(cost);
  t.basis[row] = col;
}

std::vector<BigRational> SimplexSolver::extract(const Tableau& t) const {
  std::vector<BigRational> x(system_->num_variables);
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    int col = t.basis[r];
    if (col < 0) continue;
    auto [v, sign] = column_origin_[col];
    if (sign > 0)
      x[v] += t.rows[r][num_columns_];
    else
      x[v] -= t.rows[r][num_columns_];
  }
  return x;
}

std::vector<BigRational> SimplexSolver::point() const {
  if (!feasible_) throw InfeasibleSystem("linear system is infeasible");
  return extract(tableau_);
}

std::pair<BigRational, std::vector<BigRational>> SimplexSolver::maximize(int variable) const {
  return maximize({{variable, BigRational(1)}});
}

std::pair<BigRational, std::vector<BigRational>> SimplexSolver::maximize(
    const std::vector<std::pair<int, BigRational>>& objective) const {
  if (!feasible_) throw InfeasibleSystem("linear system is infeasible");
  const int width = num_columns_ + 1;
  std::vector<BigRational> c(num_columns_);
  for (const auto& [v, coef] : objective) {
    if (v < 0 || v >= system_->num_variables)
      throw ValidationError("objective references an undeclared variable");
    for (int j = 0; j < num_columns_; ++j)
      if (column_origin_[j].first == v) c[j] += coef * column_origin_[j].second;
  }

  Tableau t = tableau_;
  const int m = static_cast<int>(t.rows.size());
  // Reduced costs d_j = c_j - sum_r c_B(r) T[r][j]; cost[last] = -(c_B . rhs).
  std::vector<BigRational> cost(width);
  for (int j = 0; j < num_columns_; ++j) cost[j] = c[j];
  for (int r = 0; r < m; ++r) {
    const BigRational& cb = c[t.basis[r]];
    if (cb == 0) continue;
    for (int j = 0; j < width; ++j)
      if (t.rows[r][j] != 0) cost[j] -= cb * t.rows[r][j];
  }

  while (true) {
    int enter = -1;
    for (int j = 0; j < num_columns_; ++j)
      if (cost[j] > 0) {
        enter = j;
        break;
      }
    if (enter < 0) break;
    int leave = -1;
    BigRational best;
    for (int r = 0; r < m; ++r) {
      const auto& a = t.rows[r][enter];
      if (a <= 0) continue;
      BigRational ratio = t.rows[r][num_columns_] / a;
      if (leave < 0 || ratio < best || (ratio == best && t.basis[r] < t.basis[leave])) {
        leave = r;
        best = ratio;
      }
    }
    if (leave < 0) throw UnboundedObjective("objective is unbounded");
    pivot(t, cost, leave, enter);
  }
  return {-cost[num_columns_], extract(t)};
}

LpResult lp_feasible(const LinearSystem& system) {
  SimplexSolver solver(system);
  if (!solver.feasible()) return {};
  return LpResult{true, solver.point()};
}

std::pair<BigRational, std::vector<BigRational>> lp_maximize(const LinearSystem& system,
                                                             int variable) {
  SimplexSolver solver(system);
  return solver.maximize(variable);
}

}  // namespace pcsp
