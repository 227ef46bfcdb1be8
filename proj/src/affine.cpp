#include "pcsp/affine.hpp"

namespace pcsp {

std::vector<BigInt> AffinePoint::flatten(const RelaxationLayout& layout) const {
  if (static_cast<int>(r.size()) != layout.num_variables ||
      static_cast<int>(q.size()) != layout.num_constraints())
    throw ValidationError("index mismatch between affine point and layout");
  std::vector<BigInt> out(layout.num_columns);
  for (int i = 0; i < layout.num_variables; ++i) {
    if (static_cast<int>(r[i].size()) != layout.num_values)
      throw ValidationError("index mismatch between affine point and layout");
    for (int a = 0; a < layout.num_values; ++a) out[layout.variable_column(i, a)] = r[i][a];
  }
  for (int j = 0; j < layout.num_constraints(); ++j) {
    if (q[j].size() != layout.tuples(j).size())
      throw ValidationError("index mismatch between affine point and layout");
    for (std::size_t t = 0; t < q[j].size(); ++t)
      out[layout.tuple_column(j, static_cast<int>(t))] = q[j][t];
  }
  return out;
}

AffinePoint AffinePoint::from_columns(const RelaxationLayout& layout,
                                      const std::vector<BigInt>& values) {
  AffinePoint out;
  out.r.assign(layout.num_variables, std::vector<BigInt>(layout.num_values));
  for (int i = 0; i < layout.num_variables; ++i)
    for (int a = 0; a < layout.num_values; ++a) out.r[i][a] = values[layout.variable_column(i, a)];
  out.q.resize(layout.num_constraints());
  for (int j = 0; j < layout.num_constraints(); ++j) {
    out.q[j].resize(layout.tuples(j).size());
    for (std::size_t t = 0; t < out.q[j].size(); ++t)
      out.q[j][t] = values[layout.tuple_column(j, static_cast<int>(t))];
  }
  return out;
}

AffineSystem build_affine(const Instance& instance, const RelationalStructure& a) {
  AffineSystem out{build_layout(instance, a), {}};
  out.zero_fixed.assign(out.layout.num_columns, false);
  return out;
}

AffineSystem refine(const AffineSystem& system, const BlpPoint& support) {
  std::vector<bool> positive = support.support(system.layout);
  AffineSystem out = system;
  for (std::size_t c = 0; c < positive.size(); ++c)
    if (!positive[c]) out.zero_fixed[c] = true;
  return out;
}

std::optional<AffinePoint> affine_feasible(const AffineSystem& system) {
  const auto& layout = system.layout;
  if (static_cast<int>(system.zero_fixed.size()) != layout.num_columns)
    throw ValidationError("index mismatch between zero-fixed set and layout");
  // Fixed columns are eliminated rather than constrained.
  std::vector<int> free_index(layout.num_columns, -1);
  std::vector<int> free_columns;
  for (int c = 0; c < layout.num_columns; ++c)
    if (!system.zero_fixed[c]) {
      free_index[c] = static_cast<int>(free_columns.size());
      free_columns.push_back(c);
    }
  const int m = static_cast<int>(layout.rows.size());
  IntMatrix a(m, static_cast<int>(free_columns.size()));
  std::vector<BigInt> b(m);
  for (int r = 0; r < m; ++r) {
    const auto& row = layout.rows[r];
    for (auto [col, coef] : row.terms)
      if (free_index[col] >= 0) a(r, free_index[col]) += coef;
    b[r] = row.rhs;
  }
  auto solution = integer_solve(a, b);
  if (!solution) return std::nullopt;
  std::vector<BigInt> values(layout.num_columns);
  for (std::size_t k = 0; k < free_columns.size(); ++k) values[free_columns[k]] = (*solution)[k];
  return AffinePoint::from_columns(layout, values);
}

}  // namespace pcsp
