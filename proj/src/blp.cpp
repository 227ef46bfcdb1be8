#include "pcsp/blp.hpp"

namespace pcsp {

std::vector<BigRational> BlpPoint::flatten(const RelaxationLayout& layout) const {
  if (static_cast<int>(w.size()) != layout.num_variables ||
      static_cast<int>(p.size()) != layout.num_constraints())
    throw ValidationError("index mismatch between LP point and layout");
  std::vector<BigRational> out(layout.num_columns);
  for (int i = 0; i < layout.num_variables; ++i) {
    if (static_cast<int>(w[i].size()) != layout.num_values)
      throw ValidationError("index mismatch between LP point and layout");
    for (int a = 0; a < layout.num_values; ++a) out[layout.variable_column(i, a)] = w[i][a];
  }
  for (int j = 0; j < layout.num_constraints(); ++j) {
    if (p[j].size() != layout.tuples(j).size())
      throw ValidationError("index mismatch between LP point and layout");
    for (std::size_t t = 0; t < p[j].size(); ++t)
      out[layout.tuple_column(j, static_cast<int>(t))] = p[j][t];
  }
  return out;
}

BlpPoint BlpPoint::from_columns(const RelaxationLayout& layout,
                                const std::vector<BigRational>& values) {
  if (static_cast<int>(values.size()) != layout.num_columns)
    throw ValidationError("index mismatch between LP values and layout");
  BlpPoint out;
  out.w.assign(layout.num_variables, std::vector<BigRational>(layout.num_values));
  for (int i = 0; i < layout.num_variables; ++i)
    for (int a = 0; a < layout.num_values; ++a) out.w[i][a] = values[layout.variable_column(i, a)];
  out.p.resize(layout.num_constraints());
  for (int j = 0; j < layout.num_constraints(); ++j) {
    out.p[j].resize(layout.tuples(j).size());
    for (std::size_t t = 0; t < out.p[j].size(); ++t)
      out.p[j][t] = values[layout.tuple_column(j, static_cast<int>(t))];
  }
  return out;
}

std::vector<bool> BlpPoint::support(const RelaxationLayout& layout) const {
  std::vector<BigRational> flat = flatten(layout);
  std::vector<bool> out(flat.size());
  for (std::size_t c = 0; c < flat.size(); ++c) out[c] = flat[c] > 0;
  return out;
}

BlpSystem build_blp(const Instance& instance, const RelationalStructure& a) {
  BlpSystem out{build_layout(instance, a), LinearSystem()};
  out.lp = LinearSystem(out.layout.num_columns);
  for (const auto& row : out.layout.rows) {
    std::vector<std::pair<int, BigRational>> terms;
    terms.reserve(row.terms.size());
    for (auto [col, coef] : row.terms) terms.emplace_back(col, BigRational(coef));
    out.lp.add_row(std::move(terms), BigRational(row.rhs));
  }
  return out;
}

std::optional<BlpPoint> relative_interior_point(const BlpSystem& system,
                                                InteriorStrategy strategy) {
  SimplexSolver solver(system.lp);
  if (!solver.feasible()) return std::nullopt;

  const int columns = system.lp.num_variables;
  std::vector<std::vector<BigRational>> points;
  std::vector<bool> covered(columns, false);
  auto absorb = [&](std::vector<BigRational> point) {
    for (int c = 0; c < columns; ++c)
      if (point[c] > 0) covered[c] = true;
    points.push_back(std::move(point));
  };

  if (strategy == InteriorStrategy::Covering) absorb(solver.point());
  for (int c = 0; c < columns; ++c) {
    if (strategy == InteriorStrategy::Covering && covered[c]) continue;
    auto [value, point] = solver.maximize(c);
    if (strategy == InteriorStrategy::Covering && value == 0) continue;
    absorb(std::move(point));
  }
  if (points.empty()) absorb(solver.point());

  std::vector<BigRational> mean(columns);
  for (const auto& point : points)
    for (int c = 0; c < columns; ++c)
      if (point[c] != 0) mean[c] += point[c];
  const BigRational scale(1, static_cast<long>(points.size()));
  for (auto& v : mean) v *= scale;
  return BlpPoint::from_columns(system.layout, mean);
}

}  // namespace pcsp
