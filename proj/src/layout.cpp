#include "pcsp/layout.hpp"

namespace pcsp {

RelaxationLayout build_layout(const Instance& instance, const RelationalStructure& a) {
  RelaxationLayout out;
  std::vector<int> bound = bind_symbols(instance, a);
  out.num_variables = instance.num_variables();
  out.num_values = a.domain_size();
  out.relations = a.relations();
  int column = out.num_variables * out.num_values;
  for (const Constraint& c : instance.constraints()) {
    int sym = bound[c.symbol];
    out.relation_of.push_back(sym);
    out.scopes.push_back(c.scope);
    out.tuple_offset.push_back(column);
    column += static_cast<int>(a.relation(sym).size());
  }
  out.num_columns = column;

  using Kind = RelaxationLayout::RowKind;
  for (int i = 0; i < out.num_variables; ++i) {
    RelaxationLayout::Row row{Kind::VariableSum, i, -1, -1, {}, 1};
    for (int v = 0; v < out.num_values; ++v) row.terms.emplace_back(out.variable_column(i, v), 1);
    out.rows.push_back(std::move(row));
  }
  for (int j = 0; j < out.num_constraints(); ++j) {
    // An empty relation leaves a term-free row "0 = 1".
    RelaxationLayout::Row row{Kind::ConstraintSum, j, -1, -1, {}, 1};
    for (std::size_t t = 0; t < out.tuples(j).size(); ++t)
      row.terms.emplace_back(out.tuple_column(j, static_cast<int>(t)), 1);
    out.rows.push_back(std::move(row));
  }
  for (int j = 0; j < out.num_constraints(); ++j) {
    const auto& rel = out.tuples(j);
    const Tuple& scope = out.scopes[j];
    for (std::size_t k = 0; k < scope.size(); ++k) {
      for (int v = 0; v < out.num_values; ++v) {
        RelaxationLayout::Row row{Kind::Marginal, j, static_cast<int>(k), v, {}, 0};
        for (std::size_t t = 0; t < rel.size(); ++t)
          if (rel[t][k] == v) row.terms.emplace_back(out.tuple_column(j, static_cast<int>(t)), 1);
        row.terms.emplace_back(out.variable_column(scope[k], v), -1);
        out.rows.push_back(std::move(row));
      }
    }
  }
  return out;
}

}  // namespace pcsp
