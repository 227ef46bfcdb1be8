#include "pcsp/core.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "pcsp/hom_search.hpp"

namespace pcsp {

Signature::Signature(std::vector<Symbol> symbols) : symbols_(std::move(symbols)) {
  std::set<std::string> seen;
  for (const Symbol& s : symbols_) {
    if (s.arity < 1)
      throw ValidationError("symbol '" + s.name + "' must have positive arity");
    if (!seen.insert(s.name).second)
      throw ValidationError("duplicate symbol '" + s.name + "'");
  }
}

std::optional<int> Signature::find(std::string_view name) const {
  for (std::size_t i = 0; i < symbols_.size(); ++i)
    if (symbols_[i].name == name) return static_cast<int>(i);
  return std::nullopt;
}

int Signature::index_of(std::string_view name) const {
  auto i = find(name);
  if (!i) throw ValidationError("unknown relation symbol '" + std::string(name) + "'");
  return *i;
}

RelationalStructure::RelationalStructure(std::vector<std::string> domain, Signature signature,
                                         std::vector<std::vector<Tuple>> relations)
    : domain_(std::move(domain)),
      signature_(std::move(signature)),
      relations_(std::move(relations)) {
  if (domain_.empty()) throw ValidationError("domain must be nonempty");
  std::set<std::string> seen;
  for (const auto& label : domain_)
    if (!seen.insert(label).second)
      throw ValidationError("duplicate domain value '" + label + "'");
  if (relations_.size() != signature_.size())
    throw ValidationError("expected one relation per signature symbol");
  for (std::size_t r = 0; r < relations_.size(); ++r) {
    auto& rel = relations_[r];
    for (const Tuple& t : rel) {
      if (static_cast<int>(t.size()) != signature_[r].arity)
        throw ValidationError("tuple of wrong arity in relation '" + signature_[r].name + "'");
      for (int v : t)
        if (v < 0 || v >= domain_size())
          throw ValidationError("tuple entry outside the domain in relation '" +
                                signature_[r].name + "'");
    }
    std::sort(rel.begin(), rel.end());
    rel.erase(std::unique(rel.begin(), rel.end()), rel.end());
  }
}

bool RelationalStructure::contains(int symbol, std::span<const int> tuple) const {
  const auto& rel = relations_[symbol];
  auto it = std::lower_bound(rel.begin(), rel.end(), tuple,
                             [](const Tuple& a, std::span<const int> b) {
                               return std::lexicographical_compare(a.begin(), a.end(),
                                                                   b.begin(), b.end());
                             });
  return it != rel.end() && std::equal(it->begin(), it->end(), tuple.begin(), tuple.end());
}

std::optional<int> RelationalStructure::find_value(std::string_view label) const {
  for (std::size_t i = 0; i < domain_.size(); ++i)
    if (domain_[i] == label) return static_cast<int>(i);
  return std::nullopt;
}

int RelationalStructure::value_index(std::string_view label) const {
  auto v = find_value(label);
  if (!v) throw ValidationError("unknown domain value '" + std::string(label) + "'");
  return *v;
}

bool check_homomorphism(const RelationalStructure& src, const RelationalStructure& dst,
                        std::span<const int> map) {
  if (!(src.signature() == dst.signature())) throw ValidationError("signature mismatch");
  if (static_cast<int>(map.size()) != src.domain_size())
    throw ValidationError("map is not total on the source domain");
  for (int v : map)
    if (v < 0 || v >= dst.domain_size())
      throw ValidationError("map sends a value outside the target domain");
  Tuple image;
  for (std::size_t r = 0; r < src.signature().size(); ++r) {
    for (const Tuple& t : src.relation(static_cast<int>(r))) {
      image.resize(t.size());
      for (std::size_t k = 0; k < t.size(); ++k) image[k] = map[t[k]];
      if (!dst.contains(static_cast<int>(r), image)) return false;
    }
  }
  return true;
}

std::optional<std::vector<int>> find_homomorphism(const RelationalStructure& src,
                                                  const RelationalStructure& dst) {
  if (!(src.signature() == dst.signature())) throw ValidationError("signature mismatch");
  HomSearch search(src.domain_size(), dst.domain_size());
  for (std::size_t r = 0; r < src.signature().size(); ++r) {
    int rel = search.add_relation(dst.relation(static_cast<int>(r)));
    for (const Tuple& t : src.relation(static_cast<int>(r))) search.add_constraint(rel, t);
  }
  return search.first_solution();
}

PromiseTemplate::PromiseTemplate(std::string name, RelationalStructure a, RelationalStructure b,
                                 std::optional<std::vector<int>> witness)
    : name_(std::move(name)), a_(std::move(a)), b_(std::move(b)) {
  if (!(a_.signature() == b_.signature()))
    throw ValidationError("template structures have different signatures");
  if (witness) {
    if (!check_homomorphism(a_, b_, *witness))
      throw ValidationError("template witness is not a homomorphism A -> B");
    witness_ = std::move(*witness);
  } else {
    if (a_.domain_size() * std::log2(std::max(2, b_.domain_size())) > 48.0)
      throw SizeGuardError("template too large to search for a homomorphism A -> B");
    auto found = find_homomorphism(a_, b_);
    if (!found) throw ValidationError("no homomorphism A -> B exists");
    witness_ = std::move(*found);
  }
}

Instance::Instance(Signature signature, std::vector<std::string> variables,
                   std::vector<Constraint> constraints)
    : signature_(std::move(signature)),
      variables_(std::move(variables)),
      constraints_(std::move(constraints)) {
  std::set<std::string> seen;
  for (const auto& v : variables_)
    if (!seen.insert(v).second) throw ValidationError("duplicate variable '" + v + "'");
  for (const Constraint& c : constraints_) {
    if (c.symbol < 0 || c.symbol >= static_cast<int>(signature_.size()))
      throw ValidationError("constraint refers to an unknown relation symbol");
    if (static_cast<int>(c.scope.size()) != signature_[c.symbol].arity)
      throw ValidationError("constraint on '" + signature_[c.symbol].name +
                            "' has the wrong number of variables");
    for (int x : c.scope)
      if (x < 0 || x >= num_variables())
        throw ValidationError("constraint refers to an undeclared variable");
  }
}

Instance Instance::from_names(
    Signature signature, std::vector<std::string> variables,
    const std::vector<std::pair<std::string, std::vector<std::string>>>& constraints) {
  std::vector<Constraint> cs;
  cs.reserve(constraints.size());
  for (const auto& [sym, vars] : constraints) {
    Constraint c{signature.index_of(sym), {}};
    for (const auto& name : vars) {
      auto it = std::find(variables.begin(), variables.end(), name);
      if (it == variables.end()) throw ValidationError("undeclared variable '" + name + "'");
      c.scope.push_back(static_cast<int>(it - variables.begin()));
    }
    cs.push_back(std::move(c));
  }
  return Instance(std::move(signature), std::move(variables), std::move(cs));
}

RelationalStructure Instance::as_structure() const {
  std::vector<std::vector<Tuple>> rels(signature_.size());
  for (const Constraint& c : constraints_) rels[c.symbol].push_back(c.scope);
  return RelationalStructure(variables_, signature_, std::move(rels));
}

Instance Instance::from_structure(const RelationalStructure& x) {
  std::vector<Constraint> cs;
  for (std::size_t r = 0; r < x.signature().size(); ++r)
    for (const Tuple& t : x.relation(static_cast<int>(r)))
      cs.push_back(Constraint{static_cast<int>(r), t});
  return Instance(x.signature(), x.domain(), std::move(cs));
}

std::vector<int> bind_symbols(const Instance& instance, const RelationalStructure& s) {
  std::vector<int> out;
  out.reserve(instance.signature().size());
  for (const Symbol& sym : instance.signature().symbols()) {
    int idx = s.signature().index_of(sym.name);
    if (s.signature()[idx].arity != sym.arity)
      throw ValidationError("arity mismatch for relation symbol '" + sym.name + "'");
    out.push_back(idx);
  }
  return out;
}

namespace {

void require_total(const Instance& instance, const RelationalStructure& s,
                   const Assignment& assignment) {
  if (static_cast<int>(assignment.values.size()) != instance.num_variables())
    throw ValidationError("partial assignment");
  for (int v : assignment.values)
    if (v < 0 || v >= s.domain_size())
      throw ValidationError("partial assignment: value outside the target domain");
}

}  // namespace

bool check_satisfies(const Instance& instance, const RelationalStructure& s,
                     const Assignment& assignment) {
  std::vector<int> bound = bind_symbols(instance, s);
  require_total(instance, s, assignment);
  Tuple image;
  for (const Constraint& c : instance.constraints()) {
    image.resize(c.scope.size());
    for (std::size_t k = 0; k < c.scope.size(); ++k) image[k] = assignment.values[c.scope[k]];
    if (!s.contains(bound[c.symbol], image)) return false;
  }
  return true;
}

std::optional<Assignment> brute_force_satisfiable(const Instance& instance,
                                                  const RelationalStructure& s,
                                                  BruteForceLimits limits) {
  std::vector<int> bound = bind_symbols(instance, s);
  double bits = instance.num_variables() * std::log2(static_cast<double>(s.domain_size()));
  if (bits > limits.max_bits)
    throw SizeGuardError("brute-force search space exceeds 2^" +
                         std::to_string(limits.max_bits));
  HomSearch search(instance.num_variables(), s.domain_size());
  std::vector<int> rel_ids(s.signature().size(), -1);
  for (const Constraint& c : instance.constraints()) {
    int r = bound[c.symbol];
    if (rel_ids[r] < 0) rel_ids[r] = search.add_relation(s.relation(r));
    search.add_constraint(rel_ids[r], c.scope);
  }
  auto solution = search.first_solution();
  if (!solution) return std::nullopt;
  return Assignment{std::move(*solution)};
}

Assignment compose(const Assignment& assignment, std::span<const int> map) {
  Assignment out;
  out.values.reserve(assignment.values.size());
  for (int v : assignment.values) {
    if (v < 0 || v >= static_cast<int>(map.size()))
      throw ValidationError("value outside the map's domain");
    out.values.push_back(map[v]);
  }
  return out;
}

std::string format_assignment(const Instance& instance, const RelationalStructure& s,
                              const Assignment& assignment) {
  require_total(instance, s, assignment);
  std::ostringstream out;
  for (int i = 0; i < instance.num_variables(); ++i) {
    if (i) out << ' ';
    out << instance.variables()[i] << '=' << s.domain()[assignment.values[i]];
  }
  return out.str();
}

}  // namespace pcsp
