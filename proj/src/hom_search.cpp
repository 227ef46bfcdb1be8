#include "pcsp/hom_search.hpp"

#include <bit>

namespace pcsp {

HomSearch::HomSearch(int num_variables, int domain_size)
    : num_variables_(num_variables), domain_size_(domain_size) {
  if (domain_size < 0 || domain_size > 64)
    throw ValidationError("homomorphism search supports targets of at most 64 values");
  std::uint64_t full = domain_size == 64 ? ~0ULL : ((1ULL << domain_size) - 1);
  initial_.assign(num_variables, full);
  watch_.resize(num_variables);
}

int HomSearch::add_relation(std::vector<Tuple> tuples) {
  relations_.push_back(std::move(tuples));
  return static_cast<int>(relations_.size()) - 1;
}

void HomSearch::add_constraint(int relation, Tuple scope) {
  Item item{relation, std::move(scope), {}};
  for (std::size_t k = 0; k < item.scope.size(); ++k) {
    for (std::size_t l = k + 1; l < item.scope.size(); ++l)
      if (item.scope[k] == item.scope[l])
        item.equal_positions.emplace_back(static_cast<int>(k), static_cast<int>(l));
  }
  int id = static_cast<int>(items_.size());
  for (std::size_t k = 0; k < item.scope.size(); ++k) {
    auto& w = watch_[item.scope[k]];
    if (w.empty() || w.back() != id) w.push_back(id);
  }
  items_.push_back(std::move(item));
}

void HomSearch::restrict(int variable, std::uint64_t mask) { initial_[variable] &= mask; }

bool HomSearch::revise(const Item& item, std::vector<std::uint64_t>& domains,
                       std::vector<int>& changed) const {
  const auto& scope = item.scope;
  std::vector<std::uint64_t> support(scope.size(), 0);
  for (const Tuple& t : relations_[item.relation]) {
    bool ok = true;
    for (std::size_t k = 0; k < scope.size() && ok; ++k)
      ok = (domains[scope[k]] >> t[k]) & 1ULL;
    for (auto [k, l] : item.equal_positions)
      if (t[k] != t[l]) ok = false;
    if (!ok) continue;
    for (std::size_t k = 0; k < scope.size(); ++k) support[k] |= 1ULL << t[k];
  }
  for (std::size_t k = 0; k < scope.size(); ++k) {
    std::uint64_t& d = domains[scope[k]];
    std::uint64_t nd = d & support[k];
    if (nd != d) {
      d = nd;
      if (nd == 0) return false;
      changed.push_back(scope[k]);
    }
  }
  return true;
}

bool HomSearch::propagate(std::vector<std::uint64_t>& domains, std::vector<int> queue) const {
  std::vector<char> queued(items_.size(), 0);
  for (int c : queue) queued[c] = 1;
  std::vector<int> changed;
  while (!queue.empty()) {
    int c = queue.back();
    queue.pop_back();
    queued[c] = 0;
    changed.clear();
    if (!revise(items_[c], domains, changed)) return false;
    for (int v : changed)
      for (int d : watch_[v])
        if (!queued[d]) {
          queued[d] = 1;
          queue.push_back(d);
        }
  }
  return true;
}

bool HomSearch::search(std::vector<std::uint64_t>& domains, int next,
                       const std::function<bool(const std::vector<int>&)>& visit) {
  ++nodes_;
  while (next < num_variables_ && std::popcount(domains[next]) == 1) ++next;
  if (next == num_variables_) {
    std::vector<int> solution(num_variables_);
    for (int v = 0; v < num_variables_; ++v) solution[v] = std::countr_zero(domains[v]);
    return visit(solution);
  }
  std::uint64_t values = domains[next];
  while (values) {
    int a = std::countr_zero(values);
    values &= values - 1;
    std::vector<std::uint64_t> trial = domains;
    trial[next] = 1ULL << a;
    if (propagate(trial, watch_[next]) && !search(trial, next + 1, visit)) return false;
  }
  return true;
}

void HomSearch::for_each_solution(const std::function<bool(const std::vector<int>&)>& visit) {
  std::vector<std::uint64_t> domains = initial_;
  for (std::uint64_t d : domains)
    if (d == 0) return;
  std::vector<int> all(items_.size());
  for (std::size_t c = 0; c < items_.size(); ++c) all[c] = static_cast<int>(c);
  if (!propagate(domains, std::move(all))) return;
  search(domains, 0, visit);
}

std::optional<std::vector<int>> HomSearch::first_solution() {
  std::optional<std::vector<int>> found;
  for_each_solution([&](const std::vector<int>& s) {
    found = s;
    return false;
  });
  return found;
}

}  // namespace pcsp
