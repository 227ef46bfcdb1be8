#include "pcsp/oracle.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <tuple>

#include "pcsp/affine.hpp"

namespace pcsp {

bool Classification::consistent() const {
  if (sat_in_a && !(sat_in_b && lp && affine_unrefined && blpaff.accepted())) return false;
  if (blpaff.accepted() && !lp) return false;
  return true;
}

Classification classify(const PromiseTemplate& tmpl, const Instance& instance, BruteForceLimits limits) {
  Classification out;
  out.sat_in_a = brute_force_satisfiable(instance, tmpl.a(), limits).has_value();
  out.sat_in_b = brute_force_satisfiable(instance, tmpl.b(), limits).has_value();
  out.blpaff = decide(tmpl.a(), instance);
  out.lp = out.blpaff.accepted() || out.blpaff.reject_stage == RejectStage::Affine;
  out.affine_unrefined = affine_feasible(build_affine(instance, tmpl.a())).has_value();
  return out;
}

std::string format_classification(const Classification& c) {
  auto b = [](bool x) { return x ? "true" : "false"; };
  return std::string("A=") + b(c.sat_in_a) + " B=" + b(c.sat_in_b) + " lp=" + b(c.lp) +
         " affine=" + b(c.affine_unrefined) + " blpaff=" + verdict_text(c.blpaff);
}

Instance random_instance(const Signature& signature, int n, int m, std::mt19937_64& rng) {
  if (n < 1 || signature.size() == 0) throw ValidationError("need at least one variable and one symbol");
  std::uniform_int_distribution<int> pick_symbol(0, static_cast<int>(signature.size()) - 1);
  std::uniform_int_distribution<int> pick_var(0, n - 1);
  std::vector<std::string> vars;
  for (int i = 0; i < n; ++i) vars.push_back("x" + std::to_string(i));
  std::vector<Constraint> constraints;
  for (int j = 0; j < m; ++j) {
    Constraint c{pick_symbol(rng), {}};
    for (int k = 0; k < signature[c.symbol].arity; ++k) c.scope.push_back(pick_var(rng));
    constraints.push_back(std::move(c));
  }
  return Instance(signature, std::move(vars), std::move(constraints));
}

namespace {

struct CandidateConstraint {
  int symbol;
  Tuple scope;
  bool operator<(const CandidateConstraint& o) const {
    return std::tie(symbol, scope) < std::tie(o.symbol, o.scope);
  }
  bool operator==(const CandidateConstraint&) const = default;
};

std::vector<CandidateConstraint> constraint_space(const Signature& sig, int n) {
  std::vector<CandidateConstraint> out;
  for (std::size_t s = 0; s < sig.size(); ++s) {
    const int k = sig[s].arity;
    Tuple scope(k, 0);
    while (true) {
      out.push_back({static_cast<int>(s), scope});
      int pos = k - 1;
      while (pos >= 0 && ++scope[pos] == n) scope[pos--] = 0;
      if (pos < 0) break;
    }
  }
  return out;
}

// Lexicographically minimal among all variable renamings (sorted constraint lists).
bool is_canonical(const std::vector<CandidateConstraint>& chosen, int n) {
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<CandidateConstraint> renamed(chosen.size());
  while (std::next_permutation(perm.begin(), perm.end())) {
    for (std::size_t c = 0; c < chosen.size(); ++c) {
      renamed[c].symbol = chosen[c].symbol;
      renamed[c].scope.resize(chosen[c].scope.size());
      for (std::size_t k = 0; k < chosen[c].scope.size(); ++k)
        renamed[c].scope[k] = perm[chosen[c].scope[k]];
    }
    std::sort(renamed.begin(), renamed.end());
    if (renamed < chosen) return false;
  }
  return true;
}

constexpr int kFullCanonicalVars = 6;

}  // namespace

FoolingSearchResult search_fooling_instance(const PromiseTemplate& tmpl, FoolingSearchLimits limits) {
  FoolingSearchResult result;
  result.limits = limits;
  const Signature& sig = tmpl.signature();
  int max_arity = 0;
  for (const auto& s : sig.symbols()) max_arity = std::max(max_arity, s.arity);
  std::int64_t generated = 0;

  for (int m = 1; m <= limits.max_constraints; ++m) {
    for (int n = 1; n <= limits.max_vars; ++n) {
      if (n > m * max_arity) continue;
      const auto space = constraint_space(sig, n);
      std::vector<CandidateConstraint> chosen;
      std::optional<Instance> found;

      // Picks constraints in increasing order of index; variables must first
      // occur in order 0, 1, 2, ... so most renamings are skipped cheaply.
      std::function<void(std::size_t, int)> extend = [&](std::size_t start, int used) {
        if (found) return;
        if (static_cast<int>(chosen.size()) == m) {
          if (used != n) return;
          if (n <= kFullCanonicalVars && !is_canonical(chosen, n)) return;
          if (++result.examined > limits.max_instances)
            throw SizeGuardError("fooling-instance search exceeded its instance budget");
          std::vector<Constraint> constraints;
          for (const auto& c : chosen) constraints.push_back({c.symbol, c.scope});
          std::vector<std::string> vars;
          for (int i = 0; i < n; ++i) vars.push_back("x" + std::to_string(i));
          Instance instance(sig, vars, constraints);
          if (brute_force_satisfiable(instance, tmpl.b())) return;
          ++result.unsat_in_b;
          if (decide(tmpl.a(), instance).accepted()) found = std::move(instance);
          return;
        }
        const int slots = m - static_cast<int>(chosen.size());
        if ((n - used) > slots * max_arity) return;
        for (std::size_t idx = start; idx + slots <= space.size(); ++idx) {
          if (++generated > 50 * limits.max_instances)
            throw SizeGuardError("fooling-instance search exceeded its instance budget");
          const auto& c = space[idx];
          int next = used;
          bool ok = true;
          for (int v : c.scope) {
            if (v < next) continue;
            if (v == next) {
              ++next;
            } else {
              ok = false;
              break;
            }
          }
          if (!ok) continue;
          chosen.push_back(c);
          extend(idx + 1, next);
          chosen.pop_back();
          if (found) return;
        }
      };
      extend(0, 0);
      if (found) {
        result.instance = std::move(found);
        return result;
      }
    }
  }
  return result;
}

bool NoWideBlockSymmetricReport::holds() const {
  if (unary == 0) return false;
  return std::all_of(wide.begin(), wide.end(), [](const BlockSearchEntry& e) { return e.polymorphisms == 0; });
}

NoWideBlockSymmetricReport verify_no_wide_block_symmetric(const PromiseTemplate& tmpl,
                                                          int max_total_arity,
                                                          EnumerationLimits limits) {
  NoWideBlockSymmetricReport report;
  report.max_total_arity = max_total_arity;
  report.unary = static_cast<std::int64_t>(enumerate_symmetric_polymorphisms(tmpl, 1, limits).size());
  std::vector<int> parts;
  std::function<void(int, int)> partitions = [&](int remaining, int largest) {
    if (remaining == 0) {
      auto found = enumerate_block_symmetric_polymorphisms(tmpl, parts, limits);
      report.wide.push_back({parts, static_cast<std::int64_t>(found.size())});
      return;
    }
    for (int size = std::min(remaining, largest); size >= 2; --size) {
      if (remaining - size == 1) continue;
      parts.push_back(size);
      partitions(remaining - size, size);
      parts.pop_back();
    }
  };
  for (int total = 2; total <= max_total_arity; ++total) partitions(total, total);
  return report;
}

}  // namespace pcsp
