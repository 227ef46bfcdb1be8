#include "pcsp/rounding.hpp"

#include <limits>

#include "pcsp/layout.hpp"

namespace pcsp {

namespace {

std::int64_t to_int64(const BigInt& z, const char* what) {
  if (z > std::numeric_limits<std::int64_t>::max() || z < std::numeric_limits<std::int64_t>::min())
    throw ArityUnavailable(std::string(what) + " does not fit in 64 bits");
  return z.convert_to<std::int64_t>();
}

std::int64_t count_value(std::int64_t u, std::int64_t ell, std::int64_t v, const BigRational& w,
                         const BigInt& r) {
  BigRational value = BigRational(BigInt(u) * ell) * w + BigRational(BigInt(v) * r);
  if (denominator_of(value) != 1) throw RoundingFailure("count is not an integer");
  if (value < 0) throw RoundingFailure("count is negative");
  return numerator_of(value).convert_to<std::int64_t>();
}

void check_shapes(const BlpPoint& blp, const AffinePoint& aff, const RelaxationLayout& layout) {
  // flatten() validates both index structures against the layout.
  blp.flatten(layout);
  aff.flatten(layout);
}

void verify_counts(const RoundedCounts& counts, const RelaxationLayout& layout) {
  for (const auto& row : counts.W) {
    std::int64_t sum = 0;
    for (auto x : row) sum += x;
    if (sum != counts.total) throw RoundingFailure("variable counts do not sum to L");
  }
  for (int j = 0; j < layout.num_constraints(); ++j) {
    std::int64_t sum = 0;
    for (auto x : counts.P[j]) sum += x;
    if (sum != counts.total) throw RoundingFailure("constraint counts do not sum to L");
    const auto& tuples = layout.tuples(j);
    const Tuple& scope = layout.scopes[j];
    for (std::size_t k = 0; k < scope.size(); ++k) {
      std::vector<std::int64_t> marginal(layout.num_values, 0);
      for (std::size_t t = 0; t < tuples.size(); ++t) marginal[tuples[t][k]] += counts.P[j][t];
      if (marginal != counts.W[scope[k]]) throw RoundingFailure("marginal counts disagree");
    }
  }
}

RoundedCounts counts_for_arity(std::int64_t L, std::int64_t ell, const BlpPoint& blp,
                               const AffinePoint& aff, const RelaxationLayout& layout) {
  check_shapes(blp, aff, layout);
  const std::int64_t u = L / ell;
  const std::int64_t v = L % ell;
  RoundedCounts out;
  out.total = L;
  out.W.resize(blp.w.size());
  for (std::size_t i = 0; i < blp.w.size(); ++i)
    for (std::size_t a = 0; a < blp.w[i].size(); ++a)
      out.W[i].push_back(count_value(u, ell, v, blp.w[i][a], aff.r[i][a]));
  out.P.resize(blp.p.size());
  for (std::size_t j = 0; j < blp.p.size(); ++j)
    for (std::size_t t = 0; t < blp.p[j].size(); ++t)
      out.P[j].push_back(count_value(u, ell, v, blp.p[j][t], aff.q[j][t]));
  verify_counts(out, layout);
  return out;
}

void check_function_domains(int domain_size, int codomain_size, const PromiseTemplate& tmpl) {
  if (domain_size != tmpl.a().domain_size() || codomain_size != tmpl.b().domain_size())
    throw ValidationError("domain mismatch between function and template");
}

Assignment finish(const PromiseTemplate& tmpl, const Instance& instance, Assignment x) {
  if (!check_satisfies(instance, tmpl.b(), x))
    throw RoundingFailure("rounded assignment does not satisfy the instance in B");
  return x;
}

}  // namespace

std::int64_t witness_denominator(const BlpPoint& blp) {
  BigInt ell = 1;
  for (const auto* group : {&blp.w, &blp.p})
    for (const auto& row : *group)
      for (const auto& x : row) ell = lcm(ell, denominator_of(x));
  return to_int64(ell, "ell");
}

std::int64_t witness_magnitude(const AffinePoint& aff) {
  BigInt m = 1;
  for (const auto* group : {&aff.r, &aff.q})
    for (const auto& row : *group)
      for (const auto& x : row)
        if (abs(x) > m) m = abs(x);
  return to_int64(m, "M");
}

namespace {

std::int64_t min_arity_of(std::int64_t ell, std::int64_t m) {
  __int128 bound = static_cast<__int128>(m) * ell * ell;
  if (bound > std::numeric_limits<std::int64_t>::max()) throw ArityUnavailable("M * ell^2 overflows");
  return static_cast<std::int64_t>(bound);
}

}  // namespace

RoundingParams rounding_params_for_arity(const BlpPoint& blp, const AffinePoint& aff, std::int64_t L) {
  RoundingParams p;
  p.ell = witness_denominator(blp);
  p.M = witness_magnitude(aff);
  if (L < min_arity_of(p.ell, p.M))
    throw ArityUnavailable("arity " + std::to_string(L) + " is below M*ell^2 = " +
                           std::to_string(min_arity_of(p.ell, p.M)));
  p.L = L;
  p.u = L / p.ell;
  p.v = L % p.ell;
  return p;
}

RoundingParams rounding_params(const BlpPoint& blp, const AffinePoint& aff,
                               const std::function<bool(std::int64_t)>& available,
                               std::int64_t max_arity) {
  const std::int64_t ell = witness_denominator(blp);
  const std::int64_t m = witness_magnitude(aff);
  const std::int64_t lo = min_arity_of(ell, m);
  for (std::int64_t L = lo; L <= max_arity; ++L)
    if (available(L)) return rounding_params_for_arity(blp, aff, L);
  throw ArityUnavailable("no available arity in [" + std::to_string(lo) + ", " +
                         std::to_string(max_arity) + "]");
}

RoundedCounts compute_counts(const RoundingParams& params, const BlpPoint& blp,
                             const AffinePoint& aff, const RelaxationLayout& layout) {
  if (params.L != params.u * params.ell + params.v || params.v < 0 || params.v >= params.ell)
    throw ValidationError("inconsistent rounding parameters");
  if (params.ell != witness_denominator(blp) || params.M != witness_magnitude(aff))
    throw ValidationError("rounding parameters do not match the witnesses");
  if (params.L < params.min_arity()) throw ArityUnavailable("arity below M * ell^2");
  return counts_for_arity(params.L, params.ell, blp, aff, layout);
}

RoundedCounts compute_counts(const RoundingParams& params, const BlpPoint& blp,
                             const AffinePoint& aff, const Instance& instance,
                             const RelationalStructure& a) {
  return compute_counts(params, blp, aff, build_layout(instance, a));
}

std::vector<RoundedCounts> compute_block_counts(const BlpPoint& blp, const AffinePoint& aff,
                                                const RelaxationLayout& layout,
                                                const std::vector<std::int64_t>& block_sizes) {
  const std::int64_t ell = witness_denominator(blp);
  const std::int64_t lo = min_arity_of(ell, witness_magnitude(aff));
  std::vector<RoundedCounts> out;
  for (auto size : block_sizes) {
    if (size < lo)
      throw ArityUnavailable("block of size " + std::to_string(size) + " is below M*ell^2 = " +
                             std::to_string(lo));
    out.push_back(counts_for_arity(size, ell, blp, aff, layout));
  }
  return out;
}

Assignment round(const PromiseTemplate& tmpl, const Instance& instance, const BlpPoint& blp,
                 const AffinePoint& aff, const SymmetricFunction& f, RoundOptions options) {
  check_function_domains(f.domain_size(), f.codomain_size(), tmpl);
  RelaxationLayout layout = build_layout(instance, tmpl.a());
  RoundingParams params = rounding_params_for_arity(blp, aff, f.arity());
  if (options.verify_polymorphism && !is_polymorphism(f, tmpl, options.limits))
    throw NotPolymorphism("the supplied function is not a polymorphism of the template");
  RoundedCounts counts = compute_counts(params, blp, aff, layout);
  Assignment x;
  for (const auto& w : counts.W) x.values.push_back(f.evaluate(w));
  return finish(tmpl, instance, std::move(x));
}

Assignment round(const PromiseTemplate& tmpl, const Instance& instance, const BlpPoint& blp,
                 const AffinePoint& aff, const BlockSymmetricFunction& f, RoundOptions options) {
  check_function_domains(f.domain_size(), f.codomain_size(), tmpl);
  RelaxationLayout layout = build_layout(instance, tmpl.a());
  std::vector<RoundedCounts> blocks = compute_block_counts(blp, aff, layout, f.block_sizes());
  if (options.verify_polymorphism && !is_polymorphism(f, tmpl, options.limits))
    throw NotPolymorphism("the supplied function is not a polymorphism of the template");
  Assignment x;
  std::vector<Histogram> per_block(blocks.size());
  for (int i = 0; i < layout.num_variables; ++i) {
    for (std::size_t b = 0; b < blocks.size(); ++b) per_block[b] = blocks[b].W[i];
    x.values.push_back(f.evaluate(per_block));
  }
  return finish(tmpl, instance, std::move(x));
}

}  // namespace pcsp
