#include "pcsp/polymorphism.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <set>

#include "pcsp/hom_search.hpp"

namespace pcsp {

namespace {

constexpr std::int64_t kSaturated = std::numeric_limits<std::int64_t>::max();

std::int64_t saturating_mul(std::int64_t a, std::int64_t b) {
  __int128 p = static_cast<__int128>(a) * b;
  return p > kSaturated ? kSaturated : static_cast<std::int64_t>(p);
}

void enumerate_compositions(std::int64_t total, int parts, Histogram& current, int pos,
                            const std::function<void(const Histogram&)>& visit) {
  if (pos == parts - 1) {
    current[pos] = total;
    visit(current);
    return;
  }
  for (std::int64_t x = 0; x <= total; ++x) {
    current[pos] = x;
    enumerate_compositions(total - x, parts, current, pos + 1, visit);
  }
}

void for_each_composition(std::int64_t total, int parts,
                          const std::function<void(const Histogram&)>& visit) {
  if (parts <= 0) {
    if (total == 0) visit(Histogram{});
    return;
  }
  Histogram current(parts);
  enumerate_compositions(total, parts, current, 0, visit);
}

std::int64_t table_size(int arity, int domain_size) {
  std::int64_t size = 1;
  for (int k = 0; k < arity; ++k) size = saturating_mul(size, domain_size);
  return size;
}

void check_output_map(const std::vector<int>& output_map, int domain_size, int codomain_size) {
  if (static_cast<int>(output_map.size()) != domain_size)
    throw ValidationError("output map must cover the whole domain");
  for (int v : output_map)
    if (v < 0 || v >= codomain_size) throw ValidationError("output map leaves the codomain");
}

void check_domains(int domain_size, int codomain_size, const PromiseTemplate& tmpl) {
  if (domain_size != tmpl.a().domain_size() || codomain_size != tmpl.b().domain_size())
    throw ValidationError("domain mismatch between function and template");
}

// Column histograms of a multiset of rows: out[c][a] = sum over rows t of
// multiplicity[t] * [rows[t][c] == a].
void column_histograms(const std::vector<Tuple>& rows, const Histogram& multiplicity,
                       int domain_size, std::vector<Histogram>& out) {
  const int k = rows.empty() ? 0 : static_cast<int>(rows[0].size());
  out.assign(k, Histogram(domain_size, 0));
  for (std::size_t t = 0; t < rows.size(); ++t) {
    if (multiplicity[t] == 0) continue;
    for (int c = 0; c < k; ++c) out[c][rows[t][c]] += multiplicity[t];
  }
}

}  // namespace

std::int64_t histogram_count(std::int64_t total, int parts) {
  if (parts <= 0) return total == 0 ? 1 : 0;
  // C(total + parts - 1, parts - 1)
  __int128 result = 1;
  const std::int64_t k = parts - 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    result = result * (total + i) / i;
    if (result > kSaturated) return kSaturated;
  }
  return static_cast<std::int64_t>(result);
}

std::vector<Histogram> enumerate_histograms(int total, int parts) {
  std::vector<Histogram> out;
  for_each_composition(total, parts, [&](const Histogram& h) { out.push_back(h); });
  return out;
}

std::int64_t histogram_rank(std::span<const std::int64_t> h) {
  std::int64_t remaining = std::accumulate(h.begin(), h.end(), std::int64_t{0});
  std::int64_t rank = 0;
  const int parts = static_cast<int>(h.size());
  for (int pos = 0; pos + 1 < parts; ++pos) {
    for (std::int64_t x = 0; x < h[pos]; ++x)
      rank += histogram_count(remaining - x, parts - pos - 1);
    remaining -= h[pos];
  }
  return rank;
}

void MinorMap::validate() const {
  for (int v : images)
    if (v < 0 || v >= target_arity) throw ValidationError("minor map image out of range");
}

MinorMap MinorMap::identity(int arity) {
  MinorMap pi{arity, std::vector<int>(arity)};
  std::iota(pi.images.begin(), pi.images.end(), 0);
  return pi;
}

MinorMap MinorMap::compose(const MinorMap& outer, const MinorMap& inner) {
  if (inner.target_arity != outer.source_arity())
    throw ValidationError("arity mismatch when composing minor maps");
  MinorMap out{outer.target_arity, std::vector<int>(inner.images.size())};
  for (std::size_t i = 0; i < inner.images.size(); ++i) out.images[i] = outer.images[inner.images[i]];
  return out;
}

bool MinorMap::is_bijection() const {
  if (source_arity() != target_arity) return false;
  std::vector<char> hit(target_arity, 0);
  for (int v : images) {
    if (hit[v]) return false;
    hit[v] = 1;
  }
  return true;
}

FunctionTable::FunctionTable(int arity, int domain_size, int codomain_size, std::vector<int> table)
    : arity_(arity), domain_size_(domain_size), codomain_size_(codomain_size), table_(std::move(table)) {
  if (arity < 0 || domain_size < 1 || codomain_size < 1)
    throw ValidationError("invalid function table shape");
  if (static_cast<std::int64_t>(table_.size()) != table_size(arity, domain_size))
    throw ValidationError("function table is not total");
  for (int v : table_)
    if (v < 0 || v >= codomain_size) throw ValidationError("function table value outside the codomain");
}

FunctionTable FunctionTable::from_function(int arity, int domain_size, int codomain_size,
                                           const std::function<int(std::span<const int>)>& fn) {
  std::int64_t size = table_size(arity, domain_size);
  if (size > (1 << 24)) throw SizeGuardError("function table too large to materialize");
  std::vector<int> table(size);
  std::vector<int> args(arity, 0);
  for (std::int64_t idx = 0; idx < size; ++idx) {
    std::int64_t rest = idx;
    for (int k = arity - 1; k >= 0; --k) {
      args[k] = static_cast<int>(rest % domain_size);
      rest /= domain_size;
    }
    table[idx] = fn(args);
  }
  return FunctionTable(arity, domain_size, codomain_size, std::move(table));
}

int FunctionTable::operator()(std::span<const int> args) const {
  if (static_cast<int>(args.size()) != arity_) throw ValidationError("arity mismatch");
  std::size_t idx = 0;
  for (int x : args) {
    if (x < 0 || x >= domain_size_) throw ValidationError("argument outside the domain");
    idx = idx * domain_size_ + x;
  }
  return table_[idx];
}

std::string family_name(Family family) {
  switch (family) {
    case Family::Majority: return "majority";
    case Family::Parity: return "parity";
    case Family::Min: return "min";
    case Family::Max: return "max";
    case Family::Plurality: return "plurality";
    case Family::AlternatingThreshold: return "AT";
  }
  return "?";
}

std::optional<Family> parse_family(std::string_view name) {
  for (Family f : {Family::Majority, Family::Parity, Family::Min, Family::Max, Family::Plurality,
                   Family::AlternatingThreshold})
    if (family_name(f) == name) return f;
  if (name == "at" || name == "alternating-threshold") return Family::AlternatingThreshold;
  return std::nullopt;
}

bool family_arity_available(Family family, std::int64_t arity) {
  if (arity < 1) return false;
  switch (family) {
    case Family::Majority:
    case Family::Parity:
    case Family::AlternatingThreshold: return arity % 2 == 1;
    case Family::Min:
    case Family::Max:
    case Family::Plurality: return true;
  }
  return false;
}

SymmetricFunction SymmetricFunction::from_table(int arity, int domain_size, int codomain_size,
                                                std::vector<int> values) {
  if (arity < 1 || domain_size < 1 || codomain_size < 1)
    throw ValidationError("invalid symmetric function shape");
  if (static_cast<std::int64_t>(values.size()) != histogram_count(arity, domain_size))
    throw ValidationError("symmetric table must list one value per histogram");
  for (int v : values)
    if (v < 0 || v >= codomain_size) throw ValidationError("table value outside the codomain");
  SymmetricFunction f;
  f.arity_ = arity;
  f.domain_size_ = domain_size;
  f.codomain_size_ = codomain_size;
  f.values_ = std::move(values);
  return f;
}

SymmetricFunction SymmetricFunction::from_family(Family family, std::int64_t arity,
                                                 int domain_size, std::vector<int> output_map,
                                                 int codomain_size) {
  if (arity < 1) throw ValidationError("arity must be positive");
  check_output_map(output_map, domain_size, codomain_size);
  switch (family) {
    case Family::Majority:
      if (arity % 2 == 0) throw ValidationError("majority needs an odd arity");
      [[fallthrough]];
    case Family::Parity:
      if (domain_size != 2) throw ValidationError(family_name(family) + " needs a Boolean domain");
      break;
    case Family::Min:
    case Family::Max:
    case Family::Plurality: break;
    case Family::AlternatingThreshold:
      throw ValidationError("alternating threshold is block-symmetric, not symmetric");
  }
  SymmetricFunction f;
  f.arity_ = arity;
  f.domain_size_ = domain_size;
  f.codomain_size_ = codomain_size;
  f.family_ = family;
  f.output_map_ = std::move(output_map);
  return f;
}

int SymmetricFunction::evaluate(std::span<const std::int64_t> histogram) const {
  if (static_cast<int>(histogram.size()) != domain_size_)
    throw ValidationError("histogram size does not match the domain");
  std::int64_t total = 0;
  for (auto c : histogram) {
    if (c < 0) throw ValidationError("negative histogram entry");
    total += c;
  }
  if (total != arity_) throw ValidationError("histogram does not sum to the arity");
  if (!family_) return values_[histogram_rank(histogram)];
  int value = 0;
  switch (*family_) {
    case Family::Majority: value = 2 * histogram[1] > arity_ ? 1 : 0; break;
    case Family::Parity: value = static_cast<int>(histogram[1] % 2); break;
    case Family::Min:
      while (histogram[value] == 0) ++value;
      break;
    case Family::Max:
      value = domain_size_ - 1;
      while (histogram[value] == 0) --value;
      break;
    case Family::Plurality:
      for (int a = 1; a < domain_size_; ++a)
        if (histogram[a] > histogram[value]) value = a;
      break;
    case Family::AlternatingThreshold: break;
  }
  return output_map_[value];
}

int SymmetricFunction::operator()(std::span<const int> args) const {
  if (static_cast<std::int64_t>(args.size()) != arity_) throw ValidationError("arity mismatch");
  Histogram h(domain_size_, 0);
  for (int x : args) {
    if (x < 0 || x >= domain_size_) throw ValidationError("argument outside the domain");
    ++h[x];
  }
  return evaluate(h);
}

FunctionTable SymmetricFunction::to_table() const {
  if (arity_ > 24) throw SizeGuardError("arity too large to materialize a table");
  return FunctionTable::from_function(static_cast<int>(arity_), domain_size_, codomain_size_,
                                      [this](std::span<const int> args) { return (*this)(args); });
}

void validate_partition(const std::vector<std::vector<int>>& blocks, int arity) {
  std::vector<char> seen(arity, 0);
  int count = 0;
  for (const auto& block : blocks) {
    if (block.empty()) throw ValidationError("not a partition: empty block");
    for (int p : block) {
      if (p < 0 || p >= arity || seen[p]) throw ValidationError("not a partition of the coordinates");
      seen[p] = 1;
      ++count;
    }
  }
  if (count != arity) throw ValidationError("not a partition: coordinates missing");
}

BlockSymmetricFunction BlockSymmetricFunction::from_table(std::vector<std::vector<int>> blocks,
                                                          int domain_size, int codomain_size,
                                                          std::vector<int> values) {
  int arity = 0;
  for (const auto& b : blocks) arity += static_cast<int>(b.size());
  validate_partition(blocks, arity);
  std::int64_t expected = 1;
  BlockSymmetricFunction f;
  for (const auto& b : blocks) {
    f.block_sizes_.push_back(static_cast<std::int64_t>(b.size()));
    expected = saturating_mul(expected, histogram_count(static_cast<std::int64_t>(b.size()), domain_size));
  }
  if (static_cast<std::int64_t>(values.size()) != expected)
    throw ValidationError("block-symmetric table must list one value per histogram tuple");
  for (int v : values)
    if (v < 0 || v >= codomain_size) throw ValidationError("table value outside the codomain");
  f.arity_ = arity;
  f.domain_size_ = domain_size;
  f.codomain_size_ = codomain_size;
  f.blocks_ = std::move(blocks);
  f.values_ = std::move(values);
  return f;
}

BlockSymmetricFunction BlockSymmetricFunction::alternating_threshold(std::int64_t arity,
                                                                     std::vector<int> output_map,
                                                                     int codomain_size) {
  if (arity < 1 || arity % 2 == 0) throw ValidationError("alternating threshold needs an odd arity");
  check_output_map(output_map, 2, codomain_size);
  BlockSymmetricFunction f;
  f.arity_ = arity;
  f.domain_size_ = 2;
  f.codomain_size_ = codomain_size;
  f.family_ = Family::AlternatingThreshold;
  f.output_map_ = std::move(output_map);
  f.block_sizes_ = {(arity + 1) / 2, arity / 2};
  if (arity <= (1 << 22)) {
    f.blocks_.resize(2);
    for (std::int64_t p = 0; p < arity; ++p) f.blocks_[p % 2].push_back(static_cast<int>(p));
    if (f.blocks_[1].empty()) f.blocks_.pop_back();
  }
  if (arity == 1) f.block_sizes_.pop_back();
  return f;
}

int BlockSymmetricFunction::evaluate(std::span<const Histogram> per_block) const {
  if (per_block.size() != block_sizes_.size())
    throw ValidationError("expected one histogram per block");
  for (std::size_t b = 0; b < per_block.size(); ++b) {
    const Histogram& h = per_block[b];
    if (static_cast<int>(h.size()) != domain_size_)
      throw ValidationError("histogram size does not match the domain");
    std::int64_t total = 0;
    for (auto c : h) {
      if (c < 0) throw ValidationError("negative histogram entry");
      total += c;
    }
    if (total != block_sizes_[b]) throw ValidationError("histogram does not sum to its block size");
  }
  if (family_) {
    std::int64_t odd = per_block[0][1];
    std::int64_t even = per_block.size() > 1 ? per_block[1][1] : 0;
    return output_map_[odd - even >= 1 ? 1 : 0];
  }
  std::int64_t rank = 0;
  for (std::size_t b = 0; b < per_block.size(); ++b)
    rank = rank * histogram_count(block_sizes_[b], domain_size_) + histogram_rank(per_block[b]);
  return values_[rank];
}

int BlockSymmetricFunction::operator()(std::span<const int> args) const {
  if (static_cast<std::int64_t>(args.size()) != arity_) throw ValidationError("arity mismatch");
  if (blocks_.empty() && arity_ > 0) throw SizeGuardError("block positions not materialized");
  std::vector<Histogram> per_block(blocks_.size(), Histogram(domain_size_, 0));
  for (std::size_t b = 0; b < blocks_.size(); ++b)
    for (int p : blocks_[b]) {
      int x = args[p];
      if (x < 0 || x >= domain_size_) throw ValidationError("argument outside the domain");
      ++per_block[b][x];
    }
  return evaluate(per_block);
}

FunctionTable BlockSymmetricFunction::to_table() const {
  if (arity_ > 24) throw SizeGuardError("arity too large to materialize a table");
  return FunctionTable::from_function(static_cast<int>(arity_), domain_size_, codomain_size_,
                                      [this](std::span<const int> args) { return (*this)(args); });
}

std::vector<int> label_map(const PromiseTemplate& tmpl) {
  std::vector<int> out;
  for (const auto& label : tmpl.a().domain()) {
    auto v = tmpl.b().find_value(label);
    if (!v) throw ValidationError("value '" + label + "' of A does not occur in B");
    out.push_back(*v);
  }
  return out;
}

SymmetricFunction family_function(const PromiseTemplate& tmpl, Family family, std::int64_t arity) {
  return SymmetricFunction::from_family(family, arity, tmpl.a().domain_size(), label_map(tmpl),
                                        tmpl.b().domain_size());
}

BlockSymmetricFunction alternating_threshold(const PromiseTemplate& tmpl, std::int64_t arity) {
  if (tmpl.a().domain_size() != 2) throw ValidationError("alternating threshold needs a Boolean A");
  return BlockSymmetricFunction::alternating_threshold(arity, label_map(tmpl), tmpl.b().domain_size());
}

bool is_polymorphism(const FunctionTable& f, const PromiseTemplate& tmpl, PolymorphismLimits limits) {
  check_domains(f.domain_size(), f.codomain_size(), tmpl);
  const auto& a = tmpl.a();
  const auto& b = tmpl.b();
  const int arity = f.arity();
  const int d = f.domain_size();
  for (std::size_t r = 0; r < a.signature().size(); ++r) {
    const auto& rows = a.relation(static_cast<int>(r));
    if (rows.empty()) continue;
    const int k = a.signature()[r].arity;
    std::int64_t count = 1;
    for (int i = 0; i < arity; ++i) count = saturating_mul(count, static_cast<std::int64_t>(rows.size()));
    if (count > limits.max_checks) throw SizeGuardError("too many row matrices to check");
    // Depth-first over row choices, accumulating the table index of each column.
    std::vector<std::vector<std::size_t>> index(arity + 1, std::vector<std::size_t>(k, 0));
    std::vector<std::size_t> choice(arity, 0);
    Tuple image(k);
    int depth = 0;
    while (depth >= 0) {
      if (depth == arity) {
        for (int c = 0; c < k; ++c) image[c] = f.table()[index[arity][c]];
        if (!b.contains(static_cast<int>(r), image)) return false;
        --depth;
        if (depth >= 0) ++choice[depth];
        continue;
      }
      if (choice[depth] == rows.size()) {
        choice[depth] = 0;
        --depth;
        if (depth >= 0) ++choice[depth];
        continue;
      }
      const Tuple& row = rows[choice[depth]];
      for (int c = 0; c < k; ++c) index[depth + 1][c] = index[depth][c] * d + row[c];
      ++depth;
    }
  }
  return true;
}

bool is_polymorphism(const SymmetricFunction& f, const PromiseTemplate& tmpl, PolymorphismLimits limits) {
  check_domains(f.domain_size(), f.codomain_size(), tmpl);
  const auto& a = tmpl.a();
  const auto& b = tmpl.b();
  for (std::size_t r = 0; r < a.signature().size(); ++r) {
    const auto& rows = a.relation(static_cast<int>(r));
    if (rows.empty()) continue;
    const int k = a.signature()[r].arity;
    if (histogram_count(f.arity(), static_cast<int>(rows.size())) > limits.max_checks)
      throw SizeGuardError("too many row multisets to check");
    bool ok = true;
    std::vector<Histogram> columns;
    Tuple image(k);
    for_each_composition(f.arity(), static_cast<int>(rows.size()), [&](const Histogram& m) {
      if (!ok) return;
      column_histograms(rows, m, f.domain_size(), columns);
      for (int c = 0; c < k; ++c) image[c] = f.evaluate(columns[c]);
      if (!b.contains(static_cast<int>(r), image)) ok = false;
    });
    if (!ok) return false;
  }
  return true;
}

bool is_polymorphism(const BlockSymmetricFunction& f, const PromiseTemplate& tmpl,
                     PolymorphismLimits limits) {
  check_domains(f.domain_size(), f.codomain_size(), tmpl);
  const auto& a = tmpl.a();
  const auto& b = tmpl.b();
  const auto& sizes = f.block_sizes();
  const int blocks = static_cast<int>(sizes.size());
  for (std::size_t r = 0; r < a.signature().size(); ++r) {
    const auto& rows = a.relation(static_cast<int>(r));
    if (rows.empty()) continue;
    const int k = a.signature()[r].arity;
    const int s = static_cast<int>(rows.size());
    std::int64_t count = 1;
    for (auto size : sizes) count = saturating_mul(count, histogram_count(size, s));
    if (count > limits.max_checks) throw SizeGuardError("too many row multisets to check");

    // per_block_columns[b][c] is the histogram of column c inside block b.
    std::vector<std::vector<Histogram>> per_block_columns(blocks);
    std::vector<Histogram> column_args(blocks);
    Tuple image(k);
    bool ok = true;
    std::function<void(int)> recurse = [&](int blk) {
      if (!ok) return;
      if (blk == blocks) {
        for (int c = 0; c < k; ++c) {
          for (int bb = 0; bb < blocks; ++bb) column_args[bb] = per_block_columns[bb][c];
          image[c] = f.evaluate(column_args);
        }
        if (!b.contains(static_cast<int>(r), image)) ok = false;
        return;
      }
      for_each_composition(sizes[blk], s, [&](const Histogram& m) {
        if (!ok) return;
        column_histograms(rows, m, f.domain_size(), per_block_columns[blk]);
        recurse(blk + 1);
      });
    };
    recurse(0);
    if (!ok) return false;
  }
  return true;
}

namespace {

void check_minor_map(std::int64_t arity, const MinorMap& pi) {
  if (pi.source_arity() != arity) throw ValidationError("arity mismatch between function and minor map");
  pi.validate();
}

}  // namespace

FunctionTable take_minor(const FunctionTable& f, const MinorMap& pi) {
  check_minor_map(f.arity(), pi);
  std::vector<int> args(f.arity());
  return FunctionTable::from_function(pi.target_arity, f.domain_size(), f.codomain_size(),
                                      [&](std::span<const int> x) {
                                        for (int i = 0; i < f.arity(); ++i) args[i] = x[pi.images[i]];
                                        return f(args);
                                      });
}

FunctionTable take_minor(const SymmetricFunction& f, const MinorMap& pi) {
  check_minor_map(f.arity(), pi);
  std::vector<std::int64_t> multiplicity(pi.target_arity, 0);
  for (int v : pi.images) ++multiplicity[v];
  return repetition_minor(f, multiplicity);
}

FunctionTable take_minor(const BlockSymmetricFunction& f, const MinorMap& pi) {
  check_minor_map(f.arity(), pi);
  const auto& blocks = f.blocks();
  std::vector<std::vector<std::int64_t>> multiplicity(blocks.size(),
                                                      std::vector<std::int64_t>(pi.target_arity, 0));
  for (std::size_t b = 0; b < blocks.size(); ++b)
    for (int p : blocks[b]) ++multiplicity[b][pi.images[p]];
  std::vector<Histogram> per_block(blocks.size());
  return FunctionTable::from_function(pi.target_arity, f.domain_size(), f.codomain_size(),
                                      [&](std::span<const int> x) {
                                        for (std::size_t b = 0; b < blocks.size(); ++b) {
                                          per_block[b].assign(f.domain_size(), 0);
                                          for (int i = 0; i < pi.target_arity; ++i)
                                            per_block[b][x[i]] += multiplicity[b][i];
                                        }
                                        return f.evaluate(per_block);
                                      });
}

FunctionTable repetition_minor(const SymmetricFunction& f, std::span<const std::int64_t> counts) {
  std::int64_t total = 0;
  for (auto c : counts) {
    if (c < 0) throw ValidationError("negative repetition count");
    total += c;
  }
  if (total != f.arity()) throw ValidationError("repetition counts must sum to the arity");
  std::vector<std::int64_t> mult(counts.begin(), counts.end());
  Histogram h;
  return FunctionTable::from_function(static_cast<int>(mult.size()), f.domain_size(),
                                      f.codomain_size(), [&](std::span<const int> x) {
                                        h.assign(f.domain_size(), 0);
                                        for (std::size_t i = 0; i < mult.size(); ++i) h[x[i]] += mult[i];
                                        return f.evaluate(h);
                                      });
}

namespace {

// Solves for tables indexed by (mixed-radix) histogram-tuple ranks; one
// constraint per relation and per choice of a row multiset in each block.
std::vector<std::vector<int>> solve_block_tables(const PromiseTemplate& tmpl,
                                                 const std::vector<int>& block_sizes,
                                                 const EnumerationLimits& limits) {
  const auto& a = tmpl.a();
  const auto& b = tmpl.b();
  const int d = a.domain_size();
  const int blocks = static_cast<int>(block_sizes.size());
  std::vector<std::int64_t> radix(blocks);
  std::int64_t num_vars = 1;
  for (int blk = 0; blk < blocks; ++blk) {
    if (block_sizes[blk] < 1) throw ValidationError("block sizes must be positive");
    radix[blk] = histogram_count(block_sizes[blk], d);
    num_vars = saturating_mul(num_vars, radix[blk]);
  }
  if (num_vars > limits.max_constraints) throw SizeGuardError("too many histogram tuples");

  HomSearch search(static_cast<int>(num_vars), b.domain_size());
  std::int64_t constraints = 0;
  for (std::size_t r = 0; r < a.signature().size(); ++r) {
    const auto& rows = a.relation(static_cast<int>(r));
    if (rows.empty()) continue;
    const int k = a.signature()[r].arity;
    const int s = static_cast<int>(rows.size());
    int rel = search.add_relation(b.relation(static_cast<int>(r)));
    std::set<Tuple> scopes;
    std::vector<std::vector<Histogram>> columns(blocks);
    std::function<void(int)> recurse = [&](int blk) {
      if (blk == blocks) {
        Tuple scope(k);
        for (int c = 0; c < k; ++c) {
          std::int64_t rank = 0;
          for (int bb = 0; bb < blocks; ++bb) rank = rank * radix[bb] + histogram_rank(columns[bb][c]);
          scope[c] = static_cast<int>(rank);
        }
        if (scopes.insert(scope).second && ++constraints > limits.max_constraints)
          throw SizeGuardError("too many polymorphism constraints");
        return;
      }
      for_each_composition(block_sizes[blk], s, [&](const Histogram& m) {
        column_histograms(rows, m, d, columns[blk]);
        recurse(blk + 1);
      });
    };
    recurse(0);
    for (const Tuple& scope : scopes) search.add_constraint(rel, scope);
  }

  std::vector<std::vector<int>> tables;
  search.for_each_solution([&](const std::vector<int>& solution) {
    if (static_cast<std::int64_t>(tables.size()) >= limits.max_results)
      throw SizeGuardError("too many polymorphisms to list");
    tables.push_back(solution);
    return true;
  });
  return tables;
}

}  // namespace

std::vector<SymmetricFunction> enumerate_symmetric_polymorphisms(const PromiseTemplate& tmpl, int arity,
                                                                 EnumerationLimits limits) {
  if (arity < 1) throw ValidationError("arity must be positive");
  std::vector<SymmetricFunction> out;
  for (auto& table : solve_block_tables(tmpl, {arity}, limits))
    out.push_back(SymmetricFunction::from_table(arity, tmpl.a().domain_size(),
                                                tmpl.b().domain_size(), std::move(table)));
  return out;
}

std::vector<BlockSymmetricFunction> enumerate_block_symmetric_polymorphisms(
    const PromiseTemplate& tmpl, const std::vector<int>& block_sizes, EnumerationLimits limits) {
  if (block_sizes.empty()) throw ValidationError("at least one block is required");
  std::vector<std::vector<int>> blocks;
  int position = 0;
  for (int size : block_sizes) {
    blocks.emplace_back();
    for (int k = 0; k < size; ++k) blocks.back().push_back(position++);
  }
  std::vector<BlockSymmetricFunction> out;
  for (auto& table : solve_block_tables(tmpl, block_sizes, limits))
    out.push_back(BlockSymmetricFunction::from_table(blocks, tmpl.a().domain_size(),
                                                     tmpl.b().domain_size(), std::move(table)));
  return out;
}

bool check_block_symmetry(const FunctionTable& f, const std::vector<std::vector<int>>& blocks) {
  validate_partition(blocks, f.arity());
  for (const auto& block : blocks) {
    std::vector<int> sorted = block;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t k = 0; k + 1 < sorted.size(); ++k) {
      MinorMap swap = MinorMap::identity(f.arity());
      std::swap(swap.images[sorted[k]], swap.images[sorted[k + 1]]);
      if (!(take_minor(f, swap) == f)) return false;
    }
  }
  return true;
}

}  // namespace pcsp
