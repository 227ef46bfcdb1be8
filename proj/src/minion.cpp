#include "pcsp/minion.hpp"

#include <cstdlib>
#include <map>
#include <tuple>

namespace pcsp {

namespace {

template <typename T>
std::string join(const std::vector<T>& values) {
  std::string out = "(";
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ',';
    out += to_string(values[i]);
  }
  return out + ")";
}

bool has_weights(MinionKind kind) { return kind != MinionKind::Zaff; }
bool has_integers(MinionKind kind) { return kind != MinionKind::Qconv; }

// Integer vectors in [-bound, bound]^n with sum 1 and sum |r| <= bound,
// restricted to `allowed` positions, ascending lexicographic.
void enumerate_integer_parts(int n, const std::vector<bool>& allowed,
                             std::vector<BigInt>& current, int pos, int budget, int sum,
                             std::vector<std::vector<BigInt>>& out) {
  if (pos == n) {
    if (sum == 1) out.push_back(current);
    return;
  }
  // Remaining positions can move the sum by at most `budget`.
  if (std::abs(sum - 1) > budget) return;
  int lo = allowed[pos] ? -budget : 0;
  int hi = allowed[pos] ? budget : 0;
  for (int x = lo; x <= hi; ++x) {
    current[pos] = x;
    enumerate_integer_parts(n, allowed, current, pos + 1, budget - std::abs(x), sum + x, out);
  }
  current[pos] = 0;
}

}  // namespace

std::string minion_kind_name(MinionKind kind) {
  switch (kind) {
    case MinionKind::Qconv: return "Qconv";
    case MinionKind::MBlpAff: return "MBlpAff";
    case MinionKind::Zaff: return "Zaff";
  }
  return "?";
}

MinionObject MinionObject::qconv(std::vector<BigRational> w) {
  MinionObject obj{MinionKind::Qconv, std::move(w), {}};
  if (!obj.is_member()) throw ValidationError("not a probability distribution");
  return obj;
}

MinionObject MinionObject::mblpaff(std::vector<BigRational> w, std::vector<BigInt> r) {
  if (w.size() != r.size()) throw ValidationError("w and r must have equal arity");
  MinionObject obj{MinionKind::MBlpAff, std::move(w), std::move(r)};
  if (!obj.is_member()) throw ValidationError("not a member of the BLP+Affine minion");
  return obj;
}

MinionObject MinionObject::zaff(std::vector<BigInt> r) {
  MinionObject obj{MinionKind::Zaff, {}, std::move(r)};
  if (!obj.is_member()) throw ValidationError("integer weights must sum to 1");
  return obj;
}

int MinionObject::arity() const {
  return static_cast<int>(has_weights(kind) ? w.size() : r.size());
}

bool MinionObject::is_member() const {
  if (arity() < 1) return false;
  if (has_weights(kind)) {
    BigRational total = 0;
    for (const auto& x : w) {
      if (x < 0) return false;
      total += x;
    }
    if (total != 1) return false;
  } else if (!w.empty()) {
    return false;
  }
  if (has_integers(kind)) {
    if (static_cast<int>(r.size()) != arity()) return false;
    BigInt total = 0;
    for (std::size_t i = 0; i < r.size(); ++i) {
      total += r[i];
      if (kind == MinionKind::MBlpAff && w[i] == 0 && r[i] != 0) return false;
    }
    if (total != 1) return false;
  } else if (!r.empty()) {
    return false;
  }
  return true;
}

std::string MinionObject::label() const {
  switch (kind) {
    case MinionKind::Qconv: return "w=" + join(w);
    case MinionKind::MBlpAff: return "w=" + join(w) + ";r=" + join(r);
    case MinionKind::Zaff: return "r=" + join(r);
  }
  return {};
}

bool MinionObject::operator<(const MinionObject& other) const {
  return std::tie(kind, w, r) < std::tie(other.kind, other.w, other.r);
}

MinionObject minor(const MinionObject& obj, const MinorMap& pi) {
  if (pi.source_arity() != obj.arity()) throw ValidationError("arity mismatch between object and minor map");
  pi.validate();
  MinionObject out{obj.kind, {}, {}};
  if (has_weights(obj.kind)) {
    out.w.assign(pi.target_arity, BigRational(0));
    for (int i = 0; i < obj.arity(); ++i) out.w[pi.images[i]] += obj.w[i];
  }
  if (has_integers(obj.kind)) {
    out.r.assign(pi.target_arity, BigInt(0));
    for (int i = 0; i < obj.arity(); ++i) out.r[pi.images[i]] += obj.r[i];
  }
  return out;
}

MinionObject two_block_witness(int L) {
  if (L < 1) throw ValidationError("L must be positive");
  const int arity = 2 * L + 1;
  std::vector<BigRational> w(arity, BigRational(1, arity));
  std::vector<BigInt> r(arity);
  for (int i = 0; i < arity; ++i) r[i] = i % 2 == 0 ? 1 : -1;
  return MinionObject::mblpaff(std::move(w), std::move(r));
}

bool TruncatedMinion::contains(const MinionObject& obj) const {
  if (obj.kind != kind || !obj.is_member() || obj.arity() > max_arity) return false;
  for (const auto& x : obj.w)
    if (denominator_of(x * ell) != 1) return false;
  if (has_integers(kind)) {
    BigInt total = 0;
    for (const auto& x : obj.r) total += abs(x);
    if (total > bound) return false;
  }
  return true;
}

std::vector<MinionObject> TruncatedMinion::objects(int arity) const {
  if (ell < 1 || bound < 0) throw ValidationError("truncation bounds must be positive");
  if (arity < 1) return {};
  if (arity > max_arity) throw SizeGuardError("arity exceeds the truncation's arity bound");
  std::vector<MinionObject> out;
  auto push = [&](MinionObject obj) {
    if (static_cast<std::int64_t>(out.size()) >= max_objects)
      throw SizeGuardError("truncated minion has too many objects");
    out.push_back(std::move(obj));
  };

  if (kind == MinionKind::Zaff) {
    std::vector<std::vector<BigInt>> parts;
    std::vector<BigInt> current(arity, BigInt(0));
    enumerate_integer_parts(arity, std::vector<bool>(arity, true), current, 0, bound, 0, parts);
    for (auto& r : parts) push(MinionObject{kind, {}, std::move(r)});
    return out;
  }

  if (histogram_count(ell, arity) > max_objects)
    throw SizeGuardError("truncated minion has too many objects");
  for (const Histogram& h : enumerate_histograms(ell, arity)) {
    std::vector<BigRational> w(arity);
    for (int i = 0; i < arity; ++i) w[i] = BigRational(h[i], ell);
    if (kind == MinionKind::Qconv) {
      push(MinionObject{kind, std::move(w), {}});
      continue;
    }
    std::vector<bool> allowed(arity);
    for (int i = 0; i < arity; ++i) allowed[i] = h[i] > 0;
    std::vector<std::vector<BigInt>> parts;
    std::vector<BigInt> current(arity, BigInt(0));
    enumerate_integer_parts(arity, allowed, current, 0, bound, 0, parts);
    for (auto& r : parts) push(MinionObject{kind, w, std::move(r)});
  }
  return out;
}

SymmetricMinionHom::SymmetricMinionHom(SymmetricFunction f, int ell, int bound)
    : f_(std::move(f)), ell_(ell), bound_(bound) {
  if (ell < 1 || bound < 1) throw ValidationError("ell and M must be positive");
  if (f_.arity() < static_cast<std::int64_t>(bound) * ell * ell)
    throw ValidationError("arity too small: need at least M * ell^2");
  u_ = f_.arity() / ell;
  v_ = f_.arity() % ell;
}

std::vector<std::int64_t> SymmetricMinionHom::counts(const MinionObject& obj) const {
  TruncatedMinion domain{MinionKind::MBlpAff, ell_, bound_, obj.arity()};
  if (!domain.contains(obj)) throw ValidationError("object outside the truncation");
  std::vector<std::int64_t> out(obj.arity());
  std::int64_t total = 0;
  for (int i = 0; i < obj.arity(); ++i) {
    BigRational value = BigRational(u_ * ell_) * obj.w[i] + BigRational(v_) * BigRational(obj.r[i]);
    if (denominator_of(value) != 1 || value < 0)
      throw Error("repetition count is not a nonnegative integer");
    out[i] = numerator_of(value).convert_to<std::int64_t>();
    total += out[i];
  }
  if (total != f_.arity()) throw Error("repetition counts do not sum to the arity");
  return out;
}

FunctionTable SymmetricMinionHom::operator()(const MinionObject& obj) const {
  return repetition_minor(f_, counts(obj));
}

SymmetricMinionHom hom_from_symmetric_polymorphism(const SymmetricFunction& f, int ell, int bound) {
  return SymmetricMinionHom(f, ell, bound);
}

RelationalStructure build_free_structure(const TruncatedMinion& minion, const RelationalStructure& a) {
  std::vector<MinionObject> domain = minion.objects(a.domain_size());
  std::map<MinionObject, int> index;
  std::vector<std::string> labels;
  for (const auto& obj : domain) {
    index.emplace(obj, static_cast<int>(labels.size()));
    labels.push_back(obj.label());
  }
  std::vector<std::vector<Tuple>> relations(a.signature().size());
  for (std::size_t s = 0; s < a.signature().size(); ++s) {
    const auto& rows = a.relation(static_cast<int>(s));
    if (rows.empty()) continue;
    const int k = a.signature()[s].arity;
    std::vector<MinorMap> projections(k);
    for (int c = 0; c < k; ++c) {
      projections[c].target_arity = a.domain_size();
      for (const Tuple& row : rows) projections[c].images.push_back(row[c]);
    }
    for (const MinionObject& p : minion.objects(static_cast<int>(rows.size()))) {
      Tuple tuple(k);
      for (int c = 0; c < k; ++c) {
        auto it = index.find(minor(p, projections[c]));
        if (it == index.end()) throw Error("truncation is not closed under minors");
        tuple[c] = it->second;
      }
      relations[s].push_back(std::move(tuple));
    }
  }
  return RelationalStructure(std::move(labels), a.signature(), std::move(relations));
}

}  // namespace pcsp
