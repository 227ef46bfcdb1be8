#include "pcsp/text_format.hpp"

#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <type_traits>

#include "pcsp/layout.hpp"
#include "pcsp/rounding.hpp"

namespace pcsp {

ParseError::ParseError(int line, const std::string& message)
    : ValidationError("line " + std::to_string(line) + ": " + message), line_(line) {}

namespace {

struct Entry {
  int line;
  std::string key;
  std::string value;
};

std::string trim(std::string_view s) {
  const char* ws = " \t\r\n";
  auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(ws);
  return std::string(s.substr(b, e - b + 1));
}

std::vector<Entry> read_entries(std::string_view text) {
  std::vector<Entry> out;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    std::string line = trim(raw);
    if (line.empty()) continue;
    auto colon = line.find(':');
    if (colon == std::string::npos) throw ParseError(line_no, "expected 'key: value'");
    out.push_back({line_no, trim(std::string_view(line).substr(0, colon)),
                   trim(std::string_view(line).substr(colon + 1))});
    if (out.back().key.empty()) throw ParseError(line_no, "empty key");
  }
  return out;
}

std::vector<std::string> tokens(std::string_view s) {
  std::istringstream in{std::string(s)};
  std::vector<std::string> out;
  for (std::string t; in >> t;) out.push_back(t);
  return out;
}

int parse_int(const std::string& token, int line, const char* what) {
  try {
    std::size_t used = 0;
    int v = std::stoi(token, &used);
    if (used != token.size()) throw std::invalid_argument(token);
    return v;
  } catch (const std::exception&) {
    throw ParseError(line, std::string("expected an integer ") + what + ", got '" + token + "'");
  }
}

int lookup(const std::map<std::string, int>& index, const std::string& label, int line, const char* what) {
  auto it = index.find(label);
  if (it == index.end()) throw ParseError(line, std::string("unknown ") + what + " '" + label + "'");
  return it->second;
}

std::map<std::string, int> index_of_labels(const std::vector<std::string>& labels) {
  std::map<std::string, int> out;
  for (std::size_t i = 0; i < labels.size(); ++i) out.emplace(labels[i], static_cast<int>(i));
  return out;
}

void check_token(const std::string& token) {
  if (token.empty() || token.find_first_of(" \t\r\n:;#") != std::string::npos)
    throw ValidationError("label '" + token + "' cannot be written in the text format");
}

std::string join_labels(const std::vector<std::string>& labels) {
  std::string out;
  for (const auto& l : labels) {
    check_token(l);
    if (!out.empty()) out += ' ';
    out += l;
  }
  return out;
}

std::string relation_text(const RelationalStructure& s, int r) {
  std::string out;
  for (const Tuple& t : s.relation(r)) {
    if (!out.empty()) out += "; ";
    for (std::size_t k = 0; k < t.size(); ++k) {
      if (k) out += ' ';
      out += s.domain()[t[k]];
    }
  }
  return out;
}

std::vector<Tuple> parse_relation(const Entry& e, int arity, const std::map<std::string, int>& domain) {
  std::vector<Tuple> out;
  if (e.value.empty()) return out;
  std::size_t pos = 0;
  while (pos <= e.value.size()) {
    std::size_t end = e.value.find(';', pos);
    if (end == std::string::npos) end = e.value.size();
    auto labels = tokens(std::string_view(e.value).substr(pos, end - pos));
    pos = end + 1;
    if (static_cast<int>(labels.size()) != arity)
      throw ParseError(e.line, "tuple of length " + std::to_string(labels.size()) +
                                   " in a relation of arity " + std::to_string(arity));
    Tuple t;
    for (const auto& l : labels) t.push_back(lookup(domain, l, e.line, "domain value"));
    out.push_back(std::move(t));
  }
  return out;
}

void once(std::set<std::string>& seen, const Entry& e) {
  if (!seen.insert(e.key).second) throw ParseError(e.line, "duplicate '" + e.key + "'");
}

template <typename T>
std::string join_values(const std::vector<T>& values) {
  std::string out;
  for (const auto& v : values) {
    if (!out.empty()) out += ' ';
    if constexpr (std::is_integral_v<T>)
      out += std::to_string(v);
    else
      out += to_string(v);
  }
  return out;
}

}  // namespace

PromiseTemplate parse_template(std::string_view text) {
  auto entries = read_entries(text);
  std::set<std::string> seen;
  std::string name;
  std::vector<std::string> dom_a, dom_b;
  std::vector<Symbol> symbols;
  std::vector<int> symbol_lines;
  std::map<std::string, Entry> rel_a, rel_b;
  std::optional<Entry> witness;
  int last_line = 0;
  for (const auto& e : entries) {
    last_line = e.line;
    if (e.key == "name") {
      once(seen, e);
      name = e.value;
    } else if (e.key == "domain_A") {
      once(seen, e);
      dom_a = tokens(e.value);
    } else if (e.key == "domain_B") {
      once(seen, e);
      dom_b = tokens(e.value);
    } else if (e.key == "symbol") {
      auto t = tokens(e.value);
      if (t.size() != 2) throw ParseError(e.line, "expected 'symbol: name arity'");
      symbols.push_back({t[0], parse_int(t[1], e.line, "arity")});
      symbol_lines.push_back(e.line);
    } else if (e.key.starts_with("A.") || e.key.starts_with("B.")) {
      once(seen, e);
      (e.key[0] == 'A' ? rel_a : rel_b).emplace(e.key.substr(2), e);
    } else if (e.key == "witness") {
      once(seen, e);
      witness = e;
    } else {
      throw ParseError(e.line, "unknown key '" + e.key + "'");
    }
  }
  if (!seen.count("domain_A")) throw ParseError(last_line, "missing domain_A");
  if (!seen.count("domain_B")) throw ParseError(last_line, "missing domain_B");

  Signature sig;
  try {
    sig = Signature(symbols);
  } catch (const ValidationError& err) {
    throw ParseError(symbol_lines.empty() ? last_line : symbol_lines.back(), err.what());
  }
  for (const auto* rels : {&rel_a, &rel_b})
    for (const auto& [sym, e] : *rels)
      if (!sig.find(sym)) throw ParseError(e.line, "relation for undeclared symbol '" + sym + "'");

  auto build = [&](const std::vector<std::string>& dom, const std::map<std::string, Entry>& rels,
                   char side) {
    auto index = index_of_labels(dom);
    std::vector<std::vector<Tuple>> relations;
    for (std::size_t s = 0; s < sig.size(); ++s) {
      auto it = rels.find(sig[s].name);
      if (it == rels.end())
        throw ParseError(symbol_lines[s], std::string("missing relation ") + side + "." + sig[s].name);
      relations.push_back(parse_relation(it->second, sig[s].arity, index));
    }
    try {
      return RelationalStructure(dom, sig, std::move(relations));
    } catch (const ValidationError& err) {
      throw ParseError(rels.empty() ? last_line : rels.begin()->second.line,
                       std::string("structure ") + side + ": " + err.what());
    }
  };
  RelationalStructure a = build(dom_a, rel_a, 'A');
  RelationalStructure b = build(dom_b, rel_b, 'B');

  std::optional<std::vector<int>> map;
  if (witness) {
    auto labels = tokens(witness->value);
    if (static_cast<int>(labels.size()) != a.domain_size())
      throw ParseError(witness->line, "witness must give one B value per A value");
    auto index = index_of_labels(dom_b);
    map.emplace();
    for (const auto& l : labels) map->push_back(lookup(index, l, witness->line, "B value"));
  }
  try {
    return PromiseTemplate(name, std::move(a), std::move(b), map);
  } catch (const ValidationError& err) {
    throw ParseError(witness ? witness->line : last_line, err.what());
  }
}

std::string serialize_template(const PromiseTemplate& tmpl) {
  std::ostringstream out;
  if (!tmpl.name().empty()) {
    check_token(tmpl.name());
    out << "name: " << tmpl.name() << '\n';
  }
  out << "domain_A: " << join_labels(tmpl.a().domain()) << '\n';
  out << "domain_B: " << join_labels(tmpl.b().domain()) << '\n';
  for (const auto& s : tmpl.signature().symbols()) {
    check_token(s.name);
    out << "symbol: " << s.name << ' ' << s.arity << '\n';
  }
  for (std::size_t r = 0; r < tmpl.signature().size(); ++r)
    out << "A." << tmpl.signature()[r].name << ": " << relation_text(tmpl.a(), static_cast<int>(r)) << '\n';
  for (std::size_t r = 0; r < tmpl.signature().size(); ++r)
    out << "B." << tmpl.signature()[r].name << ": " << relation_text(tmpl.b(), static_cast<int>(r)) << '\n';
  std::vector<std::string> image;
  for (int v : tmpl.witness()) image.push_back(tmpl.b().domain()[v]);
  out << "witness: " << join_labels(image) << '\n';
  return out.str();
}

Instance parse_instance(std::string_view text, const Signature& signature) {
  auto entries = read_entries(text);
  std::optional<Entry> vars_entry;
  std::vector<Entry> constraint_entries;
  for (const auto& e : entries) {
    if (e.key == "variables") {
      if (vars_entry) throw ParseError(e.line, "duplicate 'variables'");
      vars_entry = e;
    } else if (e.key == "constraint") {
      constraint_entries.push_back(e);
    } else {
      throw ParseError(e.line, "unknown key '" + e.key + "'");
    }
  }
  if (!vars_entry) throw ParseError(entries.empty() ? 1 : entries.back().line, "missing 'variables'");
  std::vector<std::string> vars = tokens(vars_entry->value);
  std::map<std::string, int> index;
  for (const auto& v : vars)
    if (!index.emplace(v, static_cast<int>(index.size())).second)
      throw ParseError(vars_entry->line, "duplicate variable '" + v + "'");
  std::vector<Constraint> constraints;
  for (const auto& e : constraint_entries) {
    auto t = tokens(e.value);
    if (t.empty()) throw ParseError(e.line, "expected 'constraint: symbol variables...'");
    auto sym = signature.find(t[0]);
    if (!sym) throw ParseError(e.line, "unknown relation symbol '" + t[0] + "'");
    if (static_cast<int>(t.size()) - 1 != signature[*sym].arity)
      throw ParseError(e.line, "symbol '" + t[0] + "' has arity " + std::to_string(signature[*sym].arity));
    Constraint c{*sym, {}};
    for (std::size_t k = 1; k < t.size(); ++k) c.scope.push_back(lookup(index, t[k], e.line, "variable"));
    constraints.push_back(std::move(c));
  }
  return Instance(signature, std::move(vars), std::move(constraints));
}

std::string serialize_instance(const Instance& instance) {
  std::ostringstream out;
  out << "variables: " << join_labels(instance.variables()) << '\n';
  for (const auto& c : instance.constraints()) {
    out << "constraint: " << instance.signature()[c.symbol].name;
    for (int v : c.scope) out << ' ' << instance.variables()[v];
    out << '\n';
  }
  return out.str();
}

std::string serialize_witness(const Instance& instance, const RelationalStructure& a,
                              const BlpPoint& blp, const AffinePoint& aff) {
  RelaxationLayout layout = build_layout(instance, a);
  blp.flatten(layout);
  aff.flatten(layout);
  std::ostringstream out;
  out << "ell: " << witness_denominator(blp) << '\n';
  out << "M: " << witness_magnitude(aff) << '\n';
  for (int i = 0; i < instance.num_variables(); ++i)
    out << "w " << instance.variables()[i] << ": " << join_values(blp.w[i]) << '\n';
  for (int j = 0; j < instance.num_constraints(); ++j)
    out << "p " << j << ": " << join_values(blp.p[j]) << '\n';
  for (int i = 0; i < instance.num_variables(); ++i)
    out << "r " << instance.variables()[i] << ": " << join_values(aff.r[i]) << '\n';
  for (int j = 0; j < instance.num_constraints(); ++j)
    out << "q " << j << ": " << join_values(aff.q[j]) << '\n';
  return out.str();
}

Witness parse_witness(std::string_view text, const Instance& instance, const RelationalStructure& a) {
  RelaxationLayout layout = build_layout(instance, a);
  const int n = instance.num_variables();
  const int m = instance.num_constraints();
  Witness out;
  out.blp.w.resize(n);
  out.blp.p.resize(m);
  out.affine.r.resize(n);
  out.affine.q.resize(m);
  std::vector<char> seen_w(n), seen_r(n), seen_p(m), seen_q(m);
  std::optional<Entry> ell_entry, m_entry;
  auto var_index = index_of_labels(instance.variables());
  int last_line = 1;

  for (const auto& e : read_entries(text)) {
    last_line = e.line;
    auto head = tokens(e.key);
    auto values = tokens(e.value);
    if (head.size() == 1 && head[0] == "ell") {
      if (ell_entry) throw ParseError(e.line, "duplicate 'ell'");
      ell_entry = e;
      continue;
    }
    if (head.size() == 1 && head[0] == "M") {
      if (m_entry) throw ParseError(e.line, "duplicate 'M'");
      m_entry = e;
      continue;
    }
    if (head.size() != 2 || head[0].size() != 1 || std::string("wprq").find(head[0]) == std::string::npos)
      throw ParseError(e.line, "unknown key '" + e.key + "'");
    const char kind = head[0][0];
    int idx;
    std::size_t expected;
    if (kind == 'w' || kind == 'r') {
      idx = lookup(var_index, head[1], e.line, "variable");
      expected = layout.num_values;
    } else {
      idx = parse_int(head[1], e.line, "constraint index");
      if (idx < 0 || idx >= m) throw ParseError(e.line, "constraint index out of range");
      expected = layout.tuples(idx).size();
    }
    if (values.size() != expected)
      throw ParseError(e.line, "expected " + std::to_string(expected) + " values");
    auto& seen = kind == 'w' ? seen_w : kind == 'r' ? seen_r : kind == 'p' ? seen_p : seen_q;
    if (seen[idx]) throw ParseError(e.line, "duplicate '" + e.key + "'");
    seen[idx] = 1;
    try {
      for (const auto& v : values) {
        if (kind == 'w') out.blp.w[idx].push_back(parse_rational(v));
        if (kind == 'p') out.blp.p[idx].push_back(parse_rational(v));
        if (kind == 'r') out.affine.r[idx].push_back(parse_integer(v));
        if (kind == 'q') out.affine.q[idx].push_back(parse_integer(v));
      }
    } catch (const ParseError&) {
      throw;
    } catch (const ValidationError& err) {
      throw ParseError(e.line, err.what());
    }
  }
  for (int i = 0; i < n; ++i)
    if (!seen_w[i] || !seen_r[i])
      throw ParseError(last_line, "missing w or r for variable '" + instance.variables()[i] + "'");
  for (int j = 0; j < m; ++j)
    if (!seen_p[j] || !seen_q[j]) throw ParseError(last_line, "missing p or q for constraint " + std::to_string(j));
  if (!ell_entry || !m_entry) throw ParseError(last_line, "missing 'ell' or 'M'");
  out.ell = parse_int(ell_entry->value, ell_entry->line, "ell");
  out.M = parse_int(m_entry->value, m_entry->line, "M");
  if (out.ell != witness_denominator(out.blp))
    throw ParseError(ell_entry->line, "ell does not match the LP point's common denominator");
  if (out.M != witness_magnitude(out.affine))
    throw ParseError(m_entry->line, "M does not match the affine point's largest magnitude");
  return out;
}

AnyFunction parse_function(std::string_view text, const PromiseTemplate& tmpl) {
  std::optional<Entry> kind, arity, values;
  std::vector<Entry> blocks;
  int last_line = 1;
  for (const auto& e : read_entries(text)) {
    last_line = e.line;
    std::optional<Entry>* slot = e.key == "kind" ? &kind : e.key == "arity" ? &arity
                                 : e.key == "values" ? &values : nullptr;
    if (slot) {
      if (*slot) throw ParseError(e.line, "duplicate '" + e.key + "'");
      *slot = e;
    } else if (e.key == "block") {
      blocks.push_back(e);
    } else {
      throw ParseError(e.line, "unknown key '" + e.key + "'");
    }
  }
  if (!kind || !values) throw ParseError(last_line, "a function needs 'kind' and 'values'");
  auto b_index = index_of_labels(tmpl.b().domain());
  std::vector<int> table;
  for (const auto& l : tokens(values->value)) table.push_back(lookup(b_index, l, values->line, "B value"));
  const int da = tmpl.a().domain_size();
  const int db = tmpl.b().domain_size();
  try {
    if (kind->value == "table" || kind->value == "symmetric") {
      if (!arity) throw ParseError(kind->line, "missing 'arity'");
      int l = parse_int(arity->value, arity->line, "arity");
      if (l < 1 || l > 24) throw ParseError(arity->line, "arity out of range");
      if (kind->value == "table") return FunctionTable(l, da, db, std::move(table));
      return SymmetricFunction::from_table(l, da, db, std::move(table));
    }
    if (kind->value == "blocks") {
      std::vector<std::vector<int>> parts;
      for (const auto& e : blocks) {
        parts.emplace_back();
        for (const auto& t : tokens(e.value)) parts.back().push_back(parse_int(t, e.line, "position"));
      }
      return BlockSymmetricFunction::from_table(std::move(parts), da, db, std::move(table));
    }
  } catch (const ParseError&) {
    throw;
  } catch (const ValidationError& err) {
    throw ParseError(values->line, err.what());
  }
  throw ParseError(kind->line, "kind must be table, symmetric or blocks");
}

namespace {

std::string b_labels(const std::vector<int>& values, const PromiseTemplate& tmpl) {
  std::vector<std::string> labels;
  for (int v : values) labels.push_back(tmpl.b().domain()[v]);
  return join_labels(labels);
}

}  // namespace

std::string serialize_function(const SymmetricFunction& f, const PromiseTemplate& tmpl) {
  std::vector<int> values;
  for (const auto& h : enumerate_histograms(static_cast<int>(f.arity()), f.domain_size()))
    values.push_back(f.evaluate(h));
  return "kind: symmetric\narity: " + std::to_string(f.arity()) + "\nvalues: " + b_labels(values, tmpl) + "\n";
}

std::string serialize_function(const BlockSymmetricFunction& f, const PromiseTemplate& tmpl) {
  if (f.blocks().empty()) throw SizeGuardError("block positions not materialized");
  std::string out = "kind: blocks\n";
  for (const auto& block : f.blocks()) out += "block: " + join_values(block) + "\n";
  // Mixed-radix enumeration of per-block histograms, block 0 most significant.
  std::vector<std::vector<Histogram>> per_block;
  for (auto size : f.block_sizes())
    per_block.push_back(enumerate_histograms(static_cast<int>(size), f.domain_size()));
  std::vector<int> values;
  std::vector<std::size_t> digit(per_block.size(), 0);
  std::vector<Histogram> args(per_block.size());
  while (true) {
    for (std::size_t b = 0; b < per_block.size(); ++b) args[b] = per_block[b][digit[b]];
    values.push_back(f.evaluate(args));
    int pos = static_cast<int>(per_block.size()) - 1;
    while (pos >= 0 && ++digit[pos] == per_block[pos].size()) digit[pos--] = 0;
    if (pos < 0) break;
  }
  return out + "values: " + b_labels(values, tmpl) + "\n";
}

std::string serialize_function(const FunctionTable& f, const PromiseTemplate& tmpl) {
  return "kind: table\narity: " + std::to_string(f.arity()) + "\nvalues: " + b_labels(f.table(), tmpl) + "\n";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace pcsp
