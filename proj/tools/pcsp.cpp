#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "pcsp/corpus.hpp"
#include "pcsp/decide.hpp"
#include "pcsp/minion.hpp"
#include "pcsp/oracle.hpp"
#include "pcsp/polymorphism.hpp"
#include "pcsp/rounding.hpp"
#include "pcsp/text_format.hpp"

namespace {

using namespace pcsp;

constexpr int kAccept = 0;
constexpr int kReject = 1;
constexpr int kInputError = 2;
constexpr int kSizeGuard = 3;

PromiseTemplate load_template(const std::string& spec) {
  if (std::filesystem::is_regular_file(spec)) return parse_template(read_file(spec));
  try {
    return corpus_template(spec);
  } catch (const ValidationError&) {
    throw ValidationError("'" + spec + "' is neither a readable file nor a corpus template");
  }
}

Instance load_instance(const std::string& path, const PromiseTemplate& tmpl) {
  return parse_instance(read_file(path), tmpl.signature());
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write '" + path + "'");
  out << text;
}

std::vector<int> parse_sizes(const std::string& text) {
  std::vector<int> out;
  std::stringstream in(text);
  for (std::string part; std::getline(in, part, ',');) {
    try {
      out.push_back(std::stoi(part));
    } catch (const std::exception&) {
      throw ValidationError("bad block size list '" + text + "'");
    }
  }
  if (out.empty()) throw ValidationError("empty block size list");
  return out;
}

struct FunctionChoice {
  std::optional<Family> family;
  std::optional<AnyFunction> table;
};

FunctionChoice load_function(const std::string& spec, const PromiseTemplate& tmpl) {
  FunctionChoice out;
  if ((out.family = parse_family(spec))) return out;
  if (!std::filesystem::is_regular_file(spec))
    throw ValidationError("'" + spec + "' is neither a family name nor a readable file");
  out.table = parse_function(read_file(spec), tmpl);
  return out;
}

void print_assignment(const Instance& instance, const PromiseTemplate& tmpl, const Assignment& x) {
  for (int i = 0; i < instance.num_variables(); ++i)
    std::cout << instance.variables()[i] << ": " << tmpl.b().domain()[x.values[i]] << '\n';
}

int cmd_decide(const std::string& t, const std::string& i, const std::string& witness_out) {
  PromiseTemplate tmpl = load_template(t);
  Instance instance = load_instance(i, tmpl);
  Decision d = decide(tmpl, instance);
  std::cout << verdict_text(d) << '\n';
  if (d.accepted() && !witness_out.empty())
    write_file(witness_out, serialize_witness(instance, tmpl.a(), *d.lp_witness, *d.affine_witness));
  return d.accepted() ? kAccept : kReject;
}

struct RoundArgs {
  std::string tmpl, instance, witness, poly;
  std::int64_t arity = 0;
  bool trust = false;
};

int cmd_round(const RoundArgs& args) {
  PromiseTemplate tmpl = load_template(args.tmpl);
  Instance instance = load_instance(args.instance, tmpl);
  BlpPoint blp;
  AffinePoint aff;
  if (!args.witness.empty()) {
    Witness w = parse_witness(read_file(args.witness), instance, tmpl.a());
    blp = std::move(w.blp);
    aff = std::move(w.affine);
  } else {
    Decision d = decide(tmpl, instance);
    if (!d.accepted()) {
      std::cout << verdict_text(d) << '\n';
      return kReject;
    }
    blp = std::move(*d.lp_witness);
    aff = std::move(*d.affine_witness);
  }
  const std::int64_t ell = witness_denominator(blp);
  const std::int64_t m = witness_magnitude(aff);
  RoundOptions options;
  options.verify_polymorphism = !args.trust;

  FunctionChoice choice = load_function(args.poly, tmpl);
  Assignment x;
  std::int64_t arity = 0;
  auto round_block = [&](const BlockSymmetricFunction& f) {
    arity = f.arity();
    x = round(tmpl, instance, blp, aff, f, options);
  };
  auto round_symmetric = [&](const SymmetricFunction& f) {
    arity = f.arity();
    x = round(tmpl, instance, blp, aff, f, options);
  };
  if (choice.family == Family::AlternatingThreshold) {
    std::int64_t l = args.arity ? args.arity : 2 * m * ell * ell + 1;  // both blocks >= M * ell^2
    round_block(alternating_threshold(tmpl, l));
  } else if (choice.family) {
    Family family = *choice.family;
    std::int64_t l = args.arity
                         ? args.arity
                         : rounding_params(blp, aff, [&](std::int64_t k) { return family_arity_available(family, k); }).L;
    round_symmetric(family_function(tmpl, family, l));
  } else if (auto* s = std::get_if<SymmetricFunction>(&*choice.table)) {
    round_symmetric(*s);
  } else if (auto* b = std::get_if<BlockSymmetricFunction>(&*choice.table)) {
    round_block(*b);
  } else {
    throw ValidationError("rounding needs a symmetric or block-symmetric function");
  }
  std::cout << "ell: " << ell << "\nM: " << m << "\narity: " << arity << '\n';
  print_assignment(instance, tmpl, x);
  std::cout << "verified: true\n";
  return kAccept;
}

int cmd_polycheck(const std::string& t, const std::string& spec, std::int64_t arity) {
  PromiseTemplate tmpl = load_template(t);
  FunctionChoice choice = load_function(spec, tmpl);
  bool ok = false;
  if (choice.family) {
    if (arity < 1) throw ValidationError("a family needs an arity");
    if (*choice.family == Family::AlternatingThreshold)
      ok = is_polymorphism(alternating_threshold(tmpl, arity), tmpl);
    else
      ok = is_polymorphism(family_function(tmpl, *choice.family, arity), tmpl);
  } else {
    ok = std::visit([&](const auto& f) { return is_polymorphism(f, tmpl); }, *choice.table);
  }
  std::cout << (ok ? "true" : "false") << '\n';
  return ok ? kAccept : kReject;
}

int cmd_polyenum(const std::string& t, int arity, const std::string& blocks) {
  PromiseTemplate tmpl = load_template(t);
  if (!blocks.empty()) {
    auto found = enumerate_block_symmetric_polymorphisms(tmpl, parse_sizes(blocks));
    std::cout << "count: " << found.size() << '\n';
    for (const auto& f : found) {
      std::string doc = serialize_function(f, tmpl);
      std::cout << doc.substr(doc.rfind("values:"));
    }
    return kAccept;
  }
  if (arity < 1) throw ValidationError("--arity is required for symmetric enumeration");
  auto found = enumerate_symmetric_polymorphisms(tmpl, arity);
  std::cout << "count: " << found.size() << '\n';
  for (const auto& f : found) {
    std::string doc = serialize_function(f, tmpl);
    std::cout << doc.substr(doc.rfind("values:"));
  }
  return kAccept;
}

int cmd_classify(const std::string& t, const std::string& i) {
  PromiseTemplate tmpl = load_template(t);
  Instance instance = load_instance(i, tmpl);
  std::cout << format_classification(classify(tmpl, instance)) << '\n';
  return kAccept;
}

int cmd_fool(const std::string& t, const FoolingSearchLimits& limits) {
  PromiseTemplate tmpl = load_template(t);
  FoolingSearchResult r = search_fooling_instance(tmpl, limits);
  if (!r.instance) {
    std::cout << "none within max-vars=" << limits.max_vars << " max-constraints=" << limits.max_constraints
              << " examined=" << r.examined << '\n';
    return kAccept;
  }
  std::cout << "# fooling instance: ACCEPT, unsatisfiable in B (examined " << r.examined << ")\n"
            << serialize_instance(*r.instance);
  return kAccept;
}

int cmd_free(const std::string& t, const std::string& kind, const TruncatedMinion& base) {
  PromiseTemplate tmpl = load_template(t);
  TruncatedMinion minion = base;
  if (kind == "qconv") minion.kind = MinionKind::Qconv;
  else if (kind == "mblpaff") minion.kind = MinionKind::MBlpAff;
  else if (kind == "zaff") minion.kind = MinionKind::Zaff;
  else throw ValidationError("minion must be qconv, mblpaff or zaff");
  RelationalStructure free = build_free_structure(minion, tmpl.a());
  std::cout << "domain: " << free.domain_size() << '\n';
  for (std::size_t r = 0; r < free.signature().size(); ++r)
    std::cout << "relation " << free.signature()[r].name << ": " << free.relation(static_cast<int>(r)).size()
              << '\n';
  auto hom = find_homomorphism(free, tmpl.b());
  std::cout << "hom_to_B: " << (hom ? "true" : "false") << '\n';
  if (hom)
    for (int v = 0; v < free.domain_size(); ++v)
      std::cout << free.domain()[v] << " -> " << tmpl.b().domain()[(*hom)[v]] << '\n';
  return hom ? kAccept : kReject;
}

int cmd_blocksearch(const std::string& t, int max_arity) {
  PromiseTemplate tmpl = load_template(t);
  auto report = verify_no_wide_block_symmetric(tmpl, max_arity);
  std::cout << "unary: " << report.unary << '\n';
  for (const auto& e : report.wide) {
    std::cout << "blocks:";
    for (int s : e.block_sizes) std::cout << ' ' << s;
    std::cout << " count: " << e.polymorphisms << '\n';
  }
  std::cout << "no_wide_block_symmetric: " << (report.holds() ? "true" : "false") << '\n';
  return report.holds() ? kAccept : kReject;
}

int cmd_generate(const std::string& t, int n, int m, std::uint64_t seed) {
  PromiseTemplate tmpl = load_template(t);
  std::mt19937_64 rng(seed);
  std::cout << serialize_instance(random_instance(tmpl.signature(), n, m, rng));
  return kAccept;
}

int cmd_corpus(const std::string& name) {
  if (name.empty()) {
    for (const auto& n : corpus_names()) std::cout << n << '\n';
    return kAccept;
  }
  std::cout << corpus_document(name);
  return kAccept;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Decide, round and analyse promise CSPs with the BLP+Affine relaxation"};
  app.require_subcommand(1);
  std::function<int()> action;

  std::string tmpl, instance, witness, spec, blocks, minion_kind = "qconv";
  std::int64_t arity = 0;
  std::uint64_t seed = 1;
  int vars = 4, constraints = 4;

  auto* decide_cmd = app.add_subcommand("decide", "Run BLP+Affine; exit 0 = ACCEPT, 1 = REJECT");
  decide_cmd->add_option("-t,--template", tmpl, "Template file or corpus name")->required();
  decide_cmd->add_option("-i,--instance", instance, "Instance file")->required();
  decide_cmd->add_option("-w,--witness", witness, "Write the witness document here on ACCEPT");
  decide_cmd->callback([&] { action = [&] { return cmd_decide(tmpl, instance, witness); }; });

  RoundArgs round_args;
  auto* round_cmd = app.add_subcommand("round", "Round an ACCEPT witness with a polymorphism");
  round_cmd->add_option("-t,--template", round_args.tmpl, "Template file or corpus name")->required();
  round_cmd->add_option("-i,--instance", round_args.instance, "Instance file")->required();
  round_cmd->add_option("-p,--poly", round_args.poly, "Family name or function file")->required();
  round_cmd->add_option("-w,--witness", round_args.witness, "Witness document (default: run decide)");
  round_cmd->add_option("--arity", round_args.arity, "Arity of a family (default: smallest usable)");
  round_cmd->add_flag("--trust", round_args.trust, "Skip the polymorphism check (the result is still verified)");
  round_cmd->callback([&] { action = [&] { return cmd_round(round_args); }; });

  auto* check_cmd = app.add_subcommand("polycheck", "Check a polymorphism; prints true or false");
  check_cmd->add_option("template,-t,--template", tmpl, "Template file or corpus name")->required();
  check_cmd->add_option("function", spec, "Family name or function file")->required();
  check_cmd->add_option("arity,--arity", arity, "Arity (families only)");
  check_cmd->callback([&] { action = [&] { return cmd_polycheck(tmpl, spec, arity); }; });

  bool symmetric = false;
  auto* enum_cmd = app.add_subcommand("polyenum", "List symmetric or block-symmetric polymorphisms");
  enum_cmd->add_option("template,-t,--template", tmpl, "Template file or corpus name")->required();
  enum_cmd->add_option("--arity", arity, "Arity of symmetric polymorphisms");
  enum_cmd->add_flag("--symmetric", symmetric, "Symmetric polymorphisms (the default)");
  enum_cmd->add_option("--blocks", blocks, "Comma-separated block sizes, e.g. 2,3");
  enum_cmd->callback([&] { action = [&] { return cmd_polyenum(tmpl, static_cast<int>(arity), blocks); }; });

  auto* classify_cmd = app.add_subcommand("classify", "Brute force and every relaxation on one instance");
  classify_cmd->add_option("-t,--template", tmpl, "Template file or corpus name")->required();
  classify_cmd->add_option("-i,--instance", instance, "Instance file")->required();
  classify_cmd->callback([&] { action = [&] { return cmd_classify(tmpl, instance); }; });

  FoolingSearchLimits fool_limits;
  auto* fool_cmd = app.add_subcommand("fool", "Search for an accepted instance unsatisfiable in B");
  fool_cmd->add_option("template,-t,--template", tmpl, "Template file or corpus name")->required();
  fool_cmd->add_option("--max-vars", fool_limits.max_vars, "Variable bound");
  fool_cmd->add_option("--max-constraints", fool_limits.max_constraints, "Constraint bound");
  fool_cmd->add_option("--max-instances", fool_limits.max_instances, "Instance budget");
  fool_cmd->callback([&] { action = [&] { return cmd_fool(tmpl, fool_limits); }; });

  TruncatedMinion minion;
  auto* free_cmd = app.add_subcommand("free", "Free structure of A over a truncated minion");
  free_cmd->add_option("template,-t,--template", tmpl, "Template file or corpus name")->required();
  free_cmd->add_option("--minion", minion_kind, "qconv, mblpaff or zaff");
  free_cmd->add_option("--ell", minion.ell, "Denominator bound");
  free_cmd->add_option("--bound", minion.bound, "Bound on sum |r|");
  free_cmd->add_option("--max-arity", minion.max_arity, "Largest object arity");
  free_cmd->callback([&] { action = [&] { return cmd_free(tmpl, minion_kind, minion); }; });

  int max_total = 6;
  auto* block_cmd = app.add_subcommand("blocksearch", "Exhaustive search for block-symmetric polymorphisms of width >= 2");
  block_cmd->add_option("template,-t,--template", tmpl, "Template file or corpus name")->required();
  block_cmd->add_option("--max-arity", max_total, "Largest total arity");
  block_cmd->callback([&] { action = [&] { return cmd_blocksearch(tmpl, max_total); }; });

  auto* gen_cmd = app.add_subcommand("generate", "Print a random instance");
  gen_cmd->add_option("template,-t,--template", tmpl, "Template file or corpus name")->required();
  gen_cmd->add_option("--max-vars", vars, "Number of variables");
  gen_cmd->add_option("--max-constraints", constraints, "Number of constraints");
  gen_cmd->add_option("--seed", seed, "Random seed");
  gen_cmd->callback([&] { action = [&] { return cmd_generate(tmpl, vars, constraints, seed); }; });

  std::string corpus_name;
  auto* corpus_cmd = app.add_subcommand("corpus", "List built-in templates or print one");
  corpus_cmd->add_option("name", corpus_name, "Template to print");
  corpus_cmd->callback([&] { action = [&] { return cmd_corpus(corpus_name); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kInputError;
  }

  try {
    return action();
  } catch (const SizeGuardError& e) {
    std::cerr << "size guard: " << e.what() << '\n';
    return kSizeGuard;
  } catch (const ArityUnavailable& e) {
    std::cerr << "arity unavailable: " << e.what() << '\n';
    return kSizeGuard;
  } catch (const NotPolymorphism& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const RoundingFailure& e) {
    std::cerr << "rounding failed: " << e.what() << '\n';
    return kReject;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kReject;
  }
}
