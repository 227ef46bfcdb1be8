#include "pcsp/corpus.hpp"

#include <map>

#include "pcsp/text_format.hpp"

namespace pcsp {

namespace {

struct CorpusEntry {
  const char* document;
  std::optional<Family> family;
};

const std::map<std::string, CorpusEntry, std::less<>>& corpus() {
  static const std::map<std::string, CorpusEntry, std::less<>> entries = {
      {"2sat",
       {R"(name: 2sat
domain_A: 0 1
domain_B: 0 1
symbol: t 1
symbol: f 1
symbol: or2 2
symbol: nand2 2
symbol: imp 2
A.t: 1
A.f: 0
A.or2: 0 1; 1 0; 1 1
A.nand2: 0 0; 0 1; 1 0
A.imp: 0 0; 0 1; 1 1
B.t: 1
B.f: 0
B.or2: 0 1; 1 0; 1 1
B.nand2: 0 0; 0 1; 1 0
B.imp: 0 0; 0 1; 1 1
witness: 0 1
)",
        Family::Majority}},
      {"horn",
       {R"(name: horn
domain_A: 0 1
domain_B: 0 1
symbol: t 1
symbol: f 1
symbol: nand2 2
symbol: imp 2
symbol: horn3 3    # x & y -> z
A.t: 1
A.f: 0
A.nand2: 0 0; 0 1; 1 0
A.imp: 0 0; 0 1; 1 1
A.horn3: 0 0 0; 0 0 1; 0 1 0; 0 1 1; 1 0 0; 1 0 1; 1 1 1
B.t: 1
B.f: 0
B.nand2: 0 0; 0 1; 1 0
B.imp: 0 0; 0 1; 1 1
B.horn3: 0 0 0; 0 0 1; 0 1 0; 0 1 1; 1 0 0; 1 0 1; 1 1 1
witness: 0 1
)",
        Family::Min}},
      {"dualhorn",
       {R"(name: dualhorn
domain_A: 0 1
domain_B: 0 1
symbol: t 1
symbol: f 1
symbol: or2 2
symbol: imp 2
symbol: dhorn3 3   # x | y | !z
A.t: 1
A.f: 0
A.or2: 0 1; 1 0; 1 1
A.imp: 0 0; 0 1; 1 1
A.dhorn3: 0 0 0; 0 1 0; 0 1 1; 1 0 0; 1 0 1; 1 1 0; 1 1 1
B.t: 1
B.f: 0
B.or2: 0 1; 1 0; 1 1
B.imp: 0 0; 0 1; 1 1
B.dhorn3: 0 0 0; 0 1 0; 0 1 1; 1 0 0; 1 0 1; 1 1 0; 1 1 1
witness: 0 1
)",
        Family::Max}},
      {"3lin",
       {R"(name: 3lin
domain_A: 0 1
domain_B: 0 1
symbol: t 1
symbol: f 1
symbol: eq 2
symbol: neq 2
symbol: e0 3       # x + y + z = 0 mod 2
symbol: e1 3       # x + y + z = 1 mod 2
A.t: 1
A.f: 0
A.eq: 0 0; 1 1
A.neq: 0 1; 1 0
A.e0: 0 0 0; 0 1 1; 1 0 1; 1 1 0
A.e1: 0 0 1; 0 1 0; 1 0 0; 1 1 1
B.t: 1
B.f: 0
B.eq: 0 0; 1 1
B.neq: 0 1; 1 0
B.e0: 0 0 0; 0 1 1; 1 0 1; 1 1 0
B.e1: 0 0 1; 0 1 0; 1 0 0; 1 1 1
witness: 0 1
)",
        Family::Parity}},
      {"1in3-nae",
       {R"(name: 1in3-nae
domain_A: 0 1
domain_B: 0 1
symbol: r 3
A.r: 0 0 1; 0 1 0; 1 0 0
B.r: 0 0 1; 0 1 0; 0 1 1; 1 0 0; 1 0 1; 1 1 0
witness: 0 1
)",
        Family::AlternatingThreshold}},
      {"cycles23",
       {R"(name: cycles23    # directed 2-cycle plus directed 3-cycle
domain_A: 0 1 0' 1' 2'
domain_B: 0 1 0' 1' 2'
symbol: e 2
A.e: 0 1; 1 0; 0' 1'; 1' 2'; 2' 0'
B.e: 0 1; 1 0; 0' 1'; 1' 2'; 2' 0'
witness: 0 1 0' 1' 2'
)",
        std::nullopt}},
      {"k3",
       {R"(name: k3
domain_A: 0 1 2
domain_B: 0 1 2
symbol: e 2
A.e: 0 1; 0 2; 1 0; 1 2; 2 0; 2 1
B.e: 0 1; 0 2; 1 0; 1 2; 2 0; 2 1
witness: 0 1 2
)",
        std::nullopt}},
  };
  return entries;
}

const CorpusEntry& entry(std::string_view name) {
  auto it = corpus().find(name);
  if (it == corpus().end()) throw ValidationError("unknown corpus template '" + std::string(name) + "'");
  return it->second;
}

}  // namespace

std::vector<std::string> corpus_names() {
  return {"2sat", "horn", "dualhorn", "3lin", "1in3-nae", "cycles23", "k3"};
}

std::string corpus_document(std::string_view name) { return entry(name).document; }

PromiseTemplate corpus_template(std::string_view name) { return parse_template(corpus_document(name)); }

std::optional<Family> corpus_family(std::string_view name) { return entry(name).family; }

}  // namespace pcsp
