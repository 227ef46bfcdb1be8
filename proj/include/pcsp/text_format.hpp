#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "pcsp/affine.hpp"
#include "pcsp/blp.hpp"
#include "pcsp/core.hpp"
#include "pcsp/polymorphism.hpp"

namespace pcsp {

/** A document that failed to parse; what() starts with "line N: ". */
class ParseError : public ValidationError {
 public:
  ParseError(int line, const std::string& message);
  int line() const { return line_; }

 private:
  int line_;
};

/*
 * All documents are line oriented "key: value" text. Blank lines and text
 * after '#' are ignored. Labels are whitespace-free tokens without ':', ';'
 * or '#'.
 *
 * Template:
 *   name: 2sat
 *   domain_A: 0 1
 *   domain_B: 0 1
 *   symbol: or2 2
 *   A.or2: 0 1; 1 0; 1 1
 *   B.or2: 0 1; 1 0; 1 1
 *   witness: 0 1            # optional, B label for each A value
 *
 * Instance:
 *   variables: x y z
 *   constraint: or2 x y
 *
 * Witness (LP point w, p and affine point r, q; p and q by constraint index):
 *   ell: 2
 *   M: 1
 *   w x: 1/2 1/2
 *   p 0: 1/2 0 1/2
 *   r x: 1 0
 *   q 0: 1 0 0
 *
 * Function:
 *   kind: table | symmetric | blocks
 *   arity: 3                # table and symmetric
 *   block: 0 2 4            # blocks only, one line per block
 *   values: 0 1 1 ...       # B labels; by tuple index, histogram rank,
 *                           # or block histogram rank
 */

PromiseTemplate parse_template(std::string_view text);
std::string serialize_template(const PromiseTemplate& tmpl);

/// Constraint symbols are resolved against `signature`.
Instance parse_instance(std::string_view text, const Signature& signature);
std::string serialize_instance(const Instance& instance);

struct Witness {
  BlpPoint blp;
  AffinePoint affine;
  std::int64_t ell = 1;
  std::int64_t M = 1;
};

/// Serializes an accepted decision's witnesses together with ell and M.
std::string serialize_witness(const Instance& instance, const RelationalStructure& a,
                              const BlpPoint& blp, const AffinePoint& aff);
Witness parse_witness(std::string_view text, const Instance& instance, const RelationalStructure& a);

using AnyFunction = std::variant<FunctionTable, SymmetricFunction, BlockSymmetricFunction>;

AnyFunction parse_function(std::string_view text, const PromiseTemplate& tmpl);
std::string serialize_function(const SymmetricFunction& f, const PromiseTemplate& tmpl);
std::string serialize_function(const BlockSymmetricFunction& f, const PromiseTemplate& tmpl);
std::string serialize_function(const FunctionTable& f, const PromiseTemplate& tmpl);

std::string read_file(const std::string& path);

}  // namespace pcsp
