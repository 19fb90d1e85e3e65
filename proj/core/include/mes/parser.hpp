#pragma once

#include <string>

#include "mes/eml.hpp"
#include "mes/term.hpp"

// Text formats: the line-oriented presentation grammar
//
//   sig  meet/2
//   ax   comm: forall x y. meet(x,y) = meet(y,x)
//
// and the s-expression proof grammar with node keywords
// ref sym trans axiom comp ext local local1 compcoprod subst,
// e.g. (comp (axiom comm) (subst (x b) (y a))).

namespace mes {

class ParseError : public MesError {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& reason)
      : MesError("line " + std::to_string(line) + ", column " +
                 std::to_string(column) + ": " + reason),
        line(line),
        column(column),
        reason(reason) {}
  std::size_t line;
  std::size_t column;
  std::string reason;
};

// Terms: identifiers, application with parentheses; identifiers declared in
// the signature parse as (possibly nullary) applications, all others as
// variables.
Term parse_term(const Signature& sig, const std::string& text);

// Parses the full line grammar; the result passes validate().
Presentation parse_presentation(const std::string& text);
std::string presentation_to_text(const Presentation& p);

// One "lhs = rhs" equation over the presentation's signature, with the
// singleton coarity and arity = the variables of both sides.
Equation parse_equation(const Signature& sig, const std::string& text);

// Proof s-expressions.
ProofPtr parse_proof(const Signature& sig, const std::string& text);
std::string proof_to_text(const ProofPtr& proof);

}  // namespace mes
