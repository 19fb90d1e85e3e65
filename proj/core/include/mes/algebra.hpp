#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mes/term.hpp"

// Finite algebras for a signature, term evaluation, interpretation of
// Kleisli maps, satisfaction, homomorphisms, and exhaustive enumeration of
// algebras and models.

namespace mes {

// One total operation table per signature symbol over a finite carrier.
struct FiniteAlgebra {
  Signature signature;
  FinSet carrier;
  // symbol -> (argument tuple -> value)
  std::map<std::string, std::map<std::vector<std::string>, std::string>> tables;

  const std::string& apply(const std::string& symbol,
                           const std::vector<std::string>& args) const;

  bool operator==(const FiniteAlgebra& o) const;

  std::string to_string() const;
};

// An environment is a total assignment arity -> carrier, i.e. a FinFun.
using Environment = FinFun;

std::string eval_term(const FiniteAlgebra& alg, const Environment& env,
                      const Term& t);

// The interpretation [[u]]: C(A,X) x C -> X, (rho,c) |-> eval(u(c), rho).
FinFun interpret(const FiniteAlgebra& alg, const KleisliMap& u);

// True iff the interpretations of both sides agree as graphs.
bool satisfies(const FiniteAlgebra& alg, const Equation& e);
// When the equation fails, an environment/coarity-element witness.
struct SatisfactionWitness {
  Environment env;
  std::string coarity_elem;
  std::string lhs_value;
  std::string rhs_value;
};
std::optional<SatisfactionWitness> find_violation(const FiniteAlgebra& alg,
                                                  const Equation& e);

bool is_homomorphism(const FinFun& h, const FiniteAlgebra& a1,
                     const FiniteAlgebra& a2);

// Lazily enumerates all operation-table assignments on carriers of size
// 1..max_size, carriers labelled "0","1",... in canonical order.
class AlgebraEnumerator {
 public:
  AlgebraEnumerator(Signature sig, std::size_t max_size);

  // Returns the next algebra, or nullopt when exhausted.
  std::optional<FiniteAlgebra> next();

 private:
  bool start_carrier(std::size_t n);

  Signature sig_;
  std::size_t max_size_;
  std::size_t carrier_size_ = 0;
  FinSet carrier_;
  // Flattened odometer over all table cells of all symbols.
  std::vector<std::size_t> odometer_;
  std::vector<std::pair<std::string, std::vector<std::string>>> cells_;
  bool exhausted_ = false;
  bool fresh_ = true;
};

// Filters the algebra stream by satisfaction of every axiom.
class ModelEnumerator {
 public:
  ModelEnumerator(const Presentation& p, std::size_t max_size);
  std::optional<FiniteAlgebra> next();

 private:
  const Presentation& pres_;
  AlgebraEnumerator inner_;
};

std::vector<FiniteAlgebra> all_models(const Presentation& p,
                                      std::size_t max_size);

}  // namespace mes
