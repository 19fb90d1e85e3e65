#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mes/finset.hpp"

// Signatures, terms over a finite variable set, Kleisli maps (substitutions),
// equations and presentations.

namespace mes {

struct OpDecl {
  std::string symbol;
  std::size_t arity = 0;
};

class Signature {
 public:
  Signature() = default;
  explicit Signature(std::vector<OpDecl> ops);

  const std::vector<OpDecl>& ops() const { return ops_; }
  std::optional<std::size_t> arity(const std::string& symbol) const;
  bool has(const std::string& symbol) const { return arity(symbol).has_value(); }

  bool operator==(const Signature& o) const;

 private:
  std::vector<OpDecl> ops_;
};

class Term {
 public:
  static Term var(std::string name);
  static Term app(std::string symbol, std::vector<Term> args);

  bool is_var() const { return is_var_; }
  const std::string& head() const { return head_; }
  const std::vector<Term>& args() const { return args_; }

  // Number of App nodes on the longest root-leaf path; Var has depth 0.
  std::size_t depth() const;

  bool operator==(const Term& o) const;
  bool operator!=(const Term& o) const { return !(*this == o); }
  // Canonical total order: Var before App, then head, then children.
  bool operator<(const Term& o) const;

  std::string to_string() const;

 private:
  bool is_var_ = true;
  std::string head_;
  std::vector<Term> args_;
};

// Set of variable labels occurring in t.
FinSet vars_of(const Term& t);

// Checks arity discipline and that every variable lies in `vars`;
// violations name the offending subterm path ("root.0.1").
void collect_term_violations(const Signature& sig, const FinSet& vars,
                             const Term& t, const std::string& path,
                             std::vector<std::string>& out);
bool well_formed(const Signature& sig, const FinSet& vars, const Term& t);

// A coarity-indexed family of terms: a morphism C -> TA, i.e. a substitution.
struct KleisliMap {
  FinSet coarity;
  FinSet arity;
  std::map<std::string, Term> body;

  const Term& at(const std::string& c) const;

  bool operator==(const KleisliMap& o) const;
  bool operator!=(const KleisliMap& o) const { return !(*this == o); }

  std::string to_string() const;
};

// The identity substitution A -> TA.
KleisliMap identity_subst(const FinSet& a);
// A single-term Kleisli map with singleton coarity {*}.
KleisliMap singleton_kleisli(const FinSet& arity, const Term& t);
// Precompose by a coarity re-indexing: (u o e)(c') = u(e(c')).
KleisliMap precompose(const KleisliMap& u, const FinFun& e);

struct Equation {
  std::string name;
  KleisliMap lhs;
  KleisliMap rhs;
};

struct Presentation {
  std::string name;
  Signature signature;
  std::vector<Equation> axioms;

  const Equation* find_axiom(const std::string& axiom_name) const;
};

// Empty result iff every invariant holds: distinct symbols, well-formed
// terms, matching coarity/arity per equation, distinct axiom names.
std::vector<std::string> validate(const Presentation& p);

}  // namespace mes
