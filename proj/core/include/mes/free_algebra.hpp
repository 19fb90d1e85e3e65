#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mes/algebra.hpp"
#include "mes/term.hpp"

// Free algebras of a presentation over a finite generator set, built as a
// staged congruence closure over depth-bounded ground terms: each stage
// instantiates the axioms at class representatives (the coequalizer step)
// and closes under congruence (the pushout propagation), and the chain is
// cut off when two consecutive stages agree.  On top of the quotient sit
// the quotient map, homomorphic extensions into models, and the decision
// procedure for equational consequence.

namespace mes {

// All terms over generators X (treated as constants, i.e. variables that
// are never substituted) up to a depth bound, in canonical order.  The
// enumeration is closed under subterms.
class TermIndex {
 public:
  TermIndex(const Signature& sig, const FinSet& generators, std::size_t depth);
  // Same, with extra terms (and their subterms) adjoined to the universe;
  // the extras may exceed the depth bound.
  TermIndex(const Signature& sig, const FinSet& generators, std::size_t depth,
            const std::vector<Term>& extra);

  const std::vector<Term>& terms() const { return terms_; }
  std::size_t depth() const { return depth_; }
  const FinSet& generators() const { return gens_; }
  bool contains(const Term& t) const { return index_.count(t) != 0; }
  std::size_t id_of(const Term& t) const;
  // Adjoins a term (and its subterms) to the universe; returns its id.
  // Already-present terms keep their id.
  std::size_t add(const Term& t);

 private:
  FinSet gens_;
  std::size_t depth_;
  std::vector<Term> terms_;
  std::map<Term, std::size_t> index_;
};

// A union-find partition of a TermIndex with congruence propagation:
// whenever all children of two applications of the same symbol are merged
// pairwise, the applications are merged too.
class CongruenceTable {
 public:
  CongruenceTable(const Signature& sig, const FinSet& generators,
                  std::size_t depth);
  CongruenceTable(const Signature& sig, const FinSet& generators,
                  std::size_t depth, const std::vector<Term>& extra);

  const TermIndex& index() const { return index_; }
  const Signature& signature() const { return sig_; }

  std::size_t find(std::size_t i) const;
  bool merged(const Term& a, const Term& b) const;
  // Adjoins a term to the universe as its own class; returns its id.
  std::size_t add_term(const Term& t);
  // Returns true when the classes were distinct.
  bool unite(std::size_t a, std::size_t b);
  // Congruence closure to fixpoint.
  void close();

  std::size_t class_count() const;
  // Minimal-depth, canonically least member of the class of i.
  Term representative(std::size_t i) const;
  // One representative per class, deduplicated.
  std::vector<Term> class_representatives() const;

 private:
  Signature sig_;
  TermIndex index_;
  mutable std::vector<std::size_t> parent_;
};

// True iff the depth-(d+1) table adds no new classes over the depth-d one:
// every deeper term falls into a class with a depth-<= d member, and the
// two equivalences agree on depth-<= d terms.
bool stabilized(const CongruenceTable& at_d, const CongruenceTable& at_d1);

struct FreeAlgebraResult {
  enum class Status { Finite, Truncated };
  Status status;
  FinSet generators;
  // Finite: the depth at which the chain stabilized.  Truncated: the bound.
  std::size_t depth = 0;
  // Finite only: the quotient algebra (carrier = class labels, which are the
  // canonical representatives' term strings) and the class of every indexed
  // term up to `depth`.
  FiniteAlgebra algebra;
  std::map<Term, std::string> classes;
  // The deepest table computed; for Truncated results this is the bounded
  // closure at `depth` and carries the partial merge information.
  std::optional<CongruenceTable> table;

  bool is_finite() const { return status == Status::Finite; }
};

// Runs the staged closure for d = 1..d_max.  A stage is accepted as Finite
// when the quotient candidate it induces closes up: applying every
// operation to class representatives stays within classes that have
// depth-<= d members, and the resulting finite algebra satisfies all
// axioms.  (Both directions of the universal property then force the
// candidate to be the free algebra on x.)
FreeAlgebraResult build_free_algebra(const Presentation& p, const FinSet& x,
                                     std::size_t d_max);

// The class of t in a Finite result, computed by evaluating t in the
// quotient algebra; total on all terms over the generators, not just the
// indexed depth.  Throws on Truncated results.
std::string quotient_map(const FreeAlgebraResult& r, const Term& t);

// The unique homomorphic extension classes -> carrier of a model whose
// carrier equals the generator set, restricting to the identity on
// generators.  Representative-dependence (the algebra fails an axiom)
// throws.
FinFun hom_extension(const FreeAlgebraResult& r, const FiniteAlgebra& alg);

struct DecisionWitness {
  FiniteAlgebra model;
  SatisfactionWitness witness;
};

struct Decision {
  enum class Verdict { Equal, NotEqual, Unknown };
  Verdict verdict;
  std::string detail;
  std::optional<DecisionWitness> witness;  // present on NotEqual

  std::string verdict_name() const;
};

// Decides whether e is an equational consequence of p: builds the free
// algebra on e's arity and compares the classes of the two sides.  On a
// truncated build, a merge at the bounded depth still certifies Equal, and
// a finite-model screen at sizes <= k can certify NotEqual with a witness;
// otherwise Unknown.
Decision decide(const Presentation& p, const Equation& e, std::size_t d_max,
                std::size_t k);

// Checks that pairing a parameter onto variables commutes with quotienting:
// the class in the free algebra on V x X of the v-paired term agrees with
// the v-paired class of the term, elementwise on terms of depth <= 3.
bool quotient_strength_check(const Presentation& p, const FinSet& x,
                             const FinSet& v, std::size_t d_max);

}  // namespace mes
