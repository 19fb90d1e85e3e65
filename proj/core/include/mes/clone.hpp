#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "mes/algebra.hpp"
#include "mes/term.hpp"

// The clone / double-dualization monad K_X(A) = [C(A,X),X] on finite
// carriers.  Functionals are explicit graphs (FinFun from the environment
// set C(A,X) to X); at the multiplication source, where carriers get
// doubly-exponential, functionals are consumed through a query interface
// instead of being enumerated.

namespace mes {

struct DDCarrier {
  FinSet X;
  FinSet A;
  FinSet envs;     // rhom(A, X)
  FinSet carrier;  // lhom(envs, X); |carrier| = |X|^(|X|^|A|)
};

DDCarrier dd_carrier(const FinSet& x, const FinSet& a);

// Unit A -> K_X(A): a |-> (rho |-> rho(a)), the transpose of ev_right.
FinFun dd_unit(const FinSet& x, const FinSet& a);
// The same component computed through the interpretation composite of the
// clone route; a separate code path from dd_unit.
FinFun clone_unit(const FinSet& x, const FinSet& a);

// delta_V: V -> C([V,X],X), rho |-> (g |-> g(rho)); counit of the
// double-dualization adjunction.
FinFun delta_map(const FinSet& v, const FinSet& x);

// mu^X_A = [delta_{C(A,X)}, X].  The "dual" form returns the map that the
// multiplication precomposes with: C(A,X) -> C(K_X A, X).
FinFun dd_mult_dual(const FinSet& x, const FinSet& a);
// Applies the multiplication to one functional Phi: C(K_X A, X) -> X,
// yielding the resulting functional's graph C(A,X) -> X.
FinFun dd_mult_apply(const FinSet& x, const FinSet& a, const FinFun& phi);
// Fully materialized multiplication graph; guarded, for small instances.
FinFun dd_mult(const FinSet& x, const FinSet& a);

// A functional consumed by evaluation only: maps sigma in C(K_X A, X),
// presented as a FinFun K_X A -> X, to an element of X.
using FunctionalQuery = std::function<std::string(const FinFun&)>;

// The clone-monad multiplication: the transpose of ev o K(ev), computed by
// chasing the interpretation composite elementwise.
FinFun clone_mult_apply(const FinSet& x, const FinSet& a,
                        const FunctionalQuery& phi);
FinFun clone_mult(const FinSet& x, const FinSet& a);
// The point of C(K_X A, X) that the clone route queries for each
// environment; equality with dd_mult_dual is equality of the two
// multiplications on the whole (unenumerable) source.
FinFun clone_mult_dual(const FinSet& x, const FinSet& a);

// The clone strength kappa_{V,A}: V x K_X(A) -> K_X(V x A), via the
// displayed transpose composite (assoc, generalized evaluation, ev).
FinFun clone_strength(const FinSet& x, const FinSet& v, const FinSet& a);

// K_X on morphisms: for f: A -> B, K_X(f): K_X(A) -> K_X(B).
FinFun kx_map(const FinSet& x, const FinSet& a, const FinSet& b,
              const FinFun& f);

// The clone counit K_X(X) -> X: evaluation at the identity environment.
FinFun cleval(const FinSet& x);

// omega(s)_A(t): the evaluation functional rho |-> eval(t, rho), as a graph
// C(A,X) -> X and as a carrier label.
FinFun semantics_functional(const FiniteAlgebra& alg, const FinSet& a,
                            const Term& t);
std::string semantics_transform(const FiniteAlgebra& alg, const FinSet& a,
                                const Term& t);
// The same component obtained as the transpose of the interpretation map
// (strength, then T(ev), then the algebra structure); used as an
// independent route in tests.
std::string semantics_transform_via_interpretation(const FiniteAlgebra& alg,
                                                   const FinSet& a,
                                                   const Term& t);

// The Kleisli composite in K_X of two graph families; used to state the
// monad-morphism square for omega at finite instances.
// f: C -> K_X(B) and g: B -> K_X(A), both as label-valued FinFuns.
FinFun dd_kleisli_compose(const FinSet& x, const FinSet& b, const FinSet& a,
                          const FinFun& f, const FinFun& g);

// A monad morphism T -> K_X recorded at finitely many arities, each up to a
// term-depth bound.
struct MonadMorphismTable {
  Signature signature;
  FinSet X;
  std::size_t depth = 0;
  struct Entry {
    FinSet arity;
    std::map<Term, std::string> values;  // term -> K_X carrier label
  };
  std::vector<Entry> entries;

  const Entry* find(const FinSet& arity) const;
  const std::string& value(const FinSet& arity, const Term& t) const;
};

// tau = omega(s) recorded on the given arities up to depth.
MonadMorphismTable record_semantics(const FiniteAlgebra& alg,
                                    const std::vector<FinSet>& arities,
                                    std::size_t depth);

// Naturality squares for every relabelling between recorded arities.
std::vector<std::string> naturality_violations(const MonadMorphismTable& tau);

// alpha(tau) = cleval o tau_X; requires the carrier arity to be recorded.
FiniteAlgebra algebra_of_morphism(const MonadMorphismTable& tau);

// Pointwise power algebra on [V,X].
FiniteAlgebra power_algebra(const FiniteAlgebra& alg, const FinSet& v);

// The K_X-algebra structure [delta_V, X] on [V,X], applied to one
// functional Psi: C([V,X],X) -> X.
std::string power_kx_structure(const FinSet& x, const FinSet& v,
                               const FinFun& psi);

// Precomposition of an algebra along a monad morphism T -> K_X given by a
// recorded table, with the K_X-algebra structure k on the table's carrier.
FiniteAlgebra restrict_algebra(const MonadMorphismTable& tau, const FinFun& k);

// Term-monad morphisms induced by mapping symbols to terms of another
// signature (placeholder variables "#0","#1",...); covers identities and
// signature inclusions.
struct SignatureTranslation {
  Signature from;
  Signature to;
  std::map<std::string, Term> images;

  static SignatureTranslation identity(const Signature& sig);
};

Term translate_term(const SignatureTranslation& tr, const Term& t);
FiniteAlgebra restrict_algebra(const SignatureTranslation& tr,
                               const FiniteAlgebra& target);

}  // namespace mes
