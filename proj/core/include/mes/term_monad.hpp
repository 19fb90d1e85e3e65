#pragma once

#include <vector>

#include "mes/algebra.hpp"
#include "mes/term.hpp"

// The free strong monad on a signature: unit, functorial action, Kleisli
// composition, the strength (variable pairing) and the unique-extension
// operator for parameterised evaluation in a finite algebra.

namespace mes {

// eta_A(a) = Var(a); throws when a is not in A.
Term unit_term(const FinSet& a, const std::string& elem);

// Relabels every variable along f; the tree shape is preserved.
Term map_term(const FinFun& f, const Term& t);

// Replaces every Var(b) of t by w.at(b).
Term substitute(const Term& t, const KleisliMap& w);

// (w1{w2})(c) = w1(c) with variables replaced via w2; requires
// w1.arity == w2.coarity.
KleisliMap kleisli_compose(const KleisliMap& w1, const KleisliMap& w2);

// phi_{V,A} at a fixed v: every Var(a) becomes Var(<v,a>).
Term strength(const FinSet& v_set, const std::string& v, const Term& t);

// V (x) w : <v,c> |-> strength(V, v, w(c)).
KleisliMap ext(const FinSet& v_set, const KleisliMap& w);

// The unique extension f#: evaluates t in alg under the environment
// x |-> f(<v,x>), for f: V x X -> Y and (Y,t_alg) an algebra.
std::string unique_extension(const FiniteAlgebra& alg, const FinFun& f,
                             const FinSet& v_set, const std::string& v,
                             const FinSet& x_set, const Term& t);

// All terms over variables A with depth <= depth_bound, in canonical order.
std::vector<Term> enumerate_terms(const Signature& sig, const FinSet& a,
                                  std::size_t depth_bound);

}  // namespace mes
