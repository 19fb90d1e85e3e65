#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "mes/algebra.hpp"

using namespace mes;

namespace {

Signature semilattice_sig() { return Signature({{"meet", 2}}); }

Term v(const std::string& n) { return Term::var(n); }
Term meet(Term a, Term b) {
  return Term::app("meet", {std::move(a), std::move(b)});
}

FiniteAlgebra min_algebra() {
  FiniteAlgebra alg;
  alg.signature = semilattice_sig();
  alg.carrier = FinSet({"0", "1"});
  for (const auto& p : alg.carrier)
    for (const auto& q : alg.carrier)
      alg.tables["meet"][{p, q}] = std::min(p, q);
  return alg;
}

FiniteAlgebra left_projection_algebra() {
  FiniteAlgebra alg;
  alg.signature = semilattice_sig();
  alg.carrier = FinSet({"0", "1"});
  for (const auto& p : alg.carrier)
    for (const auto& q : alg.carrier) alg.tables["meet"][{p, q}] = p;
  return alg;
}

Presentation semilattice() {
  FinSet xy({"x", "y"}), xyz({"x", "y", "z"});
  Presentation p;
  p.name = "semilattice";
  p.signature = semilattice_sig();
  p.axioms = {
      {"comm", singleton_kleisli(xy, meet(v("x"), v("y"))),
       singleton_kleisli(xy, meet(v("y"), v("x")))},
      {"assoc", singleton_kleisli(xyz, meet(meet(v("x"), v("y")), v("z"))),
       singleton_kleisli(xyz, meet(v("x"), meet(v("y"), v("z"))))},
      {"idem", singleton_kleisli(FinSet({"x"}), meet(v("x"), v("x"))),
       singleton_kleisli(FinSet({"x"}), v("x"))}};
  return p;
}

Environment env2(const std::string& xv, const std::string& yv,
                 const FinSet& carrier) {
  return FinFun::from_fn(FinSet({"x", "y"}), carrier,
                         [&](const std::string& s) {
                           return s == "x" ? xv : yv;
                         });
}

}  // namespace

TEST_CASE("eval_term") {
  FiniteAlgebra alg = min_algebra();
  Environment e = env2("1", "0", alg.carrier);
  CHECK(eval_term(alg, e, v("x")) == "1");
  CHECK(eval_term(alg, e, v("y")) == "0");
  CHECK(eval_term(alg, e, meet(v("x"), v("y"))) == "0");
  CHECK(eval_term(alg, e, meet(v("x"), v("x"))) == "1");
  CHECK(eval_term(alg, e, meet(meet(v("x"), v("x")), v("x"))) == "1");
  CHECK_THROWS_AS(eval_term(alg, e, v("zz")), MesError);
  CHECK_THROWS_AS(eval_term(alg, e, Term::app("join", {v("x"), v("y")})),
                  MesError);
}

TEST_CASE("interpret") {
  FiniteAlgebra alg = min_algebra();
  FinSet xy({"x", "y"});

  // Identity substitution interprets as ev_right.
  CHECK(interpret(alg, identity_subst(xy)) == ev_right(xy, alg.carrier));

  // Constant-variable term: the graph is constant in the environment only
  // through that variable.
  KleisliMap u = singleton_kleisli(xy, meet(v("x"), v("y")));
  FinFun g = interpret(alg, u);
  std::string star = FinSet::unit().at(0);
  for (const auto& rho_label : rhom(xy, alg.carrier)) {
    FinFun rho = fun_from_elem_label(rho_label, xy, alg.carrier);
    CHECK(g(pair_label(rho_label, star)) == std::min(rho("x"), rho("y")));
  }
}

TEST_CASE("satisfies and find_violation") {
  Presentation p = semilattice();
  FiniteAlgebra good = min_algebra();
  FiniteAlgebra bad = left_projection_algebra();

  for (const auto& ax : p.axioms) {
    CHECK(satisfies(good, ax));
    CHECK(!find_violation(good, ax).has_value());
  }
  // Reflexive equations hold in any algebra.
  FinSet xy({"x", "y"});
  Equation refl{"refl", singleton_kleisli(xy, meet(v("x"), v("y"))),
                singleton_kleisli(xy, meet(v("x"), v("y")))};
  CHECK(satisfies(bad, refl));

  // Left projection fails commutativity with an explicit witness.
  const Equation* comm = p.find_axiom("comm");
  REQUIRE(comm != nullptr);
  CHECK(!satisfies(bad, *comm));
  auto w = find_violation(bad, *comm);
  REQUIRE(w.has_value());
  CHECK(w->lhs_value != w->rhs_value);
  CHECK(w->lhs_value == w->env("x"));
  CHECK(w->rhs_value == w->env("y"));
  // But it does satisfy idempotence and associativity.
  CHECK(satisfies(bad, *p.find_axiom("idem")));
  CHECK(satisfies(bad, *p.find_axiom("assoc")));
}

TEST_CASE("is_homomorphism") {
  FiniteAlgebra alg = min_algebra();
  CHECK(is_homomorphism(FinFun::identity(alg.carrier), alg, alg));

  // Constant map to an idempotent element.
  CHECK(is_homomorphism(FinFun::constant(alg.carrier, alg.carrier, "0"), alg,
                        alg));
  CHECK(is_homomorphism(FinFun::constant(alg.carrier, alg.carrier, "1"), alg,
                        alg));

  // The swap 0 <-> 1 turns min into max, so it is not an endomorphism of min.
  auto swap = FinFun::from_fn(alg.carrier, alg.carrier,
                              [](const std::string& s) {
                                return s == "0" ? "1" : "0";
                              });
  CHECK(!is_homomorphism(swap, alg, alg));
}

TEST_CASE("algebra enumeration counts") {
  // One binary symbol: 1 algebra at size 1, 2^4 = 16 at size 2.
  AlgebraEnumerator en(semilattice_sig(), 2);
  std::size_t n = 0, size1 = 0, size2 = 0;
  while (auto a = en.next()) {
    ++n;
    if (a->carrier.size() == 1) ++size1;
    if (a->carrier.size() == 2) ++size2;
    // Tables are total.
    for (const auto& p : a->carrier)
      for (const auto& q : a->carrier)
        CHECK(a->carrier.contains(a->apply("meet", {p, q})));
  }
  CHECK(size1 == 1);
  CHECK(size2 == 16);
  CHECK(n == 17);
}

TEST_CASE("model enumeration for the semilattice presentation") {
  Presentation p = semilattice();
  auto models = all_models(p, 2);
  // Size 1: the trivial algebra.  Size 2 on {0,1}: min and max.
  std::size_t size1 = 0, size2 = 0;
  for (const auto& m : models) {
    for (const auto& ax : p.axioms) CHECK(satisfies(m, ax));
    (m.carrier.size() == 1 ? size1 : size2)++;
  }
  CHECK(size1 == 1);
  CHECK(size2 == 2);
  CHECK(models.size() == 3);

  // min is among them.
  CHECK(std::count(models.begin(), models.end(), min_algebra()) == 1);
}

TEST_CASE("enumeration is deterministic") {
  Presentation p = semilattice();
  auto a = all_models(p, 2);
  auto b = all_models(p, 2);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);
}
