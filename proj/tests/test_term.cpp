#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "mes/term.hpp"

using namespace mes;

namespace {

Signature semilattice_sig() { return Signature({{"meet", 2}}); }

Term v(const std::string& n) { return Term::var(n); }
Term meet(Term a, Term b) { return Term::app("meet", {std::move(a), std::move(b)}); }

}  // namespace

TEST_CASE("term construction, depth, printing") {
  Term x = v("x");
  CHECK(x.is_var());
  CHECK(x.depth() == 0);
  CHECK(x.to_string() == "x");

  Term t = meet(v("x"), meet(v("y"), v("x")));
  CHECK(!t.is_var());
  CHECK(t.head() == "meet");
  CHECK(t.depth() == 2);
  CHECK(t.to_string() == "meet(x,meet(y,x))");

  Term c = Term::app("e", {});
  CHECK(c.depth() == 1);
  CHECK(c.to_string() == "e");
}

TEST_CASE("term equality and canonical order") {
  CHECK(v("x") == v("x"));
  CHECK(v("x") != v("y"));
  CHECK(meet(v("x"), v("y")) == meet(v("x"), v("y")));
  CHECK(meet(v("x"), v("y")) != meet(v("y"), v("x")));
  // Var before App.
  CHECK(v("z") < meet(v("a"), v("a")));
  CHECK(v("a") < v("b"));
  // Strict weak order: irreflexive, asymmetric on a small pool.
  std::vector<Term> pool = {v("x"), v("y"), meet(v("x"), v("x")),
                            meet(v("x"), v("y")), meet(meet(v("x"), v("y")), v("x"))};
  for (const auto& a : pool)
    for (const auto& b : pool) {
      CHECK(!(a < a));
      if (a < b) CHECK(!(b < a));
      if (!(a < b) && !(b < a)) CHECK(a == b);
    }
}

TEST_CASE("vars_of") {
  CHECK(vars_of(v("x")) == FinSet({"x"}));
  CHECK(vars_of(meet(v("x"), meet(v("y"), v("x")))) == FinSet({"x", "y"}));
  Term closed = Term::app("e", {});
  CHECK(vars_of(closed).empty());
}

TEST_CASE("well_formed and violation paths") {
  Signature sig = semilattice_sig();
  FinSet a({"x", "y"});
  CHECK(well_formed(sig, a, meet(v("x"), v("y"))));
  CHECK(!well_formed(sig, a, v("z")));
  CHECK(!well_formed(sig, a, Term::app("join", {v("x"), v("y")})));
  CHECK(!well_formed(sig, a, Term::app("meet", {v("x")})));

  // The violation names the offending subterm path.
  Term bad = meet(v("x"), meet(v("y"), v("z")));
  std::vector<std::string> out;
  collect_term_violations(sig, a, bad, "root", out);
  REQUIRE(out.size() == 1);
  CHECK(out[0].find("root.1.1") != std::string::npos);
}

TEST_CASE("signature lookup") {
  Signature sig({{"meet", 2}, {"e", 0}});
  CHECK(sig.has("meet"));
  CHECK(sig.arity("meet") == 2);
  CHECK(sig.arity("e") == 0);
  CHECK(!sig.has("join"));

  // Duplicate symbols are caught by presentation validation.
  Presentation p;
  p.signature = Signature({{"f", 1}, {"f", 2}});
  auto errs = validate(p);
  REQUIRE(!errs.empty());
  CHECK(errs[0].find("duplicate symbol") != std::string::npos);
}

TEST_CASE("kleisli maps: identity, singleton, lookup") {
  FinSet a({"x", "y"});
  KleisliMap id = identity_subst(a);
  CHECK(id.coarity == a);
  CHECK(id.arity == a);
  CHECK(id.at("x") == v("x"));
  CHECK_THROWS_AS(id.at("zz"), MesError);

  KleisliMap s = singleton_kleisli(a, meet(v("x"), v("y")));
  CHECK(s.coarity == FinSet::unit());
  CHECK(s.arity == a);
  CHECK(s.at(s.coarity.at(0)) == meet(v("x"), v("y")));
}

TEST_CASE("precompose reindexes the coarity") {
  FinSet c({"p", "q"}), c2({"r"});
  FinSet a({"x", "y"});
  KleisliMap u{c, a, {{"p", v("x")}, {"q", meet(v("x"), v("y"))}}};
  FinFun e = FinFun::constant(c2, c, "q");
  KleisliMap r = precompose(u, e);
  CHECK(r.coarity == c2);
  CHECK(r.arity == a);
  CHECK(r.at("r") == meet(v("x"), v("y")));
}

TEST_CASE("validate accepts the semilattice presentation") {
  FinSet xy({"x", "y"});
  Presentation p;
  p.name = "semilattice";
  p.signature = semilattice_sig();
  p.axioms.push_back(
      {"comm", singleton_kleisli(xy, meet(v("x"), v("y"))),
       singleton_kleisli(xy, meet(v("y"), v("x")))});
  CHECK(validate(p).empty());
  CHECK(p.find_axiom("comm") != nullptr);
  CHECK(p.find_axiom("nope") == nullptr);
}

TEST_CASE("validate failure modes") {
  FinSet xy({"x", "y"});
  auto mk = [&](const Term& l, const Term& r) {
    return Equation{"e1", singleton_kleisli(xy, l), singleton_kleisli(xy, r)};
  };

  // Duplicate axiom names.
  Presentation p1;
  p1.signature = semilattice_sig();
  p1.axioms = {mk(v("x"), v("y")), mk(v("y"), v("x"))};
  CHECK(!validate(p1).empty());

  // Ill-formed term (wrong arity), with a path in the message.
  Presentation p2;
  p2.signature = semilattice_sig();
  p2.axioms = {mk(Term::app("meet", {v("x")}), v("x"))};
  auto errs = validate(p2);
  REQUIRE(!errs.empty());
  bool has_path = false;
  for (const auto& e : errs)
    if (e.find("lhs@") != std::string::npos) has_path = true;
  CHECK(has_path);

  // Non-parallel sides.
  Presentation p3;
  p3.signature = semilattice_sig();
  Equation bad{"b", singleton_kleisli(xy, v("x")),
               singleton_kleisli(FinSet({"x"}), v("x"))};
  p3.axioms = {bad};
  CHECK(!validate(p3).empty());
}
