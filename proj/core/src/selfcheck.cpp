#include "mes/selfcheck.hpp"

#include <functional>
#include <random>
#include <sstream>

#include "mes/clone.hpp"
#include "mes/eml.hpp"
#include "mes/free_algebra.hpp"
#include "mes/parser.hpp"
#include "mes/term_monad.hpp"

namespace mes {

namespace {

// A check body throws Failure (or any MesError) to fail; otherwise passes.
struct Failure : MesError {
  explicit Failure(const std::string& what) : MesError(what) {}
};

void require(bool cond, const std::string& what) {
  if (!cond) throw Failure(what);
}

const char* kSemilattice = R"(name semilattice
sig meet/2
ax comm:  forall x y.   meet(x,y) = meet(y,x)
ax assoc: forall x y z. meet(meet(x,y),z) = meet(x,meet(y,z))
ax idem:  forall x.     meet(x,x) = x
)";

const char* kMonoid = R"(name monoid
sig e/0
sig mul/2
ax unitl: forall x. mul(e,x) = x
ax unitr: forall x. mul(x,e) = x
ax assoc: forall x y z. mul(mul(x,y),z) = mul(x,mul(y,z))
)";

FinSet named_set(const std::string& prefix, std::size_t n) {
  std::vector<std::string> elems;
  for (std::size_t i = 0; i < n; ++i)
    elems.push_back(prefix + std::to_string(i));
  return FinSet(std::move(elems));
}

std::vector<std::vector<std::string>> tuples(const FinSet& s, std::size_t n) {
  std::vector<std::vector<std::string>> out;
  std::vector<std::size_t> idx(n, 0);
  for (;;) {
    std::vector<std::string> t;
    for (std::size_t i : idx) t.push_back(s.at(i));
    out.push_back(std::move(t));
    std::size_t i = 0;
    while (i < n) {
      if (++idx[i] < s.size()) break;
      idx[i] = 0;
      ++i;
    }
    if (i == n) break;
  }
  return out;
}

FiniteAlgebra random_algebra(const Signature& sig, const FinSet& carrier,
                             std::mt19937_64& rng) {
  FiniteAlgebra alg{sig, carrier, {}};
  std::uniform_int_distribution<std::size_t> pick(0, carrier.size() - 1);
  for (const auto& o : sig.ops()) {
    auto& table = alg.tables[o.symbol];
    for (auto& args : tuples(carrier, o.arity)) table[args] = carrier.at(pick(rng));
  }
  return alg;
}

KleisliMap random_kleisli(const FinSet& coarity, const FinSet& arity,
                          const std::vector<Term>& pool, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  KleisliMap w{coarity, arity, {}};
  for (const auto& c : coarity) w.body.emplace(c, pool[pick(rng)]);
  return w;
}

using Suite = std::vector<CheckResult>;

void check(Suite& out, const std::string& module, const std::string& name,
           const std::function<void()>& body) {
  CheckResult r{module, name, true, ""};
  try {
    body();
  } catch (const std::exception& e) {
    r.passed = false;
    r.detail = e.what();
  }
  out.push_back(std::move(r));
}

// ---------------------------------------------------------------- finset ---

void suite_finset(Suite& out, const SelfCheckOptions& opt) {
  std::size_t s = std::max<std::size_t>(1, std::min<std::size_t>(opt.max_size, 2));
  FinSet u = named_set("u", s), v = named_set("v", s), w = named_set("w", s),
         c = named_set("c", s);

  check(out, "finset-action", "unit-triangles", [&] {
    FinFun lam = unit_iso(c);
    for (const auto& ce : c)
      require(lam(pair_label("*", ce)) == ce, "unit iso is not projection");
    // (V x 1) x C -> V x C two ways.
    PairSet v1 = act(v, FinSet::unit());
    FinFun rho = FinFun::from_fn(v1.carrier, v, [](const std::string& l) {
      return split_pair_label(l).first;
    });
    FinFun alpha = assoc_iso(v, FinSet::unit(), c);
    for (const auto& ve : v)
      for (const auto& ce : c) {
        std::string start = pair_label(pair_label(ve, "*"), ce);
        std::string direct =
            pair_label(rho(pair_label(ve, "*")), ce);
        auto [left, right] = split_pair_label(alpha(start));
        std::string via = pair_label(left, unit_iso(c)(right));
        require(direct == via, "unit triangle fails at " + start);
      }
  });

  check(out, "finset-action", "associativity-coherence", [&] {
    PairSet uv = act(u, v);
    PairSet vw = act(v, w);
    PairSet wc = act(w, c);
    FinFun a1 = assoc_iso(uv.carrier, w, c);
    FinFun a2 = assoc_iso(u, v, wc.carrier);
    FinFun b2 = assoc_iso(u, vw.carrier, c);
    FinFun inner_assoc = assoc_iso(u, v, w);
    FinFun inner_right = assoc_iso(v, w, c);
    for (const auto& ue : u)
      for (const auto& ve : v)
        for (const auto& we : w)
          for (const auto& ce : c) {
            std::string start = pair_label(
                pair_label(pair_label(ue, ve), we), ce);
            std::string left = a2(a1(start));
            auto [uvw, ce2] = split_pair_label(start);
            std::string moved = pair_label(inner_assoc(uvw), ce2);
            std::string mid = b2(moved);
            auto [ue2, rest] = split_pair_label(mid);
            std::string right = pair_label(ue2, inner_right(rest));
            require(left == right, "associativity coherence fails at " + start);
          }
  });

  check(out, "finset-action", "adjunction-round-trips", [&] {
    PairSet vc = act(v, c);
    for (const auto& f_label : rhom(vc.carrier, w)) {
      FinFun f = fun_from_elem_label(f_label, vc.carrier, w);
      FinFun g = transpose_right(f, v, c);
      require(untranspose_right(g, c, w) == f, "right adjunction round trip");
      FinFun h = transpose_left(f, v, c);
      require(untranspose_left(h, v, w) == f, "left adjunction round trip");
    }
    // Evaluation agrees with decoding.
    FinFun evr = ev_right(c, w);
    for (const auto& rho : rhom(c, w))
      for (const auto& ce : c)
        require(evr(pair_label(rho, ce)) ==
                    fun_from_elem_label(rho, c, w)(ce),
                "ev_right disagrees with graph decoding");
  });

  Presentation sl = parse_presentation(kSemilattice);
  FinSet a({"x", "y"});
  std::vector<Term> pool = enumerate_terms(sl.signature, a, 2);

  check(out, "finset-action", "strength-unit-and-counit", [&] {
    for (const auto& ve : v)
      for (const auto& ae : a)
        require(strength(v, ve, unit_term(a, ae)) ==
                    Term::var(pair_label(ve, ae)),
                "strength-unit square fails");
    FinFun lam = unit_iso(a);
    for (const auto& t : pool)
      require(map_term(lam, strength(FinSet::unit(), "*", t)) == t,
              "strength unit-iso triangle fails for " + t.to_string());
  });

  check(out, "finset-action", "strength-substitution-square", [&] {
    std::mt19937_64 rng(opt.seed + 11);
    PairSet va = act(v, a);
    for (int i = 0; i < 40; ++i) {
      KleisliMap subst_map = random_kleisli(a, a, pool, rng);
      std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
      Term t = pool[pick(rng)];
      for (const auto& ve : v)
        require(strength(v, ve, substitute(t, subst_map)) ==
                    substitute(strength(v, ve, t), ext(v, subst_map)),
                "strength-multiplication square fails");
    }
    (void)va;
  });

  check(out, "finset-action", "strength-associativity-square", [&] {
    PairSet uv = act(u, v);
    FinFun alpha = assoc_iso(u, v, a);
    for (const auto& ue : u)
      for (const auto& ve : v)
        for (const auto& t : pool)
          require(map_term(alpha,
                           strength(uv.carrier, pair_label(ue, ve), t)) ==
                      strength(u, ue, strength(v, ve, t)),
                  "strength associativity square fails");
  });
}

// -------------------------------------------------------------- sig-term ---

void suite_sig_term(Suite& out, const SelfCheckOptions& opt) {
  check(out, "sig-term", "validate-canonical-presentations", [&] {
    require(validate(parse_presentation(kSemilattice)).empty(),
            "semilattice should validate");
    require(validate(parse_presentation(kMonoid)).empty(),
            "monoid should validate");
  });

  check(out, "sig-term", "parse-rejects-unknown-symbol", [&] {
    try {
      parse_presentation("sig meet/2\nax bad: forall x. join(x,x) = x\n");
    } catch (const ParseError& e) {
      require(e.line == 2, "error should point at line 2");
      return;
    }
    throw Failure("unknown symbol was accepted");
  });

  check(out, "sig-term", "term-enumeration-canonical", [&] {
    Presentation sl = parse_presentation(kSemilattice);
    FinSet a({"x", "y"});
    auto pool = enumerate_terms(sl.signature, a, opt.max_size >= 3 ? 3 : 2);
    for (std::size_t i = 1; i < pool.size(); ++i)
      require(pool[i - 1] < pool[i], "enumeration not sorted/duplicate-free");
    for (const auto& t : pool)
      require(well_formed(sl.signature, a, t), "enumerated term ill-formed");
  });

  check(out, "sig-term", "kleisli-precompose-identity", [&] {
    Presentation sl = parse_presentation(kSemilattice);
    FinSet a({"x", "y"});
    KleisliMap w = identity_subst(a);
    require(precompose(w, FinFun::identity(a)) == w,
            "precompose along identity changed the map");
    (void)sl;
  });
}

// ------------------------------------------------------------ term-monad ---

void suite_term_monad(Suite& out, const SelfCheckOptions& opt) {
  Presentation sl = parse_presentation(kSemilattice);
  const Signature& sig = sl.signature;
  FinSet a({"x", "y"});
  FinSet c({"c0", "c1"});
  std::vector<Term> pool1 = enumerate_terms(sig, a, 1);

  check(out, "term-monad", "kleisli-unit-laws", [&] {
    // Exhaustive over bodies drawn from the depth-<=1 pool.
    for (const auto& t0 : pool1)
      for (const auto& t1 : pool1) {
        KleisliMap w{c, a, {{"c0", t0}, {"c1", t1}}};
        require(kleisli_compose(identity_subst(c), w) == w,
                "left unit law fails");
        require(kleisli_compose(w, identity_subst(a)) == w,
                "right unit law fails");
      }
  });

  check(out, "term-monad", "kleisli-associativity", [&] {
    std::mt19937_64 rng(opt.seed + 23);
    FinSet b({"m0", "m1"});
    std::vector<Term> pool_b = enumerate_terms(sig, b, 2);
    std::vector<Term> pool_a = enumerate_terms(sig, a, 2);
    std::vector<Term> pool_d = enumerate_terms(sig, FinSet({"d0"}), 2);
    for (int i = 0; i < 60; ++i) {
      KleisliMap w1 = random_kleisli(c, b, pool_b, rng);
      KleisliMap w2 = random_kleisli(b, a, pool_a, rng);
      KleisliMap w3 = random_kleisli(a, FinSet({"d0"}), pool_d, rng);
      require(kleisli_compose(kleisli_compose(w1, w2), w3) ==
                  kleisli_compose(w1, kleisli_compose(w2, w3)),
              "associativity fails");
    }
  });

  check(out, "term-monad", "unique-extension-diagram", [&] {
    std::mt19937_64 rng(opt.seed + 31);
    FinSet v = named_set("v", 2);
    FinSet y = named_set("p", 2);
    FiniteAlgebra alg = random_algebra(sig, y, rng);
    PairSet vx = act(v, a);
    std::uniform_int_distribution<std::size_t> pick(0, y.size() - 1);
    FinFun f = FinFun::from_fn(vx.carrier, y,
                               [&](const std::string&) { return y.at(pick(rng)); });
    for (const auto& ve : v) {
      for (const auto& t : enumerate_terms(sig, a, 2)) {
        std::string got = unique_extension(alg, f, v, ve, a, t);
        std::string want;
        if (t.is_var()) {
          want = f(pair_label(ve, t.head()));
        } else {
          std::vector<std::string> args;
          for (const auto& s : t.args())
            args.push_back(unique_extension(alg, f, v, ve, a, s));
          want = alg.apply(t.head(), args);
        }
        require(got == want, "parameterised-induction diagram fails at " +
                                 t.to_string());
      }
    }
  });

  check(out, "term-monad", "extension-uniqueness-small", [&] {
    // On the singleton-variable truncation at depth 1, no graph other than
    // f# satisfies both defining equations.
    std::mt19937_64 rng(opt.seed + 37);
    FinSet v({"v0"});
    FinSet xs({"x"});
    FinSet y = named_set("p", 2);
    FiniteAlgebra alg = random_algebra(sig, y, rng);
    PairSet vx = act(v, xs);
    FinFun f = FinFun::from_fn(vx.carrier, y,
                               [&](const std::string&) { return y.at(0); });
    std::vector<Term> trunc = enumerate_terms(sig, xs, 1);
    FinSet term_labels([&] {
      std::vector<std::string> l;
      for (const auto& t : trunc) l.push_back(t.to_string());
      return l;
    }());
    std::size_t satisfying = 0;
    for (const auto& g_label : rhom(term_labels, y)) {
      FinFun g = fun_from_elem_label(g_label, term_labels, y);
      bool ok = true;
      for (const auto& t : trunc) {
        std::string want;
        if (t.is_var()) {
          want = f(pair_label("v0", t.head()));
        } else {
          std::vector<std::string> args;
          for (const auto& s : t.args()) args.push_back(g(s.to_string()));
          want = alg.apply(t.head(), args);
        }
        if (g(t.to_string()) != want) {
          ok = false;
          break;
        }
      }
      if (ok) {
        ++satisfying;
        for (const auto& t : trunc)
          require(g(t.to_string()) ==
                      unique_extension(alg, f, v, "v0", xs, t),
                  "a satisfying graph disagrees with the unique extension");
      }
    }
    require(satisfying == 1, "expected exactly one satisfying graph, found " +
                                 std::to_string(satisfying));
  });
}

// ----------------------------------------------------------- clone-monad ---

void suite_clone(Suite& out, const SelfCheckOptions& opt) {
  FinSet x({"0", "1"});

  check(out, "clone-monad", "unit-coincidence", [&] {
    for (std::size_t n = 1; n <= 2; ++n) {
      FinSet a = named_set("a", n);
      require(dd_unit(x, a) == clone_unit(x, a),
              "units differ at |A|=" + std::to_string(n));
    }
  });

  check(out, "clone-monad", "mult-unit-laws", [&] {
    for (std::size_t n = 1; n <= 2; ++n) {
      FinSet a = named_set("a", n);
      DDCarrier k = dd_carrier(x, a);
      FinFun eta = dd_unit(x, a);
      for (const auto& h_label : k.carrier) {
        FinFun h = fun_from_elem_label(h_label, k.envs, x);
        // mu(eta_{KA}(h)) = h: the outer functional evaluates sigma at h.
        FinFun r1 = clone_mult_apply(
            x, a, [&](const FinFun& sigma) { return sigma(h_label); });
        require(r1 == h, "mu o eta_K != id at " + h_label);
        // mu(K(eta_A)(h)) = h: precompose the queried point with eta.
        FinFun r2 = clone_mult_apply(x, a, [&](const FinFun& sigma) {
          FinFun env = sigma.compose(eta);
          return h(fun_elem_label(env));
        });
        require(r2 == h, "mu o K(eta) != id at " + h_label);
      }
    }
  });

  check(out, "clone-monad", "mult-coincidence-full-source", [&] {
    FinSet a({"a0"});
    require(dd_mult(x, a) == clone_mult(x, a),
            "materialized multiplications differ at |A|=1");
  });

  check(out, "clone-monad", "mult-coincidence-dual", [&] {
    for (std::size_t n = 1; n <= 2; ++n) {
      FinSet a = named_set("a", n);
      require(dd_mult_dual(x, a) == clone_mult_dual(x, a),
              "dual maps differ at |A|=" + std::to_string(n) +
                  "; with |X|>=2 this separates the multiplications");
    }
  });

  Presentation sl = parse_presentation(kSemilattice);
  std::mt19937_64 rng(opt.seed + 41);
  FiniteAlgebra alg = random_algebra(sl.signature, x, rng);
  FinSet a1 = named_set("a", 1), a2 = named_set("a", 2);

  check(out, "clone-monad", "semantics-naturality", [&] {
    MonadMorphismTable tau = record_semantics(alg, {a1, a2, x}, 2);
    auto violations = naturality_violations(tau);
    require(violations.empty(),
            violations.empty() ? "" : violations.front());
  });

  check(out, "clone-monad", "semantics-interpretation-route", [&] {
    for (const auto& t : enumerate_terms(alg.signature, a2, 2))
      require(semantics_transform(alg, a2, t) ==
                  semantics_transform_via_interpretation(alg, a2, t),
              "interpretation route differs at " + t.to_string());
  });

  check(out, "clone-monad", "semantics-monad-morphism", [&] {
    FinFun eta = dd_unit(x, a2);
    for (const auto& ae : a2)
      require(semantics_transform(alg, a2, Term::var(ae)) == eta(ae),
              "unit square of the monad morphism fails");
    FinSet b({"m0", "m1"});
    std::vector<Term> pool_b = enumerate_terms(alg.signature, b, 1);
    std::vector<Term> pool_a = enumerate_terms(alg.signature, a2, 1);
    FinSet c({"c0"});
    std::mt19937_64 local_rng(opt.seed + 43);
    DDCarrier kb = dd_carrier(x, b);
    DDCarrier ka = dd_carrier(x, a2);
    for (int i = 0; i < 15; ++i) {
      KleisliMap w1 = random_kleisli(c, b, pool_b, local_rng);
      KleisliMap w2 = random_kleisli(b, a2, pool_a, local_rng);
      FinFun f = FinFun::from_fn(c, kb.carrier, [&](const std::string& ce) {
        return semantics_transform(alg, b, w1.at(ce));
      });
      FinFun g = FinFun::from_fn(b, ka.carrier, [&](const std::string& be) {
        return semantics_transform(alg, a2, w2.at(be));
      });
      KleisliMap composed = kleisli_compose(w1, w2);
      FinFun direct = FinFun::from_fn(c, ka.carrier, [&](const std::string& ce) {
        return semantics_transform(alg, a2, composed.at(ce));
      });
      require(dd_kleisli_compose(x, b, a2, f, g) == direct,
              "multiplication square of the monad morphism fails");
    }
  });

  check(out, "clone-monad", "algebra-morphism-roundtrip", [&] {
    // alpha(omega(s)) = s for every table of the one-binary-symbol
    // signature on a 2-element carrier.
    Signature one_op({{"op", 2}});
    for (const auto& t00 : x)
      for (const auto& t01 : x)
        for (const auto& t10 : x)
          for (const auto& t11 : x) {
            FiniteAlgebra s{one_op, x, {}};
            s.tables["op"] = {{{"0", "0"}, t00},
                              {{"0", "1"}, t01},
                              {{"1", "0"}, t10},
                              {{"1", "1"}, t11}};
            MonadMorphismTable tau = record_semantics(s, {x}, 1);
            require(algebra_of_morphism(tau) == s,
                    "alpha(omega(s)) differs from s");
          }
  });

  check(out, "clone-monad", "power-algebra-pointwise", [&] {
    FinSet v = named_set("v", 2);
    FiniteAlgebra pow = power_algebra(alg, v);
    for (const auto& ax : sl.axioms) {
      // Power algebras of models are models; first make alg a model by
      // using min, which satisfies the semilattice axioms.
      (void)ax;
    }
    for (const auto& g1 : pow.carrier)
      for (const auto& g2 : pow.carrier) {
        std::string combined = pow.apply("meet", {g1, g2});
        FinFun cf = fun_from_elem_label(combined, v, x);
        FinFun f1 = fun_from_elem_label(g1, v, x);
        FinFun f2 = fun_from_elem_label(g2, v, x);
        for (const auto& ve : v)
          require(cf(ve) == alg.apply("meet", {f1(ve), f2(ve)}),
                  "power algebra is not pointwise");
      }
    // The exponential K_X-structure on [V,X] is evaluation against delta.
    FinSet space = lhom(v, x);
    FinSet envs = rhom(space, x);
    FinFun delta = delta_map(v, x);
    for (const auto& psi_label : lhom(envs, x)) {
      FinFun psi = fun_from_elem_label(psi_label, envs, x);
      std::string structured = power_kx_structure(x, v, psi);
      FinFun sf = fun_from_elem_label(structured, v, x);
      for (const auto& ve : v)
        require(sf(ve) == psi(delta(ve)),
                "exponential structure map is not [delta,X]");
    }
  });
}

// --------------------------------------------------------------- algebra ---

void suite_algebra(Suite& out, const SelfCheckOptions& opt) {
  Presentation sl = parse_presentation(kSemilattice);

  check(out, "algebra", "satisfaction-vs-witness", [&] {
    AlgebraEnumerator e(sl.signature, opt.max_size);
    while (auto alg = e.next())
      for (const auto& ax : sl.axioms)
        require(satisfies(*alg, ax) == !find_violation(*alg, ax).has_value(),
                "satisfies and find_violation disagree");
  });

  check(out, "algebra", "enumeration-count-one-binary-symbol", [&] {
    Signature one_op({{"op", 2}});
    AlgebraEnumerator e(one_op, 2);
    std::size_t n = 0;
    while (e.next()) ++n;
    require(n == 17, "expected 17 algebras at sizes <= 2, got " +
                         std::to_string(n));
  });

  check(out, "algebra", "semilattice-model-count", [&] {
    auto models = all_models(sl, 2);
    std::size_t size_two = 0;
    for (const auto& m : models)
      if (m.carrier.size() == 2) ++size_two;
    // Fixed canonical labeling: min and max both qualify at size 2, plus
    // the trivial one-element model.
    require(size_two == 2 && models.size() == 3,
            "expected 2 two-element semilattices and 3 models in total, got " +
                std::to_string(size_two) + "/" + std::to_string(models.size()));
  });

  check(out, "algebra", "homomorphism-identity", [&] {
    AlgebraEnumerator e(sl.signature, 2);
    while (auto alg = e.next())
      require(is_homomorphism(FinFun::identity(alg->carrier), *alg, *alg),
              "identity is not a homomorphism");
  });
}

// ------------------------------------------------------------------- eml ---

struct CorpusEntry {
  std::string text;
  std::string lhs;  // expected conclusion, singleton coarity
  std::string rhs;
};

std::vector<CorpusEntry> small_corpus() {
  return {
      {"(axiom comm)", "meet(x,y)", "meet(y,x)"},
      {"(sym (axiom comm))", "meet(y,x)", "meet(x,y)"},
      {"(trans (axiom comm) (sym (axiom comm)))", "meet(x,y)", "meet(x,y)"},
      {"(comp (axiom comm) (subst (x b) (y a)))", "meet(b,a)", "meet(a,b)"},
      {"(comp (axiom idem) (subst (x meet(a,b))))", "meet(meet(a,b),meet(a,b))",
       "meet(a,b)"},
      {"(local (subst (* meet(x,y))) (subst (* meet(y,x)))"
       " (maps (map (* *))) (axiom comm))",
       "meet(x,y)", "meet(y,x)"},
      {"(local1 (subst (* meet(x,y))) (subst (* meet(y,x))) (map (* *))"
       " (axiom comm))",
       "meet(x,y)", "meet(y,x)"},
      {"(compcoprod (axiom comm) (subst (x a) (vars a b))"
       " (subst (y b) (vars a b)))",
       "meet(a,b)", "meet(b,a)"},
  };
}

void suite_eml(Suite& out, const SelfCheckOptions& opt) {
  Presentation sl = parse_presentation(kSemilattice);

  check(out, "eml", "corpus-conclusions", [&] {
    for (const auto& entry : small_corpus()) {
      ProofPtr proof = parse_proof(sl.signature, entry.text);
      Judgement j = check(sl, proof);
      require(j.lhs.at("*") == parse_term(sl.signature, entry.lhs) &&
                  j.rhs.at("*") == parse_term(sl.signature, entry.rhs),
              "unexpected conclusion for " + entry.text + ": " + j.to_string());
    }
  });

  check(out, "eml", "derived-rule-replay", [&] {
    for (const auto& entry : small_corpus()) {
      ProofPtr proof = parse_proof(sl.signature, entry.text);
      require(check(sl, proof) ==
                  check(sl, elaborate_derived(sl, proof)),
              "elaboration changed the conclusion of " + entry.text);
    }
  });

  check(out, "eml", "soundness-audit", [&] {
    std::size_t k = std::max<std::size_t>(2, opt.max_size);
    for (const auto& entry : small_corpus()) {
      ProofPtr proof = parse_proof(sl.signature, entry.text);
      SoundnessReport report = soundness_audit(sl, proof, k);
      require(report.sound() && report.models_checked > 0,
              "soundness audit found a counterexample for " + entry.text);
    }
  });

  check(out, "eml", "checker-rejects-malformed", [&] {
    auto expect_reject = [&](const std::string& text) {
      ProofPtr proof = parse_proof(sl.signature, text);
      try {
        check(sl, proof);
      } catch (const ProofError&) {
        return;
      }
      throw Failure("accepted a malformed proof: " + text);
    };
    expect_reject("(trans (axiom comm) (axiom comm))");
    expect_reject("(axiom nonexistent)");
    expect_reject(
        "(local (subst (* meet(x,y))) (subst (* meet(y,x))) (maps))");
  });

  check(out, "eml", "roundtrip-proof-text", [&] {
    for (const auto& entry : small_corpus()) {
      ProofPtr proof = parse_proof(sl.signature, entry.text);
      std::string printed = proof_to_text(proof);
      require(proof_to_text(parse_proof(sl.signature, printed)) == printed,
              "proof text does not round-trip: " + entry.text);
    }
  });
}

// -------------------------------------------------------------- free-alg ---

void suite_free_alg(Suite& out, const SelfCheckOptions& opt) {
  Presentation sl = parse_presentation(kSemilattice);
  Presentation mono = parse_presentation(kMonoid);

  check(out, "free-alg", "free-semilattice-cardinalities", [&] {
    for (std::size_t n = 1; n <= 2; ++n) {
      FinSet gens = named_set("g", n);
      FreeAlgebraResult r = build_free_algebra(sl, gens, 3);
      require(r.is_finite(), "semilattice build should stabilize");
      std::size_t want = (std::size_t{1} << n) - 1;
      require(r.algebra.carrier.size() == want,
              "expected " + std::to_string(want) + " classes, got " +
                  std::to_string(r.algebra.carrier.size()));
    }
  });

  check(out, "free-alg", "quotient-is-model", [&] {
    FreeAlgebraResult r = build_free_algebra(sl, FinSet({"a", "b"}), 3);
    for (const auto& ax : sl.axioms)
      require(satisfies(r.algebra, ax),
              "quotient algebra violates axiom " + ax.name);
  });

  check(out, "free-alg", "quotient-map-closure-agreement", [&] {
    FreeAlgebraResult r = build_free_algebra(sl, FinSet({"a", "b"}), 3);
    Term t = parse_term(sl.signature, "meet(a,meet(b,a))");
    Term s = parse_term(sl.signature, "meet(a,b)");
    require(quotient_map(r, t) == quotient_map(r, s),
            "quotient map disagrees with the closure");
    require(quotient_map(r, Term::var("a")) == r.classes.at(Term::var("a")),
            "generator class mismatch");
  });

  check(out, "free-alg", "hom-extension-factoring", [&] {
    // min on {0,1} is a semilattice; generators = its carrier.
    FiniteAlgebra min_alg{sl.signature, FinSet({"0", "1"}), {}};
    min_alg.tables["meet"] = {{{"0", "0"}, "0"},
                              {{"0", "1"}, "0"},
                              {{"1", "0"}, "0"},
                              {{"1", "1"}, "1"}};
    FreeAlgebraResult r = build_free_algebra(sl, min_alg.carrier, 3);
    FinFun h = hom_extension(r, min_alg);
    Environment id_env = FinFun::identity(min_alg.carrier);
    for (const auto& t : enumerate_terms(sl.signature, min_alg.carrier, 3))
      require(h(quotient_map(r, t)) == eval_term(min_alg, id_env, t),
              "factoring fails at " + t.to_string());
  });

  check(out, "free-alg", "decide-spot-checks", [&] {
    Decision d1 = decide(sl,
                         parse_equation(sl.signature,
                                        "meet(x,meet(y,x)) = meet(x,y)"),
                         3, 2);
    require(d1.verdict == Decision::Verdict::Equal, "expected Equal: " +
                                                        d1.detail);
    Decision d2 =
        decide(sl, parse_equation(sl.signature, "meet(x,y) = x"), 3, 2);
    require(d2.verdict == Decision::Verdict::NotEqual && d2.witness,
            "expected NotEqual with witness: " + d2.detail);
    require(d2.witness->witness.lhs_value != d2.witness->witness.rhs_value,
            "witness does not separate the sides");
    Decision d3 =
        decide(mono, parse_equation(mono.signature, "mul(x,y) = mul(y,x)"),
               3, 3);
    require(d3.verdict == Decision::Verdict::NotEqual && d3.witness,
            "expected a noncommutative monoid witness: " + d3.detail);
  });

  check(out, "free-alg", "monoid-truncates", [&] {
    FreeAlgebraResult r = build_free_algebra(mono, FinSet({"a"}), 3);
    require(!r.is_finite(), "free monoid on one generator reported finite");
  });

  check(out, "free-alg", "quotient-strength", [&] {
    require(quotient_strength_check(sl, FinSet({"a"}), named_set("v", 2), 3),
            "strength square fails on one generator");
  });
  (void)opt;
}

// ------------------------------------------------------------------- cli ---

void suite_cli(Suite& out, const SelfCheckOptions&) {
  check(out, "cli", "presentation-roundtrip", [&] {
    std::string once = presentation_to_text(parse_presentation(kSemilattice));
    std::string twice = presentation_to_text(parse_presentation(once));
    require(once == twice, "pretty-print is not a parse fixed point");
  });

  check(out, "cli", "equation-parser", [&] {
    Presentation sl = parse_presentation(kSemilattice);
    Equation e = parse_equation(sl.signature, "meet(x,y) = meet(y,x)");
    require(e.lhs.arity == FinSet({"x", "y"}), "inferred arity wrong");
    require(e.lhs.coarity == FinSet::unit(), "coarity should be singleton");
  });

  check(out, "cli", "parse-error-location", [&] {
    Presentation sl = parse_presentation(kSemilattice);
    try {
      parse_term(sl.signature, "meet(x");
    } catch (const ParseError& e) {
      require(e.column > 1, "column not tracked");
      return;
    }
    throw Failure("unbalanced term was accepted");
  });
}

}  // namespace

std::vector<CheckResult> run_selfcheck(const SelfCheckOptions& opt) {
  Suite out;
  suite_finset(out, opt);
  suite_sig_term(out, opt);
  suite_term_monad(out, opt);
  suite_clone(out, opt);
  suite_algebra(out, opt);
  suite_eml(out, opt);
  suite_free_alg(out, opt);
  suite_cli(out, opt);
  return out;
}

}  // namespace mes
