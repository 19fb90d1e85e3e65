#include "mes/clone.hpp"

#include <cmath>

#include "mes/term_monad.hpp"

namespace mes {

namespace {
constexpr std::size_t kCarrierCap = 1u << 20;

std::size_t checked_pow(std::size_t base, std::size_t exp) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (base != 0 && r > kCarrierCap / base + 1)
      throw MesError("functional carrier too large to enumerate");
    r *= base;
    if (r > kCarrierCap)
      throw MesError("functional carrier too large to enumerate");
  }
  return r;
}

FinFun decode_functional(const std::string& label, const FinSet& envs,
                         const FinSet& x) {
  return fun_from_elem_label(label, envs, x);
}
}  // namespace

DDCarrier dd_carrier(const FinSet& x, const FinSet& a) {
  FinSet envs = rhom(a, x);
  checked_pow(x.size(), envs.size());
  FinSet carrier = lhom(envs, x);
  return DDCarrier{x, a, std::move(envs), std::move(carrier)};
}

FinFun dd_unit(const FinSet& x, const FinSet& a) {
  DDCarrier k = dd_carrier(x, a);
  return FinFun::from_fn(a, k.carrier, [&](const std::string& elem) {
    FinFun fn = FinFun::from_fn(k.envs, x, [&](const std::string& rho) {
      return fun_from_elem_label(rho, a, x)(elem);
    });
    return fun_elem_label(fn);
  });
}

FinFun clone_unit(const FinSet& x, const FinSet& a) {
  // Transpose of the evaluation counit under the left-hom adjunction.
  FinSet envs = rhom(a, x);
  return transpose_left(ev_right(a, x), envs, a);
}

FinFun delta_map(const FinSet& v, const FinSet& x) {
  FinSet space = lhom(v, x);
  FinSet cod = rhom(space, x);
  return FinFun::from_fn(v, cod, [&](const std::string& elem) {
    FinFun fn = FinFun::from_fn(space, x, [&](const std::string& g) {
      return fun_from_elem_label(g, v, x)(elem);
    });
    return fun_elem_label(fn);
  });
}

FinFun dd_mult_dual(const FinSet& x, const FinSet& a) {
  return delta_map(rhom(a, x), x);
}

FinFun dd_mult_apply(const FinSet& x, const FinSet& a, const FinFun& phi) {
  FinFun dual = dd_mult_dual(x, a);
  FinSet envs = rhom(a, x);
  return FinFun::from_fn(envs, x,
                         [&](const std::string& rho) { return phi(dual(rho)); });
}

FinFun dd_mult(const FinSet& x, const FinSet& a) {
  DDCarrier k = dd_carrier(x, a);
  FinSet inner_envs = rhom(k.carrier, x);
  checked_pow(x.size(), inner_envs.size());
  FinSet source = lhom(inner_envs, x);
  FinFun dual = dd_mult_dual(x, a);
  return FinFun::from_fn(source, k.carrier, [&](const std::string& phi_label) {
    FinFun phi = decode_functional(phi_label, inner_envs, x);
    FinFun result = FinFun::from_fn(k.envs, x, [&](const std::string& rho) {
      return phi(dual(rho));
    });
    return fun_elem_label(result);
  });
}

namespace {
// The point of C(K_X A, X) that the interpretation composite feeds the
// outer functional for a given environment: sigma_rho(h) is obtained by
// forming the K_X(X) element tau |-> h(a |-> tau(rho(a))) (the image of
// (rho,h) under the strength followed by K(ev)) and evaluating it with the
// clone counit, i.e. at the identity of X.
FinFun clone_query_point(const FinSet& x, const FinSet& a,
                         const std::string& rho_label) {
  FinSet envs = rhom(a, x);
  DDCarrier k = dd_carrier(x, a);
  FinSet selfmaps = rhom(x, x);
  FinFun rho = fun_from_elem_label(rho_label, a, x);
  std::string id_label = fun_elem_label(FinFun::identity(x));
  return FinFun::from_fn(k.carrier, x, [&](const std::string& h_label) {
    FinFun h = fun_from_elem_label(h_label, envs, x);
    FinFun kev = FinFun::from_fn(selfmaps, x, [&](const std::string& tau_label) {
      FinFun tau = fun_from_elem_label(tau_label, x, x);
      FinFun env = tau.compose(rho);
      return h(fun_elem_label(env));
    });
    return kev(id_label);
  });
}
}  // namespace

FinFun clone_mult_apply(const FinSet& x, const FinSet& a,
                        const FunctionalQuery& phi) {
  FinSet envs = rhom(a, x);
  return FinFun::from_fn(envs, x, [&](const std::string& rho) {
    return phi(clone_query_point(x, a, rho));
  });
}

FinFun clone_mult_dual(const FinSet& x, const FinSet& a) {
  FinSet envs = rhom(a, x);
  DDCarrier k = dd_carrier(x, a);
  FinSet cod = rhom(k.carrier, x);
  return FinFun::from_fn(envs, cod, [&](const std::string& rho) {
    return fun_elem_label(clone_query_point(x, a, rho));
  });
}

FinFun clone_mult(const FinSet& x, const FinSet& a) {
  DDCarrier k = dd_carrier(x, a);
  FinSet inner_envs = rhom(k.carrier, x);
  checked_pow(x.size(), inner_envs.size());
  FinSet source = lhom(inner_envs, x);
  return FinFun::from_fn(source, k.carrier, [&](const std::string& phi_label) {
    FinFun phi = decode_functional(phi_label, inner_envs, x);
    FinFun result = clone_mult_apply(
        x, a, [&](const FinFun& sigma) { return phi(fun_elem_label(sigma)); });
    return fun_elem_label(result);
  });
}

FinFun clone_strength(const FinSet& x, const FinSet& v, const FinSet& a) {
  PairSet va = act(v, a);
  FinSet envs_a = rhom(a, x);
  FinSet r = rhom(va.carrier, x);
  DDCarrier k_a = dd_carrier(x, a);

  // ehat: C(VxA,X) (x) V -> C(A,X), the transpose of ev o assoc.
  FinFun assoc = assoc_iso(r, v, a);
  FinFun comp = ev_right(va.carrier, x).compose(assoc);
  FinFun ehat = transpose_right(comp, act(r, v).carrier, a);

  // The displayed composite C(VxA,X) (x) (V (x) K_X(A)) -> X.
  PairSet inner = act(v, k_a.carrier);
  FinFun assoc_inv = assoc_iso(r, v, k_a.carrier).inverse();
  FinFun evl = ev_left(envs_a, x);
  PairSet big = act(r, inner.carrier);
  FinFun full = FinFun::from_fn(big.carrier, x, [&](const std::string& lbl) {
    std::string moved = assoc_inv(lbl);
    auto [rv, h] = split_pair_label(moved);
    return evl(pair_label(ehat(rv), h));
  });
  return transpose_left(full, r, inner.carrier);
}

FinFun kx_map(const FinSet& x, const FinSet& a, const FinSet& b,
              const FinFun& f) {
  if (f.dom() != a || f.cod() != b) throw MesError("kx_map: shape mismatch");
  DDCarrier ka = dd_carrier(x, a);
  DDCarrier kb = dd_carrier(x, b);
  return FinFun::from_fn(ka.carrier, kb.carrier, [&](const std::string& h_label) {
    FinFun h = fun_from_elem_label(h_label, ka.envs, x);
    FinFun out = FinFun::from_fn(kb.envs, x, [&](const std::string& sigma_label) {
      FinFun sigma = fun_from_elem_label(sigma_label, b, x);
      return h(fun_elem_label(sigma.compose(f)));
    });
    return fun_elem_label(out);
  });
}

FinFun cleval(const FinSet& x) {
  DDCarrier k = dd_carrier(x, x);
  std::string id_label = fun_elem_label(FinFun::identity(x));
  return FinFun::from_fn(k.carrier, x, [&](const std::string& h_label) {
    return fun_from_elem_label(h_label, k.envs, x)(id_label);
  });
}

FinFun semantics_functional(const FiniteAlgebra& alg, const FinSet& a,
                            const Term& t) {
  FinSet envs = rhom(a, alg.carrier);
  return FinFun::from_fn(envs, alg.carrier, [&](const std::string& rho) {
    return eval_term(alg, fun_from_elem_label(rho, a, alg.carrier), t);
  });
}

std::string semantics_transform(const FiniteAlgebra& alg, const FinSet& a,
                                const Term& t) {
  return fun_elem_label(semantics_functional(alg, a, t));
}

std::string semantics_transform_via_interpretation(const FiniteAlgebra& alg,
                                                   const FinSet& a,
                                                   const Term& t) {
  const FinSet& x = alg.carrier;
  FinSet envs = rhom(a, x);
  FinFun ev = ev_right(a, x);
  Environment id_env = FinFun::identity(x);
  FinFun fn = FinFun::from_fn(envs, x, [&](const std::string& rho) {
    Term staged = strength(envs, rho, t);
    Term over_x = map_term(ev, staged);
    return eval_term(alg, id_env, over_x);
  });
  return fun_elem_label(fn);
}

FinFun dd_kleisli_compose(const FinSet& x, const FinSet& b, const FinSet& a,
                          const FinFun& f, const FinFun& g) {
  FinSet envs_a = rhom(a, x);
  FinSet envs_b = rhom(b, x);
  DDCarrier ka = dd_carrier(x, a);
  return FinFun::from_fn(f.dom(), ka.carrier, [&](const std::string& c) {
    FinFun outer = fun_from_elem_label(f(c), envs_b, x);
    FinFun result = FinFun::from_fn(envs_a, x, [&](const std::string& rho) {
      FinFun sigma = FinFun::from_fn(b, x, [&](const std::string& belem) {
        return fun_from_elem_label(g(belem), envs_a, x)(rho);
      });
      return outer(fun_elem_label(sigma));
    });
    return fun_elem_label(result);
  });
}

const MonadMorphismTable::Entry* MonadMorphismTable::find(
    const FinSet& arity) const {
  for (const auto& e : entries)
    if (e.arity == arity) return &e;
  return nullptr;
}

const std::string& MonadMorphismTable::value(const FinSet& arity,
                                             const Term& t) const {
  const Entry* e = find(arity);
  if (!e) throw MesError("arity not recorded: " + arity.to_string());
  auto it = e->values.find(t);
  if (it == e->values.end())
    throw MesError("term not recorded: " + t.to_string());
  return it->second;
}

MonadMorphismTable record_semantics(const FiniteAlgebra& alg,
                                    const std::vector<FinSet>& arities,
                                    std::size_t depth) {
  MonadMorphismTable tab{alg.signature, alg.carrier, depth, {}};
  for (const auto& a : arities) {
    MonadMorphismTable::Entry e{a, {}};
    for (const auto& t : enumerate_terms(alg.signature, a, depth))
      e.values.emplace(t, semantics_transform(alg, a, t));
    tab.entries.push_back(std::move(e));
  }
  return tab;
}

std::vector<std::string> naturality_violations(const MonadMorphismTable& tau) {
  std::vector<std::string> out;
  for (const auto& ea : tau.entries) {
    for (const auto& eb : tau.entries) {
      if (eb.arity.empty() && !ea.arity.empty()) continue;
      for (const auto& f_label : rhom(ea.arity, eb.arity)) {
        FinFun f = fun_from_elem_label(f_label, ea.arity, eb.arity);
        FinFun kf = kx_map(tau.X, ea.arity, eb.arity, f);
        for (const auto& [t, val] : ea.values) {
          const std::string& lhs = kf(val);
          const std::string& rhs = eb.values.at(map_term(f, t));
          if (lhs != rhs)
            out.push_back("naturality fails for " + t.to_string() +
                          " along " + f.to_string());
        }
      }
    }
  }
  return out;
}

namespace {
std::vector<std::vector<std::string>> carrier_tuples(const FinSet& carrier,
                                                     std::size_t n) {
  std::vector<std::vector<std::string>> out;
  std::vector<std::size_t> idx(n, 0);
  for (;;) {
    std::vector<std::string> t;
    for (std::size_t i : idx) t.push_back(carrier.at(i));
    out.push_back(std::move(t));
    std::size_t i = 0;
    while (i < n) {
      if (++idx[i] < carrier.size()) break;
      idx[i] = 0;
      ++i;
    }
    if (i == n) break;
  }
  return out;
}
}  // namespace

FiniteAlgebra algebra_of_morphism(const MonadMorphismTable& tau) {
  FinFun counit = cleval(tau.X);
  FiniteAlgebra alg{tau.signature, tau.X, {}};
  for (const auto& o : tau.signature.ops()) {
    auto& table = alg.tables[o.symbol];
    for (auto& args : carrier_tuples(tau.X, o.arity)) {
      std::vector<Term> vars;
      for (const auto& a : args) vars.push_back(Term::var(a));
      Term t = Term::app(o.symbol, std::move(vars));
      table[args] = counit(tau.value(tau.X, t));
    }
  }
  return alg;
}

FiniteAlgebra power_algebra(const FiniteAlgebra& alg, const FinSet& v) {
  FinSet carrier = lhom(v, alg.carrier);
  FiniteAlgebra out{alg.signature, carrier, {}};
  for (const auto& o : alg.signature.ops()) {
    auto& table = out.tables[o.symbol];
    for (auto& args : carrier_tuples(carrier, o.arity)) {
      std::vector<FinFun> fns;
      for (const auto& g : args)
        fns.push_back(fun_from_elem_label(g, v, alg.carrier));
      FinFun result = FinFun::from_fn(v, alg.carrier, [&](const std::string& ve) {
        std::vector<std::string> pointwise;
        for (const auto& g : fns) pointwise.push_back(g(ve));
        return alg.apply(o.symbol, pointwise);
      });
      table[args] = fun_elem_label(result);
    }
  }
  return out;
}

std::string power_kx_structure(const FinSet& x, const FinSet& v,
                               const FinFun& psi) {
  FinFun delta = delta_map(v, x);
  FinSet y = lhom(v, x);
  FinFun out = FinFun::from_fn(v, x, [&](const std::string& ve) {
    return psi(delta(ve));
  });
  (void)y;
  return fun_elem_label(out);
}

FiniteAlgebra restrict_algebra(const MonadMorphismTable& tau, const FinFun& k) {
  FiniteAlgebra alg{tau.signature, tau.X, {}};
  for (const auto& o : tau.signature.ops()) {
    auto& table = alg.tables[o.symbol];
    for (auto& args : carrier_tuples(tau.X, o.arity)) {
      std::vector<Term> vars;
      for (const auto& a : args) vars.push_back(Term::var(a));
      table[args] = k(tau.value(tau.X, Term::app(o.symbol, std::move(vars))));
    }
  }
  return alg;
}

SignatureTranslation SignatureTranslation::identity(const Signature& sig) {
  SignatureTranslation tr{sig, sig, {}};
  for (const auto& o : sig.ops()) {
    std::vector<Term> vars;
    for (std::size_t i = 0; i < o.arity; ++i)
      vars.push_back(Term::var("#" + std::to_string(i)));
    tr.images.emplace(o.symbol, Term::app(o.symbol, std::move(vars)));
  }
  return tr;
}

Term translate_term(const SignatureTranslation& tr, const Term& t) {
  if (t.is_var()) return t;
  auto it = tr.images.find(t.head());
  if (it == tr.images.end())
    throw MesError("translation undefined for symbol '" + t.head() + "'");
  std::map<std::string, Term> body;
  for (std::size_t i = 0; i < t.args().size(); ++i)
    body.emplace("#" + std::to_string(i), translate_term(tr, t.args()[i]));
  struct Subst {
    const std::map<std::string, Term>& body;
    Term operator()(const Term& s) const {
      if (s.is_var()) {
        auto jt = body.find(s.head());
        return jt == body.end() ? s : jt->second;
      }
      std::vector<Term> args;
      for (const auto& c : s.args()) args.push_back((*this)(c));
      return Term::app(s.head(), std::move(args));
    }
  };
  return Subst{body}(it->second);
}

FiniteAlgebra restrict_algebra(const SignatureTranslation& tr,
                               const FiniteAlgebra& target) {
  FiniteAlgebra alg{tr.from, target.carrier, {}};
  for (const auto& o : tr.from.ops()) {
    auto& table = alg.tables[o.symbol];
    std::vector<std::string> params;
    for (std::size_t i = 0; i < o.arity; ++i)
      params.push_back("#" + std::to_string(i));
    FinSet param_set{params};
    for (auto& args : carrier_tuples(target.carrier, o.arity)) {
      Environment env = FinFun::from_fn(
          param_set, target.carrier, [&](const std::string& p) {
            return args[static_cast<std::size_t>(std::stoi(p.substr(1)))];
          });
      Term image = tr.images.at(o.symbol);
      table[args] = eval_term(target, env, image);
    }
  }
  return alg;
}

}  // namespace mes
