#include "mes/term_monad.hpp"

#include <algorithm>

namespace mes {

Term unit_term(const FinSet& a, const std::string& elem) {
  if (!a.contains(elem))
    throw MesError("unit: '" + elem + "' not in " + a.to_string());
  return Term::var(elem);
}

Term map_term(const FinFun& f, const Term& t) {
  if (t.is_var()) return Term::var(f(t.head()));
  std::vector<Term> args;
  args.reserve(t.args().size());
  for (const auto& s : t.args()) args.push_back(map_term(f, s));
  return Term::app(t.head(), std::move(args));
}

Term substitute(const Term& t, const KleisliMap& w) {
  if (t.is_var()) return w.at(t.head());
  std::vector<Term> args;
  args.reserve(t.args().size());
  for (const auto& s : t.args()) args.push_back(substitute(s, w));
  return Term::app(t.head(), std::move(args));
}

KleisliMap kleisli_compose(const KleisliMap& w1, const KleisliMap& w2) {
  if (w1.arity != w2.coarity)
    throw MesError("kleisli_compose: arity of first map (" +
                   w1.arity.to_string() + ") differs from coarity of second (" +
                   w2.coarity.to_string() + ")");
  KleisliMap out{w1.coarity, w2.arity, {}};
  for (const auto& [c, t] : w1.body) out.body.emplace(c, substitute(t, w2));
  return out;
}

Term strength(const FinSet& v_set, const std::string& v, const Term& t) {
  if (!v_set.contains(v))
    throw MesError("strength: '" + v + "' not in " + v_set.to_string());
  if (t.is_var()) return Term::var(pair_label(v, t.head()));
  std::vector<Term> args;
  args.reserve(t.args().size());
  for (const auto& s : t.args()) args.push_back(strength(v_set, v, s));
  return Term::app(t.head(), std::move(args));
}

KleisliMap ext(const FinSet& v_set, const KleisliMap& w) {
  PairSet co = act(v_set, w.coarity);
  PairSet ar = act(v_set, w.arity);
  KleisliMap out{co.carrier, ar.carrier, {}};
  for (const auto& lbl : co.carrier) {
    auto [v, c] = split_pair_label(lbl);
    out.body.emplace(lbl, strength(v_set, v, w.at(c)));
  }
  return out;
}

std::string unique_extension(const FiniteAlgebra& alg, const FinFun& f,
                             const FinSet& v_set, const std::string& v,
                             const FinSet& x_set, const Term& t) {
  PairSet vx = act(v_set, x_set);
  if (f.dom() != vx.carrier || f.cod() != alg.carrier)
    throw MesError("unique_extension: parameter map has wrong shape");
  Environment env = FinFun::from_fn(x_set, alg.carrier, [&](const std::string& x) {
    return f(pair_label(v, x));
  });
  return eval_term(alg, env, t);
}

namespace {
void terms_of_exact_depth(const Signature& sig,
                          const std::vector<std::vector<Term>>& by_depth_leq,
                          std::size_t d, std::vector<Term>& out) {
  // Depth-d App terms: all children depth <= d-1, at least one = d-1.
  for (const auto& o : sig.ops()) {
    std::vector<std::size_t> idx(o.arity, 0);
    const auto& pool = by_depth_leq[d - 1];
    if (o.arity == 0) {
      if (d == 1) out.push_back(Term::app(o.symbol, {}));
      continue;
    }
    if (pool.empty()) continue;
    for (;;) {
      std::vector<Term> args;
      args.reserve(o.arity);
      std::size_t maxd = 0;
      for (std::size_t i : idx) {
        args.push_back(pool[i]);
        maxd = std::max(maxd, pool[i].depth());
      }
      if (maxd + 1 == d) out.push_back(Term::app(o.symbol, std::move(args)));
      std::size_t i = 0;
      while (i < idx.size()) {
        if (++idx[i] < pool.size()) break;
        idx[i] = 0;
        ++i;
      }
      if (i == idx.size()) break;
    }
  }
}
}  // namespace

std::vector<Term> enumerate_terms(const Signature& sig, const FinSet& a,
                                  std::size_t depth_bound) {
  std::vector<std::vector<Term>> by_depth_leq(depth_bound + 1);
  for (const auto& x : a) by_depth_leq[0].push_back(Term::var(x));
  for (std::size_t d = 1; d <= depth_bound; ++d) {
    by_depth_leq[d] = by_depth_leq[d - 1];
    terms_of_exact_depth(sig, by_depth_leq, d, by_depth_leq[d]);
  }
  std::vector<Term> out = std::move(by_depth_leq[depth_bound]);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace mes
