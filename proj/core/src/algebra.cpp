#include "mes/algebra.hpp"

#include <sstream>

namespace mes {

const std::string& FiniteAlgebra::apply(
    const std::string& symbol, const std::vector<std::string>& args) const {
  auto it = tables.find(symbol);
  if (it == tables.end())
    throw MesError("algebra has no table for symbol '" + symbol + "'");
  auto jt = it->second.find(args);
  if (jt == it->second.end())
    throw MesError("table for '" + symbol + "' undefined at given arguments");
  return jt->second;
}

bool FiniteAlgebra::operator==(const FiniteAlgebra& o) const {
  return signature == o.signature && carrier == o.carrier && tables == o.tables;
}

std::string FiniteAlgebra::to_string() const {
  std::ostringstream os;
  os << "carrier " << carrier.to_string();
  for (const auto& [sym, table] : tables) {
    os << "; " << sym << ":";
    for (const auto& [args, val] : table) {
      os << " (";
      for (std::size_t i = 0; i < args.size(); ++i) {
        if (i) os << ",";
        os << args[i];
      }
      os << ")->" << val;
    }
  }
  return os.str();
}

std::string eval_term(const FiniteAlgebra& alg, const Environment& env,
                      const Term& t) {
  if (t.is_var()) return env(t.head());
  std::vector<std::string> args;
  args.reserve(t.args().size());
  for (const auto& s : t.args()) args.push_back(eval_term(alg, env, s));
  return alg.apply(t.head(), args);
}

FinFun interpret(const FiniteAlgebra& alg, const KleisliMap& u) {
  FinSet envs = rhom(u.arity, alg.carrier);
  PairSet dom = act(envs, u.coarity);
  return FinFun::from_fn(dom.carrier, alg.carrier, [&](const std::string& lbl) {
    auto [rho, c] = split_pair_label(lbl);
    Environment env = fun_from_elem_label(rho, u.arity, alg.carrier);
    return eval_term(alg, env, u.at(c));
  });
}

bool satisfies(const FiniteAlgebra& alg, const Equation& e) {
  return interpret(alg, e.lhs) == interpret(alg, e.rhs);
}

std::optional<SatisfactionWitness> find_violation(const FiniteAlgebra& alg,
                                                  const Equation& e) {
  FinSet envs = rhom(e.lhs.arity, alg.carrier);
  for (const auto& rho : envs) {
    Environment env = fun_from_elem_label(rho, e.lhs.arity, alg.carrier);
    for (const auto& c : e.lhs.coarity) {
      std::string l = eval_term(alg, env, e.lhs.at(c));
      std::string r = eval_term(alg, env, e.rhs.at(c));
      if (l != r) return SatisfactionWitness{env, c, l, r};
    }
  }
  return std::nullopt;
}

bool is_homomorphism(const FinFun& h, const FiniteAlgebra& a1,
                     const FiniteAlgebra& a2) {
  if (h.dom() != a1.carrier || h.cod() != a2.carrier) return false;
  for (const auto& [sym, table] : a1.tables) {
    for (const auto& [args, val] : table) {
      std::vector<std::string> mapped;
      mapped.reserve(args.size());
      for (const auto& a : args) mapped.push_back(h(a));
      if (h(val) != a2.apply(sym, mapped)) return false;
    }
  }
  return true;
}

namespace {
FinSet canonical_carrier(std::size_t n) {
  std::vector<std::string> elems;
  for (std::size_t i = 0; i < n; ++i) elems.push_back(std::to_string(i));
  return FinSet(std::move(elems));
}

std::vector<std::vector<std::string>> all_tuples(const FinSet& carrier,
                                                 std::size_t n) {
  std::vector<std::vector<std::string>> out;
  std::vector<std::size_t> idx(n, 0);
  for (;;) {
    std::vector<std::string> t;
    t.reserve(n);
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

AlgebraEnumerator::AlgebraEnumerator(Signature sig, std::size_t max_size)
    : sig_(std::move(sig)), max_size_(max_size) {
  if (max_size_ < 1) throw MesError("enumerate_algebras: max size must be >= 1");
  start_carrier(1);
}

bool AlgebraEnumerator::start_carrier(std::size_t n) {
  if (n > max_size_) {
    exhausted_ = true;
    return false;
  }
  carrier_size_ = n;
  carrier_ = canonical_carrier(n);
  cells_.clear();
  for (const auto& o : sig_.ops())
    for (auto& tup : all_tuples(carrier_, o.arity))
      cells_.emplace_back(o.symbol, std::move(tup));
  odometer_.assign(cells_.size(), 0);
  fresh_ = true;
  return true;
}

std::optional<FiniteAlgebra> AlgebraEnumerator::next() {
  while (!exhausted_) {
    if (!fresh_) {
      std::size_t i = 0;
      while (i < odometer_.size()) {
        if (++odometer_[i] < carrier_size_) break;
        odometer_[i] = 0;
        ++i;
      }
      if (i == odometer_.size()) {
        if (!start_carrier(carrier_size_ + 1)) return std::nullopt;
        continue;
      }
    }
    fresh_ = false;
    FiniteAlgebra alg{sig_, carrier_, {}};
    for (const auto& o : sig_.ops()) alg.tables[o.symbol];
    for (std::size_t i = 0; i < cells_.size(); ++i)
      alg.tables[cells_[i].first][cells_[i].second] = carrier_.at(odometer_[i]);
    return alg;
  }
  return std::nullopt;
}

ModelEnumerator::ModelEnumerator(const Presentation& p, std::size_t max_size)
    : pres_(p), inner_(p.signature, max_size) {}

std::optional<FiniteAlgebra> ModelEnumerator::next() {
  for (;;) {
    auto alg = inner_.next();
    if (!alg) return std::nullopt;
    bool ok = true;
    for (const auto& ax : pres_.axioms) {
      if (!satisfies(*alg, ax)) {
        ok = false;
        break;
      }
    }
    if (ok) return alg;
  }
}

std::vector<FiniteAlgebra> all_models(const Presentation& p,
                                      std::size_t max_size) {
  std::vector<FiniteAlgebra> out;
  ModelEnumerator e(p, max_size);
  while (auto m = e.next()) out.push_back(std::move(*m));
  return out;
}

}  // namespace mes
