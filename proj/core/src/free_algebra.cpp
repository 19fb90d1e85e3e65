#include "mes/free_algebra.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "mes/term_monad.hpp"

namespace mes {

namespace {

void add_with_subterms(const Term& t, std::set<Term>& universe) {
  if (!universe.insert(t).second) return;
  for (const auto& arg : t.args()) add_with_subterms(arg, universe);
}

}  // namespace

TermIndex::TermIndex(const Signature& sig, const FinSet& generators,
                     std::size_t depth)
    : TermIndex(sig, generators, depth, {}) {}

TermIndex::TermIndex(const Signature& sig, const FinSet& generators,
                     std::size_t depth, const std::vector<Term>& extra)
    : gens_(generators), depth_(depth) {
  std::set<Term> universe;
  for (auto& t : enumerate_terms(sig, generators, depth)) universe.insert(t);
  for (const auto& t : extra) add_with_subterms(t, universe);
  terms_.assign(universe.begin(), universe.end());
  for (std::size_t i = 0; i < terms_.size(); ++i) index_[terms_[i]] = i;
}

std::size_t TermIndex::add(const Term& t) {
  auto it = index_.find(t);
  if (it != index_.end()) return it->second;
  for (const auto& arg : t.args()) add(arg);
  std::size_t id = terms_.size();
  terms_.push_back(t);
  index_[t] = id;
  return id;
}

std::size_t TermIndex::id_of(const Term& t) const {
  auto it = index_.find(t);
  if (it == index_.end())
    throw MesError("term '" + t.to_string() + "' is not indexed");
  return it->second;
}

CongruenceTable::CongruenceTable(const Signature& sig, const FinSet& generators,
                                 std::size_t depth)
    : CongruenceTable(sig, generators, depth, {}) {}

CongruenceTable::CongruenceTable(const Signature& sig, const FinSet& generators,
                                 std::size_t depth,
                                 const std::vector<Term>& extra)
    : sig_(sig),
      index_(sig, generators, depth, extra),
      parent_(index_.terms().size()) {
  for (std::size_t i = 0; i < parent_.size(); ++i) parent_[i] = i;
}

std::size_t CongruenceTable::add_term(const Term& t) {
  std::size_t id = index_.add(t);
  while (parent_.size() < index_.terms().size())
    parent_.push_back(parent_.size());
  return id;
}

std::size_t CongruenceTable::find(std::size_t i) const {
  while (parent_[i] != i) {
    parent_[i] = parent_[parent_[i]];
    i = parent_[i];
  }
  return i;
}

bool CongruenceTable::merged(const Term& a, const Term& b) const {
  return find(index_.id_of(a)) == find(index_.id_of(b));
}

bool CongruenceTable::unite(std::size_t a, std::size_t b) {
  a = find(a);
  b = find(b);
  if (a == b) return false;
  if (b < a) std::swap(a, b);
  parent_[b] = a;
  return true;
}

void CongruenceTable::close() {
  const auto& terms = index_.terms();
  bool changed = true;
  while (changed) {
    changed = false;
    std::map<std::pair<std::string, std::vector<std::size_t>>, std::size_t>
        seen;
    for (std::size_t i = 0; i < terms.size(); ++i) {
      if (terms[i].is_var()) continue;
      std::vector<std::size_t> kids;
      kids.reserve(terms[i].args().size());
      for (const auto& s : terms[i].args()) kids.push_back(find(index_.id_of(s)));
      auto [it, fresh] = seen.emplace(
          std::make_pair(terms[i].head(), std::move(kids)), i);
      if (!fresh) changed |= unite(it->second, i);
    }
  }
}

std::size_t CongruenceTable::class_count() const {
  std::size_t n = 0;
  for (std::size_t i = 0; i < parent_.size(); ++i)
    if (find(i) == i) ++n;
  return n;
}

namespace {

// One pass: the minimal-depth, canonically least member per class root.
std::map<std::size_t, const Term*> best_members(const CongruenceTable& tab) {
  const auto& terms = tab.index().terms();
  std::map<std::size_t, const Term*> best;
  for (std::size_t j = 0; j < terms.size(); ++j) {
    std::size_t root = tab.find(j);
    auto [it, fresh] = best.emplace(root, &terms[j]);
    if (fresh) continue;
    const Term& cur = *it->second;
    if (terms[j].depth() < cur.depth() ||
        (terms[j].depth() == cur.depth() && terms[j] < cur))
      it->second = &terms[j];
  }
  return best;
}

}  // namespace

Term CongruenceTable::representative(std::size_t i) const {
  std::size_t root = find(i);
  const auto& terms = index_.terms();
  const Term* best = nullptr;
  for (std::size_t j = 0; j < terms.size(); ++j) {
    if (find(j) != root) continue;
    if (!best || terms[j].depth() < best->depth() ||
        (terms[j].depth() == best->depth() && terms[j] < *best))
      best = &terms[j];
  }
  return *best;
}

std::vector<Term> CongruenceTable::class_representatives() const {
  std::vector<Term> out;
  for (const auto& [root, t] : best_members(*this)) {
    (void)root;
    out.push_back(*t);
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool stabilized(const CongruenceTable& at_d, const CongruenceTable& at_d1) {
  std::size_t d = at_d.index().depth();
  const auto& deep = at_d1.index().terms();
  // Every strictly deeper term must share a class with a shallow term.
  for (std::size_t i = 0; i < deep.size(); ++i)
    if (deep[i].depth() > d && at_d1.representative(i).depth() > d)
      return false;
  // The two equivalences must agree on depth-<= d terms.
  std::map<std::size_t, std::size_t> fwd, bwd;
  for (const auto& t : at_d.index().terms()) {
    std::size_t a = at_d.find(at_d.index().id_of(t));
    std::size_t b = at_d1.find(at_d1.index().id_of(t));
    auto [fa, fresh_a] = fwd.emplace(a, b);
    if (!fresh_a && fa->second != b) return false;
    auto [fb, fresh_b] = bwd.emplace(b, a);
    if (!fresh_b && fb->second != a) return false;
  }
  return true;
}

namespace {

bool match_pattern(const Term& pat, const Term& t,
                   std::map<std::string, Term>& binding) {
  if (pat.is_var()) {
    auto [it, fresh] = binding.emplace(pat.head(), t);
    return fresh || it->second == t;
  }
  if (t.is_var() || t.head() != pat.head() ||
      t.args().size() != pat.args().size())
    return false;
  for (std::size_t i = 0; i < pat.args().size(); ++i)
    if (!match_pattern(pat.args()[i], t.args()[i], binding)) return false;
  return true;
}

// Merges from[rho] with to[rho] for one matched instance; variables of `to`
// missing from the binding range over class representatives.  Instance
// images outside the universe but within `grow_depth` are collected into
// `pending` (when given) so the caller can adjoin them and re-close.
constexpr std::size_t kDefaultUniverseCap = 200000;

Term subst_binding(const Term& t, const std::map<std::string, Term>& binding) {
  if (t.is_var()) return binding.at(t.head());
  std::vector<Term> args;
  args.reserve(t.args().size());
  for (const auto& a : t.args()) args.push_back(subst_binding(a, binding));
  return Term::app(t.head(), std::move(args));
}

bool apply_instance(CongruenceTable& table, const FinSet& gens,
                    const Term& from, const Term& to, const Term& t,
                    std::size_t grow_depth, std::size_t universe_cap) {
  std::map<std::string, Term> binding;
  if (!match_pattern(from, t, binding)) return false;

  std::vector<std::string> unbound;
  for (const auto& x : vars_of(to))
    if (!binding.count(x)) unbound.push_back(x);

  if (unbound.empty()) {
    Term image = subst_binding(to, binding);
    if (table.index().contains(image))
      return table.unite(table.index().id_of(t), table.index().id_of(image));
    if (image.depth() <= grow_depth &&
        table.index().terms().size() < universe_cap)
      return table.unite(table.index().id_of(t), table.add_term(image));
    return false;
  }

  std::vector<Term> reps =
      unbound.empty() ? std::vector<Term>{} : table.class_representatives();
  std::vector<std::size_t> odo(unbound.size(), 0);
  bool changed = false;
  for (;;) {
    KleisliMap rho;
    rho.arity = gens;
    std::vector<std::string> co;
    for (const auto& [x, val] : binding) {
      co.push_back(x);
      rho.body[x] = val;
    }
    for (std::size_t i = 0; i < unbound.size(); ++i) {
      co.push_back(unbound[i]);
      rho.body[unbound[i]] = reps[odo[i]];
    }
    rho.coarity = FinSet(co);
    Term image = substitute(to, rho);
    if (table.index().contains(image))
      changed |= table.unite(table.index().id_of(t),
                             table.index().id_of(image));
    else if (image.depth() <= grow_depth &&
             table.index().terms().size() < universe_cap)
      changed |= table.unite(table.index().id_of(t), table.add_term(image));
    std::size_t i = 0;
    while (i < unbound.size()) {
      if (++odo[i] < reps.size()) break;
      odo[i] = 0;
      ++i;
    }
    if (i == unbound.size()) break;
  }
  return changed;
}

// Axiom-instance matching plus congruence closure to fixpoint.  When
// grow_depth is nonzero, instance images up to that depth are adjoined to
// the universe on the fly (bounded by universe_cap) and swept in turn.
void saturate(CongruenceTable& table, const Presentation& p, const FinSet& x,
              std::size_t grow_depth = 0,
              std::size_t universe_cap = kDefaultUniverseCap) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < table.index().terms().size(); ++i) {
      Term t = table.index().terms()[i];
      for (const auto& ax : p.axioms) {
        for (const auto& c : ax.lhs.coarity) {
          changed |= apply_instance(table, x, ax.lhs.at(c), ax.rhs.at(c), t,
                                    grow_depth, universe_cap);
          changed |= apply_instance(table, x, ax.rhs.at(c), ax.lhs.at(c), t,
                                    grow_depth, universe_cap);
        }
      }
    }
    table.close();
  }
}

CongruenceTable stage_closure(const Presentation& p, const FinSet& x,
                              std::size_t d) {
  CongruenceTable table(p.signature, x, d);
  saturate(table, p, x);
  return table;
}

// Attempts to cut the chain off at depth d.  Extends the universe with
// operation applications over class representatives until no application is
// new, requiring every class to keep a depth-<= d member throughout; the
// induced finite algebra is accepted iff it satisfies all axioms.  Since
// every merge is axiom- or congruence-justified and an accepted candidate
// is a model generated by x, the candidate is the free algebra on x.
std::optional<FreeAlgebraResult> try_finish(const Presentation& p,
                                            const FinSet& x, std::size_t d) {
  constexpr std::size_t kMaxRounds = 64;
  CongruenceTable table(p.signature, x, d);
  for (std::size_t round = 0; round < kMaxRounds; ++round) {
    saturate(table, p, x, d + 2);

    std::vector<Term> reps = table.class_representatives();
    for (const auto& r : reps)
      if (r.depth() > d) return std::nullopt;  // a genuinely deeper class

    // Adjoin all applications of operations to representatives; the
    // universe must be closed under them before the candidate can be read
    // off the table.
    bool added = false;
    std::vector<Term> apps;
    for (const auto& o : p.signature.ops()) {
      std::vector<std::size_t> odo(o.arity, 0);
      for (;;) {
        std::vector<Term> args;
        for (std::size_t i : odo) args.push_back(reps[i]);
        Term applied = Term::app(o.symbol, std::move(args));
        if (!table.index().contains(applied)) {
          table.add_term(applied);
          added = true;
        }
        apps.push_back(std::move(applied));
        std::size_t i = 0;
        while (i < o.arity) {
          if (++odo[i] < reps.size()) break;
          odo[i] = 0;
          ++i;
        }
        if (i == o.arity || o.arity == 0) break;
      }
    }
    if (added) continue;  // reclose over the grown universe

    // Read the candidate algebra off the table.
    std::vector<std::string> labels;
    labels.reserve(reps.size());
    for (const auto& t : reps) labels.push_back(t.to_string());
    FiniteAlgebra alg{p.signature, FinSet(labels), {}};
    auto best = best_members(table);
    auto label_of = [&](const Term& t) {
      return best.at(table.find(table.index().id_of(t)))->to_string();
    };
    std::size_t next_app = 0;
    for (const auto& o : p.signature.ops()) {
      auto& op_table = alg.tables[o.symbol];
      std::vector<std::size_t> odo(o.arity, 0);
      for (;;) {
        std::vector<std::string> args;
        for (std::size_t i : odo) args.push_back(reps[i].to_string());
        op_table[args] = label_of(apps[next_app++]);
        std::size_t i = 0;
        while (i < o.arity) {
          if (++odo[i] < reps.size()) break;
          odo[i] = 0;
          ++i;
        }
        if (i == o.arity || o.arity == 0) break;
      }
    }
    for (const auto& ax : p.axioms)
      if (!satisfies(alg, ax)) return std::nullopt;

    FreeAlgebraResult r;
    r.status = FreeAlgebraResult::Status::Finite;
    r.generators = x;
    r.depth = d;
    for (const auto& t : table.index().terms()) r.classes[t] = label_of(t);
    r.algebra = std::move(alg);
    r.table = std::move(table);
    return r;
  }
  return std::nullopt;
}

}  // namespace

FreeAlgebraResult build_free_algebra(const Presentation& p, const FinSet& x,
                                     std::size_t d_max) {
  auto problems = validate(p);
  if (!problems.empty())
    throw MesError("invalid presentation: " + problems.front());
  if (d_max < 1) throw MesError("build_free_algebra: depth bound must be >= 1");

  std::optional<CongruenceTable> last;
  for (std::size_t d = 1; d <= d_max; ++d) {
    if (auto fin = try_finish(p, x, d)) return std::move(*fin);
    if (d == d_max) last = stage_closure(p, x, d);
  }
  FreeAlgebraResult r;
  r.status = FreeAlgebraResult::Status::Truncated;
  r.generators = x;
  r.depth = d_max;
  r.table = std::move(*last);
  return r;
}

std::string quotient_map(const FreeAlgebraResult& r, const Term& t) {
  if (!r.is_finite())
    throw MesError("quotient_map: free algebra is truncated at depth " +
                   std::to_string(r.depth));
  Environment env = FinFun::from_fn(
      r.generators, r.algebra.carrier,
      [&](const std::string& g) { return r.classes.at(Term::var(g)); });
  return eval_term(r.algebra, env, t);
}

FinFun hom_extension(const FreeAlgebraResult& r, const FiniteAlgebra& alg) {
  if (!r.is_finite()) throw MesError("hom_extension: free algebra is truncated");
  if (alg.carrier != r.generators)
    throw MesError("hom_extension: algebra carrier must equal the generators");
  Environment id_env = FinFun::identity(r.generators);

  std::map<std::string, std::string> image;
  for (const auto& [t, cls] : r.classes) {
    std::string val = eval_term(alg, id_env, t);
    auto [it, fresh] = image.emplace(cls, val);
    if (!fresh && it->second != val)
      throw MesError(
          "hom_extension: representative-dependent image for class " + cls +
          " — the algebra does not satisfy the presentation");
  }
  FinFun h = FinFun::from_fn(r.algebra.carrier, alg.carrier,
                             [&](const std::string& c) { return image.at(c); });
  if (!is_homomorphism(h, r.algebra, alg))
    throw MesError("hom_extension: extension is not a homomorphism — the "
                   "algebra does not satisfy the presentation");
  return h;
}

std::string Decision::verdict_name() const {
  switch (verdict) {
    case Verdict::Equal:
      return "equal";
    case Verdict::NotEqual:
      return "not-equal";
    case Verdict::Unknown:
      return "unknown";
  }
  return "unknown";
}

Decision decide(const Presentation& p, const Equation& e, std::size_t d_max,
                std::size_t k) {
  auto problems = validate(p);
  if (!problems.empty())
    throw MesError("invalid presentation: " + problems.front());
  if (e.lhs.coarity != e.rhs.coarity || e.lhs.arity != e.rhs.arity)
    throw MesError("decide: the two sides are not parallel");

  const FinSet& a = e.lhs.arity;
  FreeAlgebraResult r = build_free_algebra(p, a, d_max);

  if (r.is_finite()) {
    bool equal = true;
    for (const auto& c : e.lhs.coarity)
      if (quotient_map(r, e.lhs.at(c)) != quotient_map(r, e.rhs.at(c))) {
        equal = false;
        break;
      }
    if (equal)
      return {Decision::Verdict::Equal,
              "both sides map to the same class of the free algebra on " +
                  a.to_string(),
              std::nullopt};
    auto w = find_violation(r.algebra, e);
    if (!w)
      throw MesError("decide: free algebra separates classes but shows no "
                     "violation (kernel bug)");
    return {Decision::Verdict::NotEqual,
            "the free algebra on " + a.to_string() + " separates the sides",
            DecisionWitness{r.algebra, *w}};
  }

  bool merged = true;
  for (const auto& c : e.lhs.coarity) {
    const Term& l = e.lhs.at(c);
    const Term& rt = e.rhs.at(c);
    if (!r.table->index().contains(l) || !r.table->index().contains(rt) ||
        !r.table->merged(l, rt)) {
      merged = false;
      break;
    }
  }
  if (merged)
    return {Decision::Verdict::Equal,
            "sides merged by the bounded closure at depth " +
                std::to_string(r.depth),
            std::nullopt};

  ModelEnumerator models(p, k);
  while (auto m = models.next()) {
    if (auto w = find_violation(*m, e))
      return {Decision::Verdict::NotEqual,
              "a model of size " + std::to_string(m->carrier.size()) +
                  " violates the equation",
              DecisionWitness{*m, *w}};
  }
  return {Decision::Verdict::Unknown,
          "free algebra truncated at depth " + std::to_string(r.depth) +
              " and no countermodel of size <= " + std::to_string(k),
          std::nullopt};
}

bool quotient_strength_check(const Presentation& p, const FinSet& x,
                             const FinSet& v, std::size_t d_max) {
  FreeAlgebraResult rx = build_free_algebra(p, x, d_max);
  if (!rx.is_finite())
    throw MesError("quotient_strength_check: free algebra on the generators "
                   "is truncated");
  PairSet vx = act(v, x);
  FreeAlgebraResult rvx = build_free_algebra(p, vx.carrier, d_max);
  if (!rvx.is_finite())
    throw MesError("quotient_strength_check: free algebra on the paired "
                   "generators is truncated");

  // q(strength(v, t)) must depend on t only through q(t); the induced map
  // is then the strength of the quotient, and the square commutes.
  std::map<std::pair<std::string, std::string>, std::string> induced;
  for (const auto& val : v) {
    for (const auto& t : enumerate_terms(p.signature, x, 3)) {
      std::string key = quotient_map(rx, t);
      std::string out = quotient_map(rvx, strength(v, val, t));
      auto [it, fresh] = induced.emplace(std::make_pair(val, key), out);
      if (!fresh && it->second != out) return false;
    }
  }
  return true;
}

}  // namespace mes
