#include "mes/eml.hpp"

#include <algorithm>
#include <set>

#include "mes/term_monad.hpp"

namespace mes {

std::string Judgement::to_string() const {
  return lhs.to_string() + " = " + rhs.to_string() + " : " +
         lhs.coarity.to_string() + " -> T" + lhs.arity.to_string();
}

ProofPtr Proof::ref(KleisliMap u) {
  auto p = std::make_shared<Proof>();
  p->kind = Kind::Ref;
  p->ref_map = std::move(u);
  return p;
}

ProofPtr Proof::sym(ProofPtr c) {
  auto p = std::make_shared<Proof>();
  p->kind = Kind::Sym;
  p->children = {std::move(c)};
  return p;
}

ProofPtr Proof::trans(ProofPtr a, ProofPtr b) {
  auto p = std::make_shared<Proof>();
  p->kind = Kind::Trans;
  p->children = {std::move(a), std::move(b)};
  return p;
}

ProofPtr Proof::axiom(std::string name) {
  auto p = std::make_shared<Proof>();
  p->kind = Kind::Axiom;
  p->axiom_name = std::move(name);
  return p;
}

ProofPtr Proof::comp(ProofPtr a, ProofPtr b) {
  auto p = std::make_shared<Proof>();
  p->kind = Kind::Comp;
  p->children = {std::move(a), std::move(b)};
  return p;
}

ProofPtr Proof::ext_rule(FinSet v, ProofPtr c) {
  auto p = std::make_shared<Proof>();
  p->kind = Kind::Ext;
  p->ext_v = std::move(v);
  p->children = {std::move(c)};
  return p;
}

ProofPtr Proof::local(KleisliMap u, KleisliMap v, std::vector<FinFun> cocone,
                      std::vector<ProofPtr> premises) {
  auto p = std::make_shared<Proof>();
  p->kind = Kind::Local;
  p->pair_lhs = std::move(u);
  p->pair_rhs = std::move(v);
  p->cocone = std::move(cocone);
  p->children = std::move(premises);
  return p;
}

ProofPtr Proof::comp_coprod(ProofPtr head, std::vector<ProofPtr> premises) {
  auto p = std::make_shared<Proof>();
  p->kind = Kind::CompCoprod;
  p->children = {std::move(head)};
  for (auto& q : premises) p->children.push_back(std::move(q));
  return p;
}

ProofPtr Proof::local1(KleisliMap u, KleisliMap v, FinFun e, ProofPtr c) {
  auto p = std::make_shared<Proof>();
  p->kind = Kind::Local1;
  p->pair_lhs = std::move(u);
  p->pair_rhs = std::move(v);
  p->cocone = {std::move(e)};
  p->children = {std::move(c)};
  return p;
}

bool jointly_surjective(const std::vector<FinFun>& family, const FinSet& cod) {
  std::vector<bool> hit(cod.size(), false);
  for (const auto& e : family) {
    if (e.cod() != cod)
      throw MesError("jointly_surjective: codomain mismatch");
    for (std::size_t i = 0; i < e.dom().size(); ++i) hit[e.image_index(i)] = true;
  }
  return std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
}

namespace {

void require_well_formed(const Presentation& p, const KleisliMap& w,
                         const std::string& path) {
  for (const auto& c : w.coarity) {
    auto it = w.body.find(c);
    if (it == w.body.end())
      throw ProofError(path, "Kleisli map missing body at '" + c + "'");
    std::vector<std::string> v;
    collect_term_violations(p.signature, w.arity, it->second, c, v);
    if (!v.empty()) throw ProofError(path, v.front());
  }
}

ProofPtr elaborate_node(const Presentation& p, const ProofPtr& proof,
                        const std::string& path);

Judgement check_node(const Presentation& p, const ProofPtr& proof,
                     const std::string& path) {
  if (!proof) throw ProofError(path, "missing subproof");
  const Proof& n = *proof;
  auto child = [&](std::size_t i) {
    return check_node(p, n.children.at(i), path + "." + std::to_string(i));
  };
  switch (n.kind) {
    case Proof::Kind::Ref: {
      require_well_formed(p, n.ref_map, path);
      return Judgement{p.name, n.ref_map, n.ref_map};
    }
    case Proof::Kind::Sym: {
      Judgement j = child(0);
      return Judgement{p.name, j.rhs, j.lhs};
    }
    case Proof::Kind::Trans: {
      Judgement j1 = child(0);
      Judgement j2 = child(1);
      if (j1.rhs != j2.lhs)
        throw ProofError(path, "Trans middle maps differ: " +
                                   j1.rhs.to_string() + " vs " +
                                   j2.lhs.to_string());
      return Judgement{p.name, j1.lhs, j2.rhs};
    }
    case Proof::Kind::Axiom: {
      const Equation* ax = p.find_axiom(n.axiom_name);
      if (!ax) throw ProofError(path, "unknown axiom '" + n.axiom_name + "'");
      return Judgement{p.name, ax->lhs, ax->rhs};
    }
    case Proof::Kind::Comp: {
      Judgement j1 = child(0);
      Judgement j2 = child(1);
      if (j1.lhs.arity != j2.lhs.coarity)
        throw ProofError(path, "Comp: arity " + j1.lhs.arity.to_string() +
                                   " does not match coarity " +
                                   j2.lhs.coarity.to_string());
      return Judgement{p.name, kleisli_compose(j1.lhs, j2.lhs),
                       kleisli_compose(j1.rhs, j2.rhs)};
    }
    case Proof::Kind::Ext: {
      Judgement j = child(0);
      return Judgement{p.name, ext(n.ext_v, j.lhs), ext(n.ext_v, j.rhs)};
    }
    case Proof::Kind::Local: {
      require_well_formed(p, n.pair_lhs, path);
      require_well_formed(p, n.pair_rhs, path);
      if (n.pair_lhs.coarity != n.pair_rhs.coarity ||
          n.pair_lhs.arity != n.pair_rhs.arity)
        throw ProofError(path, "Local: declared pair is not parallel");
      if (n.cocone.size() != n.children.size())
        throw ProofError(path, "Local: family size differs from premises");
      if (!jointly_surjective(n.cocone, n.pair_lhs.coarity))
        throw ProofError(path, "Local: family is not jointly surjective");
      for (std::size_t i = 0; i < n.cocone.size(); ++i) {
        Judgement j = child(i);
        KleisliMap ru = precompose(n.pair_lhs, n.cocone[i]);
        KleisliMap rv = precompose(n.pair_rhs, n.cocone[i]);
        if (j.lhs != ru || j.rhs != rv)
          throw ProofError(
              path, "Local: premise " + std::to_string(i) +
                        " is not the restriction of the declared pair");
      }
      return Judgement{p.name, n.pair_lhs, n.pair_rhs};
    }
    case Proof::Kind::CompCoprod:
    case Proof::Kind::Local1:
      return check_node(p, elaborate_node(p, proof, path), path);
  }
  throw ProofError(path, "corrupt proof node");
}

// Disjoint union of the coarities, as a plain label union.
FinSet label_union(const std::vector<FinSet>& parts, const std::string& path) {
  std::vector<std::string> labels;
  for (const auto& s : parts)
    for (const auto& l : s) labels.push_back(l);
  std::size_t total = labels.size();
  FinSet u(std::move(labels));
  if (u.size() != total)
    throw ProofError(path, "CompCoprod: coarities are not disjoint");
  return u;
}

ProofPtr elaborate_node(const Presentation& p, const ProofPtr& proof,
                        const std::string& path) {
  if (!proof) throw ProofError(path, "missing subproof");
  const Proof& n = *proof;
  std::vector<ProofPtr> kids;
  kids.reserve(n.children.size());
  for (std::size_t i = 0; i < n.children.size(); ++i)
    kids.push_back(
        elaborate_node(p, n.children[i], path + "." + std::to_string(i)));

  switch (n.kind) {
    case Proof::Kind::Local1: {
      if (kids.size() != 1 || n.cocone.size() != 1)
        throw ProofError(path, "Local1: expects one premise and one map");
      if (!n.cocone[0].is_surjective())
        throw ProofError(path, "Local1: the map is not surjective");
      if (n.cocone[0] == FinFun::identity(n.cocone[0].dom()))
        return kids[0];
      return Proof::local(n.pair_lhs, n.pair_rhs, n.cocone, kids);
    }
    case Proof::Kind::CompCoprod: {
      if (kids.size() < 2)
        throw ProofError(path, "CompCoprod: needs a head and >= 1 premise");
      Judgement head = check_node(p, kids[0], path + ".0");
      std::vector<Judgement> parts;
      std::vector<FinSet> coarities;
      for (std::size_t i = 1; i < kids.size(); ++i) {
        parts.push_back(check_node(p, kids[i], path + "." + std::to_string(i)));
        coarities.push_back(parts.back().lhs.coarity);
        if (parts.back().lhs.arity != parts.front().lhs.arity)
          throw ProofError(path, "CompCoprod: premises have mixed arities");
      }
      FinSet sum = label_union(coarities, path);
      if (sum != head.lhs.arity)
        throw ProofError(
            path, "CompCoprod: premise coarities do not decompose the arity " +
                      head.lhs.arity.to_string());
      if (parts.size() == 1) return Proof::comp(kids[0], kids[1]);
      FinSet a = parts.front().lhs.arity;
      KleisliMap copair_l{sum, a, {}};
      KleisliMap copair_r{sum, a, {}};
      std::vector<FinFun> injections;
      for (std::size_t i = 0; i < parts.size(); ++i) {
        for (const auto& b : coarities[i]) {
          copair_l.body[b] = parts[i].lhs.at(b);
          copair_r.body[b] = parts[i].rhs.at(b);
        }
        injections.push_back(FinFun::from_fn(
            coarities[i], sum, [](const std::string& l) { return l; }));
      }
      ProofPtr tail = Proof::local(copair_l, copair_r, injections,
                                   {kids.begin() + 1, kids.end()});
      return Proof::comp(kids[0], tail);
    }
    default: {
      auto out = std::make_shared<Proof>(n);
      out->children = std::move(kids);
      return out;
    }
  }
}

}  // namespace

Judgement check(const Presentation& p, const ProofPtr& proof) {
  return check_node(p, proof, "root");
}

ProofPtr elaborate_derived(const Presentation& p, const ProofPtr& proof) {
  return elaborate_node(p, proof, "root");
}

SoundnessReport soundness_audit(const Presentation& p, const ProofPtr& proof,
                                std::size_t max_size) {
  SoundnessReport report{check(p, proof), 0, {}};
  Equation concl{"conclusion", report.conclusion.lhs, report.conclusion.rhs};
  ModelEnumerator models(p, max_size);
  while (auto m = models.next()) {
    report.models_checked++;
    if (auto w = find_violation(*m, concl))
      report.counterexamples.push_back({*m, *w});
  }
  return report;
}

}  // namespace mes
