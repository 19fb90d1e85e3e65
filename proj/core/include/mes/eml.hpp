#pragma once

#include <memory>
#include <string>
#include <vector>

#include "mes/algebra.hpp"
#include "mes/term.hpp"

// Equational Metalogic: proof objects, the checker, the derived-rule
// elaborator, and a model-enumeration soundness audit.

namespace mes {

// A derivable equation-in-context u = v : C -> TA.
struct Judgement {
  std::string presentation;
  KleisliMap lhs;
  KleisliMap rhs;

  bool operator==(const Judgement& o) const {
    return lhs == o.lhs && rhs == o.rhs;
  }

  std::string to_string() const;
};

struct Proof;
using ProofPtr = std::shared_ptr<const Proof>;

struct Proof {
  enum class Kind {
    Ref,         // u = u
    Sym,         // from u = v conclude v = u
    Trans,       // u = v, v = w |- u = w (middle maps syntactically equal)
    Axiom,       // named axiom of the presentation
    Comp,        // congruence of Kleisli composition
    Ext,         // congruence of the monoidal action
    Local,       // jointly-surjective descent along a declared pair
    CompCoprod,  // derived: composition against a coarity decomposition
    Local1       // derived: descent along a single surjection
  };

  Kind kind;
  KleisliMap ref_map;            // Ref
  std::string axiom_name;        // Axiom
  FinSet ext_v;                  // Ext
  std::vector<FinFun> cocone;    // Local: e_i; Local1: single e
  KleisliMap pair_lhs, pair_rhs; // Local/Local1: the declared (u,v)
  std::vector<ProofPtr> children;

  static ProofPtr ref(KleisliMap u);
  static ProofPtr sym(ProofPtr p);
  static ProofPtr trans(ProofPtr p, ProofPtr q);
  static ProofPtr axiom(std::string name);
  static ProofPtr comp(ProofPtr p1, ProofPtr p2);
  static ProofPtr ext_rule(FinSet v, ProofPtr p);
  static ProofPtr local(KleisliMap u, KleisliMap v, std::vector<FinFun> cocone,
                        std::vector<ProofPtr> premises);
  static ProofPtr comp_coprod(ProofPtr p, std::vector<ProofPtr> premises);
  static ProofPtr local1(KleisliMap u, KleisliMap v, FinFun e, ProofPtr p);
};

class ProofError : public MesError {
 public:
  ProofError(const std::string& node_path, const std::string& reason)
      : MesError(node_path + ": " + reason), path(node_path) {}
  std::string path;
};

// True iff the union of the images covers the common codomain.
bool jointly_surjective(const std::vector<FinFun>& family, const FinSet& cod);

// Computes the conclusion judgement bottom-up; throws ProofError naming the
// failing node on any premise-shape mismatch.
Judgement check(const Presentation& p, const ProofPtr& proof);

// Rewrites CompCoprod/Local1 nodes into the primitive rules; the result
// checks to the same judgement.  The presentation is needed to recover the
// premises' conclusions when assembling copairings.
ProofPtr elaborate_derived(const Presentation& p, const ProofPtr& proof);

struct SoundnessReport {
  Judgement conclusion;
  std::size_t models_checked = 0;
  struct Counterexample {
    FiniteAlgebra model;
    SatisfactionWitness witness;
  };
  std::vector<Counterexample> counterexamples;
  bool sound() const { return counterexamples.empty(); }
};

// Re-checks the conclusion of an accepted proof against every model of the
// presentation with carrier size <= max_size.  A counterexample indicates a
// kernel bug; it is reported, not thrown.
SoundnessReport soundness_audit(const Presentation& p, const ProofPtr& proof,
                                std::size_t max_size);

}  // namespace mes
