#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

// Finite sets of labelled atoms and total functions between them, together
// with the cartesian action V x C, the two function-space constructions and
// their adjunction structure (evaluation, transposition, associativity and
// unit bijections).  Everything is a value; equality is decidable.

namespace mes {

class MesError : public std::runtime_error {
 public:
  explicit MesError(const std::string& what) : std::runtime_error(what) {}
};

// Label escaping.  Composite labels (pairs, function graphs) embed other
// labels; the bytes '\', ',', '[', ']' and the leading byte of the UTF-8
// brackets U+27E8/U+27E9 are escaped so nested labels stay parseable.
std::string escape_label(const std::string& s);
std::string unescape_label(const std::string& s);

// "<l,r>" with mathematical angle brackets.
std::string pair_label(const std::string& l, const std::string& r);
// Inverse of pair_label; throws MesError if the label is not a pair.
std::pair<std::string, std::string> split_pair_label(const std::string& s);
bool is_pair_label(const std::string& s);

class FinSet {
 public:
  FinSet() = default;
  // Sorts into canonical (lexicographic) order; duplicates are rejected.
  explicit FinSet(std::vector<std::string> elements);

  static FinSet unit();  // the one-element set {*}

  std::size_t size() const { return elems_.size(); }
  bool empty() const { return elems_.empty(); }
  const std::vector<std::string>& elements() const { return elems_; }
  const std::string& at(std::size_t i) const { return elems_.at(i); }

  bool contains(const std::string& label) const;
  // Canonical position of a label; throws MesError when absent.
  std::size_t index_of(const std::string& label) const;

  bool operator==(const FinSet& o) const { return elems_ == o.elems_; }
  bool operator!=(const FinSet& o) const { return !(*this == o); }
  bool operator<(const FinSet& o) const { return elems_ < o.elems_; }

  auto begin() const { return elems_.begin(); }
  auto end() const { return elems_.end(); }

  std::string to_string() const;

 private:
  std::vector<std::string> elems_;
};

// A total function between finite sets, stored as an explicit graph
// (image index per domain position).
class FinFun {
 public:
  FinFun() = default;
  FinFun(FinSet dom, FinSet cod, std::vector<std::size_t> graph);

  // Builds the graph by evaluating `f` on every domain label.
  template <typename F>
  static FinFun from_fn(FinSet dom, FinSet cod, F&& f) {
    std::vector<std::size_t> g;
    g.reserve(dom.size());
    for (const auto& d : dom) g.push_back(cod.index_of(f(d)));
    return FinFun(std::move(dom), std::move(cod), std::move(g));
  }

  static FinFun identity(const FinSet& s);
  static FinFun constant(const FinSet& dom, const FinSet& cod,
                         const std::string& value);

  const FinSet& dom() const { return dom_; }
  const FinSet& cod() const { return cod_; }

  const std::string& operator()(const std::string& x) const;
  std::size_t image_index(std::size_t dom_index) const {
    return graph_.at(dom_index);
  }

  bool is_injective() const;
  bool is_surjective() const;

  // g.compose(f) = g o f.
  FinFun compose(const FinFun& inner) const;
  // Defined only for bijections.
  FinFun inverse() const;

  bool operator==(const FinFun& o) const {
    return dom_ == o.dom_ && cod_ == o.cod_ && graph_ == o.graph_;
  }
  bool operator!=(const FinFun& o) const { return !(*this == o); }

  std::string to_string() const;

 private:
  FinSet dom_, cod_;
  std::vector<std::size_t> graph_;
};

// The action of V on C: the set of ordered pairs with canonical labels.
struct PairSet {
  FinSet left;
  FinSet right;
  FinSet carrier;
};

PairSet act(const FinSet& v, const FinSet& c);

// Canonical label of a total function given as its image sequence in
// domain order: "[i1,i2,...]".
std::string fun_elem_label(const FinFun& f);
// Decode an element of rhom(dom,cod)/lhom(dom,cod) back to the function.
FinFun fun_from_elem_label(const std::string& label, const FinSet& dom,
                           const FinSet& cod);

// Right-hom C(C,D): one element per total function C -> D.
FinSet rhom(const FinSet& c, const FinSet& d);
// Left-hom [V,C]: the function space C^V.  In Set the same set of graphs
// as rhom; kept separate because the two adjoints are distinct.
FinSet lhom(const FinSet& v, const FinSet& c);

// Counit of the right-hom adjunction: C(A,X) x A -> X, (rho,a) |-> rho(a).
FinFun ev_right(const FinSet& a, const FinSet& x);
// Counit of the left-hom adjunction: V x [V,X] -> X, (v,g) |-> g(v).
FinFun ev_left(const FinSet& v, const FinSet& x);

// Currying for the right-hom adjunction: f: V x C -> D yields V -> C(C,D).
FinFun transpose_right(const FinFun& f, const FinSet& v, const FinSet& c);
FinFun untranspose_right(const FinFun& g, const FinSet& c, const FinSet& d);

// Currying for the left-hom adjunction: f: V x C -> D yields C -> [V,D].
FinFun transpose_left(const FinFun& f, const FinSet& v, const FinSet& c);
FinFun untranspose_left(const FinFun& g, const FinSet& v, const FinSet& d);

// The canonical bijection (U x V) x C -> U x (V x C).
FinFun assoc_iso(const FinSet& u, const FinSet& v, const FinSet& c);
// The canonical bijection 1 x C -> C.
FinFun unit_iso(const FinSet& c);

}  // namespace mes
