#include "mes/finset.hpp"

#include <algorithm>
#include <sstream>

namespace mes {

namespace {
// First byte of UTF-8 U+27E8 / U+27E9.
constexpr unsigned char kAngleLead = 0xE2;

bool needs_escape(unsigned char c) {
  return c == '\\' || c == ',' || c == '[' || c == ']' || c == kAngleLead;
}
}  // namespace

std::string escape_label(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (unsigned char c : s) {
    if (needs_escape(c)) out.push_back('\\');
    out.push_back(static_cast<char>(c));
  }
  return out;
}

std::string unescape_label(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '\\' && i + 1 < s.size()) ++i;
    out.push_back(s[i]);
  }
  return out;
}

static const std::string kLAngle = "\xE2\x9F\xA8";  // U+27E8
static const std::string kRAngle = "\xE2\x9F\xA9";  // U+27E9

std::string pair_label(const std::string& l, const std::string& r) {
  return kLAngle + escape_label(l) + "," + escape_label(r) + kRAngle;
}

namespace {
// Scans an escaped composite label, splitting on unescaped top-level commas.
// Returns the pieces between `open` ... `close`, still escaped.
std::vector<std::string> split_composite(const std::string& s,
                                         const std::string& open,
                                         const std::string& close) {
  if (s.size() < open.size() + close.size() ||
      s.compare(0, open.size(), open) != 0 ||
      s.compare(s.size() - close.size(), close.size(), close) != 0) {
    throw MesError("malformed composite label: " + s);
  }
  std::vector<std::string> parts;
  std::string cur;
  int depth = 0;
  std::size_t i = open.size();
  const std::size_t end = s.size() - close.size();
  while (i < end) {
    if (s[i] == '\\' && i + 1 < end + close.size()) {
      cur.push_back(s[i]);
      cur.push_back(s[i + 1]);
      i += 2;
      continue;
    }
    if (s.compare(i, kLAngle.size(), kLAngle) == 0 || s[i] == '[') {
      depth++;
    } else if (s.compare(i, kRAngle.size(), kRAngle) == 0 || s[i] == ']') {
      depth--;
    } else if (s[i] == ',' && depth == 0) {
      parts.push_back(cur);
      cur.clear();
      ++i;
      continue;
    }
    cur.push_back(s[i]);
    ++i;
  }
  parts.push_back(cur);
  return parts;
}
}  // namespace

bool is_pair_label(const std::string& s) {
  return s.size() >= kLAngle.size() + kRAngle.size() &&
         s.compare(0, kLAngle.size(), kLAngle) == 0 &&
         s.compare(s.size() - kRAngle.size(), kRAngle.size(), kRAngle) == 0;
}

std::pair<std::string, std::string> split_pair_label(const std::string& s) {
  auto parts = split_composite(s, kLAngle, kRAngle);
  if (parts.size() != 2) throw MesError("not a pair label: " + s);
  return {unescape_label(parts[0]), unescape_label(parts[1])};
}

FinSet::FinSet(std::vector<std::string> elements) : elems_(std::move(elements)) {
  std::sort(elems_.begin(), elems_.end());
  auto dup = std::adjacent_find(elems_.begin(), elems_.end());
  if (dup != elems_.end()) throw MesError("duplicate label: " + *dup);
}

FinSet FinSet::unit() { return FinSet({"*"}); }

bool FinSet::contains(const std::string& label) const {
  return std::binary_search(elems_.begin(), elems_.end(), label);
}

std::size_t FinSet::index_of(const std::string& label) const {
  auto it = std::lower_bound(elems_.begin(), elems_.end(), label);
  if (it == elems_.end() || *it != label)
    throw MesError("label not in set: " + label);
  return static_cast<std::size_t>(it - elems_.begin());
}

std::string FinSet::to_string() const {
  std::ostringstream os;
  os << "{";
  for (std::size_t i = 0; i < elems_.size(); ++i) {
    if (i) os << ",";
    os << elems_[i];
  }
  os << "}";
  return os.str();
}

FinFun::FinFun(FinSet dom, FinSet cod, std::vector<std::size_t> graph)
    : dom_(std::move(dom)), cod_(std::move(cod)), graph_(std::move(graph)) {
  if (graph_.size() != dom_.size())
    throw MesError("function graph not total");
  for (std::size_t i : graph_)
    if (i >= cod_.size()) throw MesError("function image out of codomain");
}

FinFun FinFun::identity(const FinSet& s) {
  std::vector<std::size_t> g(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) g[i] = i;
  return FinFun(s, s, std::move(g));
}

FinFun FinFun::constant(const FinSet& dom, const FinSet& cod,
                        const std::string& value) {
  return FinFun(dom, cod,
                std::vector<std::size_t>(dom.size(), cod.index_of(value)));
}

const std::string& FinFun::operator()(const std::string& x) const {
  return cod_.at(graph_.at(dom_.index_of(x)));
}

bool FinFun::is_injective() const {
  std::vector<bool> seen(cod_.size(), false);
  for (std::size_t i : graph_) {
    if (seen[i]) return false;
    seen[i] = true;
  }
  return true;
}

bool FinFun::is_surjective() const {
  std::vector<bool> seen(cod_.size(), false);
  for (std::size_t i : graph_) seen[i] = true;
  return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
}

FinFun FinFun::compose(const FinFun& inner) const {
  if (inner.cod_ != dom_)
    throw MesError("composition domain mismatch");
  std::vector<std::size_t> g;
  g.reserve(inner.graph_.size());
  for (std::size_t i : inner.graph_) g.push_back(graph_.at(i));
  return FinFun(inner.dom_, cod_, std::move(g));
}

FinFun FinFun::inverse() const {
  if (dom_.size() != cod_.size() || !is_injective())
    throw MesError("inverse of a non-bijection");
  std::vector<std::size_t> g(cod_.size());
  for (std::size_t i = 0; i < graph_.size(); ++i) g[graph_[i]] = i;
  return FinFun(cod_, dom_, std::move(g));
}

std::string FinFun::to_string() const {
  std::ostringstream os;
  os << "{";
  for (std::size_t i = 0; i < dom_.size(); ++i) {
    if (i) os << ", ";
    os << dom_.at(i) << " -> " << cod_.at(graph_[i]);
  }
  os << "}";
  return os.str();
}

PairSet act(const FinSet& v, const FinSet& c) {
  std::vector<std::string> labels;
  labels.reserve(v.size() * c.size());
  for (const auto& l : v)
    for (const auto& r : c) labels.push_back(pair_label(l, r));
  return PairSet{v, c, FinSet(std::move(labels))};
}

std::string fun_elem_label(const FinFun& f) {
  std::string out = "[";
  for (std::size_t i = 0; i < f.dom().size(); ++i) {
    if (i) out += ",";
    out += escape_label(f.cod().at(f.image_index(i)));
  }
  out += "]";
  return out;
}

FinFun fun_from_elem_label(const std::string& label, const FinSet& dom,
                           const FinSet& cod) {
  if (dom.empty()) {
    if (label != "[]") throw MesError("malformed empty-function label");
    return FinFun(dom, cod, {});
  }
  auto parts = split_composite(label, "[", "]");
  if (parts.size() != dom.size())
    throw MesError("function label arity mismatch: " + label);
  std::vector<std::size_t> g;
  g.reserve(parts.size());
  for (const auto& p : parts) g.push_back(cod.index_of(unescape_label(p)));
  return FinFun(dom, cod, std::move(g));
}

namespace {
FinSet function_space(const FinSet& dom, const FinSet& cod) {
  if (dom.empty()) return FinSet({"[]"});
  if (cod.empty()) return FinSet();  // no total functions into the empty set
  std::vector<std::string> labels;
  std::vector<std::size_t> odo(dom.size(), 0);
  for (;;) {
    labels.push_back(fun_elem_label(FinFun(dom, cod, odo)));
    std::size_t i = 0;
    while (i < odo.size()) {
      if (++odo[i] < cod.size()) break;
      odo[i] = 0;
      ++i;
    }
    if (i == odo.size()) break;
  }
  return FinSet(std::move(labels));
}
}  // namespace

FinSet rhom(const FinSet& c, const FinSet& d) { return function_space(c, d); }
FinSet lhom(const FinSet& v, const FinSet& c) { return function_space(v, c); }

FinFun ev_right(const FinSet& a, const FinSet& x) {
  FinSet homset = rhom(a, x);
  PairSet p = act(homset, a);
  return FinFun::from_fn(p.carrier, x, [&](const std::string& lbl) {
    auto [rho, elem] = split_pair_label(lbl);
    return fun_from_elem_label(rho, a, x)(elem);
  });
}

FinFun ev_left(const FinSet& v, const FinSet& x) {
  FinSet space = lhom(v, x);
  PairSet p = act(v, space);
  return FinFun::from_fn(p.carrier, x, [&](const std::string& lbl) {
    auto [elem, g] = split_pair_label(lbl);
    return fun_from_elem_label(g, v, x)(elem);
  });
}

FinFun transpose_right(const FinFun& f, const FinSet& v, const FinSet& c) {
  PairSet p = act(v, c);
  if (f.dom() != p.carrier)
    throw MesError("transpose_right: domain is not the pair carrier");
  FinSet homset = rhom(c, f.cod());
  return FinFun::from_fn(v, homset, [&](const std::string& vl) {
    FinFun slice = FinFun::from_fn(c, f.cod(), [&](const std::string& cl) {
      return f(pair_label(vl, cl));
    });
    return fun_elem_label(slice);
  });
}

FinFun untranspose_right(const FinFun& g, const FinSet& c, const FinSet& d) {
  if (g.cod() != rhom(c, d))
    throw MesError("untranspose_right: codomain is not rhom(C,D)");
  PairSet p = act(g.dom(), c);
  return FinFun::from_fn(p.carrier, d, [&](const std::string& lbl) {
    auto [vl, cl] = split_pair_label(lbl);
    return fun_from_elem_label(g(vl), c, d)(cl);
  });
}

FinFun transpose_left(const FinFun& f, const FinSet& v, const FinSet& c) {
  PairSet p = act(v, c);
  if (f.dom() != p.carrier)
    throw MesError("transpose_left: domain is not the pair carrier");
  FinSet space = lhom(v, f.cod());
  return FinFun::from_fn(c, space, [&](const std::string& cl) {
    FinFun slice = FinFun::from_fn(v, f.cod(), [&](const std::string& vl) {
      return f(pair_label(vl, cl));
    });
    return fun_elem_label(slice);
  });
}

FinFun untranspose_left(const FinFun& g, const FinSet& v, const FinSet& d) {
  if (g.cod() != lhom(v, d))
    throw MesError("untranspose_left: codomain is not lhom(V,D)");
  PairSet p = act(v, g.dom());
  return FinFun::from_fn(p.carrier, d, [&](const std::string& lbl) {
    auto [vl, cl] = split_pair_label(lbl);
    return fun_from_elem_label(g(cl), v, d)(vl);
  });
}

FinFun assoc_iso(const FinSet& u, const FinSet& v, const FinSet& c) {
  PairSet uv = act(u, v);
  PairSet lhs = act(uv.carrier, c);
  PairSet vc = act(v, c);
  PairSet rhs = act(u, vc.carrier);
  return FinFun::from_fn(lhs.carrier, rhs.carrier, [&](const std::string& lbl) {
    auto [uvl, cl] = split_pair_label(lbl);
    auto [ul, vl] = split_pair_label(uvl);
    return pair_label(ul, pair_label(vl, cl));
  });
}

FinFun unit_iso(const FinSet& c) {
  PairSet p = act(FinSet::unit(), c);
  return FinFun::from_fn(p.carrier, c, [&](const std::string& lbl) {
    return split_pair_label(lbl).second;
  });
}

}  // namespace mes
