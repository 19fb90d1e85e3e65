#include "mes/term.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace mes {

Signature::Signature(std::vector<OpDecl> ops) : ops_(std::move(ops)) {}

std::optional<std::size_t> Signature::arity(const std::string& symbol) const {
  for (const auto& o : ops_)
    if (o.symbol == symbol) return o.arity;
  return std::nullopt;
}

bool Signature::operator==(const Signature& o) const {
  if (ops_.size() != o.ops_.size()) return false;
  for (std::size_t i = 0; i < ops_.size(); ++i)
    if (ops_[i].symbol != o.ops_[i].symbol || ops_[i].arity != o.ops_[i].arity)
      return false;
  return true;
}

Term Term::var(std::string name) {
  Term t;
  t.is_var_ = true;
  t.head_ = std::move(name);
  return t;
}

Term Term::app(std::string symbol, std::vector<Term> args) {
  Term t;
  t.is_var_ = false;
  t.head_ = std::move(symbol);
  t.args_ = std::move(args);
  return t;
}

std::size_t Term::depth() const {
  if (is_var_) return 0;
  std::size_t d = 0;
  for (const auto& a : args_) d = std::max(d, a.depth());
  return d + 1;
}

bool Term::operator==(const Term& o) const {
  return is_var_ == o.is_var_ && head_ == o.head_ && args_ == o.args_;
}

bool Term::operator<(const Term& o) const {
  if (is_var_ != o.is_var_) return is_var_;
  if (head_ != o.head_) return head_ < o.head_;
  return args_ < o.args_;
}

std::string Term::to_string() const {
  if (is_var_) return head_;
  std::ostringstream os;
  os << head_;
  if (!args_.empty()) {
    os << "(";
    for (std::size_t i = 0; i < args_.size(); ++i) {
      if (i) os << ",";
      os << args_[i].to_string();
    }
    os << ")";
  }
  return os.str();
}

namespace {
void collect_vars(const Term& t, std::set<std::string>& out) {
  if (t.is_var()) {
    out.insert(t.head());
    return;
  }
  for (const auto& a : t.args()) collect_vars(a, out);
}
}  // namespace

FinSet vars_of(const Term& t) {
  std::set<std::string> s;
  collect_vars(t, s);
  return FinSet(std::vector<std::string>(s.begin(), s.end()));
}

void collect_term_violations(const Signature& sig, const FinSet& vars,
                             const Term& t, const std::string& path,
                             std::vector<std::string>& out) {
  if (t.is_var()) {
    if (!vars.contains(t.head()))
      out.push_back(path + ": variable '" + t.head() +
                    "' not in arity set " + vars.to_string());
    return;
  }
  auto ar = sig.arity(t.head());
  if (!ar) {
    out.push_back(path + ": unknown symbol '" + t.head() + "'");
    return;
  }
  if (*ar != t.args().size())
    out.push_back(path + ": symbol '" + t.head() + "' expects " +
                  std::to_string(*ar) + " arguments, got " +
                  std::to_string(t.args().size()));
  for (std::size_t i = 0; i < t.args().size(); ++i)
    collect_term_violations(sig, vars, t.args()[i],
                            path + "." + std::to_string(i), out);
}

bool well_formed(const Signature& sig, const FinSet& vars, const Term& t) {
  std::vector<std::string> v;
  collect_term_violations(sig, vars, t, "root", v);
  return v.empty();
}

const Term& KleisliMap::at(const std::string& c) const {
  auto it = body.find(c);
  if (it == body.end()) throw MesError("Kleisli map undefined at: " + c);
  return it->second;
}

bool KleisliMap::operator==(const KleisliMap& o) const {
  return coarity == o.coarity && arity == o.arity && body == o.body;
}

std::string KleisliMap::to_string() const {
  std::ostringstream os;
  os << "{";
  bool first = true;
  for (const auto& [c, t] : body) {
    if (!first) os << "; ";
    first = false;
    os << c << " |-> " << t.to_string();
  }
  os << "}";
  return os.str();
}

KleisliMap identity_subst(const FinSet& a) {
  KleisliMap w{a, a, {}};
  for (const auto& x : a) w.body.emplace(x, Term::var(x));
  return w;
}

KleisliMap singleton_kleisli(const FinSet& arity, const Term& t) {
  KleisliMap w{FinSet::unit(), arity, {}};
  w.body.emplace("*", t);
  return w;
}

KleisliMap precompose(const KleisliMap& u, const FinFun& e) {
  if (e.cod() != u.coarity)
    throw MesError("precompose: codomain does not match coarity");
  KleisliMap w{e.dom(), u.arity, {}};
  for (const auto& c : e.dom()) w.body.emplace(c, u.at(e(c)));
  return w;
}

const Equation* Presentation::find_axiom(const std::string& axiom_name) const {
  for (const auto& ax : axioms)
    if (ax.name == axiom_name) return &ax;
  return nullptr;
}

std::vector<std::string> validate(const Presentation& p) {
  std::vector<std::string> out;
  std::set<std::string> symbols;
  for (const auto& o : p.signature.ops()) {
    if (!symbols.insert(o.symbol).second)
      out.push_back("signature: duplicate symbol '" + o.symbol + "'");
  }
  std::set<std::string> names;
  for (const auto& ax : p.axioms) {
    if (!names.insert(ax.name).second)
      out.push_back("axiom '" + ax.name + "': duplicate name");
    if (ax.lhs.coarity != ax.rhs.coarity)
      out.push_back("axiom '" + ax.name + "': sides differ in coarity");
    if (ax.lhs.arity != ax.rhs.arity)
      out.push_back("axiom '" + ax.name + "': sides differ in arity");
    for (const auto* side : {&ax.lhs, &ax.rhs}) {
      const char* tag = side == &ax.lhs ? "lhs" : "rhs";
      for (const auto& c : side->coarity) {
        auto it = side->body.find(c);
        if (it == side->body.end()) {
          out.push_back("axiom '" + ax.name + "' " + tag +
                        ": missing body at coarity element '" + c + "'");
          continue;
        }
        collect_term_violations(p.signature, side->arity, it->second,
                                "axiom '" + ax.name + "' " + tag + "@" + c,
                                out);
      }
      for (const auto& [c, t] : side->body) {
        (void)t;
        if (!side->coarity.contains(c))
          out.push_back("axiom '" + ax.name + "' " + tag +
                        ": body defined at '" + c + "' outside the coarity");
      }
    }
  }
  return out;
}

}  // namespace mes
