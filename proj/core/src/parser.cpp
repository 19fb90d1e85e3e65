#include "mes/parser.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace mes {

namespace {

FinSet dedup_set(std::vector<std::string> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return FinSet(std::move(v));
}

bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '*' ||
         c == '\'' || c == '-';
}

// A character cursor tracking line/column for error reporting.
struct Cursor {
  const std::string& text;
  std::size_t pos = 0;
  std::size_t line = 1;
  std::size_t col = 1;

  explicit Cursor(const std::string& t) : text(t) {}

  bool done() const { return pos >= text.size(); }
  char peek() const { return done() ? '\0' : text[pos]; }
  char get() {
    char c = text[pos++];
    if (c == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    return c;
  }
  [[noreturn]] void fail(const std::string& reason) const {
    throw ParseError(line, col, reason);
  }
  void skip_ws() {
    for (;;) {
      while (!done() && std::isspace(static_cast<unsigned char>(peek()))) get();
      if (peek() == '#') {
        while (!done() && peek() != '\n') get();
        continue;
      }
      return;
    }
  }
  void expect(char c) {
    if (peek() != c)
      fail(std::string("expected '") + c + "', found " +
           (done() ? std::string("end of input")
                   : "'" + std::string(1, peek()) + "'"));
    get();
  }
  std::string ident(const std::string& what) {
    if (!ident_char(peek())) fail("expected " + what);
    std::string out;
    while (ident_char(peek())) out.push_back(get());
    return out;
  }
  // An identifier optionally followed by a balanced parenthesis group, taken
  // verbatim; this is how terms are embedded in s-expressions.
  std::string term_chunk() {
    std::string out = ident("a term");
    if (peek() == '(') {
      std::size_t depth = 0;
      do {
        char c = get();
        out.push_back(c);
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (done() && depth > 0) fail("unbalanced parentheses in term");
      } while (depth > 0);
    }
    return out;
  }
};

Term parse_term_at(const Signature& sig, Cursor& cur) {
  cur.skip_ws();
  std::string head = cur.ident("a term");
  cur.skip_ws();
  if (cur.peek() == '(') {
    cur.get();
    std::vector<Term> args;
    cur.skip_ws();
    if (cur.peek() != ')') {
      for (;;) {
        args.push_back(parse_term_at(sig, cur));
        cur.skip_ws();
        if (cur.peek() == ',') {
          cur.get();
          continue;
        }
        break;
      }
    }
    cur.expect(')');
    if (!sig.has(head)) cur.fail("unknown symbol '" + head + "'");
    return Term::app(head, std::move(args));
  }
  if (sig.has(head)) {
    if (*sig.arity(head) != 0)
      cur.fail("symbol '" + head + "' needs arguments");
    return Term::app(head, {});
  }
  return Term::var(head);
}

}  // namespace

Term parse_term(const Signature& sig, const std::string& text) {
  Cursor cur(text);
  Term t = parse_term_at(sig, cur);
  cur.skip_ws();
  if (!cur.done()) cur.fail("trailing input after term");
  return t;
}

Presentation parse_presentation(const std::string& text) {
  Presentation p;
  std::vector<OpDecl> ops;
  struct PendingAxiom {
    std::size_t line;
    std::string body;
  };
  std::vector<PendingAxiom> pending;

  std::istringstream in(text);
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = raw.substr(0, raw.find('#'));
    Cursor cur(line);
    cur.line = lineno;
    cur.skip_ws();
    if (cur.done()) continue;
    std::string kw = cur.ident("'sig', 'ax' or 'name'");
    cur.skip_ws();
    if (kw == "name") {
      p.name = cur.ident("a presentation name");
    } else if (kw == "sig") {
      std::string sym = cur.ident("an operation symbol");
      cur.skip_ws();
      cur.expect('/');
      cur.skip_ws();
      std::string digits = cur.ident("an arity");
      std::size_t arity = 0;
      try {
        arity = std::stoul(digits);
      } catch (const std::exception&) {
        cur.fail("arity must be a natural number");
      }
      ops.push_back({sym, arity});
    } else if (kw == "ax") {
      // Defer until the whole signature is known.
      pending.push_back({lineno, std::string(cur.text.begin() + cur.pos,
                                             cur.text.end())});
    } else {
      cur.fail("expected 'sig', 'ax' or 'name', found '" + kw + "'");
    }
  }

  p.signature = Signature(std::move(ops));
  for (const auto& pa : pending) {
    Cursor cur(pa.body);
    cur.line = pa.line;
    cur.skip_ws();
    std::string ax_name = cur.ident("an axiom name");
    cur.skip_ws();
    cur.expect(':');
    cur.skip_ws();
    std::vector<std::string> vars;
    bool declared = false;
    if (pa.body.compare(cur.pos, 7, "forall ") == 0) {
      declared = true;
      cur.ident("forall");
      for (;;) {
        cur.skip_ws();
        if (cur.peek() == '.') {
          cur.get();
          break;
        }
        vars.push_back(cur.ident("a variable or '.'"));
      }
    }
    Term lhs = parse_term_at(p.signature, cur);
    cur.skip_ws();
    cur.expect('=');
    Term rhs = parse_term_at(p.signature, cur);
    cur.skip_ws();
    if (!cur.done()) cur.fail("trailing input after equation");

    if (!declared)
      for (const auto& s : {lhs, rhs})
        for (const auto& v : vars_of(s)) vars.push_back(v);
    FinSet arity = declared ? FinSet(vars) : dedup_set(vars);
    for (const auto& s : {lhs, rhs})
      for (const auto& v : vars_of(s))
        if (!arity.contains(v))
          throw ParseError(pa.line, 1,
                           "variable '" + v + "' is not bound by forall");
    Equation e;
    e.name = ax_name;
    e.lhs = singleton_kleisli(arity, lhs);
    e.rhs = singleton_kleisli(arity, rhs);
    p.axioms.push_back(std::move(e));
  }

  auto problems = validate(p);
  if (!problems.empty()) throw ParseError(0, 0, problems.front());
  return p;
}

std::string presentation_to_text(const Presentation& p) {
  std::ostringstream os;
  if (!p.name.empty()) os << "name " << p.name << "\n";
  for (const auto& o : p.signature.ops())
    os << "sig " << o.symbol << "/" << o.arity << "\n";
  for (const auto& a : p.axioms) {
    os << "ax " << a.name << ":";
    if (a.lhs.arity.size() > 0) {
      os << " forall";
      for (const auto& v : a.lhs.arity) os << " " << v;
      os << ".";
    }
    os << " " << a.lhs.at("*").to_string() << " = " << a.rhs.at("*").to_string()
       << "\n";
  }
  return os.str();
}

Equation parse_equation(const Signature& sig, const std::string& text) {
  Cursor cur(text);
  Term lhs = parse_term_at(sig, cur);
  cur.skip_ws();
  cur.expect('=');
  Term rhs = parse_term_at(sig, cur);
  cur.skip_ws();
  if (!cur.done()) cur.fail("trailing input after equation");
  std::vector<std::string> vars;
  for (const auto& s : {lhs, rhs})
    for (const auto& v : vars_of(s)) vars.push_back(v);
  FinSet arity = dedup_set(vars);
  Equation e;
  e.name = "goal";
  e.lhs = singleton_kleisli(arity, lhs);
  e.rhs = singleton_kleisli(arity, rhs);
  return e;
}

namespace {

KleisliMap parse_subst(const Signature& sig, Cursor& cur) {
  // Caller has consumed "(subst".
  std::vector<std::string> coarity;
  std::map<std::string, Term> body;
  std::vector<std::string> extra_vars;
  for (;;) {
    cur.skip_ws();
    if (cur.peek() == ')') {
      cur.get();
      break;
    }
    cur.expect('(');
    cur.skip_ws();
    std::string key = cur.ident("a coarity element or 'vars'");
    if (key == "vars") {
      for (;;) {
        cur.skip_ws();
        if (cur.peek() == ')') {
          cur.get();
          break;
        }
        extra_vars.push_back(cur.ident("a variable"));
      }
      continue;
    }
    cur.skip_ws();
    std::string chunk = cur.term_chunk();
    cur.skip_ws();
    cur.expect(')');
    coarity.push_back(key);
    body[key] = parse_term(sig, chunk);
  }
  std::vector<std::string> vars = extra_vars;
  for (const auto& [c, t] : body)
    for (const auto& v : vars_of(t)) vars.push_back(v);
  KleisliMap w;
  w.coarity = FinSet(coarity);
  w.arity = dedup_set(vars);
  w.body = std::move(body);
  if (w.coarity.size() != w.body.size())
    cur.fail("duplicate coarity element in subst");
  return w;
}

FinFun parse_map(const Signature&, Cursor& cur, const FinSet& cod) {
  // Caller has consumed "(map".
  std::vector<std::string> dom;
  std::map<std::string, std::string> graph;
  for (;;) {
    cur.skip_ws();
    if (cur.peek() == ')') {
      cur.get();
      break;
    }
    cur.expect('(');
    cur.skip_ws();
    std::string from = cur.ident("a domain element");
    cur.skip_ws();
    std::string to = cur.ident("a codomain element");
    cur.skip_ws();
    cur.expect(')');
    dom.push_back(from);
    graph[from] = to;
  }
  FinSet dom_set(dom);
  if (dom_set.size() != graph.size()) cur.fail("duplicate domain element in map");
  return FinFun::from_fn(dom_set, cod,
                         [&](const std::string& d) { return graph.at(d); });
}

ProofPtr parse_proof_at(const Signature& sig, Cursor& cur) {
  cur.skip_ws();
  cur.expect('(');
  cur.skip_ws();
  std::string kw = cur.ident("a proof keyword");
  if (kw == "subst") return Proof::ref(parse_subst(sig, cur));
  if (kw == "ref") {
    cur.skip_ws();
    cur.expect('(');
    cur.skip_ws();
    if (cur.ident("'subst'") != "subst") cur.fail("ref expects a subst");
    KleisliMap u = parse_subst(sig, cur);
    cur.skip_ws();
    cur.expect(')');
    return Proof::ref(std::move(u));
  }
  if (kw == "axiom") {
    cur.skip_ws();
    std::string name = cur.ident("an axiom name");
    cur.skip_ws();
    cur.expect(')');
    return Proof::axiom(name);
  }
  if (kw == "sym") {
    ProofPtr c = parse_proof_at(sig, cur);
    cur.skip_ws();
    cur.expect(')');
    return Proof::sym(std::move(c));
  }
  if (kw == "trans" || kw == "comp") {
    ProofPtr a = parse_proof_at(sig, cur);
    ProofPtr b = parse_proof_at(sig, cur);
    cur.skip_ws();
    cur.expect(')');
    return kw == "trans" ? Proof::trans(std::move(a), std::move(b))
                         : Proof::comp(std::move(a), std::move(b));
  }
  if (kw == "ext") {
    cur.skip_ws();
    cur.expect('(');
    cur.skip_ws();
    if (cur.ident("'set'") != "set") cur.fail("ext expects (set v ...)");
    std::vector<std::string> elems;
    for (;;) {
      cur.skip_ws();
      if (cur.peek() == ')') {
        cur.get();
        break;
      }
      elems.push_back(cur.ident("a set element"));
    }
    ProofPtr c = parse_proof_at(sig, cur);
    cur.skip_ws();
    cur.expect(')');
    return Proof::ext_rule(FinSet(elems), std::move(c));
  }
  auto read_subst = [&]() {
    cur.skip_ws();
    cur.expect('(');
    cur.skip_ws();
    if (cur.ident("'subst'") != "subst") cur.fail("expected a subst");
    return parse_subst(sig, cur);
  };
  if (kw == "local" || kw == "local1") {
    KleisliMap u = read_subst();
    KleisliMap v = read_subst();
    std::vector<FinFun> cocone;
    std::vector<ProofPtr> premises;
    if (kw == "local") {
      cur.skip_ws();
      cur.expect('(');
      cur.skip_ws();
      if (cur.ident("'maps'") != "maps") cur.fail("local expects (maps ...)");
      for (;;) {
        cur.skip_ws();
        if (cur.peek() == ')') {
          cur.get();
          break;
        }
        cur.expect('(');
        cur.skip_ws();
        if (cur.ident("'map'") != "map") cur.fail("expected (map ...)");
        cocone.push_back(parse_map(sig, cur, u.coarity));
      }
      for (;;) {
        cur.skip_ws();
        if (cur.peek() == ')') {
          cur.get();
          break;
        }
        premises.push_back(parse_proof_at(sig, cur));
      }
      return Proof::local(std::move(u), std::move(v), std::move(cocone),
                          std::move(premises));
    }
    cur.skip_ws();
    cur.expect('(');
    cur.skip_ws();
    if (cur.ident("'map'") != "map") cur.fail("local1 expects (map ...)");
    FinFun e = parse_map(sig, cur, u.coarity);
    ProofPtr c = parse_proof_at(sig, cur);
    cur.skip_ws();
    cur.expect(')');
    return Proof::local1(std::move(u), std::move(v), std::move(e),
                         std::move(c));
  }
  if (kw == "compcoprod") {
    ProofPtr head = parse_proof_at(sig, cur);
    std::vector<ProofPtr> premises;
    for (;;) {
      cur.skip_ws();
      if (cur.peek() == ')') {
        cur.get();
        break;
      }
      premises.push_back(parse_proof_at(sig, cur));
    }
    return Proof::comp_coprod(std::move(head), std::move(premises));
  }
  cur.fail("unknown proof keyword '" + kw + "'");
}

void print_subst(std::ostream& os, const KleisliMap& w) {
  os << "(subst";
  FinSet used;
  {
    std::vector<std::string> vars;
    for (const auto& [c, t] : w.body)
      for (const auto& v : vars_of(t)) vars.push_back(v);
    used = dedup_set(vars);
  }
  for (const auto& c : w.coarity)
    os << " (" << c << " " << w.at(c).to_string() << ")";
  if (!(used == w.arity)) {
    os << " (vars";
    for (const auto& v : w.arity) os << " " << v;
    os << ")";
  }
  os << ")";
}

void print_map(std::ostream& os, const FinFun& f) {
  os << "(map";
  for (const auto& d : f.dom()) os << " (" << d << " " << f(d) << ")";
  os << ")";
}

void print_proof(std::ostream& os, const ProofPtr& p) {
  const Proof& n = *p;
  switch (n.kind) {
    case Proof::Kind::Ref:
      os << "(ref ";
      print_subst(os, n.ref_map);
      os << ")";
      return;
    case Proof::Kind::Sym:
      os << "(sym ";
      print_proof(os, n.children[0]);
      os << ")";
      return;
    case Proof::Kind::Trans:
    case Proof::Kind::Comp:
      os << (n.kind == Proof::Kind::Trans ? "(trans " : "(comp ");
      print_proof(os, n.children[0]);
      os << " ";
      print_proof(os, n.children[1]);
      os << ")";
      return;
    case Proof::Kind::Axiom:
      os << "(axiom " << n.axiom_name << ")";
      return;
    case Proof::Kind::Ext:
      os << "(ext (set";
      for (const auto& v : n.ext_v) os << " " << v;
      os << ") ";
      print_proof(os, n.children[0]);
      os << ")";
      return;
    case Proof::Kind::Local: {
      os << "(local ";
      print_subst(os, n.pair_lhs);
      os << " ";
      print_subst(os, n.pair_rhs);
      os << " (maps";
      for (const auto& e : n.cocone) {
        os << " ";
        print_map(os, e);
      }
      os << ")";
      for (const auto& c : n.children) {
        os << " ";
        print_proof(os, c);
      }
      os << ")";
      return;
    }
    case Proof::Kind::Local1:
      os << "(local1 ";
      print_subst(os, n.pair_lhs);
      os << " ";
      print_subst(os, n.pair_rhs);
      os << " ";
      print_map(os, n.cocone[0]);
      os << " ";
      print_proof(os, n.children[0]);
      os << ")";
      return;
    case Proof::Kind::CompCoprod:
      os << "(compcoprod";
      for (const auto& c : n.children) {
        os << " ";
        print_proof(os, c);
      }
      os << ")";
      return;
  }
}

}  // namespace

ProofPtr parse_proof(const Signature& sig, const std::string& text) {
  Cursor cur(text);
  ProofPtr p = parse_proof_at(sig, cur);
  cur.skip_ws();
  if (!cur.done()) cur.fail("trailing input after proof");
  return p;
}

std::string proof_to_text(const ProofPtr& proof) {
  if (!proof) throw MesError("proof_to_text: missing proof");
  std::ostringstream os;
  print_proof(os, proof);
  return os.str();
}

}  // namespace mes
