#pragma once

#include <algorithm>
#include <cctype>
#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "dl4x/dl_model.hpp"

// Ground fragment of the four-level set language: level-0 variables, level-1
// sets and level-3 relations, and CNF formulas over the three atom shapes
// x = y, x in X1, <x,y> in X3.
namespace dl4x {

enum class Var0Kind : std::uint8_t { Individual, Constant, QueryVar, Witness };
enum class Var1Kind : std::uint8_t { Term, Individuals, Data, Facet, FacetTop, FacetBottom };
enum class Var3Kind : std::uint8_t { Term };

struct Var0Info {
  Var0Kind kind;
  std::string name; // individual, constant, query variable, or what a witness inhabits
  std::string display;
};

struct Var1Info {
  Var1Kind kind;
  TermPtr term;         // Term
  std::string datatype; // Facet*, and datatype witnesses
  std::string facet;
  std::string display;
};

struct Var3Info {
  TermPtr term;
  std::string display;
};

// Interning tables. Each origin maps to exactly one variable per level.
class VarTable {
public:
  std::vector<Var0Info> v0;
  std::vector<Var1Info> v1;
  std::vector<Var3Info> v3;

  int var0(Var0Kind k, const std::string &name) {
    auto key = tag0(k) + name;
    if (auto it = idx0_.find(key); it != idx0_.end())
      return it->second;
    std::string disp = k == Var0Kind::QueryVar ? "x:?" + name : k == Var0Kind::Witness ? "x:!" + name : "x:" + name;
    v0.push_back({k, name, disp});
    return idx0_[key] = static_cast<int>(v0.size()) - 1;
  }
  std::optional<int> find_var0(Var0Kind k, const std::string &name) const {
    if (auto it = idx0_.find(tag0(k) + name); it != idx0_.end())
      return it->second;
    return std::nullopt;
  }
  // the variable an individual or constant name denotes
  std::optional<int> object(const std::string &name) const {
    if (auto r = find_var0(Var0Kind::Individual, name))
      return r;
    return find_var0(Var0Kind::Constant, name);
  }

  int var1(const TermPtr &t) {
    return intern1(t->key, {Var1Kind::Term, t, {}, {}, "X1:" + print(t)});
  }
  int individuals() { return intern1("!I", {Var1Kind::Individuals, nullptr, {}, {}, "X1:!I"}); }
  int data() { return intern1("!D", {Var1Kind::Data, nullptr, {}, {}, "X1:!D"}); }
  int facet(const std::string &d, const std::string &f) {
    return intern1("f:" + d + "." + f, {Var1Kind::Facet, nullptr, d, f, "X1:" + d + "." + f});
  }
  int facet_top(const std::string &d) {
    return intern1("f:" + d + "!top", {Var1Kind::FacetTop, nullptr, d, {}, "X1:" + d + ".top"});
  }
  int facet_bottom(const std::string &d) {
    return intern1("f:" + d + "!bot", {Var1Kind::FacetBottom, nullptr, d, {}, "X1:" + d + ".bot"});
  }
  std::optional<int> find_var1(const TermPtr &t) const {
    if (auto it = idx1_.find(t->key); it != idx1_.end())
      return it->second;
    return std::nullopt;
  }

  int var3(const TermPtr &t) {
    if (auto it = idx3_.find(t->key); it != idx3_.end())
      return it->second;
    v3.push_back({t, "X3:" + print(t)});
    return idx3_[t->key] = static_cast<int>(v3.size()) - 1;
  }
  std::optional<int> find_var3(const TermPtr &t) const {
    if (auto it = idx3_.find(t->key); it != idx3_.end())
      return it->second;
    return std::nullopt;
  }

  // Level-0 domain used for grounding: everything except query variables.
  std::vector<int> domain() const {
    std::vector<int> out;
    for (int i = 0; i < static_cast<int>(v0.size()); ++i)
      if (v0[i].kind != Var0Kind::QueryVar)
        out.push_back(i);
    return out;
  }

private:
  static std::string tag0(Var0Kind k) {
    switch (k) {
    case Var0Kind::Individual:
    case Var0Kind::Constant: return "o:"; // individuals and constants share one namespace
    case Var0Kind::QueryVar: return "v:";
    case Var0Kind::Witness: return "w:";
    }
    return "?:";
  }
  int intern1(const std::string &key, Var1Info info) {
    if (auto it = idx1_.find(key); it != idx1_.end())
      return it->second;
    v1.push_back(std::move(info));
    return idx1_[key] = static_cast<int>(v1.size()) - 1;
  }

  std::unordered_map<std::string, int> idx0_, idx1_, idx3_;
};

// Level-0 positions: ids >= 0 are Var0 entries, negative ids are bound
// variables (-1 is the first).
inline int bound_var(int i) { return -1 - i; }
inline bool is_bound(int x) { return x < 0; }
inline int bound_index(int x) { return -1 - x; }

enum class AtomKind : std::uint8_t { Eq, Mem1, Mem3 };

struct Atom {
  AtomKind kind = AtomKind::Eq;
  int x = 0, y = 0; // y unused for Mem1
  int set = 0;      // Var1 for Mem1, Var3 for Mem3
  auto operator<=>(const Atom &) const = default;
};

inline Atom eq(int x, int y) { return {AtomKind::Eq, std::min(x, y), std::max(x, y), 0}; }
inline Atom mem1(int x, int s) { return {AtomKind::Mem1, x, 0, s}; }
inline Atom mem3(int x, int y, int s) { return {AtomKind::Mem3, x, y, s}; }

struct Literal {
  bool positive = true;
  Atom atom;
  auto operator<=>(const Literal &) const = default;
  Literal complement() const { return {!positive, atom}; }
};

inline Literal pos(Atom a) { return {true, a}; }
inline Literal neg(Atom a) { return {false, a}; }

using Clause = std::vector<Literal>;

// Conjunction of clauses under a prefix of `nbound` universal quantifiers
// (nbound == 0: ground).
struct Cnf {
  Cnf() = default;
  Cnf(int nb, std::vector<Clause> cs, std::string o = {}) : nbound(nb), clauses(std::move(cs)), origin(std::move(o)) {}
  int nbound = 0;
  std::vector<Clause> clauses;
  std::string origin;
};

inline bool is_cnf_ground(const Cnf &f) { return f.nbound == 0; }

// --- printing --------------------------------------------------------------------

namespace detail {
inline bool plain_symbol(const std::string &s) {
  if (s.empty())
    return false;
  for (unsigned char c : s)
    if (!(std::isalnum(c) || std::string_view("_:.!?#@-+*/<>=").find(static_cast<char>(c)) != std::string_view::npos))
      return false;
  return true;
}
} // namespace detail

inline std::string quote_symbol(const std::string &s) {
  if (detail::plain_symbol(s))
    return s;
  std::string out = "|";
  for (char c : s) {
    if (c == '|' || c == '\\')
      out += '\\';
    out += c;
  }
  return out + "|";
}

inline std::string term0_name(const VarTable &vt, int x) {
  return is_bound(x) ? "z" + std::to_string(bound_index(x) + 1) : vt.v0[x].display;
}

inline std::string to_sexpr(const VarTable &vt, const Atom &a) {
  auto t = [&](int x) { return quote_symbol(term0_name(vt, x)); };
  switch (a.kind) {
  case AtomKind::Eq: return "(= " + t(a.x) + " " + t(a.y) + ")";
  case AtomKind::Mem1: return "(in " + t(a.x) + " " + quote_symbol(vt.v1[a.set].display) + ")";
  case AtomKind::Mem3: return "(in2 " + t(a.x) + " " + t(a.y) + " " + quote_symbol(vt.v3[a.set].display) + ")";
  }
  return "?";
}

inline std::string to_sexpr(const VarTable &vt, const Literal &l) {
  return l.positive ? to_sexpr(vt, l.atom) : "(not " + to_sexpr(vt, l.atom) + ")";
}

inline std::string to_sexpr(const VarTable &vt, const Clause &c) {
  std::string out = "(or";
  for (const auto &l : c)
    out += " " + to_sexpr(vt, l);
  return out + ")";
}

inline std::string to_sexpr(const VarTable &vt, const Cnf &f) {
  std::string body = "(and";
  for (const auto &c : f.clauses)
    body += " " + to_sexpr(vt, c);
  body += ")";
  if (f.nbound == 0)
    return body;
  std::string vars;
  for (int i = 0; i < f.nbound; ++i)
    vars += (i ? " z" : "z") + std::to_string(i + 1);
  return "(forall (" + vars + ") " + body + ")";
}

// --- s-expressions -------------------------------------------------------------------

struct SExpr {
  bool is_list = false;
  std::string atom;
  std::vector<SExpr> items;
};

inline SExpr parse_sexpr(const std::string &text) {
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i])))
      ++i;
  };
  auto fail = [&](const std::string &msg) -> SExpr {
    throw Error("s-expression: " + msg + " at offset " + std::to_string(i));
  };
  std::function<SExpr()> read = [&]() -> SExpr {
    skip();
    if (i >= text.size())
      return fail("unexpected end of input");
    if (text[i] == '(') {
      ++i;
      SExpr list{true, {}, {}};
      for (;;) {
        skip();
        if (i >= text.size())
          return fail("unterminated list");
        if (text[i] == ')') {
          ++i;
          return list;
        }
        list.items.push_back(read());
      }
    }
    if (text[i] == ')')
      return fail("unexpected ')'");
    std::string sym;
    if (text[i] == '|') {
      ++i;
      while (i < text.size() && text[i] != '|') {
        if (text[i] == '\\' && i + 1 < text.size())
          ++i;
        sym += text[i++];
      }
      if (i >= text.size())
        return fail("unterminated |symbol|");
      ++i;
      return {false, sym, {}};
    }
    while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i])) && text[i] != '(' && text[i] != ')')
      sym += text[i++];
    return {false, sym, {}};
  };
  auto out = read();
  skip();
  if (i != text.size())
    fail("trailing input");
  return out;
}

// Formula over symbolic names, the common ground for comparing translator
// output with hand-written expectations.
struct NamedLiteral {
  bool positive;
  std::vector<std::string> atom; // head followed by arguments
  auto operator<=>(const NamedLiteral &) const = default;
};
using NamedClause = std::set<NamedLiteral>;
struct NamedCnf {
  std::vector<std::string> bound;
  std::vector<NamedClause> clauses;
};

namespace detail {
inline NamedLiteral named_literal(const SExpr &e) {
  if (!e.is_list || e.items.empty())
    throw Error("s-expression: literal expected");
  if (e.items[0].atom == "not") {
    if (e.items.size() != 2)
      throw Error("s-expression: (not A) takes one argument");
    auto l = named_literal(e.items[1]);
    l.positive = !l.positive;
    return l;
  }
  NamedLiteral l{true, {}};
  for (const auto &x : e.items) {
    if (x.is_list)
      throw Error("s-expression: nested atom");
    l.atom.push_back(x.atom);
  }
  return l;
}

// Conjunction of clauses for an (and ...)/(or ...)/literal expression. A
// disjunction of conjunctions is distributed.
inline std::vector<NamedClause> named_cnf(const SExpr &e) {
  if (e.is_list && !e.items.empty() && !e.items[0].is_list) {
    const auto &h = e.items[0].atom;
    if (h == "and") {
      std::vector<NamedClause> out;
      for (std::size_t i = 1; i < e.items.size(); ++i)
        for (auto &c : named_cnf(e.items[i]))
          out.push_back(std::move(c));
      return out;
    }
    if (h == "or") {
      std::vector<NamedClause> acc{NamedClause{}};
      for (std::size_t i = 1; i < e.items.size(); ++i) {
        auto part = named_cnf(e.items[i]);
        std::vector<NamedClause> next;
        for (const auto &a : acc)
          for (const auto &b : part) {
            auto c = a;
            c.insert(b.begin(), b.end());
            next.push_back(std::move(c));
          }
        acc = std::move(next);
      }
      return acc;
    }
  }
  return {NamedClause{named_literal(e)}};
}
} // namespace detail

inline NamedCnf parse_named_cnf(const std::string &text) {
  auto e = parse_sexpr(text);
  NamedCnf out;
  if (e.is_list && !e.items.empty() && e.items[0].atom == "forall") {
    if (e.items.size() != 3 || !e.items[1].is_list)
      throw Error("s-expression: (forall (vars) body) expected");
    for (const auto &v : e.items[1].items)
      out.bound.push_back(v.atom);
    out.clauses = detail::named_cnf(e.items[2]);
  } else {
    out.clauses = detail::named_cnf(e);
  }
  return out;
}

inline NamedCnf to_named(const VarTable &vt, const Cnf &f) { return parse_named_cnf(to_sexpr(vt, f)); }

// Equality modulo a renaming of bound variables, clause order, literal order,
// duplicates, and the orientation of equalities.
inline bool alpha_equivalent(const NamedCnf &a, const NamedCnf &b) {
  if (a.bound.size() != b.bound.size())
    return false;
  auto canon = [](const std::vector<NamedClause> &cs, const std::map<std::string, std::string> &ren) {
    std::set<NamedClause> out;
    for (const auto &c : cs) {
      NamedClause nc;
      for (auto l : c) {
        for (std::size_t i = 1; i < l.atom.size(); ++i)
          if (auto it = ren.find(l.atom[i]); it != ren.end())
            l.atom[i] = it->second;
        if (l.atom.size() == 3 && l.atom[0] == "=" && l.atom[2] < l.atom[1])
          std::swap(l.atom[1], l.atom[2]);
        nc.insert(std::move(l));
      }
      out.insert(std::move(nc));
    }
    return out;
  };
  std::map<std::string, std::string> rb;
  for (std::size_t i = 0; i < b.bound.size(); ++i)
    rb[b.bound[i]] = "#" + std::to_string(i);
  auto target = canon(b.clauses, rb);
  std::vector<std::size_t> perm(a.bound.size());
  std::iota(perm.begin(), perm.end(), 0);
  do {
    std::map<std::string, std::string> ra;
    for (std::size_t i = 0; i < perm.size(); ++i)
      ra[a.bound[i]] = "#" + std::to_string(perm[i]);
    if (canon(a.clauses, ra) == target)
      return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

inline bool alpha_equivalent(const std::string &a, const std::string &b) {
  return alpha_equivalent(parse_named_cnf(a), parse_named_cnf(b));
}

} // namespace dl4x
