#pragma once

#include <cctype>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "dl4x/dl_model.hpp"

// Recursive-descent reader for the .dlkb / .dlq text formats.
namespace dl4x {

struct SourceSpan {
  std::string file;
  int line = 1;
  int column = 1;
  int length = 0;
};

class ParseError : public Error {
public:
  ParseError(SourceSpan span, const std::string &message, std::set<std::string> expected = {})
      : Error(format(span, message, expected)), span_(std::move(span)), message_(message),
        expected_(std::move(expected)) {}

  const SourceSpan &span() const { return span_; }
  const std::string &message() const { return message_; }
  const std::set<std::string> &expected() const { return expected_; }

private:
  static std::string format(const SourceSpan &s, const std::string &m, const std::set<std::string> &ex) {
    std::string out = (s.file.empty() ? std::string("<input>") : s.file) + ":" + std::to_string(s.line) + ":" +
                      std::to_string(s.column) + ": " + m;
    if (!ex.empty()) {
      out += " (expected ";
      bool first = true;
      for (const auto &e : ex) {
        out += (first ? "" : ", ") + e;
        first = false;
      }
      out += ")";
    }
    return out;
  }

  SourceSpan span_;
  std::string message_;
  std::set<std::string> expected_;
};

namespace detail {

enum class Tok { Ident, Var, Number, Punct, End };

struct Token {
  Tok kind;
  std::string text;
  SourceSpan span;
};

inline bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
inline bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-'; }

inline std::vector<Token> lex(std::string_view src, const std::string &file) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '#') {
      while (i < src.size() && src[i] != '\n')
        advance(1);
      continue;
    }
    SourceSpan sp{file, line, col, 1};
    if (ident_start(c) || c == '?') {
      std::size_t j = i + 1;
      while (j < src.size() && ident_char(src[j]))
        ++j;
      std::string text(src.substr(i, j - i));
      if (c == '?' && text.size() == 1)
        throw ParseError(sp, "'?' must be followed by a variable name");
      sp.length = static_cast<int>(j - i);
      out.push_back({c == '?' ? Tok::Var : Tok::Ident, c == '?' ? text.substr(1) : text, sp});
      advance(j - i);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j])))
        ++j;
      sp.length = static_cast<int>(j - i);
      out.push_back({Tok::Number, std::string(src.substr(i, j - i)), sp});
      advance(j - i);
      continue;
    }
    if (c == '!' && i + 1 < src.size() && src[i + 1] == '=') {
      sp.length = 2;
      out.push_back({Tok::Punct, "!=", sp});
      advance(2);
      continue;
    }
    if (std::string_view(".,:;(){}[]=").find(c) != std::string_view::npos) {
      out.push_back({Tok::Punct, std::string(1, c), sp});
      advance(1);
      continue;
    }
    throw ParseError(sp, std::string("unexpected character '") + c + "'");
  }
  out.push_back({Tok::End, "", SourceSpan{file, line, col, 0}});
  return out;
}

inline const std::set<std::string> &keywords() {
  static const std::set<std::string> k = {
      "signature", "concept", "arole", "crole", "individual", "datatype", "constants", "facets",
      "axiom", "assert", "equiv", "sub", "and", "or", "not", "inv", "id", "prod", "domrestr",
      "ranrestr", "restr", "some", "all", "atleast", "atmost", "self", "top", "bot", "U",
      "Ref", "Irref", "Sym", "Asym", "Tra", "Dis", "Fun"};
  return k;
}

class Parser {
public:
  Parser(std::string_view text, std::string file, Signature *sig) : toks_(lex(text, file)), sig_(sig) {}

  KnowledgeBase parse_kb() {
    KnowledgeBase kb;
    while (!at_end()) {
      if (peek_is("signature")) {
        next();
        expect("{");
        while (!peek_is("}"))
          declaration(kb);
        next();
      } else if (peek_is("axiom")) {
        next();
        kb.add(axiom());
      } else if (peek_is("assert")) {
        next();
        kb.add(assertion());
      } else if (is_decl_keyword(peek().text) && peek().kind == Tok::Ident) {
        declaration(kb);
      } else {
        fail("unexpected token", {"axiom", "assert", "signature", "concept", "arole", "crole", "individual", "datatype"});
      }
    }
    kb.sig = *sig_;
    return kb;
  }

  Query parse_query() {
    Query q;
    if (at_end())
      fail("empty query", {"query literal"});
    q.literals.push_back(query_literal());
    while (peek_is("and")) {
      next();
      q.literals.push_back(query_literal());
    }
    if (peek_is("."))
      next();
    if (!at_end())
      fail("unexpected token after query", {"and", "end of input"});
    return q;
  }

  TermPtr parse_standalone_term() {
    auto t = expr();
    if (!at_end())
      fail("unexpected token after term", {"end of input"});
    return t;
  }

private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  Signature *sig_;

  const Token &peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
  bool at_end() const { return peek().kind == Tok::End; }
  const Token &next() {
    const Token &t = peek();
    if (!at_end())
      ++pos_;
    return t;
  }
  bool peek_is(std::string_view s, std::size_t k = 0) const {
    const auto &t = peek(k);
    return (t.kind == Tok::Ident || t.kind == Tok::Punct) && t.text == s;
  }
  [[noreturn]] void fail(const std::string &msg, std::set<std::string> expected = {}) const {
    auto sp = peek().span;
    std::string got = at_end() ? "end of input" : "'" + peek().text + "'";
    throw ParseError(sp, msg + ", got " + got, std::move(expected));
  }
  void expect(std::string_view s) {
    if (!peek_is(s))
      fail("syntax error", {std::string(s)});
    next();
  }
  static bool is_decl_keyword(const std::string &s) {
    return s == "concept" || s == "arole" || s == "crole" || s == "individual" || s == "datatype";
  }

  std::string fresh_ident(const char *what) {
    const auto &t = peek();
    if (t.kind != Tok::Ident)
      fail(std::string("expected ") + what, {what});
    if (keywords().count(t.text))
      fail(std::string("reserved word used as ") + what, {what});
    if (t.text.rfind("__n", 0) == 0)
      fail("names starting with '__n' are reserved", {what});
    return next().text;
  }

  std::vector<std::string> ident_list(const char *what) {
    std::vector<std::string> out{fresh_ident(what)};
    while (peek_is(",")) {
      next();
      out.push_back(fresh_ident(what));
    }
    return out;
  }

  void declare(SymbolKind k, const std::string &name, const SourceSpan &sp, const std::string &dt = {}) {
    try {
      sig_->declare(k, name, dt);
    } catch (const Error &e) {
      throw ParseError(sp, e.what());
    }
  }

  void declaration(KnowledgeBase &) {
    const auto &kw = peek();
    if (kw.kind != Tok::Ident || !is_decl_keyword(kw.text))
      fail("expected a declaration", {"concept", "arole", "crole", "individual", "datatype"});
    std::string k = next().text;
    if (k == "datatype") {
      auto sp = peek().span;
      auto d = fresh_ident("datatype name");
      declare(SymbolKind::Datatype, d, sp);
      expect("{");
      while (!peek_is("}")) {
        if (peek_is("constants")) {
          next();
          auto csp = peek().span;
          for (auto &c : ident_list("constant"))
            declare(SymbolKind::Constant, c, csp, d);
        } else if (peek_is("facets")) {
          next();
          for (auto &f : ident_list("facet"))
            sig_->declare_facet(d, f);
        } else {
          fail("expected datatype member list", {"constants", "facets", "}"});
        }
        expect(";");
      }
      next();
      if (peek_is(".") || peek_is(";"))
        next();
      return;
    }
    SymbolKind sk = k == "concept" ? SymbolKind::Concept
                    : k == "arole" ? SymbolKind::ARole
                    : k == "crole" ? SymbolKind::CRole
                                   : SymbolKind::Individual;
    auto sp = peek().span;
    for (auto &n : ident_list("name"))
      declare(sk, n, sp);
    expect(".");
  }

  // --- terms -------------------------------------------------------------

  static const char *sort_name(Sort s) {
    switch (s) {
    case Sort::Concept: return "concept";
    case Sort::ARole: return "abstract role";
    case Sort::CRole: return "concrete role";
    case Sort::Data: return "data range";
    case Sort::Facet: return "facet expression";
    }
    return "?";
  }

  void require_sort(const TermPtr &t, std::initializer_list<Sort> ok, const SourceSpan &sp, const char *ctx) {
    for (auto s : ok)
      if (t->sort == s)
        return;
    throw ParseError(sp, std::string(ctx) + ": unexpected " + sort_name(t->sort) + " '" + print(*t) + "'");
  }

  TermPtr expr() {
    auto sp = peek().span;
    auto lhs = and_expr();
    while (peek_is("or")) {
      next();
      auto rhs = and_expr();
      require_sort(rhs, {lhs->sort}, sp, "operands of 'or' must have the same sort");
      lhs = tm::join(lhs, rhs);
    }
    return lhs;
  }

  TermPtr and_expr() {
    auto sp = peek().span;
    auto lhs = unary();
    while (peek_is("and")) {
      next();
      auto rhs = unary();
      require_sort(rhs, {lhs->sort}, sp, "operands of 'and' must have the same sort");
      lhs = tm::meet(lhs, rhs);
    }
    return lhs;
  }

  TermPtr role_operand(bool concrete_ok) {
    auto sp = peek().span;
    auto r = unary();
    if (concrete_ok)
      require_sort(r, {Sort::ARole, Sort::CRole}, sp, "expected a role");
    else
      require_sort(r, {Sort::ARole}, sp, "expected an abstract role");
    return r;
  }

  TermPtr concept_operand() {
    auto sp = peek().span;
    auto c = unary();
    require_sort(c, {Sort::Concept}, sp, "expected a concept");
    return c;
  }

  TermPtr full_concept() {
    auto sp = peek().span;
    auto c = expr();
    require_sort(c, {Sort::Concept}, sp, "expected a concept");
    return c;
  }

  int number() {
    if (peek().kind != Tok::Number)
      fail("expected a positive integer", {"number"});
    auto sp = peek().span;
    long v = std::stol(next().text);
    if (v < 1 || v > 1000000)
      throw ParseError(sp, "cardinality must be a positive integer");
    return static_cast<int>(v);
  }

  // `{a, b}` for individuals or datatype constants
  TermPtr braces() {
    auto sp = peek().span;
    expect("{");
    std::vector<std::string> names;
    std::optional<SymbolKind> kind;
    do {
      if (!names.empty())
        next();
      const auto &t = peek();
      if (t.kind != Tok::Ident)
        fail("expected an individual or constant", {"individual", "constant"});
      auto k = sig_->kind_of(t.text);
      if (k != SymbolKind::Individual && k != SymbolKind::Constant)
        throw UndeclaredName(loc(t.span) + "undeclared individual or constant '" + t.text + "'");
      if (kind && *kind != *k)
        throw ParseError(t.span, "cannot mix individuals and datatype constants in one set");
      kind = k;
      names.push_back(next().text);
    } while (peek_is(","));
    expect("}");
    (void)sp;
    if (*kind == SymbolKind::Individual)
      return names.size() == 1 ? tm::nominal(names[0]) : tm::nominal_set(names);
    return names.size() == 1 ? tm::singleton(names[0]) : tm::enumeration(names);
  }

  static std::string loc(const SourceSpan &s) {
    return (s.file.empty() ? std::string("<input>") : s.file) + ":" + std::to_string(s.line) + ":" +
           std::to_string(s.column) + ": ";
  }

  TermPtr unary() {
    const auto &t = peek();
    auto sp = t.span;
    if (t.kind == Tok::Punct) {
      if (t.text == "(") {
        next();
        auto e = expr();
        expect(")");
        return e;
      }
      if (t.text == "{")
        return braces();
      fail("expected a term", {"name", "(", "{", "not", "some", "all"});
    }
    if (t.kind != Tok::Ident)
      fail("expected a term", {"name"});
    const std::string w = t.text;
    if (w == "not") {
      next();
      return tm::negate(unary());
    }
    if (w == "top") {
      next();
      return tm::top();
    }
    if (w == "bot") {
      next();
      return tm::bottom();
    }
    if (w == "U") {
      next();
      return tm::universal();
    }
    if (w == "inv") {
      next();
      return tm::inverse(role_operand(false));
    }
    if (w == "self") {
      next();
      return tm::self(role_operand(false));
    }
    if (w == "some" || w == "all" || w == "atleast" || w == "atmost") {
      next();
      int n = (w == "atleast" || w == "atmost") ? number() : 0;
      auto r = role_operand(true);
      auto fsp = peek().span;
      auto f = unary();
      if (w == "some" && (f->op == Op::Nominal) && r->sort == Sort::ARole)
        return tm::valued_exists(r, f->name);
      if (w == "some" && (f->op == Op::Singleton) && r->sort == Sort::CRole)
        return tm::datatyped_exists(r, f->name);
      require_sort(f, {r->sort == Sort::ARole ? Sort::Concept : Sort::Data}, fsp, "restriction filler");
      if (w == "some")
        return tm::exists(r, f);
      if (w == "all")
        return tm::forall(r, f);
      return w == "atleast" ? tm::at_least(n, r, f) : tm::at_most(n, r, f);
    }
    if (w == "id" || w == "prod" || w == "domrestr" || w == "ranrestr" || w == "restr") {
      next();
      expect("(");
      TermPtr out;
      if (w == "id") {
        out = tm::id(full_concept());
      } else if (w == "prod") {
        auto c = full_concept();
        expect(",");
        out = tm::product(c, full_concept());
      } else {
        auto rsp = peek().span;
        auto r = expr();
        require_sort(r, {Sort::ARole, Sort::CRole}, rsp, "expected a role");
        expect(",");
        auto filler = [&](bool range) {
          auto fsp = peek().span;
          auto f = expr();
          Sort want = range && r->sort == Sort::CRole ? Sort::Data : Sort::Concept;
          require_sort(f, {want}, fsp, "restriction argument");
          return f;
        };
        if (w == "domrestr") {
          out = tm::domain_restr(r, filler(false));
        } else if (w == "ranrestr") {
          out = tm::range_restr(r, filler(true));
        } else {
          auto c = filler(false);
          expect(",");
          out = tm::restr(r, c, filler(true));
        }
      }
      expect(")");
      return out;
    }
    if (keywords().count(w))
      fail("unexpected keyword", {"term"});
    auto k = sig_->kind_of(w);
    if (!k)
      throw UndeclaredName(loc(sp) + "undeclared name '" + w + "'");
    next();
    switch (*k) {
    case SymbolKind::Concept: return tm::concept_name(w);
    case SymbolKind::ARole: return tm::arole_name(w);
    case SymbolKind::CRole: return tm::crole_name(w);
    case SymbolKind::Datatype:
      if (peek_is("[")) {
        next();
        auto psi = facet_cnf(w);
        expect("]");
        return tm::facet_expr(w, psi);
      }
      return tm::datatype(w);
    default: throw ParseError(sp, "individual or constant '" + w + "' used as a term; write {" + w + "}");
    }
  }

  // Facet expressions: CNF only. Clauses joined by `and`, literals by `or`.
  TermPtr facet_cnf(const std::string &d) {
    auto lhs = facet_clause(d, true);
    while (peek_is("and")) {
      next();
      lhs = tm::meet(lhs, facet_clause(d, true));
    }
    return lhs;
  }

  TermPtr facet_clause(const std::string &d, bool allow_paren) {
    if (allow_paren && peek_is("(")) {
      // a parenthesized clause; reject a conjunction inside
      next();
      auto c = facet_clause(d, false);
      if (peek_is("and"))
        fail("facet expressions must be in conjunctive normal form", {"or", ")"});
      expect(")");
      return c;
    }
    auto lhs = facet_literal(d);
    while (peek_is("or")) {
      next();
      lhs = tm::join(lhs, facet_literal(d));
    }
    return lhs;
  }

  TermPtr facet_literal(const std::string &d) {
    if (peek_is("not")) {
      next();
      if (peek_is("("))
        fail("facet expressions must be in conjunctive normal form", {"facet", "top", "bot"});
      return tm::negate(facet_atom(d));
    }
    if (peek_is("("))
      fail("facet expressions must be in conjunctive normal form", {"facet", "not", "top", "bot"});
    return facet_atom(d);
  }

  TermPtr facet_atom(const std::string &d) {
    const auto &t = peek();
    if (t.kind != Tok::Ident)
      fail("expected a facet", {"facet", "top", "bot"});
    if (t.text == "top") {
      next();
      return tm::facet_top();
    }
    if (t.text == "bot") {
      next();
      return tm::facet_bottom();
    }
    if (!sig_->has_facet(d, t.text))
      throw UndeclaredName(loc(t.span) + "'" + t.text + "' is not a facet of datatype '" + d + "'");
    return tm::facet(next().text);
  }

  // --- statements --------------------------------------------------------

  Statement axiom() {
    static const std::set<std::string> props = {"Ref", "Irref", "Sym", "Asym", "Tra", "Dis", "Fun"};
    auto sp = peek().span;
    if (peek().kind == Tok::Ident && props.count(peek().text) && peek_is("(", 1)) {
      std::string p = next().text;
      next();
      auto rsp = peek().span;
      auto r = expr();
      Statement s;
      bool concrete = r->sort == Sort::CRole;
      if (p == "Fun" || p == "Dis")
        require_sort(r, {Sort::ARole, Sort::CRole}, rsp, "role property");
      else
        require_sort(r, {Sort::ARole}, rsp, "role property");
      s.terms.push_back(r);
      if (p == "Dis") {
        expect(",");
        auto r2sp = peek().span;
        auto r2 = expr();
        require_sort(r2, {r->sort}, r2sp, "Dis arguments must have the same sort");
        s.terms.push_back(r2);
      }
      expect(")");
      expect(".");
      s.kind = p == "Ref"     ? StmtKind::Ref
               : p == "Irref" ? StmtKind::Irref
               : p == "Sym"   ? StmtKind::Sym
               : p == "Asym"  ? StmtKind::Asym
               : p == "Tra"   ? StmtKind::Tra
               : p == "Dis"   ? (concrete ? StmtKind::CDis : StmtKind::Dis)
                              : (concrete ? StmtKind::CFun : StmtKind::Fun);
      return s;
    }
    std::vector<TermPtr> lhs{expr()};
    while (!peek_is("equiv") && !peek_is("sub") && !at_end() && !peek_is(".")) {
      auto rsp = peek().span;
      auto r = expr();
      require_sort(r, {Sort::ARole}, rsp, "role chain");
      require_sort(lhs[0], {Sort::ARole}, sp, "role chain");
      lhs.push_back(r);
    }
    bool equiv = peek_is("equiv");
    if (!equiv && !peek_is("sub"))
      fail("expected an axiom connective", {"equiv", "sub"});
    next();
    auto rsp = peek().span;
    auto rhs = expr();
    expect(".");
    Statement s;
    if (lhs.size() > 1) {
      if (equiv)
        throw ParseError(sp, "role chains may only appear on the left of 'sub'");
      require_sort(rhs, {Sort::ARole}, rsp, "role chain");
      s.kind = StmtKind::RoleChainSub;
      s.terms = lhs;
      s.terms.push_back(rhs);
      return s;
    }
    require_sort(rhs, {lhs[0]->sort}, rsp, "both sides of an axiom must have the same sort");
    switch (lhs[0]->sort) {
    case Sort::Concept: s.kind = equiv ? StmtKind::ConceptEquiv : StmtKind::ConceptSub; break;
    case Sort::ARole: s.kind = equiv ? StmtKind::ARoleEquiv : StmtKind::ARoleSub; break;
    case Sort::CRole: s.kind = equiv ? StmtKind::CRoleEquiv : StmtKind::CRoleSub; break;
    case Sort::Data: s.kind = equiv ? StmtKind::DataEquiv : StmtKind::DataSub; break;
    case Sort::Facet: throw ParseError(sp, "facet expressions cannot form axioms");
    }
    s.terms = {lhs[0], rhs};
    return s;
  }

  std::string object(std::initializer_list<SymbolKind> ok, const char *what) {
    const auto &t = peek();
    if (t.kind != Tok::Ident)
      fail(std::string("expected ") + what, {what});
    auto k = sig_->kind_of(t.text);
    if (!k)
      throw UndeclaredName(loc(t.span) + "undeclared name '" + t.text + "'");
    for (auto s : ok)
      if (*k == s)
        return next().text;
    throw ParseError(t.span, "'" + t.text + "' is not a " + what);
  }

  Statement assertion() {
    Statement s;
    if (peek_is("(")) {
      next();
      auto a = object({SymbolKind::Individual}, "individual");
      expect(",");
      auto b = object({SymbolKind::Individual, SymbolKind::Constant}, "individual or constant");
      expect(")");
      expect(":");
      auto rsp = peek().span;
      auto r = expr();
      expect(".");
      bool data = sig_->is(b, SymbolKind::Constant);
      require_sort(r, {data ? Sort::CRole : Sort::ARole}, rsp, "role assertion");
      s.objs = {a, b};
      if (r->op == Op::Not) {
        s.kind = data ? StmtKind::NegCRoleAssert : StmtKind::NegRoleAssert;
        s.terms = {r->args[0]};
      } else {
        s.kind = data ? StmtKind::CRoleAssert : StmtKind::RoleAssert;
        s.terms = {r};
      }
      return s;
    }
    auto a = object({SymbolKind::Individual, SymbolKind::Constant}, "individual or constant");
    if (peek_is("=") || peek_is("!=")) {
      bool eq = next().text == "=";
      if (!sig_->is(a, SymbolKind::Individual))
        fail("(in)equality assertions relate individuals", {"individual"});
      auto b = object({SymbolKind::Individual}, "individual");
      expect(".");
      s.kind = eq ? StmtKind::SameAs : StmtKind::DifferentFrom;
      s.objs = {a, b};
      return s;
    }
    expect(":");
    auto csp = peek().span;
    auto c = expr();
    expect(".");
    bool data = sig_->is(a, SymbolKind::Constant);
    require_sort(c, {data ? Sort::Data : Sort::Concept}, csp, "assertion");
    s.kind = data ? StmtKind::DataAssert : StmtKind::ConceptAssert;
    s.objs = {a};
    s.terms = {c};
    return s;
  }

  // --- queries -----------------------------------------------------------

  QueryArg query_arg(std::initializer_list<SymbolKind> ok, const char *what) {
    if (peek().kind == Tok::Var)
      return {true, next().text};
    return {false, object(ok, what)};
  }

  QueryLiteral query_literal() {
    QueryLiteral l;
    if (peek_is("not")) {
      next();
      l.positive = false;
    }
    const auto &t = peek();
    auto sp = t.span;
    bool pred = t.kind == Tok::Ident && peek_is("(", 1);
    if (!pred) {
      auto any = {SymbolKind::Individual, SymbolKind::Constant};
      auto a = query_arg(any, "individual, constant or variable");
      expect("=");
      auto b = query_arg(any, "individual, constant or variable");
      l.kind = QueryAtomKind::Equal;
      l.args = {a, b};
      auto kind_of_arg = [&](const QueryArg &x) -> int {
        if (x.is_var)
          return 0;
        return sig_->is(x.name, SymbolKind::Individual) ? 1 : 2;
      };
      int ka = kind_of_arg(a), kb = kind_of_arg(b);
      if (ka && kb && ka != kb)
        throw ParseError(sp, "equality between an individual and a datatype constant");
      return l;
    }
    auto k = sig_->kind_of(t.text);
    if (!k)
      throw UndeclaredName(loc(sp) + "undeclared name '" + t.text + "'");
    std::string name = next().text;
    next();
    std::vector<QueryArg> args;
    auto first = query_arg({SymbolKind::Individual}, "individual or variable");
    args.push_back(first);
    if (peek_is(",")) {
      next();
      if (*k == SymbolKind::CRole)
        args.push_back(query_arg({SymbolKind::Constant}, "constant or variable"));
      else
        args.push_back(query_arg({SymbolKind::Individual}, "individual or variable"));
    }
    expect(")");
    switch (*k) {
    case SymbolKind::Concept:
      if (args.size() != 1)
        throw ParseError(sp, "arity error: concept '" + name + "' takes one argument");
      l.kind = QueryAtomKind::Concept;
      l.pred = tm::concept_name(name);
      break;
    case SymbolKind::ARole:
    case SymbolKind::CRole:
      if (args.size() != 2)
        throw ParseError(sp, "arity error: role '" + name + "' takes two arguments");
      l.kind = *k == SymbolKind::ARole ? QueryAtomKind::ARole : QueryAtomKind::CRole;
      l.pred = *k == SymbolKind::ARole ? tm::arole_name(name) : tm::crole_name(name);
      break;
    default: throw ParseError(sp, "'" + name + "' is not a concept or role name");
    }
    l.args = std::move(args);
    return l;
  }
};

} // namespace detail

inline KnowledgeBase parse_kb(std::string_view text, const std::string &file = {}) {
  Signature sig;
  detail::Parser p(text, file, &sig);
  return p.parse_kb();
}

inline Query parse_query(std::string_view text, const Signature &sig, const std::string &file = {}) {
  Signature copy = sig;
  detail::Parser p(text, file, &copy);
  return p.parse_query();
}

// Parses a single term against an existing signature (used by tests and tools).
inline TermPtr parse_term(std::string_view text, const Signature &sig) {
  Signature copy = sig;
  detail::Parser p(text, {}, &copy);
  return p.parse_standalone_term();
}

// Prints a KB in the surface syntax; parse_kb(print_kb(kb)) reproduces kb.
inline std::string print_kb(const KnowledgeBase &kb) {
  std::string out;
  const auto &s = kb.sig;
  auto decl = [&](const char *kw, const std::vector<std::string> &names) {
    if (!names.empty())
      out += std::string(kw) + " " + join_names(names) + ".\n";
  };
  decl("concept", s.concepts);
  decl("arole", s.aroles);
  decl("crole", s.croles);
  decl("individual", s.individuals);
  for (const auto &d : s.datatypes) {
    out += "datatype " + d.name + " {";
    if (!d.constants.empty())
      out += " constants " + join_names(d.constants) + ";";
    if (!d.facets.empty())
      out += " facets " + join_names(d.facets) + ";";
    out += " }\n";
  }
  for (const auto *st : kb.statements())
    out += print(*st) + "\n";
  return out;
}

} // namespace dl4x
