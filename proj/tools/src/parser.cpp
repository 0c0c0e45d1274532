#include "loomalg/dsl/parser.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "loomalg/catalog.hpp"
#include "loomalg/error.hpp"

namespace loomalg::dsl {

const std::vector<Signature>& signatures() {
  using A = ArgKind;
  static const std::vector<Signature> s{
      {"mat", StmtKind::Algebra, {A::Int}, 1},
      {"gl", StmtKind::Algebra, {A::Int}, 1},
      {"sl", StmtKind::Algebra, {A::Int}, 1},
      {"zero", StmtKind::Algebra, {A::Int}, 1},
      {"quaternion", StmtKind::Algebra, {A::Scalar, A::Scalar}, 2},
      {"sum", StmtKind::Algebra, {A::Algebra, A::Algebra}, 2},
      {"structure", StmtKind::Algebra, {A::Int, A::Table}, 2},
      {"clock", StmtKind::Field, {A::Int}, 1},
      {"shift", StmtKind::Field, {A::Int}, 1},
      {"antidiag", StmtKind::Field, {A::Int}, 1},
      {"conj", StmtKind::Auto, {A::Algebra, A::Matrix}, 2},
      {"outer", StmtKind::Auto, {A::Algebra, A::Matrix}, 2},
      {"linear", StmtKind::Auto, {A::Algebra, A::Matrix}, 2},
      {"swap", StmtKind::Auto, {A::Algebra}, 1},
      {"identity", StmtKind::Auto, {A::Algebra}, 1},
      {"eigen", StmtKind::Grading, {A::Algebra, A::Auto, A::Int}, 3},
      {"trivial", StmtKind::Grading, {A::Algebra, A::Int}, 2},
      {"multiloop", StmtKind::Tower, {A::Algebra, A::AutoList, A::IntList}, 2},
      {"loop", StmtKind::Tower, {A::Algebra, A::Grading}, 2},
      {"untwisted", StmtKind::Tower, {A::Algebra, A::Int}, 2},
      {"synthetic", StmtKind::Tower, {A::Int}, 1},
  };
  return s;
}

const Signature* find_signature(const std::string& name) {
  for (const auto& s : signatures())
    if (s.name == name) return &s;
  return nullptr;
}

const std::vector<Verb>& verbs() {
  using K = StmtKind;
  static const std::vector<Verb> v{
      {"check grading", {K::Grading}, false, true, false},
      {"check algebra", {K::Algebra}, false, false, false},
      {"check flags", {K::Tower}, false, false, false},
      {"check psi", {K::Tower}, true, false, false},
      {"check multiloop", {K::Tower}, true, false, false},
      {"check free-basis", {K::Tower}, false, false, false},
      {"build tower", {K::Tower}, false, false, false},
      {"centroid", {K::Algebra, K::Tower}, true, false, false},
      {"kind", {K::Tower}, false, false, false},
      {"type", {K::Algebra, K::Tower}, false, false, false},
      {"untwist", {K::Tower}, true, false, false},
      {"canonical-form", {K::Tower}, false, false, true},
  };
  return v;
}

const Verb* find_verb(const std::string& name) {
  for (const auto& v : verbs())
    if (v.name == name) return &v;
  return nullptr;
}

bool ParseResult::ok() const {
  return std::none_of(diagnostics.begin(), diagnostics.end(),
                      [](const Diagnostic& d) { return d.severity == Diagnostic::Severity::Error; });
}

namespace {

enum class Tok { Ident, Int, String, Punct, Comment, End };

struct Token {
  Tok kind;
  std::string text;
  Span span;
};

class Lexer {
 public:
  Lexer(std::string_view src, std::vector<Diagnostic>& diags) : src_(src), diags_(diags) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_space();
      const uint32_t line = line_, col = col_;
      if (pos_ >= src_.size()) {
        out.push_back({Tok::End, "", {line, col, line, col}});
        return out;
      }
      const char c = src_[pos_];
      if (c == '#' || (c == '/' && peek(1) == '/')) {
        size_t start = pos_ + (c == '#' ? 1 : 2);
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
        std::string body(src_.substr(start, pos_ - start));
        const size_t first = body.find_first_not_of(' ');
        body = first == std::string::npos ? "" : body.substr(first);
        out.push_back({Tok::Comment, body, {line, col, line_, col_}});
        continue;
      }
      if (is_ident_start(c)) {
        size_t start = pos_;
        while (pos_ < src_.size() && is_ident_char(src_[pos_])) advance();
        std::string word(src_.substr(start, pos_ - start));
        // hyphenated command words
        for (const char* tail : {"form", "basis"}) {
          const std::string head = std::string(tail) == "form" ? "canonical" : "free";
          const std::string rest = std::string("-") + tail;
          if (word == head && src_.substr(pos_, rest.size()) == rest) {
            for (size_t i = 0; i < rest.size(); ++i) advance();
            word += rest;
          }
        }
        out.push_back({Tok::Ident, word, {line, col, line_, col_}});
        continue;
      }
      if (is_digit(c)) {
        size_t start = pos_;
        while (pos_ < src_.size() && is_digit(src_[pos_])) advance();
        out.push_back({Tok::Int, std::string(src_.substr(start, pos_ - start)), {line, col, line_, col_}});
        continue;
      }
      if (c == '"') {
        advance();
        std::string body;
        bool closed = false;
        while (pos_ < src_.size() && src_[pos_] != '\n') {
          if (src_[pos_] == '"') {
            advance();
            closed = true;
            break;
          }
          if (src_[pos_] == '\\' && pos_ + 1 < src_.size()) advance();
          body += src_[pos_];
          advance();
        }
        if (!closed) diags_.push_back({Diagnostic::Severity::Error, {line, col, line_, col_}, "E001", "unterminated string"});
        out.push_back({Tok::String, body, {line, col, line_, col_}});
        continue;
      }
      if (std::string_view(";=()[]{},+-*/^@").find(c) != std::string_view::npos) {
        advance();
        out.push_back({Tok::Punct, std::string(1, c), {line, col, line_, col_}});
        continue;
      }
      advance();
      diags_.push_back({Diagnostic::Severity::Error, {line, col, line_, col_}, "E001",
                        "unexpected character '" + std::string(1, c) + "'"});
    }
  }

 private:
  static bool is_digit(char c) { return c >= '0' && c <= '9'; }
  static bool is_ident_start(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; }
  static bool is_ident_char(char c) { return is_ident_start(c) || is_digit(c); }
  char peek(size_t k) const { return pos_ + k < src_.size() ? src_[pos_ + k] : '\0'; }
  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else if ((static_cast<unsigned char>(src_[pos_]) & 0xC0) != 0x80) {
      ++col_;  // count UTF-8 code points, not bytes
    }
    ++pos_;
  }
  void skip_space() {
    while (pos_ < src_.size() && (src_[pos_] == ' ' || src_[pos_] == '\t' || src_[pos_] == '\r' || src_[pos_] == '\n'))
      advance();
  }

  std::string_view src_;
  std::vector<Diagnostic>& diags_;
  size_t pos_ = 0;
  uint32_t line_ = 1, col_ = 1;
};

struct SyntaxError {
  Span span;
  std::string message;
};

Span join(const Span& a, const Span& b) { return {a.line, a.column, b.end_line, b.end_column}; }

const std::set<std::string>& keywords() {
  static const std::set<std::string> k{"field", "algebra", "auto", "grading", "tower", "check", "report",
                                       "over", "stage", "mod", "on", "box", "at", "zeta", "build"};
  return k;
}

class Parser {
 public:
  Parser(std::vector<Token> toks, std::vector<Diagnostic>& diags) : diags_(diags) {
    for (auto& t : toks) {
      if (t.kind == Tok::Comment) {
        pending_.push_back(t.text);
        comment_after_.push_back(toks_.size());
        continue;
      }
      toks_.push_back(std::move(t));
    }
  }

  Document run() {
    Document doc;
    size_t comment_i = 0;
    while (cur().kind != Tok::End) {
      const size_t start = pos_;
      std::vector<std::string> comments;
      while (comment_i < comment_after_.size() && comment_after_[comment_i] <= start)
        comments.push_back(pending_[comment_i++]);
      try {
        Stmt s = statement(doc);
        s.comments = std::move(comments);
        doc.statements.push_back(std::move(s));
      } catch (const SyntaxError& e) {
        diags_.push_back({Diagnostic::Severity::Error, e.span, "E001", e.message});
        recover();
      }
    }
    return doc;
  }

 private:
  const Token& cur() const { return toks_[pos_]; }
  const Token& ahead(size_t k) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
  bool is_punct(const char* p) const { return cur().kind == Tok::Punct && cur().text == p; }
  bool is_word(const char* w) const { return cur().kind == Tok::Ident && cur().text == w; }

  [[noreturn]] void fail(const std::string& what) const {
    const std::string got = cur().kind == Tok::End ? "end of input" : "'" + cur().text + "'";
    throw SyntaxError{cur().span, "expected " + what + ", found " + got};
  }
  Token take() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
  Token expect_punct(const char* p) {
    if (!is_punct(p)) fail(std::string("'") + p + "'");
    return take();
  }
  Token expect_word(const char* w) {
    if (!is_word(w)) fail(std::string("'") + w + "'");
    return take();
  }
  Token expect_name(const std::string& what) {
    if (cur().kind != Tok::Ident || keywords().count(cur().text)) fail(what);
    return take();
  }
  long expect_int(const std::string& what) {
    if (cur().kind != Tok::Int) fail(what);
    const Token t = take();
    if (t.text.size() > 9) throw SyntaxError{t.span, "integer too large"};
    return std::stol(t.text);
  }
  void recover() {
    while (cur().kind != Tok::End) {
      if (is_punct(";")) {
        take();
        return;
      }
      if (is_punct("}")) {
        take();
        if (is_punct(";")) take();
        return;
      }
      take();
    }
  }

  Stmt statement(Document& doc) {
    const Token first = cur();
    if (first.kind != Tok::Ident) fail("a statement");
    Stmt s;
    const std::string& w = first.text;
    if (w == "field") {
      take();
      expect_word("zeta");
      s.kind = StmtKind::Field;
      const long n = expect_int("root order");
      if (n < 1) throw SyntaxError{toks_[pos_ - 1].span, "root order must be positive"};
      s.root_order = static_cast<unsigned>(n);
      doc.root_order = s.root_order;
      order_ = s.root_order;
    } else if (w == "algebra" || w == "auto" || w == "grading" || w == "tower") {
      take();
      s.kind = w == "algebra" ? StmtKind::Algebra
               : w == "auto"  ? StmtKind::Auto
               : w == "grading" ? StmtKind::Grading
                                : StmtKind::Tower;
      const Token n = expect_name("a name");
      s.name = n.text;
      s.name_span = n.span;
      if (s.kind == StmtKind::Tower && is_word("over")) {
        take();
        const Token b = expect_name("a base algebra");
        s.over = b.text;
        s.over_span = b.span;
        expect_punct("{");
        while (!is_punct("}")) {
          const Token st = expect_word("stage");
          Stage stage;
          stage.twist = value();
          expect_word("mod");
          stage.modulus = expect_int("a modulus");
          stage.span = join(st.span, cur().span);
          expect_punct(";");
          s.stages.push_back(std::move(stage));
        }
        const Token close = take();
        s.span = join(first.span, close.span);
        if (is_punct(";")) take();
        return s;
      }
      expect_punct("=");
      s.init = value();
      if (s.init->kind != Value::Kind::Call) throw SyntaxError{s.init->span, "expected a constructor call"};
    } else if (w == "report") {
      take();
      s.kind = StmtKind::Report;
      if (cur().kind != Tok::String) fail("a quoted title");
      s.title = take().text;
    } else {
      s.kind = StmtKind::Command;
      std::string verb = take().text;
      if (verb == "check" || verb == "build") {
        if (cur().kind != Tok::Ident) fail("a check name");
        verb += " " + take().text;
      }
      s.verb = verb;
      const Token n = expect_name("a target name");
      s.name = n.text;
      s.name_span = n.span;
      if (is_word("on")) {
        take();
        const Token o = expect_name("an algebra name");
        s.on = o.text;
        s.on_span = o.span;
      }
      if (is_word("box")) {
        take();
        s.box.push_back(expect_int("a box radius"));
        while (is_punct(",")) {
          take();
          s.box.push_back(expect_int("a box radius"));
        }
      }
      if (is_word("at")) {
        take();
        s.element = element();
      }
    }
    const Token end = expect_punct(";");
    s.span = join(first.span, end.span);
    return s;
  }

  Value value() {
    Value v;
    const Token t = cur();
    v.span = t.span;
    if (t.kind == Tok::Ident && t.text != "zeta") {
      take();
      if (is_punct("(")) {
        take();
        v.kind = Value::Kind::Call;
        v.name = t.text;
        if (!is_punct(")")) {
          v.items.push_back(value());
          while (is_punct(",")) {
            take();
            v.items.push_back(value());
          }
        }
        v.span = join(t.span, expect_punct(")").span);
      } else {
        v.kind = Value::Kind::Name;
        v.name = t.text;
      }
      return v;
    }
    if (is_punct("[")) {
      take();
      v.kind = Value::Kind::List;
      if (!is_punct("]")) {
        v.items.push_back(value());
        while (is_punct(",")) {
          take();
          v.items.push_back(value());
        }
      }
      v.span = join(t.span, expect_punct("]").span);
      return v;
    }
    v.kind = Value::Kind::Scalar;
    v.scalar = scalar();
    v.span = join(t.span, toks_[pos_ - 1].span);
    return v;
  }

  // scalar := term (('+'|'-') term)*; term := unary (('*'|'/') unary)*
  CycloNumber scalar() {
    CycloNumber x = term();
    while (is_punct("+") || is_punct("-")) {
      const bool minus = take().text == "-";
      const CycloNumber y = term();
      x = minus ? x - y : x + y;
    }
    return x;
  }
  CycloNumber term() {
    CycloNumber x = unary();
    while (is_punct("*") || is_punct("/")) {
      const Token op = take();
      const CycloNumber y = unary();
      if (op.text == "/") {
        if (y.is_zero()) throw SyntaxError{op.span, "division by zero"};
        x = x / y;
      } else {
        x = x * y;
      }
    }
    return x;
  }
  CycloNumber unary() {
    if (is_punct("-")) {
      take();
      return -unary();
    }
    return power();
  }
  CycloNumber power() {
    CycloNumber base;
    if (is_punct("(")) {
      take();
      base = scalar();
      expect_punct(")");
    } else if (is_word("zeta")) {
      take();
      base = CycloNumber::zeta(order_);
    } else if (cur().kind == Tok::Int) {
      const Token t = take();
      base = CycloNumber::rational(order_, Rational(t.text));
    } else {
      fail("a scalar");
    }
    if (is_punct("^")) {
      take();
      bool neg = false;
      if (is_punct("-")) {
        take();
        neg = true;
      }
      const long e = expect_int("an exponent");
      if (neg && base.is_zero()) throw SyntaxError{toks_[pos_ - 1].span, "division by zero"};
      base = base.pow(neg ? -e : e);
    }
    return base;
  }

  // element := eterm (('+'|'-') eterm)*; eterm := [coeff '*'] label '@' monomial
  std::vector<ElementTerm> element() {
    std::vector<ElementTerm> out;
    bool first = true;
    while (true) {
      CycloNumber sign(1);
      if (is_punct("+") || is_punct("-")) {
        sign = take().text == "-" ? CycloNumber(-1) : CycloNumber(1);
      } else if (!first) {
        break;
      }
      first = false;
      ElementTerm t;
      const Token start = cur();
      t.coeff = CycloNumber::rational(order_, Rational(1));
      const bool label_next = (cur().kind == Tok::Ident || cur().kind == Tok::Int) && ahead(1).kind == Tok::Punct &&
                              ahead(1).text == "@";
      if (!label_next) {
        t.coeff = power();
        while (is_punct("/")) {
          const Token op = take();
          const CycloNumber d = power();
          if (d.is_zero()) throw SyntaxError{op.span, "division by zero"};
          t.coeff = t.coeff / d;
        }
        expect_punct("*");
      }
      t.coeff = sign * t.coeff;
      if (cur().kind != Tok::Ident && cur().kind != Tok::Int) fail("a basis label");
      t.label = take().text;
      expect_punct("@");
      t.degree = monomial();
      t.span = join(start.span, toks_[pos_ - 1].span);
      out.push_back(std::move(t));
    }
    return out;
  }
  Degree monomial() {
    if (cur().kind == Tok::Int && cur().text == "1") {
      take();
      return {};
    }
    std::map<size_t, long> exps;
    bool any = false;
    while (cur().kind == Tok::Ident && cur().text.size() > 1 && cur().text[0] == 'z' &&
           std::all_of(cur().text.begin() + 1, cur().text.end(), [](char c) { return c >= '0' && c <= '9'; })) {
      const Token v = take();
      const size_t var = std::stoul(v.text.substr(1));
      if (var == 0) throw SyntaxError{v.span, "variables are numbered from z1"};
      long e = 1;
      if (is_punct("^")) {
        take();
        bool neg = false;
        if (is_punct("-")) {
          take();
          neg = true;
        }
        e = expect_int("an exponent");
        if (neg) e = -e;
      }
      exps[var] += e;
      any = true;
    }
    if (!any) fail("a monomial such as 1 or z1^2 z2^-1");
    Degree d(exps.rbegin()->first, 0);
    for (const auto& [v, e] : exps) d[v - 1] = e;
    return d;
  }

  std::vector<Token> toks_;
  std::vector<std::string> pending_;
  std::vector<size_t> comment_after_;
  std::vector<Diagnostic>& diags_;
  size_t pos_ = 0;
  unsigned order_ = 1;
};

// ---------------------------------------------------------------------------
// Validation

class Validator {
 public:
  Validator(const Document& doc, std::vector<Diagnostic>& diags) : doc_(doc), diags_(diags) {}

  void run() {
    bool field_seen = false;
    size_t index = 0;
    for (const auto& s : doc_.statements) {
      if (s.kind == StmtKind::Field) {
        if (field_seen)
          error(s.span, "E007", "field declared more than once");
        else if (index != 0)
          error(s.span, "E007", "field declaration must come first");
        field_seen = true;
      } else if (!field_seen && index == 0) {
        error(s.span, "E007", "missing field declaration (expected 'field zeta N;' first)");
      }
      ++index;
      if (s.is_declaration()) declaration(s);
      if (s.kind == StmtKind::Command) command(s);
    }
    for (const auto& [name, info] : symbols_)
      if (!info.used)
        diags_.push_back({Diagnostic::Severity::Warning, info.span, "W001", "'" + name + "' is declared but never used"});
  }

 private:
  struct Info {
    StmtKind kind;
    Span span;
    const Stmt* stmt;
    bool used = false;
  };

  void error(const Span& sp, const std::string& code, const std::string& msg) {
    diags_.push_back({Diagnostic::Severity::Error, sp, code, msg});
  }

  void need_root(const Span& sp, long m, const std::string& what) {
    if (m >= 1 && doc_.root_order % m != 0)
      error(sp, "E004",
            what + " needs a primitive root of unity of order " + std::to_string(m) +
                ", which Q(zeta_" + std::to_string(doc_.root_order) + ") does not contain");
  }

  const Info* resolve(const std::string& name, const Span& sp, const std::vector<StmtKind>& kinds) {
    auto it = symbols_.find(name);
    if (it == symbols_.end()) {
      error(sp, "E002", "unresolved name '" + name + "'");
      return nullptr;
    }
    it->second.used = true;
    if (std::find(kinds.begin(), kinds.end(), it->second.kind) == kinds.end()) {
      std::string want;
      for (auto k : kinds) want += (want.empty() ? "" : " or ") + kind_keyword(k);
      error(sp, "E005", "'" + name + "' is " + article(it->second.kind) + ", expected " + want);
      return nullptr;
    }
    return &it->second;
  }
  static std::string article(StmtKind k) {
    const std::string w = kind_keyword(k);
    return (w[0] == 'a' ? "an " : "a ") + w;
  }

  std::optional<long> as_int(const Value& v) {
    if (v.kind != Value::Kind::Scalar || !v.scalar.is_rational() || v.scalar.to_rational().get_den() != 1 ||
        v.scalar.to_rational() < 0 || v.scalar.to_rational() > 100000)
      return std::nullopt;
    return v.scalar.to_rational().get_num().get_si();
  }

  // Returns the static result kind of a call, or nothing after reporting.
  std::optional<StmtKind> call(const Value& v) {
    const Signature* sig = find_signature(v.name);
    if (!sig && v.name == "twist") {
      error(v.span, "E006", "twist(...) is only allowed as a tower stage");
      return std::nullopt;
    }
    if (!sig) {
      error(v.span, "E006", "unknown constructor '" + v.name + "'");
      return std::nullopt;
    }
    if (v.items.size() < sig->required || v.items.size() > sig->args.size()) {
      error(v.span, "E006",
            "'" + v.name + "' takes " +
                (sig->required == sig->args.size() ? std::to_string(sig->required)
                                                   : std::to_string(sig->required) + " to " +
                                                         std::to_string(sig->args.size())) +
                " argument(s), got " + std::to_string(v.items.size()));
      return std::nullopt;
    }
    bool ok = true;
    for (size_t i = 0; i < v.items.size(); ++i) ok = argument(sig->args[i], v.items[i]) && ok;
    if (!ok) return std::nullopt;
    // root order requirements
    if (v.name == "clock" || v.name == "shift") need_root(v.span, *as_int(v.items[0]), v.name);
    if (v.name == "eigen") need_root(v.items[2].span, *as_int(v.items[2]), "grading modulus");
    if (v.name == "synthetic") {
      const long i = *as_int(v.items[0]);
      if (i >= static_cast<long>(catalog::synthetic_specs().size())) {
        error(v.items[0].span, "E006", "synthetic towers are numbered 0 to " +
                                           std::to_string(catalog::synthetic_specs().size() - 1));
        return std::nullopt;
      }
      need_root(v.span, 4, "synthetic tower");
    }
    if (v.name == "multiloop" && v.items.size() == 3) {
      for (const auto& m : v.items[2].items) need_root(m.span, *as_int(m), "stage modulus");
      if (v.items[2].items.size() != v.items[1].items.size())
        error(v.items[2].span, "E006", "multiloop needs one modulus per automorphism");
    }
    if (v.name == "loop") {
      // modulus of a declared grading is known statically
      const auto& g = symbols_.at(v.items[1].name).stmt;
      if (g->init && g->init->items.size() >= 2) {
        const Value& m = g->init->name == "eigen" ? g->init->items.back() : g->init->items[1];
        if (auto mi = as_int(m)) need_root(v.items[1].span, *mi, "loop over grading '" + v.items[1].name + "'");
      }
    }
    if ((v.name == "mat" || v.name == "gl" || v.name == "sl" || v.name == "structure" || v.name == "antidiag" ||
         v.name == "clock" || v.name == "shift") &&
        *as_int(v.items[0]) < 1) {
      error(v.items[0].span, "E006", "'" + v.name + "' needs a positive size");
      return std::nullopt;
    }
    return sig->result;
  }

  bool argument(ArgKind k, const Value& v) {
    auto bad = [&](const std::string& what) {
      error(v.span, "E006", "expected " + what);
      return false;
    };
    switch (k) {
      case ArgKind::Int:
        return as_int(v) ? true : bad("a non-negative integer");
      case ArgKind::Scalar:
        return v.kind == Value::Kind::Scalar ? true : bad("a scalar");
      case ArgKind::Algebra:
        if (v.kind != Value::Kind::Name) return bad("an algebra name");
        return resolve(v.name, v.span, {StmtKind::Algebra}) != nullptr;
      case ArgKind::Grading:
        if (v.kind != Value::Kind::Name) return bad("a grading name");
        return resolve(v.name, v.span, {StmtKind::Grading}) != nullptr;
      case ArgKind::Auto:
        if (v.kind == Value::Kind::Name) return resolve(v.name, v.span, {StmtKind::Auto}) != nullptr;
        if (v.kind == Value::Kind::Call) {
          auto r = call(v);
          if (!r) return false;
          return *r == StmtKind::Auto ? true : bad("an automorphism");
        }
        return bad("an automorphism");
      case ArgKind::AutoList: {
        if (v.kind != Value::Kind::List || v.items.empty()) return bad("a nonempty list of automorphisms");
        bool ok = true;
        for (const auto& i : v.items) ok = argument(ArgKind::Auto, i) && ok;
        return ok;
      }
      case ArgKind::IntList: {
        if (v.kind != Value::Kind::List) return bad("a list of integers");
        for (const auto& i : v.items)
          if (!as_int(i)) return bad("a list of integers");
        return true;
      }
      case ArgKind::ScalarList: {
        if (v.kind != Value::Kind::List) return bad("a list of scalars");
        for (const auto& i : v.items)
          if (i.kind != Value::Kind::Scalar) return bad("a list of scalars");
        return true;
      }
      case ArgKind::Matrix:
      case ArgKind::IntMatrix: {
        if (v.kind == Value::Kind::Call) {
          auto r = call(v);
          if (!r) return false;
          return *r == StmtKind::Field ? true : bad("a matrix");
        }
        if (v.kind != Value::Kind::List || v.items.empty()) return bad("a square matrix");
        const size_t n = v.items.size();
        for (const auto& row : v.items) {
          if (row.kind != Value::Kind::List || row.items.size() != n) return bad("a square matrix");
          for (const auto& x : row.items) {
            if (x.kind != Value::Kind::Scalar) return bad("a square matrix");
            if (k == ArgKind::IntMatrix && (!x.scalar.is_rational() || x.scalar.to_rational().get_den() != 1))
              return bad("an integer matrix");
          }
        }
        return true;
      }
      case ArgKind::Table: {
        if (v.kind != Value::Kind::List) return bad("a product table [[i, j, [coords]], ...]");
        for (const auto& e : v.items) {
          if (e.kind != Value::Kind::List || e.items.size() != 3 || !as_int(e.items[0]) || !as_int(e.items[1]) ||
              e.items[2].kind != Value::Kind::List)
            return bad("a product table [[i, j, [coords]], ...]");
          for (const auto& x : e.items[2].items)
            if (x.kind != Value::Kind::Scalar) return bad("scalar coordinates");
        }
        return true;
      }
    }
    return false;
  }

  // Static step count of a tower declaration, when known.
  std::optional<size_t> steps_of(const Stmt& t) {
    if (!t.over.empty()) return t.stages.size();
    if (!t.init) return std::nullopt;
    const auto& c = *t.init;
    if (c.name == "multiloop" && c.items.size() >= 2) return c.items[1].items.size();
    if (c.name == "loop") return 1;
    if (c.name == "synthetic") return 2;
    if (c.name == "untwisted" && c.items.size() == 2) return as_int(c.items[1]);
    return std::nullopt;
  }

  void declaration(const Stmt& s) {
    if (symbols_.count(s.name)) {
      error(s.name_span, "E003", "'" + s.name + "' is already declared");
    }
    bool ok = true;
    if (s.kind == StmtKind::Tower && !s.over.empty()) {
      ok = resolve(s.over, s.over_span, {StmtKind::Algebra}) != nullptr;
      if (s.stages.empty()) {
        error(s.span, "E006", "a tower needs at least one stage");
        ok = false;
      }
      for (size_t p = 0; p < s.stages.size(); ++p) {
        const Stage& st = s.stages[p];
        if (st.modulus < 1) {
          error(st.span, "E006", "stage modulus must be positive");
          ok = false;
        } else {
          need_root(st.span, st.modulus, "stage " + std::to_string(p + 1));
        }
        const Value& tw = st.twist;
        if (tw.kind == Value::Kind::Call && tw.name == "twist") {
          if (tw.items.size() != 3) {
            error(tw.span, "E006", "'twist' takes 3 argument(s), got " + std::to_string(tw.items.size()));
            ok = false;
            continue;
          }
          ok = argument(ArgKind::Auto, tw.items[0]) && ok;
          ok = argument(ArgKind::IntMatrix, tw.items[1]) && ok;
          ok = argument(ArgKind::ScalarList, tw.items[2]) && ok;
          if (tw.items[1].kind == Value::Kind::List && tw.items[1].items.size() != p) {
            error(tw.items[1].span, "E006",
                  "stage " + std::to_string(p + 1) + " acts on " + std::to_string(p) + " variable(s)");
            ok = false;
          }
          if (tw.items[2].kind == Value::Kind::List && tw.items[2].items.size() != p) {
            error(tw.items[2].span, "E006", "stage " + std::to_string(p + 1) + " needs " + std::to_string(p) +
                                                " character value(s)");
            ok = false;
          }
        } else {
          ok = argument(ArgKind::Auto, tw) && ok;
        }
      }
    } else if (s.init) {
      auto r = call(*s.init);
      if (r && *r != s.kind) {
        error(s.init->span, "E005",
              "'" + s.init->name + "' builds " + (*r == StmtKind::Field ? std::string("a matrix") : article(*r)) +
                  ", not " + article(s.kind));
        ok = false;
      }
      ok = ok && r.has_value();
    }
    (void)ok;
    if (!symbols_.count(s.name)) symbols_[s.name] = {s.kind, s.name_span, &s};
  }

  void command(const Stmt& s) {
    const Verb* v = find_verb(s.verb);
    if (!v) {
      error(s.span, "E001", "unknown command '" + s.verb + "'");
      return;
    }
    const Info* t = resolve(s.name, s.name_span, v->targets);
    if (!s.on.empty() && !v->takes_on) error(s.on_span, "E006", "'" + s.verb + "' does not take 'on'");
    if (!s.box.empty() && !v->takes_box) error(s.span, "E006", "'" + s.verb + "' does not take a box");
    if (s.element && !v->takes_element) error(s.span, "E006", "'" + s.verb + "' does not take an element");
    if (v->takes_element && !s.element) error(s.span, "E001", "'" + s.verb + "' needs 'at <element>'");
    for (long r : s.box)
      if (r < 0) error(s.span, "E006", "box radii must be non-negative");
    if (!t) return;
    if (!s.on.empty() && v->takes_on) {
      if (resolve(s.on, s.on_span, {StmtKind::Algebra}) && t->stmt->init && !t->stmt->init->items.empty() &&
          t->stmt->init->items[0].kind == Value::Kind::Name && t->stmt->init->items[0].name != s.on)
        error(s.on_span, "E005",
              "grading '" + s.name + "' is over '" + t->stmt->init->items[0].name + "', not '" + s.on + "'");
    }
    if (t->kind == StmtKind::Tower && !s.box.empty() && s.box.size() != 1) {
      if (auto n = steps_of(*t->stmt); n && *n != s.box.size())
        error(s.span, "E006",
              "box has " + std::to_string(s.box.size()) + " radii but '" + s.name + "' has " + std::to_string(*n) +
                  " step(s)");
    }
  }

  const Document& doc_;
  std::vector<Diagnostic>& diags_;
  std::map<std::string, Info> symbols_;
};

bool span_less(const Diagnostic& a, const Diagnostic& b) {
  if (a.severity != b.severity) return a.severity == Diagnostic::Severity::Error;
  return std::tie(a.span.line, a.span.column) < std::tie(b.span.line, b.span.column);
}

}  // namespace

ParseResult parse(std::string_view source) {
  ParseResult r;
  auto toks = Lexer(source, r.diagnostics).run();
  r.document = Parser(std::move(toks), r.diagnostics).run();
  const bool syntax_ok = r.ok();
  if (syntax_ok) Validator(r.document, r.diagnostics).run();
  std::stable_sort(r.diagnostics.begin(), r.diagnostics.end(), span_less);
  return r;
}

}  // namespace loomalg::dsl
