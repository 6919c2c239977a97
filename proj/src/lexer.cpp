#include "trc/lexer.hpp"

#include <cctype>

namespace trc {

namespace {

bool identStart(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool identChar(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}
bool rawIdChar(char c) { return identChar(c) || c == '.' || c == '-'; }

}  // namespace

bool isTermKeyword(std::string_view word) {
  return word == "Abst" || word == "Eq" || word == "P1" || word == "P2" || word == "k";
}

char Scanner::get() {
  char c = text_[pos_++];
  if (c == '\n') {
    ++line_;
    column_ = 1;
  } else {
    ++column_;
  }
  return c;
}

void Scanner::skipSpace() {
  while (pos_ < text_.size()) {
    char c = text_[pos_];
    if (std::isspace(static_cast<unsigned char>(c))) {
      get();
    } else if (c == '-' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '-') {
      while (pos_ < text_.size() && text_[pos_] != '\n') get();
    } else {
      break;
    }
  }
}

bool Scanner::atEnd() {
  skipSpace();
  return pos_ >= text_.size();
}

char Scanner::peek() {
  skipSpace();
  return pos_ < text_.size() ? text_[pos_] : '\0';
}

bool Scanner::lookingAt(std::string_view s) {
  skipSpace();
  return text_.substr(pos_, s.size()) == s;
}

bool Scanner::lookingAtWord(std::string_view w) {
  if (!lookingAt(w)) return false;
  std::size_t end = pos_ + w.size();
  return end >= text_.size() || !identChar(text_[end]);
}

bool Scanner::accept(std::string_view s) {
  if (!lookingAt(s)) return false;
  for (std::size_t i = 0; i < s.size(); ++i) get();
  return true;
}

bool Scanner::acceptWord(std::string_view w) {
  if (!lookingAtWord(w)) return false;
  for (std::size_t i = 0; i < w.size(); ++i) get();
  return true;
}

void Scanner::expect(std::string_view s) {
  if (!accept(s)) fail("unexpected input", {"'" + std::string(s) + "'"});
}

void Scanner::expectWord(std::string_view w) {
  if (!acceptWord(w)) fail("unexpected input", {"'" + std::string(w) + "'"});
}

bool Scanner::lookingAtIdent() {
  skipSpace();
  return pos_ < text_.size() && identStart(text_[pos_]);
}

std::string Scanner::ident() {
  if (!lookingAtIdent()) fail("expected identifier", {"identifier"});
  std::string out;
  while (pos_ < text_.size() && identChar(text_[pos_])) out += get();
  return out;
}

std::string Scanner::rawId() {
  skipSpace();
  std::string out;
  while (pos_ < text_.size() && rawIdChar(text_[pos_])) out += get();
  if (out.empty()) fail("expected theorem id", {"theorem id"});
  return out;
}

std::string Scanner::quoted() {
  skipSpace();
  if (pos_ >= text_.size() || text_[pos_] != '"') fail("expected string", {"'\"'"});
  get();
  std::string out;
  while (pos_ < text_.size() && text_[pos_] != '"') {
    if (text_[pos_] == '\n') fail("unterminated string", {"'\"'"});
    out += get();
  }
  if (pos_ >= text_.size()) fail("unterminated string", {"'\"'"});
  get();
  return out;
}

bool Scanner::lookingAtInteger() {
  skipSpace();
  return pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]));
}

long Scanner::integer() {
  if (!lookingAtInteger()) fail("expected integer", {"integer"});
  long v = 0;
  while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
    v = v * 10 + (get() - '0');
  }
  return v;
}

void Scanner::fail(const std::string& message, std::vector<std::string> expected) {
  skipSpace();
  std::string found = pos_ < text_.size() ? std::string(1, text_[pos_]) : std::string("end of input");
  throw SyntaxError(line_, column_, message + " (found " + found + ")", std::move(expected));
}

// ---------------------------------------------------------------------------

namespace {

const std::vector<std::string> kAtomStarts = {"Abst", "Eq", "P1", "P2", "identifier",
                                              "k(", "'<'", "'('", "$name"};

bool atomAhead(Scanner& in, const std::set<std::string>& stopWords) {
  char c = in.peek();
  if (c == '(' || c == '<' || c == '$') return true;
  if (!in.lookingAtIdent()) return false;
  for (const auto& w : stopWords) {
    if (in.lookingAtWord(w)) return false;
  }
  return true;
}

Term parseAtom(Scanner& in, const ParseContext& ctx, const std::set<std::string>& stopWords) {
  if (in.accept("(")) {
    Term t = parseTerm(in, ctx, stopWords);
    in.expect(")");
    return t;
  }
  if (in.accept("<")) {
    Term l = parseTerm(in, ctx, {});
    in.expect(",");
    Term r = parseTerm(in, ctx, {});
    in.expect(">");
    return Term::pair(std::move(l), std::move(r));
  }
  if (in.lookingAt("$")) {
    if (!ctx.allowPatternVars) in.fail("pattern variable not allowed here");
    in.expect("$");
    return Term::patternVar(in.ident());
  }
  if (!in.lookingAtIdent()) in.fail("expected term", kAtomStarts);
  std::string id = in.ident();
  if (id == "Abst") return Term::constant(Constant::Abst);
  if (id == "Eq") return Term::constant(Constant::Eq);
  if (id == "P1") return Term::constant(Constant::P1);
  if (id == "P2") return Term::constant(Constant::P2);
  if (id == "k") {
    in.expect("(");
    Term body = parseTerm(in, ctx, {});
    in.expect(")");
    return Term::kwrap(std::move(body));
  }
  if (ctx.isDefined(id)) return Term::defined(std::move(id));
  return Term::variable(std::move(id));
}

}  // namespace

Term parseTerm(Scanner& in, const ParseContext& ctx, const std::set<std::string>& stopWords) {
  if (!atomAhead(in, stopWords)) in.fail("expected term", kAtomStarts);
  Term t = parseAtom(in, ctx, stopWords);
  while (atomAhead(in, stopWords)) {
    t = Term::apply(std::move(t), parseAtom(in, ctx, stopWords));
  }
  return t;
}

}  // namespace trc
