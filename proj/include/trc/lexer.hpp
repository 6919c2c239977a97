// Character-level scanner shared by the term, combinator-spec and proof
// script parsers.
#pragma once

#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "trc/term.hpp"

namespace trc {

class Scanner {
 public:
  explicit Scanner(std::string_view text) : text_(text) {}

  /// Skips whitespace and `--` comments.
  void skipSpace();
  bool atEnd();
  char peek();
  /// True when the upcoming input starts with `s` (after skipping space).
  bool lookingAt(std::string_view s);
  /// True when the next token is the word `w` (not a prefix of a longer identifier).
  bool lookingAtWord(std::string_view w);
  bool accept(std::string_view s);
  bool acceptWord(std::string_view w);
  void expect(std::string_view s);
  void expectWord(std::string_view w);

  bool lookingAtIdent();
  std::string ident();
  /// A raw run of [A-Za-z0-9_.'-] characters; used for theorem ids.
  std::string rawId();
  std::string quoted();
  long integer();
  bool lookingAtInteger();

  [[noreturn]] void fail(const std::string& message, std::vector<std::string> expected = {});

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  char get();

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
};

bool isTermKeyword(std::string_view word);

/// Parses one term starting at the scanner's position. Application stops at
/// any token that cannot start an atom, and at any identifier in `stopWords`.
Term parseTerm(Scanner& in, const ParseContext& ctx, const std::set<std::string>& stopWords = {});

}  // namespace trc
