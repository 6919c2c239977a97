#include <set>
#include <sstream>

#include "trc/lexer.hpp"
#include "trc/stratify.hpp"

namespace trc {

CombinatorSpec parseCombinatorSpec(std::string_view line) {
  Scanner in(line);
  CombinatorSpec spec;
  spec.name = in.ident();
  ParseContext ctx;
  ctx.allowPatternVars = false;
  while (!in.lookingAt("=")) {
    std::string p = in.ident();
    if (isTermKeyword(p)) in.fail("keyword used as parameter", {"parameter name"});
    if (ctx.variables.count(p)) in.fail("duplicate parameter " + p, {"fresh parameter name"});
    ctx.variables.insert(p);
    ctx.defined.erase(p);
    spec.parameters.push_back(std::move(p));
  }
  in.expect("=");
  spec.body = parseTerm(in, ctx);
  if (!in.atEnd()) in.fail("trailing input after combinator body", {"end of line"});
  for (const auto& v : freeVars(spec.body)) {
    if (!ctx.variables.count(v)) in.fail("body variable " + v + " is not a parameter");
  }
  return spec;
}

std::vector<CombinatorSpec> parseCombinatorSpecs(std::string_view text) {
  std::vector<CombinatorSpec> out;
  std::size_t start = 0;
  int lineNo = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    ++lineNo;
    std::string_view line = text.substr(start, end - start);
    Scanner probe(line);
    if (!probe.atEnd()) {
      try {
        out.push_back(parseCombinatorSpec(line));
      } catch (const SyntaxError& e) {
        throw SyntaxError(lineNo, e.column, e.message, e.expected);
      }
    }
    start = end + 1;
  }
  return out;
}

std::string renderCombinatorSpec(const CombinatorSpec& spec) {
  std::string out = spec.name;
  for (const auto& p : spec.parameters) out += " " + p;
  return out + " = " + render(spec.body);
}

CompileError::CompileError(std::string combinator, std::string parameter, std::optional<NotAbstractable> cause,
                           const std::string& message)
    : std::runtime_error(message),
      combinator(std::move(combinator)),
      parameter(std::move(parameter)),
      cause(std::move(cause)) {}

Term compileCombinator(const CombinatorSpec& spec, const CompileOptions& opts) {
  std::set<std::string> params(spec.parameters.begin(), spec.parameters.end());
  if (params.size() != spec.parameters.size()) {
    throw CompileError(spec.name, "", std::nullopt, spec.name + ": parameters are not distinct");
  }
  for (const auto& v : freeVars(spec.body)) {
    if (!params.count(v)) throw CompileError(spec.name, v, std::nullopt, spec.name + ": " + v + " is not a parameter");
  }
  Term cur = spec.body;
  for (auto it = spec.parameters.rbegin(); it != spec.parameters.rend(); ++it) {
    try {
      cur = abstract(*it, cur, opts.abstraction);
    } catch (const NotAbstractable& e) {
      throw CompileError(spec.name, *it, e,
                         "NotAbstractable: " + spec.name + " parameter " + *it + ": " +
                             std::string(reasonName(e.reason)) + " (level " + std::to_string(e.level) +
                             ") at " + renderPosition(e.position) + " in " + render(cur));
    }
  }
  if (opts.optimize) cur = optimize(cur);

  std::vector<Term> args;
  for (const auto& p : spec.parameters) args.push_back(Term::variable(p));
  auto check = extEqual(Term::applyAll(cur, args), spec.body, standardRuleSet(opts.engine));
  if (!check.equal) {
    const auto& last = check.evidence.levels.back();
    throw CompileError(spec.name, "", std::nullopt,
                       spec.name + ": self-test failed; compiled term " + render(cur) + " gives " +
                           render(last.leftNormal.result) + " against " + render(last.rightNormal.result));
  }
  return cur;
}

// ---------------------------------------------------------------------------

const std::vector<Simplification>& simplifications() {
  static const std::vector<Simplification> table = [] {
    ParseContext ctx;
    auto p = [&](const char* s) { return parse(s, ctx); };
    return std::vector<Simplification>{
        {"abst-idem", "2.1a", p("Abst (Abst (Abst $a))"), p("Abst $a")},
        {"abst-abst-k", "2.1b", p("Abst (Abst k($a))"), p("k($a)")},
        {"abst-kk", "2.1c", p("Abst k(k($a))"), p("k(k($a))")},
        {"abst-k-k", "2.1e", p("Abst k($a) k($b)"), p("k($a $b)")},
        {"abst-pair", "2.3a", p("<Abst $a,Abst $b>"), p("Abst <$a,$b>")},
        {"abst-p1", "2.3b", p("Abst P1"), p("k(P1)")},
        {"abst-p2", "2.3b", p("Abst P2"), p("k(P2)")},
        {"abst-k-p1", "2.3b", p("Abst k(P1)"), p("P1")},
        {"abst-k-p2", "2.3b", p("Abst k(P2)"), p("P2")},
        {"abst-i", "2.3c", p("Abst I"), p("k(I)")},
        {"abst-k-i", "2.3c", p("Abst k(I)"), p("I")},
    };
  }();
  return table;
}

Term optimize(const Term& t) {
  static const RuleSet rules = [] {
    RuleSet rs;
    for (const auto& s : simplifications()) {
      rs = rs.with(Rule::make(s.name, s.lhs, s.rhs, Provenance::derived(s.theorem)));
    }
    return rs;
  }();
  // Every simplification strictly shrinks the term, so size bounds the steps.
  return normalize(t, rules, t.size()).result;
}

}  // namespace trc
