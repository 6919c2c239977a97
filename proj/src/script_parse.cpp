#include "trc/kernel.hpp"
#include "trc/lexer.hpp"

namespace trc {

namespace {

const std::set<std::string> kStopWords = {"by", "as", "with", "fuel", "have", "qed", "let", "hypothesis", "uses"};
const std::set<std::string> kItemWords = {"have", "qed", "let", "hypothesis", "uses"};

class ScriptParser {
 public:
  ScriptParser(std::string_view text, std::string file) : in_(text), file_(std::move(file)) {}

  std::vector<ProofScript> parseAll() {
    std::vector<ProofScript> out;
    while (!in_.atEnd()) out.push_back(parseTheorem());
    return out;
  }

 private:
  Term term() { return parseTerm(in_, ctx_, kStopWords); }

  std::string label() {
    std::string l = in_.ident();
    if (kItemWords.count(l) || kStopWords.count(l)) in_.fail("reserved word used as label", {"label"});
    return l;
  }

  Judgment judgment() {
    if (in_.acceptWord("false")) return Judgment::falsum();
    Term s = term();
    if (in_.accept("!=")) return Judgment::notEqual(s, term());
    in_.expect("=");
    return Judgment::equal(s, term());
  }

  ProofScript parseTheorem() {
    ctx_ = ParseContext{};
    ctx_.allowPatternVars = false;
    ProofScript script;
    script.file = file_;
    in_.expectWord("theorem");
    script.id = in_.rawId();
    script.title = in_.quoted();
    in_.expect(":");
    do {
      script.statements.push_back(judgment());
    } while (in_.accept(";"));
    in_.expect("{");
    while (!in_.accept("}")) {
      if (in_.acceptWord("uses")) {
        do {
          script.uses.push_back(in_.rawId());
        } while (in_.accept(","));
      } else if (in_.acceptWord("hypothesis")) {
        HypothesisEquation h;
        h.constant = in_.ident();
        if (isTermKeyword(h.constant)) in_.fail("keyword used as constant name");
        ctx_.defined.insert(h.constant);
        ctx_.variables.erase(h.constant);
        in_.expect(":");
        ctx_.allowPatternVars = true;
        h.lhs = term();
        in_.expect("=");
        h.rhs = term();
        ctx_.allowPatternVars = false;
        script.hypotheses.push_back(std::move(h));
      } else if (in_.acceptWord("let")) {
        Definition d;
        d.name = in_.ident();
        if (isTermKeyword(d.name)) in_.fail("keyword used as definition name");
        if (ctx_.defined.count(d.name)) in_.fail("name " + d.name + " is already defined");
        in_.expect(":=");
        d.body = term();
        ctx_.defined.insert(d.name);
        ctx_.variables.erase(d.name);
        script.definitions.push_back(std::move(d));
      } else {
        script.body.steps.push_back(step());
      }
    }
    return script;
  }

  Step step() {
    Step s;
    s.line = in_.line();
    if (in_.acceptWord("qed")) {
      s.qed = true;
    } else {
      in_.expectWord("have");
      s.label = label();
      in_.expect(":");
      s.goal = judgment();
    }
    in_.expectWord("by");
    s.justification = justification();
    return s;
  }

  Block block() {
    Block b;
    in_.expect("{");
    while (!in_.accept("}")) b.steps.push_back(step());
    return b;
  }

  Bindings bindings() {
    Bindings out;
    in_.expect("[");
    if (in_.accept("]")) return out;
    do {
      std::string name = in_.ident();
      in_.expect(":=");
      out.emplace_back(std::move(name), term());
    } while (in_.accept(","));
    in_.expect("]");
    return out;
  }

  Justification justification() {
    if (in_.acceptWord("chain")) {
      ChainProof c;
      in_.expect("[");
      do {
        ChainLink link{term(), std::nullopt};
        if (in_.accept("@")) link.citation = in_.rawId();
        c.links.push_back(std::move(link));
      } while (in_.accept(","));
      in_.expect("]");
      return {c};
    }
    if (in_.acceptWord("normalize")) {
      NormalizeProof n;
      if (in_.acceptWord("fuel")) n.fuel = static_cast<std::size_t>(in_.integer());
      return {n};
    }
    if (in_.acceptWord("ext")) {
      ExtProof e;
      if (in_.lookingAtInteger()) {
        e.arity = static_cast<std::size_t>(in_.integer());
        return {std::move(e)};
      }
      while (!in_.lookingAtWord("by")) {
        std::string v = in_.ident();
        if (isTermKeyword(v) || ctx_.isDefined(v)) in_.fail("ext needs variable names", {"variable"});
        e.variables.push_back(std::move(v));
      }
      in_.expectWord("by");
      e.inner = Box<Justification>(justification());
      return {std::move(e)};
    }
    if (in_.acceptWord("theorem")) {
      TheoremProof t;
      t.id = in_.rawId();
      if (in_.lookingAt("[")) t.bindings = bindings();
      return {std::move(t)};
    }
    if (in_.acceptWord("refute")) {
      RefuteProof r;
      r.id = in_.rawId();
      r.constants = bindings();
      in_.expectWord("with");
      do {
        r.facts.push_back(label());
      } while (in_.lookingAtIdent() && !lookingAtItem());
      return {std::move(r)};
    }
    if (in_.acceptWord("falsum")) {
      FalsumProof f;
      f.equality = label();
      f.disequality = label();
      return {f};
    }
    if (in_.acceptWord("kinject")) return {KInjectProof{label()}};
    if (in_.acceptWord("apply")) {
      ApplyProof a;
      in_.expect("[");
      do {
        a.arguments.push_back(term());
      } while (in_.accept(","));
      in_.expect("]");
      a.leftFact = label();
      a.rightFact = label();
      a.disequality = label();
      return {std::move(a)};
    }
    if (in_.acceptWord("contra")) {
      ContraProof c;
      c.label = label();
      c.block = block();
      return {std::move(c)};
    }
    if (in_.acceptWord("cases")) {
      CasesProof c{Term::constant(Constant::P1), Term::constant(Constant::P1), {}, {}, {}, {}};
      Term scrutinee = term();
      if (!(scrutinee.is(Kind::Application) && scrutinee.function().isConstant(Constant::Eq) &&
            scrutinee.argument().is(Kind::Pair))) {
        in_.fail("cases expects a term of the form Eq <a,b>");
      }
      c.left = scrutinee.argument().left();
      c.right = scrutinee.argument().right();
      in_.expectWord("as");
      c.relationLabel = label();
      in_.expect(",");
      c.valueLabel = label();
      in_.expect("{");
      while (!in_.accept("}")) {
        if (in_.accept(";")) continue;
        if (in_.acceptWord("p1")) {
          in_.expect("=>");
          c.equalBranch = block();
        } else if (in_.acceptWord("p2")) {
          in_.expect("=>");
          c.distinctBranch = block();
        } else {
          in_.fail("expected a case branch", {"p1", "p2", "'}'"});
        }
      }
      return {std::move(c)};
    }
    in_.fail("expected a justification",
             {"chain", "normalize", "ext", "theorem", "refute", "falsum", "kinject", "apply", "contra", "cases"});
  }

  bool lookingAtItem() {
    for (const auto& w : kItemWords) {
      if (in_.lookingAtWord(w)) return true;
    }
    return false;
  }

  Scanner in_;
  std::string file_;
  ParseContext ctx_;
};

}  // namespace

std::vector<ProofScript> parseScripts(std::string_view text, const std::string& file) {
  return ScriptParser(text, file).parseAll();
}

}  // namespace trc
