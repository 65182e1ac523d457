#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>

#include "lcf/transfer.hpp"

using namespace lcf;
using namespace lcf::transfer;

namespace {
const EngineConfig cfg = default_config();

std::string rt(const char* s) { return render_formula(parse_formula(s)); }
}  // namespace

TEST_CASE("formula parsing and rendering", "[transfer][parse]") {
  SECTION("round trips are stable") {
    for (const char* s : {
             "forall^st x. x + 0 = x",
             "forall x. x < 1 -> x + 1 < 2",
             "forall^st x. st(x) & !x = 0 -> exists^st y. x*y = 1",
             "(x < 1 | x = 1) & 0 <= x",
             "forall x. exists y. x < y",
             "!x = 1 & x <= 2 | 3 < x",
             "x - -y = x + y",
             "forall x. x*(1/2) <= x | x < 0",
         }) {
      std::string once = rt(s);
      REQUIRE(render_formula(parse_formula(once)) == once);
    }
  }
  SECTION("sugar canonicalizes") {
    REQUIRE(rt("x != y") == "!x = y");
    REQUIRE(rt("x*x >= 0") == "0 <= x*x");       // >= swaps its operands
    REQUIRE(rt("x > 3") == "3 < x");
    REQUIRE(rt("not (x = 1) and x <= 2 or x > 3") == "!x = 1 & x <= 2 | 3 < x");
  }
  SECTION("quantifiers take maximal scope") {
    auto f = parse_formula("forall x. x < 1 -> x < 2");
    REQUIRE(f->kind == FKind::forall);
    REQUIRE(f->a->kind == FKind::implies);
    REQUIRE(quantifier_depth(f) == 1);
    REQUIRE(quantifier_depth(parse_formula("forall x. exists y. x < y")) == 2);
  }
  SECTION("malformed input names its position") {
    for (const char* s :
         {"forall", "x <", "forall x x = x", "(x = 1", "x = ", "st x",
          "forall 1. x = x", "x & ", "exists^st . x = x"}) {
      REQUIRE_THROWS_AS(parse_formula(s), SyntaxError);
    }
    try {
      parse_formula("forall x x = x");
      FAIL("expected a syntax error");
    } catch (const SyntaxError& e) {
      REQUIRE(e.position() == 9);  // the missing '.'
    }
  }
  SECTION("structure queries") {
    auto f = parse_formula("forall^st x. x < H + k");
    REQUIRE(free_parameters(f) == std::set<std::string>{"H", "k"});
    REQUIRE(free_parameters(parse_formula("forall x. exists y. x < y")).empty());
    REQUIRE(node_count(parse_formula("x = y")) == 3);
    REQUIRE(lcf::transfer::detail::contains_st_atom(parse_formula("st(x)")));
    REQUIRE_FALSE(lcf::transfer::detail::contains_st_atom(parse_formula("x = x")));
  }
}

TEST_CASE("applicability checking", "[transfer][check]") {
  SECTION("clean relativized sentences pass") {
    TransferVerdict v =
        check_applicability(parse_formula("forall^st x. x + 0 = x"));
    REQUIRE(v.applicable);
    REQUIRE(v.reasons.empty());
  }
  SECTION("a standardness atom in the matrix blocks transfer") {
    TransferVerdict v = check_applicability(
        parse_formula("forall x. st(x) -> x < 1000"));
    REQUIRE_FALSE(v.applicable);
    REQUIRE(v.reasons.size() == 1);
    REQUIRE(v.reasons[0].kind == ViolationKind::st_predicate_in_matrix);
  }
  SECTION("nonstandard parameters block transfer") {
    auto f = parse_formula("forall^st x. x < H");
    REQUIRE_THROWS_AS(check_applicability(f), Error);  // unmarked parameter
    TransferVerdict ok = check_applicability(f, {{"H", true}});
    REQUIRE(ok.applicable);
    TransferVerdict bad = check_applicability(f, {{"H", false}});
    REQUIRE_FALSE(bad.applicable);
    REQUIRE(bad.reasons.size() == 1);
    REQUIRE(bad.reasons[0].kind == ViolationKind::nonstandard_parameter);
    REQUIRE(bad.reasons[0].detail.find("'H'") != std::string::npos);
  }
  SECTION("violations accumulate") {
    TransferVerdict v = check_applicability(
        parse_formula("forall x. st(x) -> x < H"), {{"H", false}});
    REQUIRE(v.reasons.size() == 2);
  }
  SECTION("JSON verdicts") {
    nlohmann::json j = verdict_to_json(
        check_applicability(parse_formula("forall x. st(x) -> x = x")));
    REQUIRE(j["applicable"] == false);
    REQUIRE(j["reasons"][0]["kind"] == "StPredicateInMatrix");
    nlohmann::json ok = verdict_to_json(
        check_applicability(parse_formula("forall^st x. x = x")));
    REQUIRE(ok["applicable"] == true);
    REQUIRE(ok["reasons"].empty());
  }
}

TEST_CASE("the transfer rewrite", "[transfer][rewrite]") {
  auto f = parse_formula(
      "forall^st x. st(x) | !st(x) -> x = x");  // st atoms: not applicable
  REQUIRE_THROWS_AS(apply_transfer(f), Error);

  auto g = parse_formula(
      "forall^st x. forall^st y. x + y = y + x");
  FormulaPtr t = apply_transfer(g);
  REQUIRE(render_formula(t) == "forall x. forall y. x + y = y + x");
  REQUIRE(node_count(t) == node_count(g));
  // idempotent: a second pass changes nothing
  REQUIRE(render_formula(apply_transfer(t)) == render_formula(t));

  // mixed quantifiers all lose their relativization
  FormulaPtr u = apply_transfer(
      parse_formula("forall^st x. !x = 0 -> exists^st y. x*y = 1"));
  REQUIRE(render_formula(u) == "forall x. !x = 0 -> exists y. x*y = 1");
}

TEST_CASE("instance testing is sound", "[transfer][instances]") {
  SECTION("a genuinely false transferred sentence yields its counterexample") {
    TestReport r = test_instances(parse_formula("forall x. x < 1000"), cfg);
    REQUIRE(r.counterexample_found);
    REQUIRE(r.bindings.size() == 1);
    REQUIRE(r.bindings[0].first == "x");
    // the witness is an actual infinite value, not a large rational
    LCNumber w = parse_number(r.bindings[0].second, Mode::exact, cfg);
    REQUIRE(classify(w) == Classification::infinite);
    REQUIRE(r.summary == "counterexample found");
  }
  SECTION("the relativized form of the same sentence survives") {
    TestReport r = test_instances(parse_formula("forall^st x. x < 1000"), cfg);
    REQUIRE_FALSE(r.counterexample_found);
  }
  SECTION("existentials are witnessed, never refuted by sampling") {
    TestReport r = test_instances(parse_formula("exists x. x*x = 4"), cfg);
    REQUIRE(r.summary == "witnessed true on sampled instances");
    TestReport s = test_instances(parse_formula("exists x. x*x = 7"), cfg);
    REQUIRE_FALSE(s.counterexample_found);  // unknown, not false
    REQUIRE(s.summary == "no counterexample in budget (consistent with transfer)");
  }
  SECTION("universals are never confirmed by exhaustion") {
    TestReport r = test_instances(parse_formula("forall x. x*x = x*x"), cfg);
    REQUIRE_FALSE(r.counterexample_found);
    REQUIRE(r.summary == "no counterexample in budget (consistent with transfer)");
  }
  SECTION("guard rails") {
    REQUIRE_THROWS_AS(test_instances(parse_formula("x < H"), cfg), Error);
    REQUIRE_THROWS_AS(
        test_instances(parse_formula("forall x. forall y. forall z. forall w. "
                                     "x + y + z + w = w + z + y + x"),
                       cfg),
        Error);
    TestOptions tight;
    tight.budget = 10;
    TestReport r = test_instances(
        parse_formula("forall x. forall y. x + y = y + x"), cfg, Mode::exact,
        tight);
    REQUIRE(r.budget_exhausted);
    REQUIRE_FALSE(r.counterexample_found);
  }
  SECTION("division by candidate values cannot crash the tester") {
    TestReport r = test_instances(parse_formula("forall x. 1/x = 1/x"), cfg);
    REQUIRE_FALSE(r.counterexample_found);
    REQUIRE(r.indeterminate_instances > 0);  // x = 0 lands in 'unknown'
  }
  SECTION("JSON report shape") {
    nlohmann::json found = report_to_json(
        test_instances(parse_formula("forall x. x < 1000"), cfg));
    REQUIRE(found["counterexample_found"] == true);
    REQUIRE(found["counterexample"].contains("x"));
    nlohmann::json clean = report_to_json(
        test_instances(parse_formula("forall^st x. x < 1000"), cfg));
    REQUIRE(clean["counterexample_found"] == false);
    REQUIRE_FALSE(clean.contains("counterexample"));
    REQUIRE(clean["instances_checked"].get<std::size_t>() > 0);
  }
}

TEST_CASE("the bundled ordered-field sentences transfer cleanly",
          "[transfer][axioms]") {
  for (const std::string& text : ordered_field_axioms()) {
    INFO(text);
    FormulaPtr relativized = parse_formula(text);
    TransferVerdict v = check_applicability(relativized);
    REQUIRE(v.applicable);
    FormulaPtr transferred = apply_transfer(relativized);
    REQUIRE(node_count(transferred) == node_count(relativized));

    TestReport before = test_instances(relativized, cfg);
    REQUIRE_FALSE(before.counterexample_found);
    TestReport after = test_instances(transferred, cfg);
    REQUIRE_FALSE(after.counterexample_found);
  }
}

TEST_CASE("formula JSON mirrors the tree", "[transfer][json]") {
  nlohmann::json j =
      formula_to_json(parse_formula("forall^st x. x < 1 | st(x)"));
  REQUIRE(j["kind"] == "forall");
  REQUIRE(j["var"] == "x");
  REQUIRE(j["standard_only"] == true);
  REQUIRE(j["body"]["kind"] == "or");
  REQUIRE(j["body"]["left"]["kind"] == "cmp");
  REQUIRE(j["body"]["left"]["op"] == "<");
  REQUIRE(j["body"]["right"]["kind"] == "st");
  REQUIRE(j["body"]["right"]["term"] == "x");
}

TEST_CASE("structural fuzz: the checker never misses", "[transfer][fuzz]") {
  std::mt19937_64 rng(59);
  std::uniform_int_distribution<int> coin(0, 99);

  for (int trial = 0; trial < 200; ++trial) {
    bool planted_st = false;
    std::set<std::string> used_params;

    auto term = [&](auto&& self, int depth) -> TermPtr {
      int pick = coin(rng);
      if (depth <= 0 || pick < 35) {
        if (pick % 3 == 0) return tvar("x");
        if (pick % 3 == 1) return tconst(Rational(coin(rng) % 7));
        const char* p = (pick % 2) ? "H" : "k";
        used_params.insert(p);
        return tvar(p);
      }
      TermKind k = pick < 55   ? TermKind::add
                   : pick < 70 ? TermKind::mul
                   : pick < 85 ? TermKind::sub
                               : TermKind::div;
      return tbin(k, self(self, depth - 1), self(self, depth - 1));
    };
    auto leaf = [&]() -> FormulaPtr {
      if (coin(rng) < 25) {
        planted_st = true;
        return atom_standard(term(term, 1));
      }
      Cmp c = coin(rng) < 40 ? Cmp::lt : coin(rng) < 70 ? Cmp::le : Cmp::eq;
      return atom(c, term(term, 2), term(term, 2));
    };
    auto build = [&](auto&& self, int depth) -> FormulaPtr {
      int pick = coin(rng);
      if (depth <= 0 || pick < 30) return leaf();
      if (pick < 45)
        return quantified(FKind::forall, "x", coin(rng) < 50,
                          self(self, depth - 1));
      if (pick < 55)
        return quantified(FKind::exists, "x", coin(rng) < 50,
                          self(self, depth - 1));
      if (pick < 70)
        return connective(FKind::conj, self(self, depth - 1),
                          self(self, depth - 1));
      if (pick < 85)
        return connective(FKind::disj, self(self, depth - 1),
                          self(self, depth - 1));
      if (pick < 95)
        return connective(FKind::implies, self(self, depth - 1),
                          self(self, depth - 1));
      return connective(FKind::neg, self(self, depth - 1));
    };

    FormulaPtr phi = build(build, 3);
    // mark every free name (an unbound x counts as a parameter too) and keep
    // generation-time ground truth independent of the checker's walk
    std::map<std::string, bool> marks;
    bool planted_nonstandard = false;
    for (const std::string& p : free_parameters(phi)) {
      bool standard = coin(rng) < 50;
      marks[p] = standard;
      if (!standard) planted_nonstandard = true;
    }

    TransferVerdict v = check_applicability(phi, marks);
    bool expect_applicable = !planted_st && !planted_nonstandard;
    INFO(render_formula(phi));
    REQUIRE(v.applicable == expect_applicable);

    // the rendered tree survives a reparse
    REQUIRE(render_formula(parse_formula(render_formula(phi))) ==
            render_formula(phi));
  }
}
