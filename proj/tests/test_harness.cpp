#include <doctest.h>

#include <algorithm>
#include <set>

#include "fincat/generate.hpp"
#include "fincat/harness.hpp"
#include "fincat/io.hpp"
#include "fincat/workspace.hpp"

using namespace fincat;

namespace {

  struct Located {
    char const* text;
    int         line;
    int         column;  // 0: any
  };

  void expect_error_at(Located const& c) {
    CAPTURE(c.text);
    try {
      parse_workspace(c.text);
      FAIL("accepted");
    } catch (parse_error const& e) {
      CHECK(e.line() == c.line);
      if (c.column) {
        CHECK(e.column() == c.column);
      }
      CHECK(std::string(e.what()).rfind("<input>:" + std::to_string(e.line()) + ":", 0) == 0);
    }
  }

}  // namespace

TEST_CASE("the sample workspace parses") {
  auto ws = parse(FINCAT_SOURCE_DIR "/data/basics.fincat");
  CHECK(ws.category("I").cat->num_arrows() == 3);
  CHECK(ws.category("E").cat->num_arrows() == 2);
  CHECK(ws.category("S").cat->num_arrows() == 5);
  CHECK(ws.category("T").cat->num_arrows() == 6);
  CHECK(ws.fibrations.at("R").W.size() == 1);
  CHECK(inverts_W(ws.fibrations.at("R").mf, ws.fibrations.at("R").W));
  CHECK(ws.suites.at("quick").seed == 3);
}

TEST_CASE("emit then parse keeps the canonical form") {
  for (auto const& C : enumerate_small_categories(2, 4)) {
    auto back = parse_workspace(emit_dsl("C", C)).category("C").cat;
    CHECK(canonical_form(back) == canonical_form(C));
  }
  Rng rng(5);
  for (int k = 0; k < 30; ++k) {
    Cat  C    = random_fincat(rng, FinCatParams{5, 3, 4, 30});
    auto back = parse_workspace(emit_dsl("C", C)).category("C").cat;
    CHECK(canonical_form(back) == canonical_form(C));
    CHECK(canonical_form(cat_from_json(to_json(C))) == canonical_form(C));
  }
}

TEST_CASE("a whole workspace survives emit and parse") {
  auto ws   = parse(FINCAT_SOURCE_DIR "/data/basics.fincat");
  auto back = parse_workspace(emit_dsl(ws));
  REQUIRE(back.order.size() == ws.order.size());
  for (auto const& e : ws.order) {
    if (e.kind == Workspace::Kind::Category) {
      CHECK(canonical_form(back.category(e.name).cat) == canonical_form(ws.category(e.name).cat));
    }
  }
  for (auto const& [name, P] : ws.fibrations) {
    CHECK(back.fibrations.at(name).mf.cocartesian == P.mf.cocartesian);
    CHECK(back.fibrations.at(name).W == P.W);
  }
}

TEST_CASE("syntax and reference errors are located") {
  expect_error_at({"category A { objects a; arrows f: a -> c }", 1, 40});
  expect_error_at({"categroy A { objects a }", 1, 1});
  expect_error_at({"category A { objects a }\ncategory A { objects b }", 2, 10});
  // columns count code points
  expect_error_at({"category Ω { objects α β; arrows φ: α -> γ }", 1, 42});
  expect_error_at({"category A { objects a b; arrows f: a -> b; relations f = id(a) }", 1, 0});
  expect_error_at({"category A { objects a\n", 2, 0});
  expect_error_at({"category A { objects a }\n\nfunctor F : A -> B { obj a -> a }", 3, 18});
  expect_error_at({"fibration P = G { marked }", 1, 15});
  expect_error_at({"functor F : interval -> interval { obj 0 -> 1, 1 -> 0; arr f -> f }", 1, 0});
  // free monoid: saturation does not close
  expect_error_at({"category N {\n  objects x\n  arrows s: x -> x\n}", 1, 0});
}

TEST_CASE("unresolved references name the missing entity") {
  try {
    parse_workspace("category A { objects a }\nfunctor F : A -> B { obj a -> a }\n");
    FAIL("accepted");
  } catch (parse_error const& e) {
    CHECK(e.message() == "unresolved reference to category 'B'");
  }
}

TEST_CASE("generated instances are deterministic and valid") {
  for (auto kind : {GenerateKind::FinCat, GenerateKind::Opfibration, GenerateKind::LocalisationInstance}) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      auto text = generate(kind, seed);
      CHECK(text == generate(kind, seed));
      auto ws = parse_workspace(text);
      for (auto const& [name, P] : ws.fibrations) {
        // independent of the marking the generator emitted
        auto V = is_cocartesian_fibration(P.mf.p);
        REQUIRE(V.ok());
        CHECK(V.fibration->cocartesian == P.mf.cocartesian);
        CHECK(inverts_W(P.mf, P.W));
        if (kind == GenerateKind::LocalisationInstance) {
          CHECK_FALSE(P.W.empty());
        }
      }
    }
  }
  CHECK(generate(GenerateKind::FinCat, 0) != generate(GenerateKind::FinCat, 1));
  CHECK_THROWS_AS(generate_kind("sphere"), precondition_error);
}

TEST_CASE("suite reports depend only on suite, seed and bounds") {
  for (auto const* name : {"conduche", "descent-cocomma", "constructions"}) {
    auto a = emit_json(run_suite(name, 7, {}, 1));
    auto b = emit_json(run_suite(name, 7, {}, 3));
    auto c = emit_json(run_suite(name, 7, {}, 1));
    CHECK(a == b);
    CHECK(a == c);
    CHECK(a.find("wall") == std::string::npos);
  }
  CHECK(emit_json(run_suite("conduche", 7)) != emit_json(run_suite("conduche", 8)));
}

TEST_CASE("report JSON carries verdicts and witnesses") {
  auto j = to_json(run_suite("conduche-counterexample", 0));
  CHECK(j.at("suite") == "conduche-counterexample");
  CHECK(j.at("criterion") == 8);
  CHECK(j.at("verdict") == "pass");
  CHECK(j.at("counts").at("pass") == j.at("checks").size());
  for (auto const& c : j.at("checks")) {
    CHECK(c.contains("id"));
    CHECK(c.at("verdict") == "pass");
  }
  CHECK_THROWS_AS(run_suite("no-such-suite"), precondition_error);
}

TEST_CASE("every catalogued operation is exercised by some suite") {
  CHECK(uncovered_operations().empty());
  std::set<std::string> ops(operation_catalogue().begin(), operation_catalogue().end());
  CHECK(ops.size() == operation_catalogue().size());
  std::set<int> criteria;
  for (auto const& s : suite_catalogue()) {
    for (auto const& op : s.operations) {
      CAPTURE(s.name);
      CHECK(ops.count(op) == 1);
    }
    if (s.criterion) {
      CHECK(criteria.insert(s.criterion).second);
    }
  }
  CHECK(criteria.size() == 15);
  CHECK(*criteria.begin() == 1);
  CHECK(*criteria.rbegin() == 15);
}
