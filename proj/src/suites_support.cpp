#include <algorithm>

#include "fincat/fibration.hpp"
#include "fincat/generate.hpp"
#include "fincat/io.hpp"
#include "fincat/join.hpp"
#include "fincat/presheaf.hpp"
#include "fincat/workspace.hpp"
#include "suites.hpp"

namespace fincat::suites {

  namespace {

    std::string shape(Cat const& C) {
      return std::to_string(C->num_objects()) + "/" + std::to_string(C->num_arrows());
    }

    // Pass when C has the given numbers of objects and arrows.
    Outcome expect_shape(Cat const& C, std::size_t objects, std::size_t arrows) {
      if (C->num_objects() != objects || C->num_arrows() != arrows) {
        return fail("got " + shape(C) + ", want " + std::to_string(objects) + "/" + std::to_string(arrows));
      }
      return pass(shape(C));
    }

    Outcome expect(bool ok, std::string const& what) {
      return ok ? pass() : fail(what);
    }

    Check check(std::string id, std::function<Outcome()> f) {
      return {std::move(id), std::move(f)};
    }

    Suite constructions() {
      Suite s;
      s.info = {"constructions", 0, "small constructions with known answers",
                {"functor_category", "comma", "product", "coproduct", "pullback", "core", "full_subcategory",
                 "wide_subcategory", "is_fully_faithful", "is_surjective_on_isoclasses", "is_equivalence",
                 "pi0", "localisation_preserves_pullback_check", "saturate", "pushout", "cocomma",
                 "sequential_colimit", "restrict", "lan", "presheaf_pushout", "presheaf_seq_colimit",
                 "arrow_left_adjoint", "is_left_fibration", "is_right_fibration", "is_left_cofinal",
                 "cofinal_factorization", "cocartesian_arrows", "directed_join", "fun_cocart",
                 "virtual_join"}};
      s.checks = [](std::uint64_t, Bounds const& b) {
        Cat I = interval(), J = walking_iso(), E = walking_idempotent();
        std::vector<Check> out;
        // categories
        out.push_back(check("functor-category-interval", [I] {
          // three monotone maps, ordered pointwise in a chain
          return expect_shape(functor_category(I, I).cat, 3, 6);
        }));
        out.push_back(check("comma-arrow-category", [I] {
          return expect_shape(comma(identity_functor(I), identity_functor(I)).cat, 3, 6);
        }));
        out.push_back(check("product-square", [I] { return expect_shape(product(I, I).cat, 4, 9); }));
        out.push_back(check("coproduct", [I, J] { return expect_shape(coproduct(I, J).cat, 4, 7); }));
        out.push_back(check("pullback-over-point", [I, J] {
          return expect_shape(pullback(to_terminal(I), to_terminal(J)).cat, 4, 12);
        }));
        out.push_back(check("core", [I, J, E] {
          if (auto o = expect_shape(core(I).cat, 2, 2); o.verdict != Verdict::Pass) {
            return o;
          }
          if (auto o = expect_shape(core(J).cat, 2, 4); o.verdict != Verdict::Pass) {
            return o;
          }
          return expect_shape(core(E).cat, 1, 1);
        }));
        out.push_back(check("full-subcategory-ends", [] {
          return expect_shape(full_subcategory(poset_chain(2), [](int x) { return x != 1; }).cat, 2, 3);
        }));
        out.push_back(check("wide-subcategory-identities", [I] {
          return expect_shape(wide_subcategory(I, [I](int a) { return I->is_identity(a); }).cat, 2, 2);
        }));
        out.push_back(check("equivalence-predicates", [I, J] {
          if (!is_fully_faithful(point(I, 0)) || is_surjective_on_isoclasses(point(I, 0))) {
            return fail("point of I");
          }
          if (!is_equivalence(to_terminal(J)) || !is_equivalence(point(J, 0))) {
            return fail("J is not equivalent to the point");
          }
          return expect(!is_equivalence(to_terminal(I)), "I is equivalent to the point");
        }));
        out.push_back(check("pi0", [I, J] {
          if (pi0(discrete(3)).count != 3) {
            return fail("discrete(3)");
          }
          return expect(pi0(coproduct(I, J).cat).count == 2, "coproduct of I and J");
        }));
        out.push_back(check("pi0-pullback-over-groupoid", [I, J] {
          Cat Z2 = cyclic_group(2);
          if (!localisation_preserves_pullback_check(to_terminal(I), to_terminal(J))) {
            return fail("product over the point");
          }
          // trivial actions of Z/2 on two points and on I: 2 components either way
          if (!localisation_preserves_pullback_check(product(Z2, discrete(2)).first, product(Z2, I).first)) {
            return fail("trivial actions over Z/2");
          }
          // the strict pullback of two distinct points of J is empty
          return expect(!localisation_preserves_pullback_check(point(J, 0), point(J, 1)),
                        "distinct points of J");
        }));
        // presentations
        out.push_back(check("saturate-idempotent", [b] {
          Presentation P;
          int          x = P.add_object("x");
          int          e = P.add_generator("e", x, x);
          P.add_relation(P.concat(P.single(e), P.single(e)), P.single(e));
          auto R = saturate(P, b.max_word_len);
          if (!R.exact()) {
            return truncated(R.note);
          }
          return expect_shape(R.cat, 1, 2);
        }));
        out.push_back(check("saturate-free-monoid-truncates", [b] {
          Presentation P;
          int          x = P.add_object("x");
          P.add_generator("e", x, x);
          auto R = saturate(P, b.max_word_len);
          return expect(R.status == Status::Truncated, "free monoid reported Exact");
        }));
        out.push_back(check("pushout-composable", [I, b] {
          auto R = pushout(point(I, 1), point(I, 0), b.max_word_len);
          if (!R.sat.exact()) {
            return truncated(R.sat.note);
          }
          return expect_shape(R.sat.cat, 3, 6);
        }));
        out.push_back(check("pushout-parallel", [I, b] {
          Functor ends{discrete(2), I, {0, 1}, {0, 1}};
          auto    R = pushout(ends, ends, b.max_word_len);
          if (!R.sat.exact()) {
            return truncated(R.sat.note);
          }
          return expect(find_isomorphism(R.sat.cat, parallel_pair()).has_value(), "not the parallel pair");
        }));
        out.push_back(check("cocomma-of-points", [I, b] {
          Cat  T = terminal();
          auto R = cocomma(identity_functor(T), identity_functor(T), b.max_word_len);
          if (!R.sat.exact()) {
            return truncated(R.sat.note);
          }
          return expect(find_isomorphism(R.sat.cat, I).has_value(), "not the interval");
        }));
        out.push_back(check("sequential-colimit-constant", [I, b] {
          auto R = sequential_colimit({I, I, I}, {identity_functor(I), identity_functor(I)}, b.max_stages);
          if (R.status != Status::Exact) {
            return truncated("did not stabilize");
          }
          return expect(R.stage == 0 && find_isomorphism(R.colimit, I).has_value(), "colimit of constant I");
        }));
        // presheaves
        out.push_back(check("restrict-representable", [I] {
          auto P = restrict(point(I, 0), yoneda(I, 1));
          return expect(P.size == std::vector<int>{1}, "I(0, 1) is not a singleton");
        }));
        out.push_back(check("lan-of-point-is-representable", [I] {
          auto L = lan(point(I, 0), terminal_presheaf(terminal()));
          return expect(L.value == yoneda(I, 0), "not yo(0)");
        }));
        out.push_back(check("presheaf-pushout-over-empty", [I] {
          Presheaf P = empty_presheaf(I), Q = yoneda(I, 0), R = yoneda(I, 1);
          auto     po = presheaf_pushout(P, Q, R, all_presheaf_maps(P, Q).at(0), all_presheaf_maps(P, R).at(0));
          return expect(po.value.size == coproduct(Q, R).size, "pushout over empty is not the coproduct");
        }));
        out.push_back(check("presheaf-seq-colimit-constant", [I, b] {
          Presheaf T = terminal_presheaf(I);
          auto     R = presheaf_seq_colimit({T, T, T}, {identity_map(T), identity_map(T)}, b.max_stages);
          if (R.status != Status::Exact) {
            return truncated("did not stabilize");
          }
          return expect(R.value.size == T.size, "colimit of constant terminal");
        }));
        out.push_back(check("arrow-left-adjoint", [I] {
          auto m = arrow_family(I, {I->find_arrow("f")});
          auto A = arrow_left_adjoint(m, arrow_restrict(m, terminal_presheaf(I)));
          // yo(1) glued to yo(0) along the identity of yo(0)
          return expect(A.value.value.size == yoneda(I, 1).size, "not yo(1)");
        }));
        // fibrations
        out.push_back(check("left-and-right-fibrations", [I] {
          if (!is_left_fibration(identity_functor(I)) || is_left_fibration(to_terminal(I))) {
            return fail("left fibration");
          }
          return expect(is_right_fibration(to_terminal(discrete(2))) && !is_right_fibration(to_terminal(I)),
                        "right fibration");
        }));
        out.push_back(check("left-cofinal", [I] {
          if (!is_left_cofinal(to_terminal(I)) || is_left_cofinal(to_terminal(discrete(2)))) {
            return fail("cofinality of maps to the point");
          }
          auto F = to_terminal(discrete(2));
          auto f = cofinal_factorization(F);
          if (!(compose(f.fibration, f.cofinal) == F)) {
            return fail("factorization does not compose to F");
          }
          return expect(is_left_cofinal(f.cofinal) && is_left_fibration(f.fibration)
                            && f.middle->num_objects() == 2,
                        "factors are not cofinal then a left fibration");
        }));
        out.push_back(check("cocartesian-arrows", [I, J] {
          if (cocartesian_arrows(to_terminal(J)).size() != 4) {
            return fail("isomorphisms over the point");
          }
          return expect(cocartesian_arrows(to_terminal(I)).size() == 2, "only identities of I lie over the point");
        }));
        // joins
        out.push_back(check("directed-join-identities-on-groupoid", [J, b] {
          auto D = directed_join(identity_functor(J), identity_functor(J), b.max_word_len);
          if (D.status != Status::Exact) {
            return truncated(D.note);
          }
          return expect(equivalent(D.sat.cat, J), "join is not the groupoid");
        }));
        out.push_back(check("fun-cocart-over-points", [I, J] {
          auto p = unstraighten(constant_pseudofunctor(terminal(), I));
          auto q = unstraighten(constant_pseudofunctor(terminal(), J));
          auto F = fun_cocart(p, q);
          // objects: functors I -> J; arrows: natural isomorphisms between them
          return expect_shape(F.cat, 4, 16);
        }));
        out.push_back(check("virtual-join-of-points", [I, b] {
          // one functor I -> 1, so the base is I
          auto p = unstraighten(constant_pseudofunctor(terminal(), I));
          auto q = unstraighten(constant_pseudofunctor(terminal(), terminal()));
          auto V = virtual_join(p, q, b.max_word_len);
          if (V.status != Status::Exact) {
            return truncated(V.note);
          }
          if (!V.verified()) {
            return fail("does not recover both fibrations");
          }
          return expect(equivalent(V.result->base(), I), "base is not the interval");
        }));
        return out;
      };
      return s;
    }

    ////////////////////////////////////////////////////////////////////////
    // Workspace files, serialization and generation
    ////////////////////////////////////////////////////////////////////////

    std::string const grammar_example = R"(# every block form
category I { objects a b; arrows f: a -> b }
category E { objects x; arrows e: x -> x; relations e.e = e }
category T = poset(2)
presentation N { objects x; arrows s: x -> x }
functor F : I -> E { obj a -> x, b -> x; arr f -> e }
functor G : I -> E { obj a -> x, b -> x; arr f -> id(x) }
functor H : E -> E { obj x -> x; arr e -> e }
functor K : I -> I { obj a -> a, b -> b; arr f -> f }
fibration P = K { marked f }
fibration Q over I { fibre a = E; fibre b = E; action f = H }
suite nightly { run core-laws conduche; seed 3; max-word-len 12 }
)";

    template <class Exception>
    Outcome expect_throw(std::string const& text, std::function<Outcome(Exception const&)> const& inspect) {
      try {
        parse_workspace(text);
      } catch (Exception const& e) {
        return inspect(e);
      }
      return fail("accepted");
    }

    Outcome round_trip(Cat const& C) {
      auto ws   = parse_workspace(emit_dsl("C", C));
      auto back = ws.category("C").cat;
      if (canonical_form(back) != canonical_form(C)) {
        return fail("text round trip changes " + shape(C));
      }
      if (canonical_form(cat_from_json(nlohmann::json::parse(emit_json(C)))) != canonical_form(C)) {
        return fail("JSON round trip changes " + shape(C));
      }
      return pass();
    }

    Suite workspace() {
      Suite s;
      s.info = {"workspace", 0, "workspace files, serialization and instance generation",
                {"parse", "emit_json", "emit_dot", "generate", "run_suite", "check_fincat"}};
      s.checks = [](std::uint64_t seed, Bounds const& b) {
        std::vector<Check> out;
        out.push_back(check("parse-grammar-example", [] {
          auto ws = parse_workspace(grammar_example);
          if (ws.order.size() != 11) {
            return fail(std::to_string(ws.order.size()) + " blocks");
          }
          if (ws.category("T").cat->num_arrows() != 6 || ws.category("E").cat->num_arrows() != 2) {
            return fail("category sizes");
          }
          if (ws.fibrations.at("Q").mf.total()->num_objects() != 2) {
            return fail("fibration over I");
          }
          auto const& r = ws.suites.at("nightly");
          return expect(r.seed == 3 && r.max_word_len == 12 && r.suites.size() == 2, "suite block");
        }));
        out.push_back(check("round-trip-fixtures", [] {
          for (Cat C : {terminal(), empty_cat(), interval(), walking_iso(), walking_idempotent(),
                        section_retraction(), parallel_pair(), poset_chain(3), cyclic_group(3), discrete(2)}) {
            if (auto o = round_trip(C); o.verdict != Verdict::Pass) {
              return o;
            }
          }
          return pass("10 fixtures");
        }));
        out.push_back(check("round-trip-seeded", [seed] {
          for (int k = 0; k < 20; ++k) {
            Cat C = random_fincat(derive_seed(seed, "workspace/round-trip", k), FinCatParams{4, 3, 4, 20});
            if (auto o = round_trip(C); o.verdict != Verdict::Pass) {
              o.detail = "instance " + std::to_string(k) + ": " + o.detail;
              return o;
            }
          }
          return pass("20 categories");
        }));
        out.push_back(check("round-trip-fibration", [seed] {
          for (int k = 0; k < 10; ++k) {
            auto G  = random_opfibration(derive_seed(seed, "workspace/fibration", k));
            auto ws = parse_workspace(emit_dsl("P", G.fibration, G.W));
            auto const& P = ws.fibrations.at("P");
            if (canonical_form(P.mf.total()) != canonical_form(G.fibration.total())
                || P.mf.cocartesian.size() != G.fibration.cocartesian.size() || P.W.size() != G.W.size()) {
              return fail("instance " + std::to_string(k));
            }
          }
          return pass("10 opfibrations");
        }));
        out.push_back(check("located-error", [] {
          return expect_throw<parse_error>("category A {\n  objects a b\n  arrows f: a -> c\n}\n",
                                           [](parse_error const& e) {
                                             return expect(e.line() == 3 && e.column() == 18,
                                                           std::string("reported at ") + e.what());
                                           });
        }));
        out.push_back(check("unresolved-reference", [] {
          return expect_throw<parse_error>(
              "category A { objects a }\nfunctor F : A -> B { obj a -> a }\n", [](parse_error const& e) {
                return expect(e.line() == 2 && e.message().find("unresolved reference") != std::string::npos,
                              e.what());
              });
        }));
        out.push_back(check("rejects-law-violation", [] {
          return expect_throw<parse_error>("functor F : interval -> interval { obj 0 -> 1, 1 -> 0; arr f -> f }\n",
                                           [](parse_error const& e) { return expect(e.line() == 1, e.what()); });
        }));
        out.push_back(check("generate", [seed] {
          for (auto kind : {GenerateKind::FinCat, GenerateKind::Opfibration, GenerateKind::LocalisationInstance}) {
            for (int k = 0; k < 8; ++k) {
              auto s1 = derive_seed(seed, "workspace/generate", k);
              auto t  = generate(kind, s1);
              if (t != generate(kind, s1)) {
                return fail("generation is not deterministic");
              }
              auto ws = parse_workspace(t);
              for (auto const& [name, f] : ws.fibrations) {
                if (!is_cocartesian_fibration(f.mf.p).ok()) {
                  return fail(name + " is not a cocartesian fibration");
                }
                if (!inverts_W(f.mf, f.W)) {
                  return fail(name + " does not invert its W");
                }
                if (kind == GenerateKind::LocalisationInstance && f.W.empty()) {
                  return fail("localisation instance without W");
                }
              }
              if (kind != GenerateKind::FinCat && ws.fibrations.empty()) {
                return fail("no fibration generated");
              }
            }
          }
          return pass("24 instances");
        }));
        out.push_back(check("emit-dot", [] {
          auto d = emit_dot("S", section_retraction());
          if (d.rfind("digraph", 0) != 0) {
            return fail("not a digraph");
          }
          for (std::string l : {"r", "s", "t"}) {
            if (d.find("\"" + l + "\"") == std::string::npos) {
              return fail("arrow " + l + " missing");
            }
          }
          auto f = emit_dot("P", mark_fibration(product(interval(), interval()).first));
          return expect(f.find("cluster_") != std::string::npos, "fibres are not clustered");
        }));
        out.push_back(check("emit-json", [] {
          auto j = nlohmann::json::parse(emit_json(section_retraction()));
          return expect(j.at("objects").size() == 2 && j.at("arrows").size() == 5, j.dump());
        }));
        out.push_back(check("run-suite-deterministic", [seed, b] {
          auto one  = emit_json(run_suite("constructions", seed, b, 1));
          auto many = emit_json(run_suite("constructions", seed, b, 4));
          return expect(one == many, "reports differ across thread counts");
        }));
        return out;
      };
      return s;
    }

  }  // namespace

  std::vector<Suite> support_suites() {
    return {constructions(), workspace()};
  }

}  // namespace fincat::suites
