// fincat: command line front end for workspace files and the conformance suites.
//
//   fincat check FILE
//   fincat construct comma|cocomma|pushout|join FILE F G
//   fincat construct localize FILE CAT ARROW...
//   fincat construct complete FILE P Q0
//   fincat fib mark|conduche FILE FUNCTOR
//   fincat fib straighten|unstraighten|localize FILE FIBRATION
//   fincat verify SUITE...|all [--list]
//   fincat generate fincat|opfibration|localisation-instance
//
// Exit status: 0 success, 1 a check failed, 2 bad input, 3 a bound was hit.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "fincat/harness.hpp"
#include "fincat/io.hpp"
#include "fincat/workspace.hpp"

using namespace fincat;
using nlohmann::json;

namespace {

  enum Exit { Ok = 0, Failed = 1, BadInput = 2, Bounded = 3 };

  struct Options {
    int           max_word_len = default_max_word_len;
    int           max_stages   = default_max_stages;
    std::uint64_t seed         = 0;
    unsigned      threads      = 0;
    bool          json         = false;
    bool          dot          = false;
    std::string   name         = "result";
  };

  // Relative paths that do not exist are looked up in $FINCAT_WORKSPACE.
  std::string resolve(std::string const& path) {
    namespace fs = std::filesystem;
    if (fs::exists(path) || fs::path(path).is_absolute()) {
      return path;
    }
    if (char const* dir = std::getenv("FINCAT_WORKSPACE")) {
      auto p = fs::path(dir) / path;
      if (fs::exists(p)) {
        return p.string();
      }
    }
    return path;
  }

  Workspace load(std::string const& path, Options const& o) {
    return parse(resolve(path), o.max_word_len);
  }

  Functor const& functor(Workspace const& ws, std::string const& name) {
    auto it = ws.functors.find(name);
    if (it == ws.functors.end()) {
      throw precondition_error("no functor named " + name);
    }
    return it->second.F;
  }

  NamedFibration const& fibration(Workspace const& ws, std::string const& name) {
    auto it = ws.fibrations.find(name);
    if (it == ws.fibrations.end()) {
      throw precondition_error("no fibration named " + name);
    }
    return it->second;
  }

  void print_json(json const& j) {
    std::cout << j.dump(2) << '\n';
  }

  int emit(Options const& o, std::string const& name, Cat const& C, json extra = {}) {
    if (o.json) {
      extra["category"] = to_json(C);
      print_json(extra);
    } else if (o.dot) {
      std::cout << emit_dot(name, C);
    } else {
      std::cout << emit_dsl(name, C);
    }
    return Ok;
  }

  int emit(Options const& o, std::string const& name, MarkedFibration const& mf,
           std::vector<int> const& W = {}, json extra = {}) {
    if (o.json) {
      extra["fibration"] = to_json(mf);
      print_json(extra);
    } else if (o.dot) {
      std::cout << emit_dot(name, mf);
    } else {
      std::cout << emit_dsl(name, mf, W);
    }
    return Ok;
  }

  int truncated(Options const& o, std::string const& what, json diagnostics) {
    if (o.json) {
      print_json(diagnostics);
    }
    std::cerr << "fincat: " << what << " truncated";
    if (diagnostics.contains("note")) {
      std::cerr << ": " << diagnostics["note"].get<std::string>();
    }
    std::cerr << '\n';
    return Bounded;
  }

  ////////////////////////////////////////////////////////////////////////
  // Verbs
  ////////////////////////////////////////////////////////////////////////

  int check(Options const& o, std::string const& path) {
    auto ws = load(path, o);
    if (o.json) {
      json j = json::object();
      for (auto const& [name, C] : ws.categories) {
        j["categories"][name] = to_json(C.cat);
      }
      for (auto const& [name, F] : ws.functors) {
        j["functors"][name] = {{"dom", F.dom}, {"cod", F.cod}, {"obj", F.F.obj}, {"arr", F.F.arr}};
      }
      for (auto const& [name, P] : ws.fibrations) {
        j["fibrations"][name] = to_json(P.mf);
        j["fibrations"][name]["invert"] = P.W;
      }
      print_json(j);
      return Ok;
    }
    if (o.dot) {
      for (auto const& e : ws.order) {
        if (e.kind == Workspace::Kind::Category) {
          std::cout << emit_dot(e.name, ws.categories.at(e.name).cat);
        } else if (e.kind == Workspace::Kind::Fibration) {
          std::cout << emit_dot(e.name, ws.fibrations.at(e.name).mf);
        }
      }
      return Ok;
    }
    for (auto const& e : ws.order) {
      switch (e.kind) {
        case Workspace::Kind::Category: {
          auto const& C = *ws.categories.at(e.name).cat;
          std::cout << "category " << e.name << ": " << C.num_objects() << " objects, " << C.num_arrows()
                    << " arrows\n";
          break;
        }
        case Workspace::Kind::Presentation: {
          auto const& P = ws.presentations.at(e.name);
          std::cout << "presentation " << e.name << ": " << P.objects.size() << " objects, "
                    << P.generators.size() << " generators, " << P.relations.size() << " relations\n";
          break;
        }
        case Workspace::Kind::Functor: {
          auto const& F = ws.functors.at(e.name);
          std::cout << "functor " << e.name << ": " << F.dom << " -> " << F.cod << '\n';
          break;
        }
        case Workspace::Kind::Fibration: {
          auto const& P = ws.fibrations.at(e.name);
          std::cout << "fibration " << e.name << ": " << P.mf.total()->num_objects() << " objects over "
                    << P.mf.base()->num_objects() << ", " << P.mf.cocartesian.size() << " cocartesian arrows";
          if (!P.W.empty()) {
            std::cout << ", inverts W: " << (inverts_W(P.mf, P.W) ? "yes" : "no");
          }
          std::cout << '\n';
          break;
        }
        case Workspace::Kind::Suite: {
          auto const& S = ws.suites.at(e.name);
          std::cout << "suite " << e.name << ": " << S.suites.size() << " suites, seed " << S.seed << '\n';
          break;
        }
      }
    }
    return Ok;
  }

  int construct(Options const& o, std::string const& what, std::string const& path,
                std::vector<std::string> const& args) {
    auto ws   = load(path, o);
    auto need = [&](std::size_t n) {
      if (args.size() < n) {
        throw precondition_error("construct " + what + " needs " + std::to_string(n) + " names");
      }
    };
    if (what == "comma") {
      need(2);
      return emit(o, o.name, comma(functor(ws, args[0]), functor(ws, args[1])).cat);
    }
    if (what == "pushout" || what == "cocomma" || what == "join") {
      need(2);
      auto const& f = functor(ws, args[0]);
      auto const& g = functor(ws, args[1]);
      SaturationResult sat;
      if (what == "pushout") {
        sat = pushout(f, g, o.max_word_len).sat;
      } else if (what == "cocomma") {
        sat = cocomma(f, g, o.max_word_len).sat;
      } else {
        auto D = directed_join(f, g, o.max_word_len);
        if (D.status != Status::Exact) {
          return truncated(o, what, {{"status", to_string(D.status)}, {"note", D.note}, {"growth", D.sat.growth}});
        }
        sat = D.sat;
      }
      if (!sat.exact()) {
        return truncated(o, what, to_json(sat));
      }
      return emit(o, o.name, sat.cat, {{"saturation", to_json(sat)}});
    }
    if (what == "localize") {
      need(1);
      auto const&      C = ws.category(args[0]);
      std::vector<int> W;
      for (std::size_t k = 1; k < args.size(); ++k) {
        int a = C.find_arrow(args[k]);
        if (a < 0) {
          throw precondition_error("unknown arrow " + args[k] + " of " + args[0]);
        }
        W.push_back(a);
      }
      auto L = localize(LocalisationSpec{C.cat, W}, o.max_word_len);
      if (!L.sat.exact()) {
        return truncated(o, what, to_json(L.sat));
      }
      return emit(o, o.name, L.sat.cat, {{"saturation", to_json(L.sat)}});
    }
    if (what == "complete") {
      need(2);
      auto T = univalent_completion(fibration(ws, args[0]).mf, fibration(ws, args[1]).mf, 6, o.max_word_len);
      if (!T.verified()) {
        return T.status == Status::Exact ? (print_json(to_json(T)), Failed) : truncated(o, what, to_json(T));
      }
      return emit(o, o.name, *T.universe, {}, {{"tower", to_json(T)}});
    }
    throw precondition_error("unknown construction " + what);
  }

  // The straightening as workspace text: fibres, actions and, when the
  // action is strict, the `over` block that unstraightens it again.
  std::string straightening_dsl(std::string const& name, Pseudofunctor const& F) {
    std::ostringstream o;
    auto const&        B    = *F.base;
    auto               base = name + "_base";
    o << emit_dsl(base, F.base);
    for (std::size_t c = 0; c < F.fibre.size(); ++c) {
      o << emit_dsl(name + "_fibre_" + B.object_label(static_cast<int>(c)), F.fibre[c]);
    }
    bool strict = true;
    for (std::size_t g = 0; g < B.num_arrows(); ++g) {
      for (int f : B.in(B.src(static_cast<int>(g)))) {
        int gf = B.compose(static_cast<int>(g), f);
        strict = strict && compose(F.action[g], F.action[f]) == F.action[gf]
                 && F.comparison.find({static_cast<int>(g), f}) == F.comparison.end();
      }
    }
    std::vector<int> gens;
    for (std::size_t g = 0; g < B.num_arrows(); ++g) {
      if (!B.is_identity(static_cast<int>(g))) {
        gens.push_back(static_cast<int>(g));
        auto const& a = F.action[g];
        o << emit_dsl(name + "_action_" + B.arrow_label(static_cast<int>(g)), a,
                      dsl_name(name + "_fibre_" + B.object_label(B.src(static_cast<int>(g)))),
                      dsl_name(name + "_fibre_" + B.object_label(B.tgt(static_cast<int>(g)))));
      }
    }
    if (!strict) {
      o << "# the action is pseudo: comparison cells are not expressible as an over block\n";
      return o.str();
    }
    o << "fibration " << dsl_name(name) << " over " << dsl_name(base) << " {\n";
    for (std::size_t c = 0; c < F.fibre.size(); ++c) {
      auto l = B.object_label(static_cast<int>(c));
      o << "  fibre " << dsl_name(l) << " = " << dsl_name(name + "_fibre_" + l) << '\n';
    }
    for (int g : gens) {
      o << "  action " << dsl_name(B.arrow_label(g)) << " = " << dsl_name(name + "_action_" + B.arrow_label(g))
        << '\n';
    }
    o << "}\n";
    return o.str();
  }

  int fib(Options const& o, std::string const& what, std::string const& path, std::string const& target) {
    auto ws = load(path, o);
    if (what == "mark") {
      auto V = is_cocartesian_fibration(functor(ws, target));
      if (!V.ok()) {
        auto const& p = functor(ws, target);
        std::cerr << "fincat: " << target << " is not a cocartesian fibration: no cocartesian lift of "
                  << p.cod->arrow_label(V.witness->second) << " at " << p.dom->object_label(V.witness->first)
                  << '\n';
        return Failed;
      }
      return emit(o, o.name, *V.fibration);
    }
    if (what == "conduche") {
      auto const& p = functor(ws, target);
      bool        c = is_conduche(p);
      bool        f = is_cocartesian_fibration(p).ok();
      if (o.json) {
        print_json({{"conduche", c}, {"cocartesian_fibration", f}});
      } else {
        std::cout << target << ": " << (c ? "" : "not ") << "Conduche, " << (f ? "" : "not ")
                  << "a cocartesian fibration\n";
      }
      return c ? Ok : Failed;
    }
    auto const& P = fibration(ws, target);
    if (what == "straighten") {
      auto F = straighten_finite(P.mf);
      if (o.json) {
        json fibres = json::array(), action = json::array();
        for (auto const& C : F.fibre) {
          fibres.push_back(to_json(C));
        }
        for (auto const& a : F.action) {
          action.push_back({{"obj", a.obj}, {"arr", a.arr}});
        }
        print_json({{"base", to_json(F.base)}, {"fibres", fibres}, {"action", action}});
      } else {
        std::cout << straightening_dsl(o.name, F);
      }
      return Ok;
    }
    if (what == "unstraighten") {
      // round trip through the straightening, so the total is in normal form
      return emit(o, o.name, unstraighten(straighten_finite(P.mf)), P.W);
    }
    if (what == "localize") {
      if (!inverts_W(P.mf, P.W)) {
        std::cerr << "fincat: " << target << " does not invert its W\n";
        return Failed;
      }
      auto L = localize_fibration(P.mf, P.W, o.max_word_len);
      if (L.status != Status::Exact) {
        return truncated(o, what, {{"status", to_string(L.status)}, {"note", L.note}});
      }
      if (!L.verified()) {
        std::cerr << "fincat: localisation of " << target << " is not verified"
                  << (L.witnesses.empty() ? "" : ": " + L.witnesses.front()) << '\n';
        return Failed;
      }
      return emit(o, o.name, *L.result, {}, {{"square_is_pullback", L.square_is_pullback}});
    }
    throw precondition_error("unknown fib verb " + what);
  }

  int verify(Options const& o, std::vector<std::string> names, bool list) {
    if (list) {
      for (auto const& s : suite_catalogue()) {
        std::cout << s.name;
        if (s.criterion) {
          std::cout << "  (criterion " << s.criterion << ")";
        }
        std::cout << "  " << s.summary << '\n';
      }
      return Ok;
    }
    if (names.empty() || (names.size() == 1 && names[0] == "all")) {
      names.clear();
      for (auto const& s : suite_catalogue()) {
        names.push_back(s.name);
      }
    }
    Bounds b{o.max_word_len, o.max_stages};
    json   reports = json::array();
    bool   failed = false, bounded = false;
    for (auto const& n : names) {
      auto r = run_suite(n, o.seed, b, o.threads);
      failed |= r.verdict() == Verdict::Fail;
      bounded |= r.verdict() == Verdict::Truncated;
      if (o.json) {
        reports.push_back(to_json(r));
      } else {
        std::cout << emit_text(r);
        std::cerr << n << ": " << r.wall_seconds << " s\n";
      }
    }
    if (o.json) {
      print_json(names.size() == 1 ? reports[0] : reports);
    }
    return failed ? Failed : bounded ? Bounded : Ok;
  }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite categories, fibrations and their localisations"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "Read flags from a TOML or INI file; command-line flags win");

  Options o;
  app.add_option("--max-word-len", o.max_word_len, "Saturation bound on word length")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--max-stages", o.max_stages, "Bound on tower and iteration stages")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--seed", o.seed, "Seed for suites and generators")->capture_default_str();
  app.add_option("--threads", o.threads, "Suite worker threads, 0 for one per core")->capture_default_str();
  app.add_option("--name", o.name, "Name of the emitted result")->capture_default_str();
  auto* json_flag = app.add_flag("--json", o.json, "Emit JSON");
  app.add_flag("--dot", o.dot, "Emit Graphviz DOT")->excludes(json_flag);

  std::string              file, what, target;
  std::vector<std::string> names;
  bool                     list = false;

  auto* check_cmd = app.add_subcommand("check", "Parse a workspace file and summarize its blocks");
  check_cmd->add_option("file", file, "Workspace file")->required();

  auto* construct_cmd = app.add_subcommand("construct", "Build a category from workspace entities");
  construct_cmd->add_option("construction", what, "comma, cocomma, pushout, localize, join or complete")
      ->required()
      ->check(CLI::IsMember({"comma", "cocomma", "pushout", "localize", "join", "complete"}));
  construct_cmd->add_option("file", file, "Workspace file")->required();
  construct_cmd->add_option("names", names, "Functor, category, arrow or fibration names");

  auto* fib_cmd = app.add_subcommand("fib", "Fibration operations");
  fib_cmd->add_option("operation", what, "mark, straighten, unstraighten, localize or conduche")
      ->required()
      ->check(CLI::IsMember({"mark", "straighten", "unstraighten", "localize", "conduche"}));
  fib_cmd->add_option("file", file, "Workspace file")->required();
  fib_cmd->add_option("name", target, "Functor (mark, conduche) or fibration")->required();

  auto* verify_cmd = app.add_subcommand("verify", "Run conformance suites");
  verify_cmd->add_option("suites", names, "Suite names, or all");
  verify_cmd->add_flag("--list", list, "List the registered suites");

  auto* generate_cmd = app.add_subcommand("generate", "Print a seeded instance as workspace text");
  GenerateParams gp;
  generate_cmd->add_option("kind", what, "fincat, opfibration or localisation-instance")
      ->required()
      ->check(CLI::IsMember({"fincat", "opfibration", "localisation-instance"}));
  generate_cmd->add_option("--max-objects", gp.max_objects)->capture_default_str();
  generate_cmd->add_option("--max-arrows", gp.max_arrows)->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*check_cmd) {
      return check(o, file);
    }
    if (*construct_cmd) {
      return construct(o, what, file, names);
    }
    if (*fib_cmd) {
      return fib(o, what, file, target);
    }
    if (*verify_cmd) {
      return verify(o, names, list);
    }
    if (*generate_cmd) {
      std::cout << generate(generate_kind(what), o.seed, gp);
      return Ok;
    }
  } catch (parse_error const& e) {
    std::cerr << e.what() << '\n';
    return BadInput;
  } catch (precondition_error const& e) {
    std::cerr << "fincat: " << e.what() << '\n';
    return BadInput;
  } catch (law_error const& e) {
    std::cerr << "fincat: " << e.what() << '\n';
    return Failed;
  } catch (size_error const& e) {
    std::cerr << "fincat: " << e.what() << '\n';
    return Bounded;
  } catch (std::exception const& e) {
    std::cerr << "fincat: " << e.what() << '\n';
    return BadInput;
  }
  return Ok;
}
