#include "fincat/io.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "fincat/generate.hpp"

namespace fincat {

  using nlohmann::json;

  namespace {
    bool plain_char(unsigned char c) {
      return c >= 0x80 || std::isalnum(c) || std::string_view("_'<*|+^~!?@$%&-").find(static_cast<char>(c))
                                                  != std::string_view::npos;
    }

    bool keyword(std::string const& s) {
      static std::set<std::string> const words{
          "category", "fincat", "presentation", "functor", "fibration", "suite",  "objects",
          "arrows",   "relations", "relation",  "obj",     "arr",       "marked", "invert",
          "fibre",    "action",  "over",        "run",     "seed",      "id",     "max-word-len",
          "max-stages"};
      return words.count(s) > 0;
    }

    std::string escaped(std::string const& s) {
      std::string out;
      for (char c : s) {
        if (c == '"' || c == '\\') {
          out += '\\';
        }
        out += c;
      }
      return out;
    }

    // An arrow of C as a word: its label, or id(x).
    std::string arrow_term(Cat const& C, int a) {
      if (C->is_identity(a)) {
        return "id(" + dsl_name(C->object_label(C->src(a))) + ")";
      }
      return dsl_name(C->arrow_label(a));
    }

    std::string word_term(Presentation const& P, Word const& w) {
      if (w.gens.empty()) {
        return "id(" + dsl_name(P.objects[w.src]) + ")";
      }
      std::string out;
      for (auto it = w.gens.rbegin(); it != w.gens.rend(); ++it) {
        out += (out.empty() ? "" : ".") + dsl_name(P.generators[*it].label);
      }
      return out;
    }

    std::string presentation_dsl(std::string const& name, Presentation const& P) {
      std::ostringstream o;
      o << "presentation " << dsl_name(name) << " {\n  objects";
      for (auto const& x : P.objects) {
        o << ' ' << dsl_name(x);
      }
      o << '\n';
      for (auto const& g : P.generators) {
        o << "  arrows " << dsl_name(g.label) << ": " << dsl_name(P.objects[g.src]) << " -> "
          << dsl_name(P.objects[g.tgt]) << '\n';
      }
      for (auto const& r : P.relations) {
        o << "  relations " << word_term(P, r.lhs) << " = " << word_term(P, r.rhs) << '\n';
      }
      o << "}\n";
      return o.str();
    }

    std::string dot_id(std::string const& s) {
      return "\"" + escaped(s) + "\"";
    }
  }  // namespace

  std::string dsl_name(std::string const& s) {
    bool plain = !s.empty() && !keyword(s) && s.back() != '-';
    for (std::size_t i = 0; plain && i < s.size(); ++i) {
      plain = plain_char(static_cast<unsigned char>(s[i]))
              && !(s[i] == '-' && i + 1 < s.size() && s[i + 1] == '>');
    }
    return plain ? s : "\"" + escaped(s) + "\"";
  }

  std::string emit_dsl(std::string const& name, Cat const& C) {
    std::ostringstream o;
    o << "category " << dsl_name(name) << " {\n  objects";
    for (std::size_t x = 0; x < C->num_objects(); ++x) {
      o << ' ' << dsl_name(C->object_label(static_cast<int>(x)));
    }
    o << '\n';
    for (std::size_t a = 0; a < C->num_arrows(); ++a) {
      if (!C->is_identity(static_cast<int>(a))) {
        o << "  arrows " << dsl_name(C->arrow_label(static_cast<int>(a))) << ": "
          << dsl_name(C->object_label(C->src(static_cast<int>(a)))) << " -> "
          << dsl_name(C->object_label(C->tgt(static_cast<int>(a)))) << '\n';
      }
    }
    for (std::size_t f = 0; f < C->num_arrows(); ++f) {
      if (C->is_identity(static_cast<int>(f))) {
        continue;
      }
      for (int g : C->out(C->tgt(static_cast<int>(f)))) {
        if (!C->is_identity(g)) {
          o << "  relations " << dsl_name(C->arrow_label(g)) << "."
            << dsl_name(C->arrow_label(static_cast<int>(f))) << " = "
            << arrow_term(C, C->compose(g, static_cast<int>(f))) << '\n';
        }
      }
    }
    o << "}\n";
    return o.str();
  }

  std::string emit_dsl(std::string const& name, Functor const& F, std::string const& dom,
                       std::string const& cod) {
    std::ostringstream o;
    o << "functor " << dsl_name(name) << " : " << dom << " -> " << cod << " {\n";
    for (std::size_t x = 0; x < F.obj.size(); ++x) {
      o << "  obj " << dsl_name(F.dom->object_label(static_cast<int>(x))) << " -> "
        << dsl_name(F.cod->object_label(F.obj[x])) << '\n';
    }
    for (std::size_t a = 0; a < F.arr.size(); ++a) {
      if (!F.dom->is_identity(static_cast<int>(a))) {
        o << "  arr " << dsl_name(F.dom->arrow_label(static_cast<int>(a))) << " -> "
          << arrow_term(F.cod, F.arr[a]) << '\n';
      }
    }
    o << "}\n";
    return o.str();
  }

  std::string emit_dsl(std::string const& name, MarkedFibration const& mf, std::vector<int> const& W) {
    std::string total = name + "_total", base = name + "_base", proj = name + "_p";
    std::ostringstream o;
    o << emit_dsl(total, mf.total()) << emit_dsl(base, mf.base())
      << emit_dsl(proj, mf.p, dsl_name(total), dsl_name(base));
    o << "fibration " << dsl_name(name) << " = " << dsl_name(proj) << " {\n  marked";
    for (int a : mf.cocartesian) {
      if (!mf.total()->is_identity(a)) {
        o << ' ' << dsl_name(mf.total()->arrow_label(a));
      }
    }
    o << '\n';
    if (!W.empty()) {
      o << "  invert";
      for (int w : W) {
        o << ' ' << dsl_name(mf.base()->arrow_label(w));
      }
      o << '\n';
    }
    o << "}\n";
    return o.str();
  }

  std::string emit_dsl(Workspace const& ws) {
    std::set<std::string> declared;
    for (auto const& e : ws.order) {
      declared.insert(e.name);
    }
    // builtin references such as poset(2) stay unquoted
    auto ref = [&](std::string const& key) { return declared.count(key) ? dsl_name(key) : key; };
    std::ostringstream o;
    bool               first = true;
    for (auto const& e : ws.order) {
      o << (first ? "" : "\n");
      first = false;
      switch (e.kind) {
        case Workspace::Kind::Category:
          o << emit_dsl(e.name, ws.categories.at(e.name).cat);
          break;
        case Workspace::Kind::Presentation:
          o << presentation_dsl(e.name, ws.presentations.at(e.name));
          break;
        case Workspace::Kind::Functor: {
          auto const& F = ws.functors.at(e.name);
          o << emit_dsl(e.name, F.F, ref(F.dom), ref(F.cod));
          break;
        }
        case Workspace::Kind::Fibration: {
          auto const& P = ws.fibrations.at(e.name);
          auto const& B = *P.mf.base();
          if (!P.projection.empty()) {
            o << "fibration " << dsl_name(e.name) << " = " << dsl_name(P.projection) << " {\n  marked";
            for (int a : P.mf.cocartesian) {
              if (!P.mf.total()->is_identity(a)) {
                o << ' ' << dsl_name(P.mf.total()->arrow_label(a));
              }
            }
            o << '\n';
          } else {
            auto const& N = ws.categories.at(P.base);
            o << "fibration " << dsl_name(e.name) << " over " << ref(P.base) << " {\n";
            for (std::size_t b = 0; b < P.fibres.size(); ++b) {
              o << "  fibre " << dsl_name(B.object_label(static_cast<int>(b))) << " = "
                << ref(P.fibres[b]) << '\n';
            }
            for (std::size_t g = 0; g < P.actions.size(); ++g) {
              o << "  action " << dsl_name(N.generators[g]) << " = " << dsl_name(P.actions[g]) << '\n';
            }
          }
          if (!P.W.empty()) {
            o << "  invert";
            for (int w : P.W) {
              o << ' ' << dsl_name(B.arrow_label(w));
            }
            o << '\n';
          }
          o << "}\n";
          break;
        }
        case Workspace::Kind::Suite: {
          auto const& S = ws.suites.at(e.name);
          o << "suite " << dsl_name(e.name) << " {\n  run";
          for (auto const& s : S.suites) {
            o << ' ' << dsl_name(s);
          }
          o << "\n  seed " << S.seed << "\n  max-word-len " << S.max_word_len << "\n  max-stages "
            << S.max_stages << "\n}\n";
          break;
        }
      }
    }
    return o.str();
  }

  std::string canonical_form(Cat const& C) {
    auto term = [&](int a) {
      return C->is_identity(a) ? "id(" + C->object_label(C->src(a)) + ")" : C->arrow_label(a);
    };
    std::vector<std::string> objects, arrows, table;
    for (std::size_t x = 0; x < C->num_objects(); ++x) {
      objects.push_back("object " + C->object_label(static_cast<int>(x)));
    }
    for (std::size_t a = 0; a < C->num_arrows(); ++a) {
      int ai = static_cast<int>(a);
      arrows.push_back("arrow " + term(ai) + " : " + C->object_label(C->src(ai)) + " -> "
                       + C->object_label(C->tgt(ai)));
      for (int g : C->out(C->tgt(ai))) {
        table.push_back("compose " + term(g) + " . " + term(ai) + " = " + term(C->compose(g, ai)));
      }
    }
    std::string out;
    for (auto* v : {&objects, &arrows, &table}) {
      std::sort(v->begin(), v->end());
      for (auto const& s : *v) {
        out += s + '\n';
      }
    }
    return out;
  }

  ////////////////////////////////////////////////////////////////////////
  // JSON
  ////////////////////////////////////////////////////////////////////////

  json to_json(Cat const& C) {
    json objects = json::array(), arrows = json::array(), table = json::array();
    for (std::size_t x = 0; x < C->num_objects(); ++x) {
      objects.push_back(C->object_label(static_cast<int>(x)));
    }
    for (std::size_t a = 0; a < C->num_arrows(); ++a) {
      int ai = static_cast<int>(a);
      arrows.push_back({{"label", C->arrow_label(ai)},
                        {"src", C->src(ai)},
                        {"tgt", C->tgt(ai)},
                        {"identity", C->is_identity(ai)}});
      for (int g : C->out(C->tgt(ai))) {
        table.push_back({g, ai, C->compose(g, ai)});
      }
    }
    return {{"objects", objects}, {"arrows", arrows}, {"compose", table}};
  }

  json to_json(Functor const& F) {
    return {{"dom", to_json(F.dom)}, {"cod", to_json(F.cod)}, {"obj", F.obj}, {"arr", F.arr}};
  }

  json to_json(MarkedFibration const& mf) {
    return {{"total", to_json(mf.total())},
            {"base", to_json(mf.base())},
            {"projection", {{"obj", mf.p.obj}, {"arr", mf.p.arr}}},
            {"marked", mf.cocartesian}};
  }

  json to_json(SaturationResult const& R) {
    json j{{"status", to_string(R.status)},
           {"bound", R.bound},
           {"confluent", R.confluent},
           {"growth", R.growth}};
    if (!R.note.empty()) {
      j["note"] = R.note;
    }
    if (R.exact()) {
      j["objects"] = R.cat->num_objects();
      j["arrows"]  = R.cat->num_arrows();
    }
    return j;
  }

  json to_json(JoinTower const& T) {
    json stages = json::array();
    for (auto const& s : T.stages) {
      stages.push_back({{"n", s.n},
                        {"objects", s.X->num_objects()},
                        {"arrows", s.X->num_arrows()},
                        {"link_is_equivalence", s.link_is_equivalence}});
    }
    json j{{"status", to_string(T.status)},
           {"stable_stage", T.stable_stage},
           {"fully_faithful", T.fully_faithful},
           {"image_matches", T.image_matches},
           {"verified", T.verified()},
           {"stages", stages}};
    if (!T.note.empty()) {
      j["note"] = T.note;
    }
    return j;
  }

  json to_json(UniverseTower const& T) {
    json stages = json::array();
    for (auto const& s : T.stages) {
      stages.push_back({{"n", s.n},
                        {"base_objects", s.q.base()->num_objects()},
                        {"base_arrows", s.q.base()->num_arrows()},
                        {"total_objects", s.q.total()->num_objects()},
                        {"total_arrows", s.q.total()->num_arrows()},
                        {"link_is_equivalence", s.link_is_equivalence},
                        {"recovers_previous", s.recovers_previous}});
    }
    json j{{"status", to_string(T.status)},
           {"stable_stage", T.stable_stage},
           {"univalent", T.univalent},
           {"classifies_same", T.classifies_same},
           {"verified", T.verified()},
           {"stages", stages}};
    if (!T.note.empty()) {
      j["note"] = T.note;
    }
    if (T.universe) {
      j["universe"] = to_json(*T.universe);
    }
    return j;
  }

  Cat cat_from_json(json const& j) {
    try {
      RawCat raw;
      for (auto const& o : j.at("objects")) {
        raw.add_object(o.get<std::string>());
      }
      raw.identities.assign(raw.objects.size(), -1);
      for (auto const& a : j.at("arrows")) {
        int src = a.at("src").get<int>(), tgt = a.at("tgt").get<int>();
        if (src < 0 || tgt < 0 || src >= static_cast<int>(raw.objects.size())
            || tgt >= static_cast<int>(raw.objects.size())) {
          throw precondition_error("arrow endpoint out of range");
        }
        int i = raw.add_arrow(a.at("label").get<std::string>(), src, tgt);
        if (a.value("identity", false)) {
          if (src != tgt) {
            throw precondition_error("identity " + raw.arrows[i].label + " is not an endomorphism");
          }
          raw.identities[src] = i;
        }
      }
      raw.resize_table();
      int n = static_cast<int>(raw.arrows.size());
      for (auto const& c : j.at("compose")) {
        int g = c.at(0).get<int>(), f = c.at(1).get<int>(), gf = c.at(2).get<int>();
        if (g < 0 || f < 0 || gf < 0 || g >= n || f >= n || gf >= n) {
          throw precondition_error("composition entry out of range");
        }
        raw.set_compose(g, f, gf);
      }
      return make_cat(raw);
    } catch (json::exception const& e) {
      throw precondition_error(std::string("malformed category JSON: ") + e.what());
    }
  }

  std::string emit_json(Cat const& C) {
    return to_json(C).dump(2) + '\n';
  }
  std::string emit_json(Functor const& F) {
    return to_json(F).dump(2) + '\n';
  }
  std::string emit_json(MarkedFibration const& mf) {
    return to_json(mf).dump(2) + '\n';
  }

  ////////////////////////////////////////////////////////////////////////
  // DOT
  ////////////////////////////////////////////////////////////////////////

  std::string emit_dot(std::string const& name, Cat const& C) {
    std::ostringstream o;
    o << "digraph " << dot_id(name) << " {\n";
    for (std::size_t x = 0; x < C->num_objects(); ++x) {
      o << "  " << dot_id(C->object_label(static_cast<int>(x))) << ";\n";
    }
    for (std::size_t a = 0; a < C->num_arrows(); ++a) {
      int ai = static_cast<int>(a);
      if (!C->is_identity(ai)) {
        o << "  " << dot_id(C->object_label(C->src(ai))) << " -> " << dot_id(C->object_label(C->tgt(ai)))
          << " [label=" << dot_id(C->arrow_label(ai)) << "];\n";
      }
    }
    o << "}\n";
    return o.str();
  }

  std::string emit_dot(std::string const& name, MarkedFibration const& mf) {
    auto const&        E = *mf.total();
    auto const&        B = *mf.base();
    std::ostringstream o;
    o << "digraph " << dot_id(name) << " {\n  compound=true;\n";
    for (std::size_t b = 0; b < B.num_objects(); ++b) {
      o << "  subgraph " << dot_id("cluster_" + std::to_string(b)) << " {\n    label="
        << dot_id(B.object_label(static_cast<int>(b))) << ";\n";
      for (int e : mf.fibres.fibre[b].objects) {
        o << "    " << dot_id(E.object_label(e)) << ";\n";
      }
      o << "  }\n";
    }
    for (std::size_t a = 0; a < E.num_arrows(); ++a) {
      int ai = static_cast<int>(a);
      if (E.is_identity(ai)) {
        continue;
      }
      o << "  " << dot_id(E.object_label(E.src(ai))) << " -> " << dot_id(E.object_label(E.tgt(ai)))
        << " [label=" << dot_id(E.arrow_label(ai)) << (mf.marked[a] ? ", style=bold" : "") << "];\n";
    }
    o << "}\n";
    return o.str();
  }

  ////////////////////////////////////////////////////////////////////////
  // Generation
  ////////////////////////////////////////////////////////////////////////

  GenerateKind generate_kind(std::string const& name) {
    if (name == "fincat") return GenerateKind::FinCat;
    if (name == "opfibration") return GenerateKind::Opfibration;
    if (name == "localisation-instance") return GenerateKind::LocalisationInstance;
    throw precondition_error("unknown generator kind " + name);
  }

  std::string generate(GenerateKind kind, std::uint64_t seed, GenerateParams const& p) {
    if (kind == GenerateKind::FinCat) {
      return emit_dsl("G", random_fincat(seed, FinCatParams{p.max_objects, 3, 4, p.max_arrows}));
    }
    OpfibrationParams op;
    op.base              = FinCatParams{p.max_objects, 2, 3, p.max_arrows};
    op.max_fibre_objects = p.max_fibre_objects;
    op.max_fibre_arrows  = p.max_fibre_arrows;
    op.invertible_arrows = kind == GenerateKind::LocalisationInstance ? 1 : 0;
    auto G               = random_opfibration(seed, op);
    return emit_dsl("P", G.fibration, kind == GenerateKind::LocalisationInstance ? G.W : std::vector<int>{});
  }

}  // namespace fincat
