#include "fincat/workspace.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace fincat {

  parse_error::parse_error(std::string file, int line, int column, std::string const& message)
      : std::runtime_error(file + ":" + std::to_string(line) + ":" + std::to_string(column) + ": "
                           + message),
        _file(std::move(file)),
        _line(line),
        _column(column),
        _message(message) {}

  int NamedCat::find_arrow(std::string const& name) const {
    for (std::size_t g = 0; g < generators.size(); ++g) {
      if (generators[g] == name) {
        return gen_arrow[g];
      }
    }
    return cat->find_arrow(name);
  }

  NamedCat named(Cat const& C) {
    NamedCat N;
    N.cat = C;
    N.arrow_word.resize(C->num_arrows());
    for (std::size_t a = 0; a < C->num_arrows(); ++a) {
      if (C->is_identity(static_cast<int>(a))) {
        continue;
      }
      N.arrow_word[a] = {static_cast<int>(N.generators.size())};
      N.generators.push_back(C->arrow_label(static_cast<int>(a)));
      N.gen_arrow.push_back(static_cast<int>(a));
    }
    return N;
  }

  NamedCat const& Workspace::category(std::string const& name) const {
    auto it = categories.find(name);
    if (it == categories.end()) {
      throw precondition_error("no category named " + name);
    }
    return it->second;
  }

  std::optional<Cat> builtin_category(std::string const& name, std::optional<int> arg) {
    if (!arg) {
      if (name == "terminal") return terminal();
      if (name == "empty") return empty_cat();
      if (name == "interval") return interval();
      if (name == "walking_iso") return walking_iso();
      if (name == "walking_idempotent") return walking_idempotent();
      if (name == "section_retraction") return section_retraction();
      if (name == "parallel_pair") return parallel_pair();
      return std::nullopt;
    }
    if (*arg < 0) {
      return std::nullopt;
    }
    if (name == "discrete") return discrete(*arg);
    if (name == "poset") return poset_chain(*arg);
    if (name == "cyclic" && *arg > 0) return cyclic_group(*arg);
    return std::nullopt;
  }

  namespace {

    enum class Tok { Name, LBrace, RBrace, LParen, RParen, Semi, Comma, Colon, Equals, Dot, Arrow, Newline, End };

    struct Token {
      Tok         kind;
      std::string text;
      int         line = 0, column = 0;
      bool        quoted = false;
    };

    bool name_char(std::string const& s, std::size_t i) {
      unsigned char c = static_cast<unsigned char>(s[i]);
      if (c >= 0x80 || std::isalnum(c)) {
        return true;
      }
      if (c == '-') {
        return i + 1 >= s.size() || s[i + 1] != '>';
      }
      return std::string_view("_'<*|+^~!?@$%&").find(static_cast<char>(c)) != std::string_view::npos;
    }

    std::vector<Token> lex(std::string const& s, std::string const& file) {
      std::vector<Token> out;
      int                line = 1, col = 1;
      std::size_t        i = 0;
      auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n; ++k, ++i) {
          if (s[i] == '\n') {
            ++line;
            col = 1;
          } else if ((static_cast<unsigned char>(s[i]) & 0xC0) != 0x80) {
            ++col;  // count code points, not bytes
          }
        }
      };
      while (i < s.size()) {
        char c = s[i];
        Token t{Tok::End, {}, line, col};
        if (c == '#') {
          while (i < s.size() && s[i] != '\n') {
            advance(1);
          }
          continue;
        }
        if (c == '\n') {
          t.kind = Tok::Newline;
          out.push_back(t);
          advance(1);
          continue;
        }
        if (c == ' ' || c == '\t' || c == '\r') {
          advance(1);
          continue;
        }
        if (c == '"') {
          advance(1);
          t.kind   = Tok::Name;
          t.quoted = true;
          while (true) {
            if (i >= s.size() || s[i] == '\n') {
              throw parse_error(file, t.line, t.column, "unterminated quoted name");
            }
            if (s[i] == '"') {
              advance(1);
              break;
            }
            if (s[i] == '\\' && i + 1 < s.size()) {
              advance(1);
            }
            t.text += s[i];
            advance(1);
          }
          out.push_back(t);
          continue;
        }
        if (c == '-' && i + 1 < s.size() && s[i + 1] == '>') {
          t.kind = Tok::Arrow;
          out.push_back(t);
          advance(2);
          continue;
        }
        static std::string const punct = "{}();,:=.";
        if (auto p = punct.find(c); p != std::string::npos) {
          static Tok const kinds[] = {Tok::LBrace, Tok::RBrace, Tok::LParen, Tok::RParen, Tok::Semi,
                                      Tok::Comma,  Tok::Colon,  Tok::Equals, Tok::Dot};
          t.kind = kinds[p];
          t.text = std::string(1, c);
          out.push_back(t);
          advance(1);
          continue;
        }
        if (name_char(s, i)) {
          t.kind = Tok::Name;
          while (i < s.size() && name_char(s, i)) {
            t.text += s[i];
            advance(1);
          }
          out.push_back(t);
          continue;
        }
        throw parse_error(file, line, col, std::string("unexpected character '") + c + "'");
      }
      out.push_back(Token{Tok::End, {}, line, col});
      return out;
    }

    char const* describe(Tok k) {
      switch (k) {
        case Tok::Name: return "a name";
        case Tok::LBrace: return "'{'";
        case Tok::RBrace: return "'}'";
        case Tok::LParen: return "'('";
        case Tok::RParen: return "')'";
        case Tok::Semi: return "';'";
        case Tok::Comma: return "','";
        case Tok::Colon: return "':'";
        case Tok::Equals: return "'='";
        case Tok::Dot: return "'.'";
        case Tok::Arrow: return "'->'";
        case Tok::Newline: return "end of line";
        case Tok::End: return "end of input";
      }
      return "?";
    }

    // An applicative word: atoms[0] is applied last.
    struct Atom {
      Token tok;
      bool  identity = false;
    };

    class Parser {
     public:
      Parser(std::string const& text, ParseOptions const& opt)
          : _opt(opt), _toks(lex(text, opt.file)) {}

      Workspace run() {
        while (true) {
          skip_separators();
          if (peek().kind == Tok::End) {
            break;
          }
          Token kw = expect_name("a block keyword");
          if (kw.text == "category" || kw.text == "fincat") {
            category_block(false);
          } else if (kw.text == "presentation") {
            category_block(true);
          } else if (kw.text == "functor") {
            functor_block();
          } else if (kw.text == "fibration") {
            fibration_block();
          } else if (kw.text == "suite") {
            suite_block();
          } else {
            fail(kw, "unknown block '" + kw.text + "'");
          }
        }
        return std::move(_ws);
      }

     private:
      ParseOptions       _opt;
      std::vector<Token> _toks;
      std::size_t        _pos = 0;
      Workspace          _ws;
      std::set<std::string> _names;

      [[noreturn]] void fail(Token const& t, std::string const& msg) const {
        throw parse_error(_opt.file, t.line, t.column, msg);
      }

      Token const& peek(std::size_t k = 0) const {
        return _toks[std::min(_pos + k, _toks.size() - 1)];
      }
      Token next() {
        Token t = peek();
        if (_pos < _toks.size() - 1) {
          ++_pos;
        }
        return t;
      }
      bool accept(Tok k) {
        if (peek().kind == k) {
          next();
          return true;
        }
        return false;
      }
      Token expect(Tok k, std::string const& what = {}) {
        if (peek().kind != k) {
          fail(peek(), "expected " + (what.empty() ? std::string(describe(k)) : what) + ", found "
                           + found(peek()));
        }
        return next();
      }
      Token expect_name(std::string const& what) {
        return expect(Tok::Name, what);
      }
      static std::string found(Token const& t) {
        return t.kind == Tok::Name ? "'" + t.text + "'" : describe(t.kind);
      }
      void skip_newlines() {
        while (peek().kind == Tok::Newline) {
          next();
        }
      }
      void skip_separators() {
        while (peek().kind == Tok::Newline || peek().kind == Tok::Semi) {
          next();
        }
      }
      bool at_statement_end() const {
        auto k = peek().kind;
        return k == Tok::Semi || k == Tok::Newline || k == Tok::RBrace || k == Tok::End;
      }
      void end_statement() {
        if (!at_statement_end()) {
          fail(peek(), "expected end of statement, found " + found(peek()));
        }
      }
      // Separator inside a list: a comma, which may be followed by a line break.
      void list_separator() {
        if (accept(Tok::Comma)) {
          skip_newlines();
        }
      }
      int integer(Token const& t) {
        try {
          std::size_t used = 0;
          long        v    = std::stol(t.text, &used);
          if (used != t.text.size() || v < 0 || v > 1000000) {
            throw std::invalid_argument(t.text);
          }
          return static_cast<int>(v);
        } catch (std::exception const&) {
          fail(t, "expected a non-negative integer, found '" + t.text + "'");
        }
      }

      void declare(Token const& t, Workspace::Kind kind) {
        if (!_names.insert(t.text).second) {
          fail(t, "'" + t.text + "' is already defined");
        }
        _ws.order.push_back({kind, t.text});
      }

      // A category reference: a declared category or presentation, or a builtin.
      std::string category_ref() {
        Token t = expect_name("a category");
        std::optional<int> arg;
        if (!t.quoted && peek().kind == Tok::LParen) {
          next();
          arg = integer(expect_name("an integer"));
          expect(Tok::RParen);
        }
        std::string key = arg ? t.text + "(" + std::to_string(*arg) + ")" : t.text;
        if (!arg && _ws.categories.count(key)) {
          return key;
        }
        if (!arg) {
          if (auto it = _ws.presentations.find(key); it != _ws.presentations.end()) {
            auto sat = saturate(it->second, _opt.max_word_len);
            if (!sat.exact()) {
              fail(t, "presentation " + key + " does not saturate: " + sat.note);
            }
            _ws.categories.emplace(key, from_saturation(it->second, sat));
            return key;
          }
        }
        if (_ws.categories.count(key)) {
          return key;
        }
        if (auto C = builtin_category(t.text, arg)) {
          _ws.categories.emplace(key, named(*C));
          return key;
        }
        fail(t, "unresolved reference to category '" + key + "'");
      }

      static NamedCat from_saturation(Presentation const& P, SaturationResult const& sat) {
        NamedCat N;
        N.cat          = sat.cat;
        N.presentation = P;
        for (std::size_t g = 0; g < P.generators.size(); ++g) {
          N.generators.push_back(P.generators[g].label);
          N.gen_arrow.push_back(sat.arrow_of(P.single(static_cast<int>(g))));
        }
        for (auto const& w : sat.normal_forms) {
          N.arrow_word.push_back(w.gens);
        }
        return N;
      }

      int object_of(Presentation const& P, Token const& t) const {
        for (std::size_t x = 0; x < P.objects.size(); ++x) {
          if (P.objects[x] == t.text) {
            return static_cast<int>(x);
          }
        }
        fail(t, "unknown object '" + t.text + "'");
      }

      std::vector<Atom> word() {
        std::vector<Atom> atoms;
        do {
          Token t = expect_name("an arrow or id(object)");
          if (!t.quoted && t.text == "id" && peek().kind == Tok::LParen) {
            next();
            Token x = expect_name("an object");
            expect(Tok::RParen);
            atoms.push_back({x, true});
          } else {
            atoms.push_back({t, false});
          }
        } while (accept(Tok::Dot));
        return atoms;
      }

      Word presentation_word(Presentation const& P, std::vector<Atom> const& atoms) {
        Word w;
        int  at = -1;  // current target
        for (auto it = atoms.rbegin(); it != atoms.rend(); ++it) {
          int s, t, g = -1;
          if (it->identity) {
            s = t = object_of(P, it->tok);
          } else {
            for (std::size_t k = 0; k < P.generators.size(); ++k) {
              if (P.generators[k].label == it->tok.text) {
                g = static_cast<int>(k);
              }
            }
            if (g < 0) {
              fail(it->tok, "unknown arrow '" + it->tok.text + "'");
            }
            s = P.generators[g].src;
            t = P.generators[g].tgt;
          }
          if (at < 0) {
            w.src = s;
          } else if (at != s) {
            fail(it->tok, "word is not composable at '" + it->tok.text + "'");
          }
          if (g >= 0) {
            w.gens.push_back(g);
          }
          at = t;
        }
        return w;
      }

      // Arrow of a category named by an applicative word.
      int category_word(NamedCat const& N, std::vector<Atom> const& atoms) {
        auto const& C  = *N.cat;
        int         cur = -1;
        for (auto it = atoms.rbegin(); it != atoms.rend(); ++it) {
          int a;
          if (it->identity) {
            int x = C.find_object(it->tok.text);
            if (x < 0) {
              fail(it->tok, "unknown object '" + it->tok.text + "'");
            }
            a = C.id(x);
          } else {
            a = N.find_arrow(it->tok.text);
            if (a < 0) {
              fail(it->tok, "unknown arrow '" + it->tok.text + "'");
            }
          }
          if (cur >= 0) {
            if (C.tgt(cur) != C.src(a)) {
              fail(it->tok, "word is not composable at '" + it->tok.text + "'");
            }
            a = C.compose(a, cur);
          }
          cur = a;
        }
        return cur;
      }

      void category_block(bool presentation_only) {
        Token name = expect_name("a name");
        declare(name, presentation_only ? Workspace::Kind::Presentation : Workspace::Kind::Category);
        if (!presentation_only && accept(Tok::Equals)) {
          auto key = category_ref();
          _ws.categories[name.text] = _ws.categories.at(key);
          end_statement();
          return;
        }
        skip_newlines();
        expect(Tok::LBrace);
        Presentation P;
        while (true) {
          skip_separators();
          if (accept(Tok::RBrace)) {
            break;
          }
          Token kw = expect_name("objects, arrows or relations");
          if (kw.text == "objects") {
            while (!at_statement_end()) {
              Token o = expect_name("an object");
              if (std::find(P.objects.begin(), P.objects.end(), o.text) != P.objects.end()) {
                fail(o, "object '" + o.text + "' is declared twice");
              }
              P.add_object(o.text);
              list_separator();
            }
          } else if (kw.text == "arrows") {
            while (!at_statement_end()) {
              Token a = expect_name("an arrow");
              expect(Tok::Colon);
              int s = object_of(P, expect_name("an object"));
              expect(Tok::Arrow);
              int t = object_of(P, expect_name("an object"));
              for (auto const& g : P.generators) {
                if (g.label == a.text) {
                  fail(a, "arrow '" + a.text + "' is declared twice");
                }
              }
              P.add_generator(a.text, s, t);
              list_separator();
            }
          } else if (kw.text == "relations" || kw.text == "relation") {
            while (!at_statement_end()) {
              Token at  = peek();
              Word  lhs = presentation_word(P, word());
              expect(Tok::Equals);
              Word rhs = presentation_word(P, word());
              if (lhs.src != rhs.src || P.tgt(lhs) != P.tgt(rhs)) {
                fail(at, "relation sides are not parallel");
              }
              P.add_relation(lhs, rhs);
              list_separator();
            }
          } else {
            fail(kw, "expected objects, arrows or relations, found '" + kw.text + "'");
          }
          end_statement();
        }
        if (presentation_only) {
          _ws.presentations.emplace(name.text, std::move(P));
          return;
        }
        auto sat = saturate(P, _opt.max_word_len);
        if (!sat.exact()) {
          fail(name, "category " + name.text + " does not saturate: " + sat.note);
        }
        try {
          _ws.categories.insert_or_assign(name.text, from_saturation(P, sat));
        } catch (size_error const& e) {
          fail(name, e.what());
        }
      }

      void functor_block() {
        Token name = expect_name("a name");
        declare(name, Workspace::Kind::Functor);
        expect(Tok::Colon);
        auto dom = category_ref();
        expect(Tok::Arrow);
        auto cod = category_ref();
        skip_newlines();
        expect(Tok::LBrace);
        auto const& A = _ws.categories.at(dom);
        auto const& B = _ws.categories.at(cod);
        std::vector<int> obj(A.cat->num_objects(), -1);
        std::vector<int> gen(A.generators.size(), -1);
        while (true) {
          skip_separators();
          if (accept(Tok::RBrace)) {
            break;
          }
          Token kw = expect_name("obj or arr");
          if (kw.text == "obj" || kw.text == "objects") {
            while (!at_statement_end()) {
              Token x = expect_name("an object");
              int   xi = A.cat->find_object(x.text);
              if (xi < 0) {
                fail(x, "unknown object '" + x.text + "' of " + dom);
              }
              expect(Tok::Arrow);
              Token y  = expect_name("an object");
              int   yi = B.cat->find_object(y.text);
              if (yi < 0) {
                fail(y, "unknown object '" + y.text + "' of " + cod);
              }
              obj[xi] = yi;
              list_separator();
            }
          } else if (kw.text == "arr" || kw.text == "arrows") {
            while (!at_statement_end()) {
              Token g  = expect_name("a generator");
              auto  it = std::find(A.generators.begin(), A.generators.end(), g.text);
              if (it == A.generators.end()) {
                fail(g, "'" + g.text + "' is not a generator of " + dom);
              }
              expect(Tok::Arrow);
              gen[it - A.generators.begin()] = category_word(B, word());
              list_separator();
            }
          } else {
            fail(kw, "expected obj or arr, found '" + kw.text + "'");
          }
          end_statement();
        }
        for (std::size_t x = 0; x < obj.size(); ++x) {
          if (obj[x] < 0) {
            fail(name, "functor " + name.text + " leaves object '"
                           + A.cat->object_label(static_cast<int>(x)) + "' unmapped");
          }
        }
        for (std::size_t g = 0; g < gen.size(); ++g) {
          if (gen[g] < 0) {
            fail(name, "functor " + name.text + " leaves generator '" + A.generators[g] + "' unmapped");
          }
        }
        Functor F{A.cat, B.cat, obj, {}};
        for (std::size_t a = 0; a < A.cat->num_arrows(); ++a) {
          int cur = B.cat->id(obj[A.cat->src(static_cast<int>(a))]);
          for (int g : A.arrow_word[a]) {
            if (B.cat->tgt(cur) != B.cat->src(gen[g])) {
              fail(name, "functor " + name.text + " does not compose along '"
                             + A.cat->arrow_label(static_cast<int>(a)) + "'");
            }
            cur = B.cat->compose(gen[g], cur);
          }
          F.arr.push_back(cur);
        }
        if (auto v = check_functor(F)) {
          fail(name, "functor " + name.text + ": " + v->describe());
        }
        _ws.functors.emplace(name.text, NamedFunctor{F, dom, cod});
      }

      std::vector<int> arrow_list(NamedCat const& N) {
        std::vector<int> out;
        while (!at_statement_end()) {
          Token a  = expect_name("an arrow");
          int   ai = N.find_arrow(a.text);
          if (ai < 0) {
            fail(a, "unknown arrow '" + a.text + "'");
          }
          out.push_back(ai);
          list_separator();
        }
        return out;
      }

      void fibration_block() {
        Token name = expect_name("a name");
        declare(name, Workspace::Kind::Fibration);
        NamedFibration R;
        if (accept(Tok::Equals)) {
          Token f  = expect_name("a functor");
          auto  it = _ws.functors.find(f.text);
          if (it == _ws.functors.end()) {
            fail(f, "unresolved reference to functor '" + f.text + "'");
          }
          auto verdict = is_cocartesian_fibration(it->second.F);
          if (!verdict.ok()) {
            auto const& p = it->second.F;
            fail(f, f.text + " is not a cocartesian fibration: no cocartesian lift of "
                        + p.cod->arrow_label(verdict.witness->second) + " at "
                        + p.dom->object_label(verdict.witness->first));
          }
          R.mf         = *verdict.fibration;
          R.total      = it->second.dom;
          R.base       = it->second.cod;
          R.projection = f.text;
          if (peek().kind == Tok::LBrace || (peek().kind == Tok::Newline && peek(1).kind == Tok::LBrace)) {
            skip_newlines();
            next();
            auto const& E = _ws.categories.at(R.total);
            auto const& B = _ws.categories.at(R.base);
            while (true) {
              skip_separators();
              if (accept(Tok::RBrace)) {
                break;
              }
              Token kw = expect_name("marked or invert");
              if (kw.text == "marked") {
                // identities are always cocartesian and may be left out
                auto m = arrow_list(E);
                std::erase_if(m, [&](int a) { return E.cat->is_identity(a); });
                std::sort(m.begin(), m.end());
                m.erase(std::unique(m.begin(), m.end()), m.end());
                auto want = R.mf.cocartesian;
                std::erase_if(want, [&](int a) { return E.cat->is_identity(a); });
                if (m != want) {
                  fail(kw, "marked arrows of " + name.text + " are not its cocartesian arrows");
                }
              } else if (kw.text == "invert") {
                R.W = arrow_list(B);
              } else {
                fail(kw, "expected marked or invert, found '" + kw.text + "'");
              }
              end_statement();
            }
          }
        } else {
          Token over = expect_name("'over' or '='");
          if (over.text != "over") {
            fail(over, "expected 'over' or '=', found '" + over.text + "'");
          }
          R.base      = category_ref();
          auto const& B = _ws.categories.at(R.base);
          skip_newlines();
          expect(Tok::LBrace);
          std::vector<std::string> fibre(B.cat->num_objects());
          std::vector<std::optional<Functor>> gen(B.generators.size());
          R.actions.assign(B.generators.size(), {});
          while (true) {
            skip_separators();
            if (accept(Tok::RBrace)) {
              break;
            }
            Token kw = expect_name("fibre, action or invert");
            if (kw.text == "fibre") {
              Token b  = expect_name("an object");
              int   bi = B.cat->find_object(b.text);
              if (bi < 0) {
                fail(b, "unknown object '" + b.text + "' of " + R.base);
              }
              expect(Tok::Equals);
              fibre[bi] = category_ref();
            } else if (kw.text == "action") {
              Token g  = expect_name("a generator");
              auto  it = std::find(B.generators.begin(), B.generators.end(), g.text);
              if (it == B.generators.end()) {
                fail(g, "'" + g.text + "' is not a generator of " + R.base);
              }
              expect(Tok::Equals);
              Token f  = expect_name("a functor");
              auto  fi = _ws.functors.find(f.text);
              if (fi == _ws.functors.end()) {
                fail(f, "unresolved reference to functor '" + f.text + "'");
              }
              int gi  = static_cast<int>(it - B.generators.begin());
              int arr = B.gen_arrow[gi];
              auto const& s = fibre[B.cat->src(arr)];
              auto const& t = fibre[B.cat->tgt(arr)];
              if (s.empty() || t.empty() || fi->second.F.dom != _ws.categories.at(s).cat
                  || fi->second.F.cod != _ws.categories.at(t).cat) {
                fail(f, "functor " + f.text + " does not go between the fibres over the ends of "
                            + g.text);
              }
              gen[gi]       = fi->second.F;
              R.actions[gi] = f.text;
            } else if (kw.text == "invert") {
              R.W = arrow_list(B);
            } else {
              fail(kw, "expected fibre, action or invert, found '" + kw.text + "'");
            }
            end_statement();
          }
          std::vector<Cat> cats;
          for (std::size_t b = 0; b < fibre.size(); ++b) {
            if (fibre[b].empty()) {
              fail(name, "fibration " + name.text + " has no fibre over '"
                             + B.cat->object_label(static_cast<int>(b)) + "'");
            }
            cats.push_back(_ws.categories.at(fibre[b]).cat);
          }
          for (std::size_t g = 0; g < gen.size(); ++g) {
            if (!gen[g]) {
              fail(name, "fibration " + name.text + " has no action for '" + B.generators[g] + "'");
            }
          }
          auto const&          C = *B.cat;
          std::vector<Functor> action;
          for (std::size_t a = 0; a < C.num_arrows(); ++a) {
            Functor F = identity_functor(cats[C.src(static_cast<int>(a))]);
            for (int g : B.arrow_word[a]) {
              F = compose(*gen[g], F);
            }
            action.push_back(F);
          }
          for (std::size_t f = 0; f < C.num_arrows(); ++f) {
            for (int g : C.out(C.tgt(static_cast<int>(f)))) {
              if (!(action[C.compose(g, static_cast<int>(f))] == compose(action[g], action[f]))) {
                fail(name, "action of " + name.text + " is not functorial at " + C.arrow_label(g) + "."
                               + C.arrow_label(static_cast<int>(f)));
              }
            }
          }
          R.fibres = fibre;
          R.mf     = unstraighten(strict_pseudofunctor(B.cat, cats, action));
        }
        if (!R.W.empty() && !inverts_W(R.mf, R.W)) {
          fail(name, "fibration " + name.text + " does not invert the listed arrows");
        }
        end_statement();
        _ws.fibrations.emplace(name.text, std::move(R));
      }

      void suite_block() {
        Token name = expect_name("a name");
        declare(name, Workspace::Kind::Suite);
        skip_newlines();
        expect(Tok::LBrace);
        SuiteRequest S;
        while (true) {
          skip_separators();
          if (accept(Tok::RBrace)) {
            break;
          }
          Token kw = expect_name("run, seed, max-word-len or max-stages");
          if (kw.text == "run") {
            while (!at_statement_end()) {
              S.suites.push_back(expect_name("a suite").text);
              list_separator();
            }
          } else if (kw.text == "seed") {
            S.seed = static_cast<std::uint64_t>(integer(expect_name("an integer")));
          } else if (kw.text == "max-word-len") {
            S.max_word_len = integer(expect_name("an integer"));
          } else if (kw.text == "max-stages") {
            S.max_stages = integer(expect_name("an integer"));
          } else {
            fail(kw, "expected run, seed, max-word-len or max-stages, found '" + kw.text + "'");
          }
          end_statement();
        }
        _ws.suites.emplace(name.text, std::move(S));
      }
    };

  }  // namespace

  Workspace parse_workspace(std::string const& text, ParseOptions const& opt) {
    return Parser(text, opt).run();
  }

  Workspace parse(std::string const& path, int max_word_len) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
      throw parse_error(path, 0, 0, "cannot open file");
    }
    std::ostringstream s;
    s << in.rdbuf();
    return parse_workspace(s.str(), ParseOptions{path, max_word_len});
  }

}  // namespace fincat
