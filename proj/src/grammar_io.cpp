#include "stag/grammar_io.hpp"

#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include "stag/errors.hpp"

namespace stag {
namespace {

enum class Tok { word, string, lparen, rparen, lbrace, rbrace, semi, end };

struct Token {
  Tok kind;
  std::string text;
  std::size_t line;
  std::size_t col;
};

bool is_delim(char c) {
  return c == '(' || c == ')' || c == '{' || c == '}' || c == ';' || c == '"' || c == '%' ||
         static_cast<unsigned char>(c) <= ' ';
}

class Lexer {
 public:
  explicit Lexer(std::string_view text) : s_(text) {}

  Token next() {
    skip();
    Token t{Tok::end, {}, line_, col_};
    if (i_ >= s_.size()) return t;
    char c = s_[i_];
    switch (c) {
      case '(': t.kind = Tok::lparen; break;
      case ')': t.kind = Tok::rparen; break;
      case '{': t.kind = Tok::lbrace; break;
      case '}': t.kind = Tok::rbrace; break;
      case ';': t.kind = Tok::semi; break;
      case '"': t.kind = Tok::string; t.text = quoted(); return t;
      default: t.kind = Tok::word; t.text = word(); return t;
    }
    advance();
    return t;
  }

 private:
  void advance() {
    if (s_[i_] == '\n') {
      ++line_;
      col_ = 1;
    } else if ((static_cast<unsigned char>(s_[i_]) & 0xC0) != 0x80) {
      ++col_;
    }
    ++i_;
  }

  void skip() {
    while (i_ < s_.size()) {
      if (s_[i_] == '%') {
        while (i_ < s_.size() && s_[i_] != '\n') advance();
      } else if (static_cast<unsigned char>(s_[i_]) <= ' ') {
        advance();
      } else {
        break;
      }
    }
  }

  std::string quoted() {
    std::size_t line = line_, col = col_;
    advance();
    std::string out;
    while (true) {
      if (i_ >= s_.size() || s_[i_] == '\n') throw LoadError("unterminated string", line, col);
      char c = s_[i_];
      if (c == '"') {
        advance();
        return out;
      }
      if (c == '\\') {
        advance();
        if (i_ >= s_.size()) throw LoadError("unterminated string", line, col);
        c = s_[i_];
        if (c == 'n') c = '\n';
        else if (c == 't') c = '\t';
      }
      out += c;
      advance();
    }
  }

  // A word runs to the next delimiter; the argument list of :SA(...) is part
  // of the word.
  std::string word() {
    std::string out;
    while (i_ < s_.size() && !is_delim(s_[i_])) {
      out += s_[i_];
      advance();
      if (out.ends_with(":SA") && i_ < s_.size() && s_[i_] == '(') {
        while (i_ < s_.size() && s_[i_] != ')' && s_[i_] != '\n') {
          out += s_[i_];
          advance();
        }
        if (i_ < s_.size() && s_[i_] == ')') {
          out += ')';
          advance();
        }
      }
    }
    return out;
  }

  std::string_view s_;
  std::size_t i_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

struct Mark {
  unsigned index;
  Address addr;
  std::optional<Side> side;
  std::size_t line;
  std::size_t col;
};

struct ParsedTree {
  Tree tree;
  AuxClass cls = AuxClass::predicative;
  std::vector<Mark> marks;
  std::set<std::string> sa_names;
  std::size_t line;
  std::size_t col;
};

const std::string kDown = "\xE2\x86\x93";  // ↓

class Reader {
 public:
  explicit Reader(std::string_view text) : lex_(text) { tok_ = lex_.next(); }

  GrammarDocument run() {
    GrammarDocument doc;
    struct Pending {
      Token at;
      std::string name;
      ParsedTree left;
      ParsedTree right;
      bool is_set;
    };
    std::vector<Pending> pairs;
    std::vector<std::pair<Token, ParsedTree>> trees;

    while (tok_.kind != Tok::end) {
      Token kw = expect_word("a declaration");
      if (kw.text == "grammar") {
        doc.options.name = expect_value("grammar name");
        expect(Tok::semi, "';'");
      } else if (kw.text == "option") {
        Token key = expect_word("an option name");
        std::string value = expect_value("an option value");
        if (key.text == "left-sep") doc.options.left_separator = value;
        else if (key.text == "right-sep") doc.options.right_separator = value;
        else if (key.text == "sep") doc.separator = value;
        else if (key.text == "default-side") {
          if (value == "^") doc.options.default_side = Side::top;
          else if (value == "v") doc.options.default_side = Side::bottom;
          else throw LoadError("default-side must be ^ or v", key.line, key.col);
        } else {
          throw LoadError("unknown option '" + key.text + "'", key.line, key.col);
        }
        expect(Tok::semi, "';'");
      } else if (kw.text == "start") {
        std::vector<std::string> syms;
        while (tok_.kind == Tok::word) syms.push_back(take().text);
        if (syms.empty() || syms.size() > 2)
          throw LoadError("start takes one or two symbols", kw.line, kw.col);
        doc.options.left_start = syms.front();
        doc.options.right_start = syms.back();
        expect(Tok::semi, "';'");
      } else if (kw.text == "pair" || kw.text == "set") {
        Pending p{kw, expect_value("a pair name"), {}, {}, kw.text == "set"};
        expect(Tok::lbrace, "'{'");
        expect_keyword("left");
        p.left = tree();
        expect_keyword("right");
        p.right = tree();
        expect(Tok::rbrace, "'}'");
        if (tok_.kind == Tok::semi) take();
        pairs.push_back(std::move(p));
      } else if (kw.text == "tree") {
        std::string name = expect_value("a tree name");
        ParsedTree t = tree();
        expect(Tok::semi, "';'");
        Token at = kw;
        at.text = name;
        trees.emplace_back(at, std::move(t));
      } else {
        throw LoadError("unexpected '" + kw.text + "'", kw.line, kw.col);
      }
    }

    std::set<std::string> pair_names, plain_names;
    for (const auto& p : pairs)
      if (!pair_names.insert(p.name).second)
        throw LoadError("duplicate pair name '" + p.name + "'", p.at.line, p.at.col);
    for (const auto& [at, t] : trees)
      if (!plain_names.insert(at.text).second)
        throw LoadError("duplicate tree name '" + at.text + "'", at.line, at.col);

    auto check_sa = [&](const ParsedTree& t, const std::set<std::string>& known) {
      for (const auto& n : t.sa_names)
        if (!known.contains(n)) throw LoadError("SA names unknown tree '" + n + "'", t.line, t.col);
    };

    for (auto& p : pairs) {
      check_sa(p.left, pair_names);
      check_sa(p.right, pair_names);
      if (p.is_set && (!p.left.marks.empty() || !p.right.marks.empty()))
        throw LoadError("tree sets carry no links", p.at.line, p.at.col);
      std::map<unsigned, const Mark*> lm, rm;
      for (const auto& m : p.left.marks)
        if (!lm.emplace(m.index, &m).second)
          throw LoadError("diacritic #" + std::to_string(m.index) + " repeated", m.line, m.col);
      for (const auto& m : p.right.marks)
        if (!rm.emplace(m.index, &m).second)
          throw LoadError("diacritic #" + std::to_string(m.index) + " repeated", m.line, m.col);
      std::vector<Link> links;
      for (const auto& [k, m] : lm) {
        auto it = rm.find(k);
        if (it == rm.end())
          throw LoadError("dangling diacritic #" + std::to_string(k), m->line, m->col);
        const Mark* r = it->second;
        links.push_back({m->addr, m->side.value_or(doc.options.default_side), r->addr,
                         r->side.value_or(doc.options.default_side)});
      }
      for (const auto& [k, m] : rm)
        if (!lm.contains(k))
          throw LoadError("dangling diacritic #" + std::to_string(k), m->line, m->col);
      try {
        doc.pairs.push_back(TreePair::make(p.name, std::move(p.left.tree), std::move(p.right.tree),
                                           std::move(links), p.left.cls, p.right.cls));
      } catch (const GrammarError& e) {
        throw LoadError(e.what(), p.at.line, p.at.col);
      }
    }
    for (auto& [at, t] : trees) {
      check_sa(t, plain_names);
      if (!t.marks.empty()) throw LoadError("plain trees carry no links", at.line, at.col);
      try {
        doc.trees.push_back(ElementaryTree::make(at.text, std::move(t.tree), t.cls));
      } catch (const GrammarError& e) {
        throw LoadError(e.what(), at.line, at.col);
      }
    }
    return doc;
  }

 private:
  Token take() {
    Token t = tok_;
    tok_ = lex_.next();
    return t;
  }

  [[noreturn]] void fail(const std::string& what) {
    throw LoadError("expected " + what, tok_.line, tok_.col);
  }

  Token expect(Tok kind, const std::string& what) {
    if (tok_.kind != kind) fail(what);
    return take();
  }

  Token expect_word(const std::string& what) { return expect(Tok::word, what); }

  std::string expect_value(const std::string& what) {
    if (tok_.kind != Tok::word && tok_.kind != Tok::string) fail(what);
    return take().text;
  }

  void expect_keyword(const std::string& kw) {
    if (tok_.kind != Tok::word || tok_.text != kw) fail("'" + kw + "'");
    take();
  }

  ParsedTree tree() {
    ParsedTree t;
    t.line = tok_.line;
    t.col = tok_.col;
    t.tree.root = node(Address{}, t, true);
    if (!t.tree.foot_address()) t.cls = AuxClass::predicative;
    return t;
  }

  Node node(const Address& addr, ParsedTree& t, bool is_root) {
    if (tok_.kind == Tok::string) return Node{Label::terminal(take().text), {}, false, false, false, {}};
    if (tok_.kind == Tok::word) {
      Token w = take();
      if (w.text == "<eps>") return Node{Label::epsilon(), {}, false, false, false, {}};
      Node n = head(w, addr, t, is_root);
      if (n.substitution || n.foot) return n;
      if (w.text.find_first_of("!*:#") != std::string::npos || w.text.find(kDown) != std::string::npos)
        throw LoadError("markers need a bracketed node", w.line, w.col);
      return Node{Label::terminal(w.text), {}, false, false, false, {}};
    }
    expect(Tok::lparen, "a node");
    if (tok_.kind != Tok::word) fail("a node label");
    Token w = take();
    Node n = head(w, addr, t, is_root);
    for (std::uint32_t i = 1; tok_.kind != Tok::rparen; ++i) {
      if (tok_.kind == Tok::end) fail("')'");
      n.children.push_back(node(addr.child(i), t, false));
    }
    take();
    return n;
  }

  // Parses "Label" followed by markers.
  Node head(const Token& w, const Address& addr, ParsedTree& t, bool is_root) {
    const std::string& s = w.text;
    std::size_t cut = s.size();
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (s[i] == '!' || s[i] == '*' || s[i] == ':' || s[i] == '#' || s.compare(i, kDown.size(), kDown) == 0) {
        cut = i;
        break;
      }
    }
    if (cut == 0) throw LoadError("missing node label", w.line, w.col);
    Node n{Label::nonterminal(s.substr(0, cut)), {}, false, false, false, {}};
    bool constraint_set = false;
    bool obligatory = false;
    Constraint c;
    std::size_t i = cut;
    auto bad = [&](const std::string& what) { throw LoadError(what + " in '" + s + "'", w.line, w.col); };
    while (i < s.size()) {
      if (s.compare(i, kDown.size(), kDown) == 0) {
        n.substitution = true;
        i += kDown.size();
      } else if (s[i] == '!') {
        n.substitution = true;
        ++i;
      } else if (s[i] == '*') {
        n.foot = true;
        ++i;
      } else if (s[i] == ':') {
        std::size_t j = i + 1;
        while (j < s.size() && std::isalpha(static_cast<unsigned char>(s[j]))) ++j;
        std::string m = s.substr(i + 1, j - i - 1);
        if (m == "NA") {
          c = Constraint::none();
          constraint_set = true;
        } else if (m == "any") {
          c = Constraint::any();
          constraint_set = true;
        } else if (m == "OA") {
          obligatory = true;
        } else if (m == "SA") {
          if (j >= s.size() || s[j] != '(') bad("SA needs a name list");
          std::size_t close = s.find(')', j);
          if (close == std::string::npos) bad("unclosed SA list");
          std::set<std::string> names;
          std::stringstream list(s.substr(j + 1, close - j - 1));
          for (std::string name; std::getline(list, name, ',');) {
            auto b = name.find_first_not_of(' ');
            auto e = name.find_last_not_of(' ');
            if (b == std::string::npos) continue;
            names.insert(name.substr(b, e - b + 1));
          }
          t.sa_names.insert(names.begin(), names.end());
          c = Constraint::only(std::move(names));
          constraint_set = true;
          j = close + 1;
        } else if (m == "mod" || m == "pred") {
          if (!is_root) bad(":" + m + " is only allowed on a root");
          t.cls = m == "mod" ? AuxClass::modifier : AuxClass::predicative;
        } else {
          bad("unknown marker ':" + m + "'");
        }
        i = j;
      } else if (s[i] == '#') {
        std::size_t j = i + 1;
        while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
        if (j == i + 1) bad("diacritic needs a number");
        Mark mark{static_cast<unsigned>(std::stoul(s.substr(i + 1, j - i - 1))), addr, std::nullopt, w.line, w.col};
        if (j < s.size() && s[j] == '^') {
          mark.side = Side::top;
          ++j;
        } else if (j < s.size() && s[j] == 'v') {
          mark.side = Side::bottom;
          ++j;
        }
        t.marks.push_back(mark);
        i = j;
      } else {
        bad("unexpected character");
      }
    }
    if (!constraint_set && n.foot) c = Constraint::none();
    c.obligatory = obligatory;
    if (!c.valid()) bad("OA conflicts with NA");
    n.constraint = std::move(c);
    return n;
  }

  Lexer lex_;
  Token tok_;
};

// ---------------------------------------------------------------------------

std::string quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    out += c;
  }
  return out + '"';
}

bool bare_terminal(std::string_view s) {
  if (s.empty() || s == "<eps>") return false;
  if (s.find(kDown) != std::string_view::npos) return false;
  for (char c : s)
    if (is_delim(c) || c == '!' || c == '*' || c == ':' || c == '#' || c == '\\') return false;
  return true;
}

std::string value(std::string_view s) { return bare_terminal(s) ? std::string(s) : quote(s); }

void write_node(std::ostream& out, const Node& n, const Address& a, AuxClass cls, bool aux,
                const std::multimap<Address, std::string>& marks) {
  switch (n.label.kind) {
    case LabelKind::terminal:
      out << value(n.label.symbol);
      return;
    case LabelKind::epsilon:
      out << "<eps>";
      return;
    case LabelKind::nonterminal:
      break;
  }
  out << '(' << n.label.symbol;
  if (n.substitution) out << kDown;
  if (n.foot) out << '*';
  const Constraint& c = n.constraint;
  const auto default_allowed = n.foot ? Constraint::Allowed::none : Constraint::Allowed::any;
  if (c.allowed != default_allowed) {
    switch (c.allowed) {
      case Constraint::Allowed::any: out << ":any"; break;
      case Constraint::Allowed::none: out << ":NA"; break;
      case Constraint::Allowed::set: {
        out << ":SA(";
        bool first = true;
        for (const auto& name : c.names) {
          out << (first ? "" : ",") << name;
          first = false;
        }
        out << ')';
        break;
      }
    }
  }
  if (c.obligatory) out << ":OA";
  if (a.is_root() && aux && cls == AuxClass::modifier) out << ":mod";
  auto [b, e] = marks.equal_range(a);
  for (auto it = b; it != e; ++it) out << it->second;
  for (std::uint32_t i = 0; i < n.children.size(); ++i) {
    out << ' ';
    write_node(out, n.children[i], a.child(i + 1), cls, aux, marks);
  }
  out << ')';
}

std::string tree_text(const ElementaryTree& t, const std::multimap<Address, std::string>& marks = {}) {
  std::ostringstream out;
  write_node(out, t.tree.root, Address{}, t.cls, t.is_auxiliary(), marks);
  return out.str();
}

}  // namespace

GrammarDocument parse_document(std::string_view text) { return Reader(text).run(); }

SynchronousGrammar load_grammar(std::string_view text) {
  GrammarDocument doc = parse_document(text);
  try {
    return SynchronousGrammar(std::move(doc.pairs), std::move(doc.options));
  } catch (const GrammarError& e) {
    throw LoadError(e.what(), 1, 1);
  }
}

Grammar load_tag(std::string_view text) {
  GrammarDocument doc = parse_document(text);
  try {
    return Grammar(std::move(doc.trees), doc.options.left_start, doc.separator);
  } catch (const GrammarError& e) {
    throw LoadError(e.what(), 1, 1);
  }
}

std::string serialize_tree(const Tree& t, AuxClass cls, const std::multimap<Address, std::string>& diacritics) {
  std::ostringstream out;
  write_node(out, t.root, Address{}, cls, t.foot_address().has_value(), diacritics);
  return out.str();
}

std::string serialize(const SynchronousGrammar& g) {
  const auto& o = g.options();
  std::ostringstream out;
  if (!o.name.empty()) out << "grammar " << value(o.name) << ";\n";
  out << "option left-sep " << quote(o.left_separator) << ";\n";
  out << "option right-sep " << quote(o.right_separator) << ";\n";
  out << "option default-side " << side_char(o.default_side) << ";\n";
  if (o.left_start || o.right_start) {
    if (!o.left_start || !o.right_start) throw GrammarError("start symbol given for one side only");
    out << "start " << *o.left_start << ' ' << *o.right_start << ";\n";
  }
  for (const auto& p : g.pairs()) {
    std::multimap<Address, std::string> lm, rm;
    unsigned k = 0;
    for (const auto& l : p.links) {
      std::string mark = "#" + std::to_string(++k);
      lm.emplace(l.left, mark + (l.left_side != o.default_side ? std::string(1, side_char(l.left_side)) : ""));
      rm.emplace(l.right, mark + (l.right_side != o.default_side ? std::string(1, side_char(l.right_side)) : ""));
    }
    out << "\npair " << value(p.name) << " {\n";
    out << "  left  " << tree_text(p.left, lm) << "\n";
    out << "  right " << tree_text(p.right, rm) << "\n}\n";
  }
  return out.str();
}

std::string serialize(const Grammar& g, std::string_view name) {
  std::ostringstream out;
  if (!name.empty()) out << "grammar " << value(name) << ";\n";
  out << "option sep " << quote(g.separator()) << ";\n";
  if (g.start()) out << "start " << *g.start() << ";\n";
  for (const auto& t : g.trees()) out << "tree " << value(t.name) << ' ' << tree_text(t) << ";\n";
  return out.str();
}

std::string serialize(const MCTagGrammar& g) {
  std::ostringstream out;
  out << "grammar mctag;\n";
  out << "start " << g.start_symbol << ";\n";
  for (const auto& s : g.sets) {
    out << "\nset " << value(s.name) << " {\n";
    out << "  left  " << tree_text(s.left) << "\n";
    out << "  right " << tree_text(s.right) << "\n}\n";
  }
  out << '\n';
  for (const auto& t : g.start_trees) out << "tree " << value(t.name) << ' ' << tree_text(t) << ";\n";
  return out.str();
}

std::string read_file(const std::string& path) {
  std::ostringstream buf;
  if (path == "-") {
    buf << std::cin.rdbuf();
    return buf.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path);
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace stag
