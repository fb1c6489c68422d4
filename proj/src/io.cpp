#include "setiso/io.hpp"

#include <algorithm>
#include <fstream>
#include <optional>
#include <istream>
#include <ostream>
#include <sstream>

namespace setiso::io {

namespace {

class LineReader {
public:
  explicit LineReader(std::istream& in) : in_(in) {}

  // Next non-blank line split into tokens; throws at end of input.
  std::vector<std::string> next(const char* what) {
    if (auto t = try_next())
      return *t;
    throw ParseError(line_ + 1, std::string("unexpected end of input, expected ") + what);
  }

  std::optional<std::vector<std::string>> try_next() {
    std::string line;
    while (std::getline(in_, line)) {
      ++line_;
      auto pos = line.find_first_not_of(" \t\r");
      if (pos == std::string::npos || line[pos] == '#')
        continue;
      std::istringstream ss(line);
      std::vector<std::string> toks;
      for (std::string t; ss >> t;)
        toks.push_back(t);
      return toks;
    }
    return std::nullopt;
  }

  void expect_end() {
    std::string line;
    while (std::getline(in_, line)) {
      ++line_;
      auto pos = line.find_first_not_of(" \t\r");
      if (pos != std::string::npos && line[pos] != '#')
        throw ParseError(line_, "trailing content");
    }
  }

  long long number(const std::string& tok) const {
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != tok.size() || tok.empty())
      fail("expected an integer, got '" + tok + "'");
    return v;
  }

  int count(const std::string& tok, const char* what) const {
    long long v = number(tok);
    if (v < 0 || v > 10000000)
      fail(std::string(what) + " out of range");
    return static_cast<int>(v);
  }

  std::vector<long long> numbers(const std::vector<std::string>& toks, std::size_t expect, const char* what) const {
    if (toks.size() != expect)
      fail(std::string(what) + ": expected " + std::to_string(expect) + " fields, got " + std::to_string(toks.size()));
    std::vector<long long> out;
    for (const auto& t : toks)
      out.push_back(number(t));
    return out;
  }

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(line_, msg); }
  int line() const { return line_; }

private:
  std::istream& in_;
  int line_ = 0;
};

void check_point(const LineReader& r, long long v, int n) {
  if (v < 0 || v >= n)
    r.fail("point " + std::to_string(v) + " outside 0.." + std::to_string(n - 1));
}

} // namespace

PermGroup read_group(std::istream& in) {
  LineReader r(in);
  auto head = r.next("header 'n k'");
  if (head.size() != 2)
    r.fail("header must be 'n k'");
  int n = r.count(head[0], "n");
  int k = r.count(head[1], "k");
  std::vector<Perm> gens;
  for (int i = 0; i < k; ++i) {
    auto v = r.numbers(r.next("generator"), n, "generator");
    std::vector<int> img(n);
    std::vector<char> hit(n, 0);
    for (int a = 0; a < n; ++a) {
      check_point(r, v[a], n);
      if (hit[v[a]])
        r.fail("generator is not a permutation");
      hit[v[a]] = 1;
      img[a] = static_cast<int>(v[a]);
    }
    gens.emplace_back(img);
  }
  r.expect_end();
  return PermGroup(n, gens);
}

namespace {

void write_images(std::ostream& out, const Perm& p) {
  for (int a = 0; a < p.degree(); ++a)
    out << (a ? " " : "") << p[a];
  out << '\n';
}

} // namespace

void write_group(std::ostream& out, const PermGroup& g) {
  out << g.degree() << ' ' << g.generators().size() << '\n';
  for (const auto& p : g.generators())
    write_images(out, p);
}

std::vector<int> read_string(std::istream& in) {
  LineReader r(in);
  auto head = r.next("length");
  if (head.size() != 1)
    r.fail("header must be 'n'");
  int n = r.count(head[0], "n");
  std::vector<int> s;
  if (n > 0) {
    for (long long c : r.numbers(r.next("colors"), n, "string")) {
      if (c < 0 || c > 1000000000)
        r.fail("color out of range");
      s.push_back(static_cast<int>(c));
    }
  }
  r.expect_end();
  return s;
}

void write_string(std::ostream& out, const std::vector<int>& s) {
  out << s.size() << '\n';
  for (std::size_t i = 0; i < s.size(); ++i)
    out << (i ? " " : "") << s[i];
  out << '\n';
}

Hypergraph read_hypergraph(std::istream& in) {
  LineReader r(in);
  auto head = r.next("header 'n m'");
  if (head.size() != 2)
    r.fail("header must be 'n m'");
  int n = r.count(head[0], "n");
  int m = r.count(head[1], "m");
  std::vector<std::vector<int>> edges;
  for (int i = 0; i < m; ++i) {
    auto toks = r.next("edge");
    if (toks.empty())
      r.fail("empty edge line");
    int k = r.count(toks[0], "edge size");
    if (static_cast<int>(toks.size()) != k + 1)
      r.fail("edge size does not match its vertex list");
    std::vector<int> e;
    for (int j = 1; j <= k; ++j) {
      long long v = r.number(toks[j]);
      check_point(r, v, n);
      e.push_back(static_cast<int>(v));
    }
    std::sort(e.begin(), e.end());
    if (std::adjacent_find(e.begin(), e.end()) != e.end())
      r.fail("repeated vertex in edge");
    edges.push_back(e);
  }
  r.expect_end();
  std::sort(edges.begin(), edges.end());
  if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
    throw ParseError(r.line(), "duplicate edge");
  return Hypergraph::make(n, edges);
}

void write_hypergraph(std::ostream& out, const Hypergraph& h) {
  out << h.n << ' ' << h.edges.size() << '\n';
  for (const auto& e : h.edges) {
    out << e.size();
    for (int v : e)
      out << ' ' << v;
    out << '\n';
  }
}

FamilyFile read_family(std::istream& in) {
  LineReader r(in);
  auto head = r.next("header 'n c'");
  if (head.size() != 2)
    r.fail("header must be 'n c'");
  int n = r.count(head[0], "n");
  int c = r.count(head[1], "c");
  std::vector<int> class_of(n, -1);
  if (n > 0) {
    auto v = r.numbers(r.next("class table"), n, "class table");
    for (int a = 0; a < n; ++a) {
      if (v[a] < -1 || v[a] >= c)
        r.fail("class index out of range");
      class_of[a] = static_cast<int>(v[a]);
    }
  }
  FamilyFile f;
  f.partition = PPartition::from_class_of(class_of);
  if (static_cast<int>(f.partition.classes.size()) != c)
    r.fail("class table does not use every class");
  while (auto line = r.try_next()) {
    const auto& toks = *line;
    int cls = r.count(toks[0], "class");
    if (cls >= c)
      r.fail("class index out of range");
    auto size = f.partition.classes[cls].size();
    if (toks.size() != size + 1)
      r.fail("member length does not match its class");
    PString p{cls, {}};
    for (std::size_t i = 1; i < toks.size(); ++i) {
      long long col = r.number(toks[i]);
      if (col < 0 || col > 1000000000)
        r.fail("color out of range");
      p.letters.push_back(static_cast<int>(col));
    }
    f.members.push_back(p);
  }
  return f;
}

void write_family(std::ostream& out, const FamilyFile& f) {
  out << f.partition.n << ' ' << f.partition.classes.size() << '\n';
  for (int a = 0; a < f.partition.n; ++a)
    out << (a ? " " : "") << f.partition.class_of[a];
  out << '\n';
  for (const auto& m : f.members) {
    out << m.cls;
    for (int l : m.letters)
      out << ' ' << l;
    out << '\n';
  }
}

ColoredGraph read_graph(std::istream& in) {
  LineReader r(in);
  auto head = r.next("header 'n m'");
  if (head.size() != 2)
    r.fail("header must be 'n m'");
  int n = r.count(head[0], "n");
  int m = r.count(head[1], "m");
  ColoredGraph g(n);
  std::vector<char> seen(n, 0);
  for (int i = 0; i < n; ++i) {
    auto v = r.numbers(r.next("vertex line"), 2, "vertex line");
    check_point(r, v[0], n);
    if (seen[v[0]])
      r.fail("vertex listed twice");
    seen[v[0]] = 1;
    g.set_vertex_color(static_cast<int>(v[0]), v[1]);
  }
  for (int i = 0; i < m; ++i) {
    auto v = r.numbers(r.next("edge line"), 4, "edge line");
    check_point(r, v[0], n);
    check_point(r, v[1], n);
    if (v[0] == v[1])
      r.fail("loop");
    if (g.adjacent(static_cast<int>(v[0]), static_cast<int>(v[1])))
      r.fail("duplicate edge");
    g.add_edge(static_cast<int>(v[0]), static_cast<int>(v[1]), v[2], v[3]);
  }
  r.expect_end();
  return g;
}

void write_graph(std::ostream& out, const ColoredGraph& g) {
  auto edges = g.edges();
  out << g.size() << ' ' << edges.size() << '\n';
  for (int v = 0; v < g.size(); ++v)
    out << v << ' ' << g.vertex_color(v) << '\n';
  for (auto& [u, v, a, b] : edges)
    out << u << ' ' << v << ' ' << a << ' ' << b << '\n';
}

namespace {

struct TermParser {
  const std::vector<std::pair<std::string, int>>& toks; // token, line
  std::size_t pos = 0;
  int universe;
  int depth = 0;

  [[noreturn]] void fail(const std::string& msg) const {
    int line = pos < toks.size() ? toks[pos].second : (toks.empty() ? 1 : toks.back().second);
    throw ParseError(line, msg);
  }

  HfsTerm parse() {
    if (pos >= toks.size())
      fail("unexpected end of term");
    if (++depth > 10000)
      fail("term nested too deeply");
    const std::string& t = toks[pos].first;
    HfsTerm out;
    if (t == "{" || t == "(") {
      std::string close = t == "{" ? "}" : ")";
      ++pos;
      std::vector<HfsTerm> kids;
      while (pos < toks.size() && toks[pos].first != close) {
        if (toks[pos].first == "}" || toks[pos].first == ")")
          fail("mismatched bracket");
        kids.push_back(parse());
      }
      if (pos >= toks.size())
        fail("missing " + close);
      ++pos;
      if (close == "}") {
        std::sort(kids.begin(), kids.end());
        if (std::adjacent_find(kids.begin(), kids.end()) != kids.end())
          fail("repeated element in set");
        out = HfsTerm::make_set(std::move(kids));
      } else {
        out = HfsTerm::make_tuple(std::move(kids));
      }
    } else {
      std::size_t used = 0;
      long long v = -1;
      try {
        v = std::stoll(t, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != t.size())
        fail("unexpected token '" + t + "'");
      if (v < 0 || v >= universe)
        fail("atom " + t + " outside the universe");
      ++pos;
      out = HfsTerm::make_atom(static_cast<int>(v));
    }
    --depth;
    return out;
  }
};

} // namespace

HfsFile read_hfs(std::istream& in) {
  LineReader r(in);
  auto head = r.next("header 'universe n'");
  if (head.size() != 2 || head[0] != "universe")
    r.fail("header must be 'universe n'");
  HfsFile f;
  f.universe = r.count(head[1], "universe");
  // brackets may touch their neighbours; split them off
  std::vector<std::pair<std::string, int>> toks;
  std::string line;
  int lineno = r.line();
  while (std::getline(in, line)) {
    ++lineno;
    std::string cur;
    auto flush = [&] {
      if (!cur.empty())
        toks.emplace_back(cur, lineno);
      cur.clear();
    };
    for (char ch : line) {
      if (ch == '#')
        break;
      if (ch == '{' || ch == '}' || ch == '(' || ch == ')') {
        flush();
        toks.emplace_back(std::string(1, ch), lineno);
      } else if (ch == ' ' || ch == '\t' || ch == '\r' || ch == ',') {
        flush();
      } else {
        cur += ch;
      }
    }
    flush();
  }
  TermParser p{toks, 0, f.universe};
  f.term = p.parse();
  if (p.pos != toks.size())
    p.fail("trailing content after the term");
  return f;
}

void write_hfs(std::ostream& out, const HfsFile& f) { out << "universe " << f.universe << '\n' << f.term.str() << '\n'; }

namespace {

template <class T>
T read_file(const std::string& path, T (*reader)(std::istream&)) {
  std::ifstream in(path);
  if (!in)
    throw std::runtime_error(path + ": cannot open");
  try {
    return reader(in);
  } catch (const ParseError& e) {
    throw ParseError(path, e.line(), e.message());
  }
}

} // namespace

PermGroup read_group_file(const std::string& path) { return read_file(path, &read_group); }
std::vector<int> read_string_file(const std::string& path) { return read_file(path, &read_string); }
Hypergraph read_hypergraph_file(const std::string& path) { return read_file(path, &read_hypergraph); }
FamilyFile read_family_file(const std::string& path) { return read_file(path, &read_family); }
ColoredGraph read_graph_file(const std::string& path) { return read_file(path, &read_graph); }
HfsFile read_hfs_file(const std::string& path) { return read_file(path, &read_hfs); }

void write_result(std::ostream& out, const IsoCoset& c) {
  if (!c) {
    out << "NONISO\n";
    return;
  }
  out << "ISO\nrep";
  for (int a = 0; a < c->rep.degree(); ++a)
    out << ' ' << c->rep[a];
  out << "\norder " << c->group.order() << "\ngens " << c->group.generators().size() << '\n';
  for (const auto& g : c->group.generators())
    write_images(out, g);
}

} // namespace setiso::io
