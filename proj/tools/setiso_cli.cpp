// Command-line front end. Exit codes: 0 ISO (or success), 1 NONISO, 2 error.

#include "setiso/color_refine.hpp"
#include "setiso/encodings.hpp"
#include "setiso/gsi.hpp"
#include "setiso/io.hpp"
#include "setiso/local_certs.hpp"
#include "setiso/normal_forms.hpp"
#include "setiso/oracle.hpp"
#include "setiso/string_iso.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>

using namespace setiso;

namespace {

struct Options {
  std::uint64_t budget = 0;
  std::uint64_t seed = 1;
  bool human = false;
  std::string group;
  std::string a, b;
  int h = 3, g = 0, d = 2, t = -1;
  std::string individualize;
  std::string kind = "string";
};

void print_perm_human(std::ostream& out, const Perm& p) { out << p.cycles(); }

int report(const Options& o, const IsoCoset& c) {
  if (!o.human) {
    io::write_result(std::cout, c);
  } else if (!c) {
    std::cout << "not isomorphic\n";
  } else {
    std::cout << "isomorphic\nrepresentative ";
    print_perm_human(std::cout, c->rep);
    std::cout << "\nautomorphism group of order " << c->group.order() << '\n';
    for (const auto& g : c->group.generators()) {
      std::cout << "  ";
      print_perm_human(std::cout, g);
      std::cout << '\n';
    }
  }
  return c ? 0 : 1;
}

PermGroup group_or_symmetric(const Options& o, int n) {
  if (o.group.empty())
    return PermGroup::symmetric(n);
  auto g = io::read_group_file(o.group);
  if (g.degree() != n)
    throw std::invalid_argument("group degree " + std::to_string(g.degree()) + " does not match the input size " +
                                std::to_string(n));
  return g;
}

std::vector<int> all_points(int n) {
  std::vector<int> w(n);
  std::iota(w.begin(), w.end(), 0);
  return w;
}

int iso_string(const Options& o) {
  auto x = io::read_string_file(o.a);
  auto y = io::read_string_file(o.b);
  if (x.size() != y.size())
    return report(o, std::nullopt);
  int n = static_cast<int>(x.size());
  Budget b(o.budget);
  return report(o, string_iso(group_or_symmetric(o, n), x, y, all_points(n), b));
}

int iso_hyper(const Options& o) {
  auto x = io::read_hypergraph_file(o.a);
  auto y = io::read_hypergraph_file(o.b);
  if (x.n != y.n)
    throw std::invalid_argument("hypergraphs have different vertex counts");
  Budget b(o.budget);
  return report(o, hypergraph_iso(group_or_symmetric(o, x.n), x, y, b));
}

int iso_family(const Options& o) {
  auto x = io::read_family_file(o.a);
  auto y = io::read_family_file(o.b);
  if (!(x.partition == y.partition))
    throw std::invalid_argument("families use different partitions");
  auto [fx, fy] = make_family_pair(x.partition, x.members, y.members);
  GsiInstance inst{group_or_symmetric(o, x.partition.n), x.partition, fx, fy, std::nullopt};
  return report(o, generalized_string_iso(inst, GsiConfig{o.budget}));
}

int iso_graph(const Options& o) {
  auto x = io::read_graph_file(o.a);
  auto y = io::read_graph_file(o.b);
  if (x.size() != y.size())
    return report(o, std::nullopt);
  Budget b(o.budget);
  return report(o, graph_iso_under_group(x, y, group_or_symmetric(o, x.size()), b));
}

int iso_hfs_cmd(const Options& o) {
  auto x = io::read_hfs_file(o.a);
  auto y = io::read_hfs_file(o.b);
  if (x.universe != y.universe)
    throw std::invalid_argument("terms use different universes");
  Budget b(o.budget);
  return report(o, iso_hfs(x.term, y.term, group_or_symmetric(o, x.universe), b));
}

int excluded_minor(const Options& o, int h) {
  auto x = io::read_graph_file(o.a);
  auto y = io::read_graph_file(o.b);
  ExcludedMinorConfig cfg;
  cfg.budget = o.budget;
  auto r = iso_excluded_minor(x, y, h, cfg);
  for (const auto& d : r.diagnostics)
    std::cerr << "note: " << d << '\n';
  if (r.fallback)
    std::cerr << "note: answered by enumeration\n";
  return report(o, r.coset);
}

std::vector<int> parse_list(const std::string& s) {
  std::vector<int> out;
  std::string tok;
  std::istringstream in(s);
  while (std::getline(in, tok, ','))
    if (!tok.empty())
      out.push_back(std::stoi(tok));
  return out;
}

void print_classes(const Coloring& c) {
  auto cls = c.classes();
  std::cout << "classes " << cls.size() << '\n';
  for (const auto& k : cls) {
    for (std::size_t i = 0; i < k.size(); ++i)
      std::cout << (i ? " " : "") << k[i];
    std::cout << '\n';
  }
}

int refine_cmd(const Options& o) {
  auto g = io::read_graph_file(o.a);
  auto s = parse_list(o.individualize);
  if (o.t < 0 && s.empty()) {
    print_classes(color_refinement(g));
    return 0;
  }
  auto tr = tcr_sequence(g, s, std::max(o.t, 0));
  std::cout << "discrete " << (tr.discrete ? "yes" : "no") << '\n';
  std::cout << "steps " << tr.trace.size() << '\n';
  for (const auto& sizes : tr.trace) {
    for (std::size_t i = 0; i < sizes.size(); ++i)
      std::cout << (i ? " " : "") << sizes[i];
    std::cout << '\n';
  }
  print_classes(tr.final);
  return 0;
}

int normalize_cmd(const Options& o) {
  if (o.group.empty())
    throw std::invalid_argument("normalize needs --group");
  auto g = io::read_group_file(o.group);
  auto built = build_structure_graph(g, o.d);
  auto unf = unfold_and_act(built.graph);
  std::cout << "certified_d " << built.certified_d << '\n';
  std::cout << "almost_d_ary " << (is_almost_d_ary(built.chain, g, o.d) ? "yes" : "no") << '\n';
  std::cout << "levels " << built.chain.size() << '\n';
  std::cout << "vertices " << built.graph.vertex_count() << '\n';
  std::cout << "branches " << unf.size() << '\n';
  std::cout << built.graph.dump();
  return 0;
}

const char* kind_name(Certificate::Kind k) {
  switch (k) {
  case Certificate::Kind::Full:
    return "full";
  case Certificate::Kind::NonFull:
    return "nonfull";
  default:
    return "empty";
  }
}

void print_certificate(const char* label, const Certificate& c) {
  std::cout << label << ' ' << kind_name(c.kind) << " iterations " << c.iterations << (c.widened ? " widened" : "")
            << '\n';
  if (c.kind == Certificate::Kind::Full)
    std::cout << "  order " << c.delta.order() << '\n';
  if (c.kind == Certificate::Kind::NonFull) {
    std::cout << "  order " << c.lambda.order() << "\n  bijection";
    for (int v : c.bijection)
      std::cout << ' ' << v;
    std::cout << '\n';
  }
}

int certify_cmd(const Options& o) {
  if (o.group.empty())
    throw std::invalid_argument("certify needs --group");
  auto g = io::read_group_file(o.group);
  auto x = io::read_family_file(o.a);
  auto y = io::read_family_file(o.b);
  if (!(x.partition == y.partition) || x.partition.n != g.degree())
    throw std::invalid_argument("families and group disagree");
  auto rep = find_giant_rep(g);
  if (!rep) {
    std::cout << "giant none\n";
    return 0;
  }
  int t = o.t < 0 ? std::min(rep->k, kGiantThreshold) : o.t;
  if (t < 1 || t > rep->k)
    throw std::invalid_argument("test set size must lie in 1.." + std::to_string(rep->k));
  std::mt19937_64 rng(o.seed);
  auto pts = all_points(rep->k);
  std::vector<int> t1(pts.begin(), pts.begin() + t);
  std::shuffle(pts.begin(), pts.end(), rng);
  std::vector<int> t2(pts.begin(), pts.begin() + t);
  std::sort(t2.begin(), t2.end());
  auto [fx, fy] = make_family_pair(x.partition, x.members, y.members);
  LocalCertConfig cfg;
  cfg.budget = o.budget;
  auto certs = local_certificates(g, x.partition, fx, fy, *rep, t1, t2, std::nullopt, cfg);
  std::cout << "giant " << giant_name(rep->flavor) << " k " << rep->k << '\n';
  std::cout << "t1";
  for (int v : t1)
    std::cout << ' ' << v;
  std::cout << "\nt2";
  for (int v : t2)
    std::cout << ' ' << v;
  std::cout << '\n';
  print_certificate("x", certs.x_side);
  print_certificate("y", certs.y_side);
  print_certificate("compare", certs.compare);
  return 0;
}

IsoCoset from_elements(int n, const std::vector<Perm>& elems) {
  CosetBuilder b(n);
  for (const auto& p : elems)
    b.add_element(p);
  return b.result();
}

std::vector<Perm> oracle_group(const Options& o, int n) {
  if (o.group.empty())
    return oracle::symmetric(n);
  auto g = io::read_group_file(o.group);
  if (g.degree() != n)
    throw std::invalid_argument("group degree does not match the input size");
  return oracle::enumerate(n, g.generators());
}

int oracle_cmd(const Options& o) {
  std::vector<Perm> found;
  int n = 0;
  if (o.kind == "string") {
    auto x = io::read_string_file(o.a);
    auto y = io::read_string_file(o.b);
    n = static_cast<int>(x.size());
    if (x.size() == y.size())
      found = oracle::iso_strings(oracle_group(o, n), x, y, all_points(n));
  } else if (o.kind == "hyper") {
    auto x = io::read_hypergraph_file(o.a);
    auto y = io::read_hypergraph_file(o.b);
    n = x.n;
    found = oracle::iso_hypergraphs(oracle_group(o, n), x, y);
  } else if (o.kind == "family") {
    auto x = io::read_family_file(o.a);
    auto y = io::read_family_file(o.b);
    n = x.partition.n;
    auto [fx, fy] = make_family_pair(x.partition, x.members, y.members);
    found = oracle::iso_families(oracle_group(o, n), fx, fy);
  } else if (o.kind == "graph") {
    auto x = io::read_graph_file(o.a);
    auto y = io::read_graph_file(o.b);
    n = x.size();
    if (x.size() == y.size())
      found = oracle::iso_graphs(oracle_group(o, n), x, y);
  } else if (o.kind == "hfs") {
    auto x = io::read_hfs_file(o.a);
    auto y = io::read_hfs_file(o.b);
    n = x.universe;
    found = oracle::iso_hfs(oracle_group(o, n), x.term, y.term);
  } else {
    throw std::invalid_argument("unknown kind " + o.kind);
  }
  int code = report(o, from_elements(n, found));
  std::cout << "count " << found.size() << '\n';
  return code;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Isomorphism of strings, hypergraphs, colored graphs and hereditarily finite sets under a "
               "permutation group"};
  app.require_subcommand(1);
  Options o;
  app.add_option("--budget", o.budget, "Recursion node cap, 0 for none");
  app.add_option("--seed", o.seed, "Seed for randomized choices");
  app.add_flag("--human", o.human, "Readable output with cycle notation");

  auto pair = [&](CLI::App* sub, bool needs_group) {
    auto* opt = sub->add_option("--group", o.group, "Group file (.grp)");
    if (needs_group)
      opt->required();
    sub->add_option("first", o.a)->required()->check(CLI::ExistingFile);
    sub->add_option("second", o.b)->required()->check(CLI::ExistingFile);
    return sub;
  };
  auto* s_string = pair(app.add_subcommand("iso-string", "String isomorphism (.str)"), false);
  auto* s_hyper = pair(app.add_subcommand("iso-hyper", "Hypergraph isomorphism (.hg)"), false);
  auto* s_family = pair(app.add_subcommand("iso-family", "Partition string family isomorphism (.psf)"), false);
  auto* s_graph = pair(app.add_subcommand("iso-graph", "Colored graph isomorphism (.cg)"), false);
  auto* s_hfs = pair(app.add_subcommand("iso-hfs", "Hereditarily finite set isomorphism (.hfs)"), false);

  auto* s_minor = app.add_subcommand("iso-excluded-minor", "3-connected graphs excluding K_{3,h} (.cg)");
  s_minor->set_help_flag("--help", "Print this help message and exit"); // frees -h for --h
  s_minor->add_option("--h", o.h, "Excluded K_{3,h}")->required()->check(CLI::Range(3, 1000000));
  s_minor->add_option("first", o.a)->required()->check(CLI::ExistingFile);
  s_minor->add_option("second", o.b)->required()->check(CLI::ExistingFile);

  auto* s_genus = app.add_subcommand("iso-genus", "3-connected graphs of Euler genus at most g (.cg)");
  s_genus->add_option("--g", o.g, "Genus bound")->required()->check(CLI::Range(0, 250000));
  s_genus->add_option("first", o.a)->required()->check(CLI::ExistingFile);
  s_genus->add_option("second", o.b)->required()->check(CLI::ExistingFile);

  auto* s_refine = app.add_subcommand("refine", "Color refinement of a colored graph (.cg)");
  s_refine->add_option("graph", o.a)->required()->check(CLI::ExistingFile);
  s_refine->add_option("--individualize", o.individualize, "Comma-separated vertices");
  s_refine->add_option("--t", o.t, "Split classes of size at most t")->check(CLI::Range(0, 1000000));

  auto* s_norm = app.add_subcommand("normalize", "Structure graph for a group");
  s_norm->add_option("--group", o.group, "Group file (.grp)")->required()->check(CLI::ExistingFile);
  s_norm->add_option("--d", o.d, "Degree bound")->check(CLI::Range(2, 1000000));

  auto* s_cert = pair(app.add_subcommand("certify", "Local certificates for two families (.psf)"), true);
  s_cert->add_option("--t", o.t, "Test set size");

  auto* s_oracle = pair(app.add_subcommand("oracle", "Brute-force answer by enumeration"), false);
  s_oracle->add_option("--kind", o.kind, "string, hyper, family, graph or hfs")
      ->check(CLI::IsMember({"string", "hyper", "family", "graph", "hfs"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*s_string)
      return iso_string(o);
    if (*s_hyper)
      return iso_hyper(o);
    if (*s_family)
      return iso_family(o);
    if (*s_graph)
      return iso_graph(o);
    if (*s_hfs)
      return iso_hfs_cmd(o);
    if (*s_minor)
      return excluded_minor(o, o.h);
    if (*s_genus)
      return excluded_minor(o, genus_to_h(o.g));
    if (*s_refine)
      return refine_cmd(o);
    if (*s_norm)
      return normalize_cmd(o);
    if (*s_cert)
      return certify_cmd(o);
    if (*s_oracle)
      return oracle_cmd(o);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
