#pragma once

#include "setiso/coset.hpp"
#include "setiso/graph.hpp"
#include "setiso/hfs.hpp"
#include "setiso/pstring.hpp"

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace setiso::io {

class ParseError : public std::runtime_error {
public:
  ParseError(int line, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line) + ": " + msg), line_(line), msg_(msg) {}
  ParseError(const std::string& path, int line, const std::string& msg)
      : std::runtime_error(path + ":" + std::to_string(line) + ": " + msg), line_(line), msg_(msg) {}
  int line() const { return line_; }
  const std::string& message() const { return msg_; }

private:
  int line_;
  std::string msg_;
};

// Blank lines and lines starting with '#' are skipped; line numbers count them.

// .grp: "n k", then k lines of n images
PermGroup read_group(std::istream& in);
void write_group(std::ostream& out, const PermGroup& g);

// .str: "n", then n colors
std::vector<int> read_string(std::istream& in);
void write_string(std::ostream& out, const std::vector<int>& s);

// .hg: "n m", then m lines "k v1 .. vk"
Hypergraph read_hypergraph(std::istream& in);
void write_hypergraph(std::ostream& out, const Hypergraph& h);

// .psf: "n c", the class_of table (-1 off the support), then one member per line:
// the class followed by its colors in increasing point order
struct FamilyFile {
  PPartition partition;
  std::vector<PString> members;
};
FamilyFile read_family(std::istream& in);
void write_family(std::ostream& out, const FamilyFile& f);

// .cg: "n m", n lines "v color", m lines "u v c_uv c_vu"
ColoredGraph read_graph(std::istream& in);
void write_graph(std::ostream& out, const ColoredGraph& g);

// .hfs: "universe n", then the term; atoms are integers, sets { .. }, tuples ( .. )
struct HfsFile {
  int universe = 0;
  HfsTerm term;
};
HfsFile read_hfs(std::istream& in);
void write_hfs(std::ostream& out, const HfsFile& f);

// File variants; errors name the file.
PermGroup read_group_file(const std::string& path);
std::vector<int> read_string_file(const std::string& path);
Hypergraph read_hypergraph_file(const std::string& path);
FamilyFile read_family_file(const std::string& path);
ColoredGraph read_graph_file(const std::string& path);
HfsFile read_hfs_file(const std::string& path);

// "ISO", "rep" line, "order" line, "gens k" and one line per generator; or "NONISO".
void write_result(std::ostream& out, const IsoCoset& c);

} // namespace setiso::io
