#pragma once

#include <cstdint>
#include <tuple>
#include <vector>

namespace setiso {

using Color = std::int64_t;

// Undirected simple graph with vertex colors and colors on both arcs of every edge.
class ColoredGraph {
public:
  explicit ColoredGraph(int n = 0);

  int size() const { return n_; }
  int edge_count() const { return m_; }

  void set_vertex_color(int v, Color c);
  Color vertex_color(int v) const { return vcol_[v]; }
  const std::vector<Color>& vertex_colors() const { return vcol_; }

  // Colors c_uv on arc (u,v) and c_vu on arc (v,u).
  void add_edge(int u, int v, Color c_uv = 0, Color c_vu = 0);
  bool adjacent(int u, int v) const { return adj_[static_cast<std::size_t>(u) * n_ + v]; }
  Color arc(int u, int v) const; // throws if not adjacent
  const std::vector<int>& neighbors(int v) const { return nbrs_[v]; }

  // Edges (u, v, c_uv, c_vu) with u < v, sorted.
  std::vector<std::tuple<int, int, Color, Color>> edges() const;

  bool operator==(const ColoredGraph& o) const;

private:
  int n_;
  int m_ = 0;
  std::vector<Color> vcol_;
  std::vector<char> adj_;
  std::vector<Color> arc_;
  std::vector<std::vector<int>> nbrs_;
};

} // namespace setiso
