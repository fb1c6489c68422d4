#include "setiso/graph.hpp"

#include <algorithm>
#include <stdexcept>

namespace setiso {

ColoredGraph::ColoredGraph(int n)
    : n_(n), vcol_(n, 0), adj_(static_cast<std::size_t>(n) * n, 0),
      arc_(static_cast<std::size_t>(n) * n, 0), nbrs_(n) {
  if (n < 0)
    throw std::invalid_argument("negative vertex count");
}

void ColoredGraph::set_vertex_color(int v, Color c) {
  if (v < 0 || v >= n_)
    throw std::out_of_range("vertex out of range");
  vcol_[v] = c;
}

void ColoredGraph::add_edge(int u, int v, Color c_uv, Color c_vu) {
  if (u < 0 || v < 0 || u >= n_ || v >= n_)
    throw std::out_of_range("vertex out of range");
  if (u == v)
    throw std::invalid_argument("loops are not allowed");
  if (adjacent(u, v))
    throw std::invalid_argument("duplicate edge");
  std::size_t a = static_cast<std::size_t>(u) * n_ + v;
  std::size_t b = static_cast<std::size_t>(v) * n_ + u;
  adj_[a] = adj_[b] = 1;
  arc_[a] = c_uv;
  arc_[b] = c_vu;
  nbrs_[u].insert(std::lower_bound(nbrs_[u].begin(), nbrs_[u].end(), v), v);
  nbrs_[v].insert(std::lower_bound(nbrs_[v].begin(), nbrs_[v].end(), u), u);
  ++m_;
}

Color ColoredGraph::arc(int u, int v) const {
  if (!adjacent(u, v))
    throw std::invalid_argument("no such arc");
  return arc_[static_cast<std::size_t>(u) * n_ + v];
}

std::vector<std::tuple<int, int, Color, Color>> ColoredGraph::edges() const {
  std::vector<std::tuple<int, int, Color, Color>> out;
  for (int u = 0; u < n_; ++u)
    for (int v : nbrs_[u])
      if (u < v)
        out.emplace_back(u, v, arc(u, v), arc(v, u));
  return out;
}

bool ColoredGraph::operator==(const ColoredGraph& o) const {
  return n_ == o.n_ && vcol_ == o.vcol_ && edges() == o.edges();
}

} // namespace setiso
