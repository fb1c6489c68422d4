#pragma once

// Brute-force isomorphism by full enumeration of the group. Shares no code with the
// solvers beyond Perm and the plain data types it reads.

#include "setiso/graph.hpp"
#include "setiso/perm.hpp"
#include "setiso/pstring.hpp"

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace setiso {
struct HfsTerm;
}

namespace setiso::oracle {

inline constexpr std::size_t kElementCap = 3628800; // 10!

class CapExceeded : public std::runtime_error {
public:
  CapExceeded() : std::runtime_error("oracle enumeration cap exceeded") {}
};

// Every element of <gens>, sorted.
std::vector<Perm> enumerate(int n, const std::vector<Perm>& gens, std::size_t cap = kElementCap);
std::vector<Perm> symmetric(int n, std::size_t cap = kElementCap);

std::vector<Perm> iso_strings(const std::vector<Perm>& group, const std::vector<int>& x, const std::vector<int>& y,
                              const std::vector<int>& window);
std::vector<Perm> iso_families(const std::vector<Perm>& group, const PStringFamily& x, const PStringFamily& y);
std::vector<Perm> iso_hypergraphs(const std::vector<Perm>& group, const Hypergraph& x, const Hypergraph& y);
std::vector<Perm> iso_graphs(const std::vector<Perm>& group, const ColoredGraph& x, const ColoredGraph& y);
std::vector<Perm> iso_hfs(const std::vector<Perm>& group, const HfsTerm& x, const HfsTerm& y);

} // namespace setiso::oracle
