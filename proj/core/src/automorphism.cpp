#include "malign/automorphism.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <stdexcept>

namespace malign {

namespace {

double factorial_double(std::size_t k) {
  double f = 1;
  for (std::size_t i = 2; i <= k; ++i) f *= static_cast<double>(i);
  return f;
}

// Adjacency of the induced subgraph on `vertices`, relabelled 0..k-1.
std::vector<std::vector<bool>> induced_adjacency(const EdgeIndex& index, const EdgeSet& edges,
                                                 const std::vector<Vertex>& vertices) {
  const std::size_t k = vertices.size();
  std::vector<std::vector<bool>> adj(k, std::vector<bool>(k, false));
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = a + 1; b < k; ++b) {
      const bool on = edges.contains(index.lookup(vertices[a], vertices[b]));
      adj[a][b] = adj[b][a] = on;
    }
  }
  return adj;
}

std::uint64_t count_local_automorphisms(const std::vector<std::vector<bool>>& adj) {
  const std::size_t k = adj.size();
  std::vector<std::size_t> img(k);
  std::iota(img.begin(), img.end(), std::size_t{0});
  std::uint64_t count = 0;
  do {
    bool ok = true;
    for (std::size_t a = 0; a < k && ok; ++a) {
      for (std::size_t b = a + 1; b < k; ++b) {
        if (adj[a][b] && !adj[img[a]][img[b]]) {
          ok = false;
          break;
        }
      }
    }
    count += ok;
  } while (std::next_permutation(img.begin(), img.end()));
  return count;
}

// Upper-triangle bit code of adj under the labelling old -> order[old].
std::uint64_t encode(const std::vector<std::vector<bool>>& adj, const std::vector<std::size_t>& order) {
  const std::size_t k = adj.size();
  std::vector<std::size_t> at(k);
  for (std::size_t v = 0; v < k; ++v) at[order[v]] = v;
  std::uint64_t code = 0;
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = a + 1; b < k; ++b) code = (code << 1) | (adj[at[a]][at[b]] ? 1u : 0u);
  }
  return code;
}

struct Canonical {
  std::uint64_t code = 0;
  std::vector<std::size_t> labelling;  // local vertex -> canonical position
};

Canonical canonical_form(const std::vector<std::vector<bool>>& adj) {
  static std::mutex mutex;
  static std::map<std::pair<std::size_t, std::uint64_t>, Canonical> cache;
  const std::size_t k = adj.size();
  std::vector<std::size_t> order(k);
  std::iota(order.begin(), order.end(), std::size_t{0});
  const std::uint64_t key = encode(adj, order);
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find({k, key}); it != cache.end()) return it->second;
  }
  Canonical best{encode(adj, order), order};
  while (std::next_permutation(order.begin(), order.end())) {
    const std::uint64_t code = encode(adj, order);
    if (code < best.code) best = {code, order};
  }
  std::lock_guard lock(mutex);
  cache.emplace(std::pair{k, key}, best);
  return best;
}

}  // namespace

AutomorphismBoundCheck component_preserving_automorphism_bound(std::size_t n, const EdgeSet& edges,
                                                               std::size_t max_n) {
  if (n > max_n) throw StateSpaceTooLarge("component_preserving_automorphism_bound: n exceeds the cap");
  const EdgeIndex index(n);
  const auto deg = degrees(n, edges);
  AutomorphismBoundCheck r;
  r.count = 1;
  for (const auto& comp : connected_components(n, edges)) {
    r.count *= count_local_automorphisms(induced_adjacency(index, edges, comp));
    double local = static_cast<double>(comp.size());
    for (Vertex v : comp) {
      r.bound *= factorial_double(deg[v]);
      local *= factorial_double(deg[v]);
    }
    r.rooted_bound *= local;
  }
  r.ok = static_cast<double>(r.count) <= r.bound;
  r.rooted_ok = static_cast<double>(r.count) <= r.rooted_bound;
  return r;
}

ComponentSymmetries component_symmetries(std::size_t n, const EdgeSet& edges,
                                         const std::vector<Vertex>& protected_vertices, std::size_t max_emit,
                                         std::size_t max_component) {
  const EdgeIndex index(n);
  if (edges.capacity() != index.size()) throw std::invalid_argument("component_symmetries: size mismatch");
  std::vector<bool> is_protected(n, false);
  for (Vertex v : protected_vertices) {
    if (v >= n) throw std::invalid_argument("component_symmetries: protected vertex out of range");
    is_protected[v] = true;
  }

  struct Member {
    std::vector<Vertex> vertices;
    std::vector<std::size_t> labelling;
  };
  std::map<std::pair<std::size_t, std::uint64_t>, std::vector<Member>> by_type;
  std::vector<std::pair<std::size_t, std::uint64_t>> type_order;
  for (auto& comp : connected_components(n, edges)) {
    if (std::any_of(comp.begin(), comp.end(), [&](Vertex v) { return is_protected[v]; })) continue;
    if (comp.size() > max_component) {
      throw std::invalid_argument("component_symmetries: unprotected component larger than the canonical-form cap");
    }
    const Canonical c = canonical_form(induced_adjacency(index, edges, comp));
    const std::pair key{comp.size(), c.code};
    auto [it, fresh] = by_type.try_emplace(key);
    if (fresh) type_order.push_back(key);
    it->second.push_back({std::move(comp), c.labelling});
  }

  ComponentSymmetries out;
  out.automorphisms.push_back(Permutation::identity(n));
  for (const auto& key : type_order) {
    const auto& members = by_type[key];
    SymmetryClass cls;
    for (const auto& m : members) cls.components.push_back(m.vertices);
    out.classes.push_back(std::move(cls));
    const std::size_t m = members.size();
    out.count_lower_bound *= std::ceil(factorial_double(m) / 3.0);

    // Cyclic shifts C_k -> C_{k+shift}, matched through the canonical labellings.
    for (std::size_t shift = 1; shift < m && out.automorphisms.size() < max_emit; ++shift) {
      std::vector<Vertex> images(n);
      std::iota(images.begin(), images.end(), Vertex{0});
      for (std::size_t k = 0; k < m; ++k) {
        const Member& from = members[k];
        const Member& to = members[(k + shift) % m];
        std::vector<Vertex> at_position(to.vertices.size());
        for (std::size_t v = 0; v < to.vertices.size(); ++v) at_position[to.labelling[v]] = to.vertices[v];
        for (std::size_t v = 0; v < from.vertices.size(); ++v) {
          images[from.vertices[v]] = at_position[from.labelling[v]];
        }
      }
      Permutation sigma(std::move(images));
      if (!is_automorphism(edges, sigma)) throw std::logic_error("component_symmetries: emitted a non-automorphism");
      for (Vertex v : protected_vertices) {
        if (sigma(v) != v) throw std::logic_error("component_symmetries: moved a protected vertex");
      }
      out.automorphisms.push_back(std::move(sigma));
    }
  }
  return out;
}

}  // namespace malign
