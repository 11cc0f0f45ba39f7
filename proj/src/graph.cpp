#include "polargrass/graph.hpp"

#include <algorithm>
#include <set>

#include "polargrass/parallel.hpp"

namespace polargrass {

Graph::Graph(std::vector<std::vector<VertexId>> adjacency, bool require_connected) : adj_(std::move(adjacency)) {
  const auto n = static_cast<VertexId>(adj_.size());
  std::uint64_t half_edges = 0;
  for (VertexId v = 0; v < n; ++v) {
    auto& nb = adj_[v];
    std::sort(nb.begin(), nb.end());
    nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
    for (VertexId w : nb) {
      if (w < 0 || w >= n) throw Error(Errc::InvalidGraph, "neighbor id out of range");
      if (w == v) throw Error(Errc::InvalidGraph, "loop at vertex " + std::to_string(v));
    }
    half_edges += nb.size();
  }
  for (VertexId v = 0; v < n; ++v) {
    for (VertexId w : adj_[v]) {
      if (!std::binary_search(adj_[w].begin(), adj_[w].end(), v)) {
        throw Error(Errc::InvalidGraph, "adjacency is not symmetric at (" + std::to_string(v) + ", " +
                                            std::to_string(w) + ")");
      }
    }
  }
  edges_ = half_edges / 2;
  if (require_connected && !connected()) throw Error(Errc::NotConnected, "graph is not connected");
}

Graph Graph::from_edges(VertexId n, const std::vector<std::pair<VertexId, VertexId>>& edges, bool require_connected) {
  std::vector<std::vector<VertexId>> adj(n);
  for (auto [a, b] : edges) {
    if (a < 0 || b < 0 || a >= n || b >= n) throw Error(Errc::InvalidGraph, "edge endpoint out of range");
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  return Graph(std::move(adj), require_connected);
}

VertexId Graph::check(VertexId v) const {
  if (v < 0 || v >= size()) throw Error(Errc::UnknownVertex, "vertex id " + std::to_string(v));
  return v;
}

bool Graph::adjacent(VertexId v, VertexId w) const {
  const auto& nb = adj_[check(v)];
  check(w);
  return std::binary_search(nb.begin(), nb.end(), w);
}

bool Graph::connected() const {
  if (adj_.empty()) return true;
  const auto d = bfs(0);
  return std::none_of(d.begin(), d.end(), [](int x) { return x < 0; });
}

std::vector<int> Graph::bfs(VertexId source) const {
  check(source);
  std::vector<int> dist(adj_.size(), -1);
  std::vector<VertexId> queue;
  queue.reserve(adj_.size());
  queue.push_back(source);
  dist[source] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const VertexId x = queue[head];
    const int dx = dist[x] + 1;
    for (VertexId y : adj_[x]) {
      if (dist[y] < 0) {
        dist[y] = dx;
        queue.push_back(y);
      }
    }
  }
  return dist;
}

int Graph::distance(VertexId v, VertexId w) const {
  check(w);
  return bfs(v)[w];
}

int DistanceMatrix::max() const noexcept {
  int best = 0;
  for (auto x : d_) {
    if (x != kUnreachable) best = std::max<int>(best, x);
  }
  return best;
}

DistanceMatrix all_pairs_distances(const Graph& g, const Budget& budget) {
  enforce_budget(static_cast<std::uint64_t>(g.size()), budget.max_all_pairs_vertices, "all-pairs distances");
  DistanceMatrix dm(g.size());
  parallel_for(static_cast<std::size_t>(g.size()), [&](std::size_t s) {
    const auto d = g.bfs(static_cast<VertexId>(s));
    auto* row = dm.row(static_cast<VertexId>(s));
    for (std::size_t t = 0; t < d.size(); ++t) {
      row[t] = d[t] < 0 ? DistanceMatrix::kUnreachable : static_cast<std::uint8_t>(std::min(d[t], 254));
    }
  });
  return dm;
}

int diameter(const Graph& g, const Budget&) {
  std::vector<int> ecc(static_cast<std::size_t>(g.size()), 0);
  parallel_for(ecc.size(), [&](std::size_t s) {
    const auto d = g.bfs(static_cast<VertexId>(s));
    ecc[s] = *std::max_element(d.begin(), d.end());
  });
  return ecc.empty() ? 0 : *std::max_element(ecc.begin(), ecc.end());
}

std::vector<VertexId> common_neighbors(const Graph& g, VertexId v, VertexId w) {
  const auto& a = g.neighbors(v);
  const auto& b = g.neighbors(w);
  std::vector<VertexId> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

namespace {

using Set = std::vector<VertexId>;

Set intersect(const Set& a, const Set& b) {
  Set out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::size_t intersect_size(const Set& a, const Set& b) {
  std::size_t n = 0;
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) ++i;
    else if (*j < *i) ++j;
    else {
      ++n;
      ++i;
      ++j;
    }
  }
  return n;
}

struct CliqueSearch {
  const Graph& g;
  std::uint64_t limit;
  std::vector<Clique> out;

  void expand(Set& r, Set p, Set x) {
    if (p.empty()) {
      if (x.empty()) {
        if (out.size() >= limit) {
          throw Error(Errc::BudgetExceeded, "maximal cliques: more than " + std::to_string(limit));
        }
        Clique c = r;
        std::sort(c.begin(), c.end());
        out.push_back(std::move(c));
      }
      return;
    }
    // Tomita pivot: the vertex of P ∪ X with most neighbours in P.
    VertexId pivot = p.front();
    std::size_t best = 0;
    for (const Set* s : {&p, &x}) {
      for (VertexId u : *s) {
        const std::size_t k = intersect_size(p, g.neighbors(u));
        if (k > best || (k == best && u < pivot)) {
          best = k;
          pivot = u;
        }
      }
    }
    Set candidates;
    const auto& pn = g.neighbors(pivot);
    std::set_difference(p.begin(), p.end(), pn.begin(), pn.end(), std::back_inserter(candidates));
    for (VertexId v : candidates) {
      const auto& nv = g.neighbors(v);
      r.push_back(v);
      expand(r, intersect(p, nv), intersect(x, nv));
      r.pop_back();
      p.erase(std::lower_bound(p.begin(), p.end(), v));
      x.insert(std::lower_bound(x.begin(), x.end(), v), v);
    }
  }
};

std::vector<VertexId> degeneracy_order(const Graph& g) {
  const VertexId n = g.size();
  std::vector<std::size_t> deg(n);
  std::set<std::pair<std::size_t, VertexId>> heap;
  for (VertexId v = 0; v < n; ++v) {
    deg[v] = g.neighbors(v).size();
    heap.insert({deg[v], v});
  }
  std::vector<bool> removed(n, false);
  std::vector<VertexId> order;
  order.reserve(n);
  while (!heap.empty()) {
    const auto [d, v] = *heap.begin();
    heap.erase(heap.begin());
    removed[v] = true;
    order.push_back(v);
    for (VertexId w : g.neighbors(v)) {
      if (removed[w]) continue;
      heap.erase({deg[w], w});
      --deg[w];
      heap.insert({deg[w], w});
    }
  }
  return order;
}

}  // namespace

std::vector<Clique> maximal_cliques(const Graph& g, const Budget& budget) {
  CliqueSearch search{g, budget.max_cliques, {}};
  const auto order = degeneracy_order(g);
  std::vector<std::size_t> position(g.size());
  for (std::size_t i = 0; i < order.size(); ++i) position[order[i]] = i;
  for (VertexId v : order) {
    Set p, x;
    for (VertexId w : g.neighbors(v)) (position[w] > position[v] ? p : x).push_back(w);
    Set r{v};
    search.expand(r, std::move(p), std::move(x));
  }
  std::sort(search.out.begin(), search.out.end());
  return std::move(search.out);
}

std::vector<std::vector<VertexId>> geodesics_between(const Graph& g, VertexId v, VertexId w, std::size_t limit) {
  g.check(v);
  g.check(w);
  std::vector<std::vector<VertexId>> out;
  if (limit == 0) return out;
  const auto dw = g.bfs(w);
  if (dw[v] < 0) return out;
  std::vector<VertexId> path{v};
  std::function<void(VertexId)> walk = [&](VertexId x) {
    if (out.size() >= limit) return;
    if (x == w) {
      out.push_back(path);
      return;
    }
    for (VertexId y : g.neighbors(x)) {
      if (dw[y] == dw[x] - 1) {
        path.push_back(y);
        walk(y);
        path.pop_back();
        if (out.size() >= limit) return;
      }
    }
  };
  walk(v);
  return out;
}

nlohmann::json RemarkReport::to_json() const {
  nlohmann::json j{{"pass", pass},
                   {"distance2_pairs", distance2_pairs},
                   {"far_pairs", far_pairs},
                   {"min_common_neighbors", min_common_neighbors},
                   {"sampled", sampled}};
  if (!pass) {
    j["failure"] = failure;
    j["counterexample"] = {counterexample.first, counterexample.second};
  }
  return j;
}

RemarkReport check_remark_conditions(const Graph& g, std::uint64_t sample_budget, const Budget& budget) {
  const DistanceMatrix dm = all_pairs_distances(g, budget);
  const VertexId n = g.size();
  RemarkReport rep;
  const std::uint64_t total = static_cast<std::uint64_t>(n) * (n - 1) / 2;
  std::uint64_t stride = 1;
  if (sample_budget > 0 && total > sample_budget) {
    stride = (total + sample_budget - 1) / sample_budget;
    rep.sampled = true;
  }
  rep.min_common_neighbors = UINT64_MAX;

  auto fail = [&rep](VertexId v, VertexId w, std::string why) {
    rep.pass = false;
    rep.failure = std::move(why);
    rep.counterexample = {v, w};
  };

  // Is there (u, c1, c2) witnessing the second condition for the ordered pair (v, w)?
  auto far_witness = [&](VertexId v, VertexId w, int d) {
    const auto* dv = dm.row(v);
    const auto* dw = dm.row(w);
    for (VertexId u = 0; u < n; ++u) {
      if (dv[u] != d - 2 || dw[u] != 2) continue;
      const auto cn = common_neighbors(g, u, w);
      for (std::size_t a = 0; a < cn.size(); ++a) {
        const auto* dc = dm.row(cn[a]);
        for (std::size_t b = a + 1; b < cn.size(); ++b) {
          if (dc[cn[b]] == 2) return true;
        }
      }
    }
    return false;
  };

  std::uint64_t pair_index = 0;
  for (VertexId v = 0; v < n && rep.pass; ++v) {
    for (VertexId w = v + 1; w < n && rep.pass; ++w, ++pair_index) {
      if (pair_index % stride != 0) continue;
      const int d = dm(v, w);
      if (d == 2) {
        ++rep.distance2_pairs;
        const auto cn = common_neighbors(g, v, w);
        rep.min_common_neighbors = std::min<std::uint64_t>(rep.min_common_neighbors, cn.size());
        if (cn.size() <= 1) {
          fail(v, w, "distance-2 pair with " + std::to_string(cn.size()) + " common neighbour(s)");
          break;
        }
        // v–c–w extends iff some x ~ w has d(v, x) = 3 or some x ~ v has d(w, x) = 3.
        bool extends = false;
        for (VertexId x : g.neighbors(w)) extends = extends || dm(v, x) == 3;
        for (VertexId x : g.neighbors(v)) extends = extends || dm(w, x) == 3;
        if (!extends) {
          fail(v, w, "geodesic between distance-2 pair does not extend to 4 vertices");
          break;
        }
      } else if (d >= 3) {
        ++rep.far_pairs;
        if (!far_witness(v, w, d) || !far_witness(w, v, d)) {
          fail(v, w, "no (u, c1, c2) configuration for pair at distance " + std::to_string(d));
          break;
        }
      }
    }
  }
  if (rep.min_common_neighbors == UINT64_MAX) rep.min_common_neighbors = 0;
  return rep;
}

VertexId GeometryGraph::id_of(const Subspace& x) const {
  auto it = index.find(x);
  if (it == index.end()) throw Error(Errc::UnknownVertex, x.to_string());
  return it->second;
}

GeometryGraph build_geometry_graph(std::vector<Subspace> vertices,
                                   const std::function<bool(const Subspace&, const Subspace&, const Subspace&)>& accept,
                                   nlohmann::json descriptor) {
  GeometryGraph gg;
  gg.descriptor = std::move(descriptor);
  const auto n = static_cast<VertexId>(vertices.size());
  gg.index.reserve(vertices.size());
  for (VertexId v = 0; v < n; ++v) gg.index.emplace(vertices[v], v);

  std::vector<std::vector<VertexId>> adj(n);
  if (n > 0) {
    const int j = vertices.front().vdim();
    std::unordered_map<Subspace, std::vector<VertexId>, SubspaceHash> buckets;
    for (VertexId v = 0; v < n; ++v) {
      for (auto& h : subspaces_of(vertices[v], j - 1)) buckets[std::move(h)].push_back(v);
    }
    // Iterate buckets in a fixed order so construction is reproducible.
    std::vector<const std::pair<const Subspace, std::vector<VertexId>>*> ordered;
    ordered.reserve(buckets.size());
    for (const auto& entry : buckets) ordered.push_back(&entry);
    std::sort(ordered.begin(), ordered.end(), [](auto* a, auto* b) { return a->first < b->first; });
    for (const auto* entry : ordered) {
      const auto& members = entry->second;
      for (std::size_t a = 0; a < members.size(); ++a) {
        for (std::size_t b = a + 1; b < members.size(); ++b) {
          if (accept(vertices[members[a]], vertices[members[b]], entry->first)) {
            adj[members[a]].push_back(members[b]);
            adj[members[b]].push_back(members[a]);
          }
        }
      }
    }
  }
  gg.graph = Graph(std::move(adj));
  gg.vertices = std::move(vertices);
  return gg;
}

}  // namespace polargrass
