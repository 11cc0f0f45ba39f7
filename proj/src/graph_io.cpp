#include <sstream>

#include "polargrass/graph.hpp"

namespace polargrass {

namespace {

void append_size(std::string& out, std::uint64_t n) {
  if (n <= 62) {
    out.push_back(static_cast<char>(n + 63));
  } else if (n <= 258047) {
    out.push_back(126);
    for (int shift = 12; shift >= 0; shift -= 6) out.push_back(static_cast<char>(((n >> shift) & 63) + 63));
  } else {
    out.push_back(126);
    out.push_back(126);
    for (int shift = 30; shift >= 0; shift -= 6) out.push_back(static_cast<char>(((n >> shift) & 63) + 63));
  }
}

}  // namespace

std::string to_graph6(const Graph& g) {
  const std::uint64_t n = static_cast<std::uint64_t>(g.size());
  std::string out;
  append_size(out, n);
  // Bit for pair (i, j), i < j, sits at j(j-1)/2 + i in the column-wise upper triangle.
  const std::uint64_t bits = n * (n - (n > 0 ? 1 : 0)) / 2;
  std::vector<bool> x(bits, false);
  for (VertexId j = 0; j < g.size(); ++j) {
    for (VertexId i : g.neighbors(j)) {
      if (i < j) x[static_cast<std::uint64_t>(j) * (j - 1) / 2 + i] = true;
    }
  }
  for (std::uint64_t k = 0; k < bits; k += 6) {
    int byte = 0;
    for (std::uint64_t b = 0; b < 6; ++b) {
      byte <<= 1;
      if (k + b < bits && x[k + b]) byte |= 1;
    }
    out.push_back(static_cast<char>(byte + 63));
  }
  return out;
}

std::string to_dimacs(const Graph& g, const std::vector<std::string>& comments) {
  std::ostringstream os;
  for (const auto& c : comments) os << "c " << c << '\n';
  os << "p edge " << g.size() << ' ' << g.edge_count() << '\n';
  for (VertexId u = 0; u < g.size(); ++u) {
    for (VertexId v : g.neighbors(u)) {
      if (u < v) os << "e " << u + 1 << ' ' << v + 1 << '\n';
    }
  }
  return os.str();
}

nlohmann::json to_json(const GeometryGraph& g) {
  nlohmann::json vertices = nlohmann::json::array();
  for (const auto& v : g.vertices) vertices.push_back(v.to_json());
  nlohmann::json edges = nlohmann::json::array();
  for (VertexId u = 0; u < g.size(); ++u) {
    for (VertexId v : g.graph.neighbors(u)) {
      if (u < v) edges.push_back({u, v});
    }
  }
  return {{"vertices", std::move(vertices)}, {"edges", std::move(edges)}, {"metadata", g.descriptor}};
}

}  // namespace polargrass
