#pragma once

// Brute-force reference computations used as independent oracles. They work
// on plain integers mod a prime and never touch the library's arithmetic.

#include <cstdint>
#include <functional>
#include <vector>

namespace oracle {

using IVec = std::vector<int>;

inline std::uint64_t ipow(std::uint64_t b, int e) {
  std::uint64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

// All vectors of F_p^d as integer lists, lexicographic.
inline std::vector<IVec> all_vectors(int p, int d) {
  std::vector<IVec> out;
  const auto n = ipow(p, d);
  for (std::uint64_t code = 0; code < n; ++code) {
    IVec v(d);
    auto c = code;
    for (int i = d - 1; i >= 0; --i) {
      v[i] = static_cast<int>(c % p);
      c /= p;
    }
    out.push_back(v);
  }
  return out;
}

inline int rank_mod_p(std::vector<IVec> a, int p) {
  if (a.empty()) return 0;
  const int cols = static_cast<int>(a[0].size());
  int r = 0;
  for (int c = 0; c < cols && r < static_cast<int>(a.size()); ++c) {
    int piv = -1;
    for (int i = r; i < static_cast<int>(a.size()); ++i) {
      if (a[i][c] % p != 0) {
        piv = i;
        break;
      }
    }
    if (piv < 0) continue;
    std::swap(a[r], a[piv]);
    int inv = 1;
    while ((a[r][c] * inv) % p != 1) ++inv;
    for (auto& x : a[r]) x = (x * inv) % p;
    for (int i = 0; i < static_cast<int>(a.size()); ++i) {
      if (i == r || a[i][c] == 0) continue;
      const int f = a[i][c];
      for (int k = 0; k < cols; ++k) a[i][k] = ((a[i][k] - f * a[r][k]) % p + p) % p;
    }
    ++r;
  }
  return r;
}

// Number of i-dimensional subspaces of F_p^m, counted as ordered
// independent i-tuples divided by |GL(i, p)|, both by direct enumeration.
inline std::uint64_t count_subspaces_brute(int p, int m, int i) {
  const auto vecs = all_vectors(p, m);
  const auto small = all_vectors(p, i);
  std::function<std::uint64_t(std::vector<IVec>&, const std::vector<IVec>&)> tuples =
      [&](std::vector<IVec>& chosen, const std::vector<IVec>& pool) -> std::uint64_t {
    if (static_cast<int>(chosen.size()) == i) return 1;
    std::uint64_t total = 0;
    for (const auto& v : pool) {
      chosen.push_back(v);
      if (rank_mod_p(chosen, p) == static_cast<int>(chosen.size())) total += tuples(chosen, pool);
      chosen.pop_back();
    }
    return total;
  };
  std::vector<IVec> chosen;
  const auto bases = tuples(chosen, vecs);
  chosen.clear();
  const auto gl = tuples(chosen, small);
  return bases / gl;
}

}  // namespace oracle
