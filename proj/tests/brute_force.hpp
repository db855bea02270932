#pragma once

// Slow reference implementations used as oracles by the unit tests and the
// acceptance runner.

#include <Eigen/Core>
#include <algorithm>
#include <bitset>
#include <cmath>
#include <utility>
#include <vector>

#include "cracklelab/simplicial_complex.hpp"

namespace cracklelab::brute {

/// Grid minimum of max_i (|p − c_i|² − r_i²) over the bounding box of the
/// centers, with an upper bound on how far the true minimum can lie below it.
inline std::pair<double, double> grid_min_power(const Eigen::MatrixXd& c, const Eigen::VectorXd& r,
                                                double step) {
  const int d = static_cast<int>(c.rows());
  // The minimizer is a convex combination of the centers.
  const Eigen::VectorXd lo = c.rowwise().minCoeff();
  const Eigen::VectorXd hi = c.rowwise().maxCoeff();
  const double lip = 2.0 * (hi - lo).norm();
  std::vector<long> count(static_cast<std::size_t>(d)), at(static_cast<std::size_t>(d), 0);
  for (int k = 0; k < d; ++k) {
    count[static_cast<std::size_t>(k)] = static_cast<long>(std::ceil((hi[k] - lo[k]) / step)) + 1;
  }
  double best = INFINITY;
  Eigen::VectorXd p(d);
  while (true) {
    for (int k = 0; k < d; ++k) p[k] = lo[k] + step * static_cast<double>(at[static_cast<std::size_t>(k)]);
    double worst = -INFINITY;
    for (Eigen::Index i = 0; i < c.cols(); ++i) worst = std::max(worst, (p - c.col(i)).squaredNorm() - r[i] * r[i]);
    best = std::min(best, worst);
    int k = 0;
    for (; k < d; ++k) {
      auto& a = at[static_cast<std::size_t>(k)];
      if (++a < count[static_cast<std::size_t>(k)]) break;
      a = 0;
    }
    if (k == d) break;
  }
  return {best, lip * step * std::sqrt(static_cast<double>(d)) / 2.0};
}

/// Dense Gaussian elimination over GF(2), one bitset per k-simplex.
inline std::size_t dense_rank(const SimplicialComplex& c, int k) {
  if (k < 1 || k > c.max_dim()) return 0;
  std::vector<std::bitset<256>> rows;
  for (std::size_t j = 0; j < c.count(k); ++j) {
    std::bitset<256> col;
    const auto s = c.simplex(k, j);
    for (std::size_t drop = 0; drop < s.size(); ++drop) {
      std::vector<Vertex> face;
      for (std::size_t t = 0; t < s.size(); ++t) {
        if (t != drop) face.push_back(s[t]);
      }
      col.set(static_cast<std::size_t>(c.index_of(face)));
    }
    rows.push_back(col);
  }
  std::size_t rank = 0;
  for (std::size_t bit = 0; bit < 256 && rank < rows.size(); ++bit) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && !rows[pivot].test(bit)) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[rank], rows[pivot]);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r != rank && rows[r].test(bit)) rows[r] ^= rows[rank];
    }
    ++rank;
  }
  return rank;
}

inline std::vector<std::int64_t> dense_betti(const SimplicialComplex& c) {
  std::vector<std::int64_t> b;
  for (int k = 0; k <= c.max_dim(); ++k) {
    b.push_back(static_cast<std::int64_t>(c.count(k)) -
                static_cast<std::int64_t>(dense_rank(c, k) + dense_rank(c, k + 1)));
  }
  return b;
}

/// Union-find component count over the vertices present in `c`.
inline std::size_t union_find_components(const SimplicialComplex& c) {
  std::vector<std::size_t> parent(c.vertex_count());
  for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = i;
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t e = 0; e < c.count(1); ++e) {
    const auto s = c.simplex(1, e);
    parent[find(s[0])] = find(s[1]);
  }
  std::size_t roots = 0;
  for (std::size_t v = 0; v < c.count(0); ++v) {
    const auto x = c.simplex(0, v)[0];
    roots += find(x) == x;
  }
  return roots;
}

/// Random complex on up to `max_vertices` vertices: a few random top
/// simplices (at most tetrahedra) closed downward.
template <typename Gen>
SimplicialComplex random_complex(Gen& gen, Vertex max_vertices) {
  const auto n = static_cast<Vertex>(3 + gen() % (max_vertices - 2));
  SimplicialComplex c(n);
  const int tops = 1 + static_cast<int>(gen() % 8);
  for (int s = 0; s < tops; ++s) {
    std::vector<Vertex> simplex;
    for (Vertex v = 0; v < n; ++v) {
      if (gen() % 2) simplex.push_back(v);
    }
    if (simplex.empty()) simplex.push_back(static_cast<Vertex>(gen() % n));
    if (simplex.size() > 4) simplex.resize(4);
    c.add(simplex);
  }
  c.close_downward();
  return c;
}

/// Cone over `c` with apex vertex_count().
inline SimplicialComplex cone(const SimplicialComplex& c) {
  const auto apex = static_cast<Vertex>(c.vertex_count());
  SimplicialComplex out(c.vertex_count() + 1);
  out.add({apex});
  for (int k = 0; k <= c.max_dim(); ++k) {
    for (std::size_t i = 0; i < c.count(k); ++i) {
      std::vector<Vertex> s(c.simplex(k, i).begin(), c.simplex(k, i).end());
      out.add(s);
      s.push_back(apex);
      out.add(s);
    }
  }
  out.canonicalize();
  return out;
}

}  // namespace cracklelab::brute
