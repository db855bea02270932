#include "cracklelab/geometric_complex.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "cracklelab/errors.hpp"

namespace cracklelab {

Eigen::VectorXd knn_distances(const Eigen::MatrixXd& points, int k) {
  const Eigen::Index n = points.cols();
  if (k < 1 || k >= n) {
    throw DomainError("knn scaling needs 1 <= k < N (k=" + std::to_string(k) +
                      ", N=" + std::to_string(n) + ")");
  }
  Eigen::VectorXd out(n);
  std::vector<std::pair<double, Eigen::Index>> dist(static_cast<std::size_t>(n - 1));
  for (Eigen::Index i = 0; i < n; ++i) {
    std::size_t slot = 0;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (j != i) dist[slot++] = {(points.col(i) - points.col(j)).squaredNorm(), j};
    }
    const auto kth = dist.begin() + (k - 1);
    std::nth_element(dist.begin(), kth, dist.end());
    out[i] = std::sqrt(kth->first);
  }
  return out;
}

Eigen::VectorXd vertex_radii(const ScalingPolicy& policy, const TailProfile& profile,
                             const PointCloud& cloud) {
  policy.validate();
  if (policy.kind == ScalingKind::EmpiricalKNN) return knn_distances(cloud.points, policy.k);
  Eigen::VectorXd radii(cloud.size());
  for (Eigen::Index i = 0; i < cloud.size(); ++i) {
    radii[i] = scaling_value(policy, profile, cloud.points.col(i));
  }
  return radii;
}

double radius_at(const ScalingPolicy& policy, const TailProfile& profile, const PointCloud& cloud,
                 Eigen::Index i) {
  if (i < 0 || i >= cloud.size()) {
    throw DomainError("vertex index " + std::to_string(i) + " out of range (" +
                      std::to_string(cloud.size()) + " points)");
  }
  if (policy.kind == ScalingKind::EmpiricalKNN) {
    return knn_distances(cloud.points, policy.k)[i];
  }
  return scaling_value(policy, profile, cloud.points.col(i));
}

std::vector<Edge> candidate_pairs(const Eigen::MatrixXd& points, const Eigen::VectorXd& reach,
                                  double slack) {
  const Eigen::Index n = points.cols();
  std::vector<Edge> out;
  if (n < 2) return out;
  // Sweep along the first coordinate: j can only pair with i if their
  // projections are within reach_i + max reach.
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    return points(0, a) < points(0, b) || (points(0, a) == points(0, b) && a < b);
  });
  const double max_reach = reach.maxCoeff();
  for (std::size_t s = 0; s < order.size(); ++s) {
    const Eigen::Index i = order[s];
    const double window = reach[i] + max_reach + slack;
    for (std::size_t t = s + 1; t < order.size(); ++t) {
      const Eigen::Index j = order[t];
      if (points(0, j) - points(0, i) > window) break;
      const double limit = reach[i] + reach[j] + slack;
      if ((points.col(i) - points.col(j)).squaredNorm() <= limit * limit) {
        out.push_back({static_cast<Vertex>(std::min(i, j)), static_cast<Vertex>(std::max(i, j))});
        if (out.size() > kMaxSimplices) {
          throw ResourceError("more than " + std::to_string(kMaxSimplices) +
                              " candidate edges; reduce the bandwidth or the intensity");
        }
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

void check_radii(const Eigen::MatrixXd& points, const Eigen::VectorXd& radii) {
  if (radii.size() != points.cols()) throw DomainError("one radius per point is required");
  for (Eigen::Index i = 0; i < radii.size(); ++i) {
    if (!(radii[i] > 0) || !std::isfinite(radii[i])) {
      throw DomainError("radius of vertex " + std::to_string(i) + " must be positive and finite");
    }
  }
}

// Upper adjacency: for each vertex, its neighbours with larger index, sorted.
std::vector<std::vector<Vertex>> upper_adjacency(std::size_t n, const std::vector<Edge>& edges) {
  std::vector<std::vector<Vertex>> adj(n);
  for (const auto& e : edges) adj[e[0]].push_back(e[1]);
  for (auto& list : adj) std::sort(list.begin(), list.end());
  return adj;
}

// Grows cliques in lexicographic order. `accept` certifies each new clique;
// a rejected clique is not extended (both filters are closed under faces).
template <typename Accept>
class CliqueExpander {
 public:
  CliqueExpander(const std::vector<std::vector<Vertex>>& adj, int max_dim, Accept accept,
                 SimplicialComplex& out)
      : adj_(adj), max_dim_(max_dim), accept_(accept), out_(out) {}

  void run() {
    for (Vertex v = 0; v < adj_.size(); ++v) {
      clique_.assign(1, v);
      emit();
      if (max_dim_ >= 1) extend(adj_[v]);
    }
  }

 private:
  void emit() {
    out_.add(clique_);
    if (++emitted_ > kMaxSimplices) {
      throw ResourceError("complex exceeds " + std::to_string(kMaxSimplices) +
                          " simplices; reduce the bandwidth, intensity or max_dim");
    }
  }

  void extend(const std::vector<Vertex>& candidates) {
    std::vector<Vertex> next;
    for (const Vertex w : candidates) {
      clique_.push_back(w);
      if (accept_(clique_)) {
        emit();
        if (static_cast<int>(clique_.size()) <= max_dim_) {
          next.clear();
          const auto& nbrs = adj_[w];
          std::set_intersection(candidates.begin(), candidates.end(), nbrs.begin(), nbrs.end(),
                                std::back_inserter(next));
          if (!next.empty()) extend(std::vector<Vertex>(next));
        }
      }
      clique_.pop_back();
    }
  }

  const std::vector<std::vector<Vertex>>& adj_;
  int max_dim_;
  Accept accept_;
  SimplicialComplex& out_;
  std::vector<Vertex> clique_;
  std::size_t emitted_ = 0;
};

template <typename Accept>
SimplicialComplex expand_cliques(std::size_t n, const std::vector<Edge>& edges, int max_dim,
                                 Accept accept) {
  SimplicialComplex out(n);
  const auto adj = upper_adjacency(n, edges);
  CliqueExpander<Accept>(adj, max_dim, accept, out).run();
  out.canonicalize();
  return out;
}

}  // namespace

std::vector<Edge> build_graph(const Eigen::MatrixXd& points, const Eigen::VectorXd& radii,
                              double tol) {
  check_radii(points, radii);
  return candidate_pairs(points, radii / 2.0, tol);
}

std::vector<Edge> build_graph(const PointCloud& cloud, const ScalingPolicy& policy,
                              const TailProfile& profile) {
  return build_graph(cloud.points, vertex_radii(policy, profile, cloud));
}

SimplicialComplex build_cech(const Eigen::MatrixXd& points, const Eigen::VectorXd& radii,
                             int max_dim, double tol) {
  check_radii(points, radii);
  const int d = static_cast<int>(points.rows());
  if (max_dim < 0 || max_dim > d) {
    throw DomainError("Cech max_dim must lie in [0, d] (max_dim=" + std::to_string(max_dim) +
                      ", d=" + std::to_string(d) + ")");
  }
  // Candidate slack generous enough that every certified pair is a candidate.
  const auto edges = candidate_pairs(points, radii, 1e-6);
  Eigen::MatrixXd centers(d, d + 1);
  Eigen::VectorXd rho(d + 1);
  auto accept = [&](const std::vector<Vertex>& clique) {
    const auto m = static_cast<Eigen::Index>(clique.size());
    for (Eigen::Index j = 0; j < m; ++j) {
      centers.col(j) = points.col(clique[static_cast<std::size_t>(j)]);
      rho[j] = radii[clique[static_cast<std::size_t>(j)]];
    }
    return balls_intersect(centers.leftCols(m), rho.head(m), tol);
  };
  return expand_cliques(static_cast<std::size_t>(points.cols()), edges, max_dim, accept);
}

SimplicialComplex build_cech(const PointCloud& cloud, const ScalingPolicy& policy,
                             const TailProfile& profile, int max_dim) {
  return build_cech(cloud.points, vertex_radii(policy, profile, cloud), max_dim);
}

SimplicialComplex build_rips(const Eigen::MatrixXd& points, const Eigen::VectorXd& radii,
                             int max_dim, double tol) {
  if (max_dim < 0) throw DomainError("Rips max_dim must be nonnegative");
  const auto edges = build_graph(points, radii, tol);
  auto accept = [](const std::vector<Vertex>&) { return true; };
  return expand_cliques(static_cast<std::size_t>(points.cols()), edges, max_dim, accept);
}

SimplicialComplex build_rips(const PointCloud& cloud, const ScalingPolicy& policy,
                             const TailProfile& profile, int max_dim) {
  return build_rips(cloud.points, vertex_radii(policy, profile, cloud), max_dim);
}

}  // namespace cracklelab
