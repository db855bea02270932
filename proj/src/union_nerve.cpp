#include "cracklelab/union_nerve.hpp"

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <tuple>
#include <unordered_map>

#include "cracklelab/errors.hpp"
#include "cracklelab/geometric_complex.hpp"

namespace cracklelab {

namespace {

using Rational = boost::multiprecision::cpp_rational;

constexpr int kGhost = -1;
constexpr double kOrientFilter = 1e-15;
constexpr double kPowerFilter = 1e-13;

struct Site {
  double x;
  double y;
  double w;
};

int sign_of(const Rational& value) { return value.sign(); }

int orient(const Site& a, const Site& b, const Site& c) {
  const double l = (b.x - a.x) * (c.y - a.y);
  const double r = (b.y - a.y) * (c.x - a.x);
  const double det = l - r;
  const double bound = kOrientFilter * (std::abs(l) + std::abs(r));
  if (det > bound) return 1;
  if (det < -bound) return -1;
  const Rational ex = (Rational(b.x) - a.x) * (Rational(c.y) - a.y) -
                      (Rational(b.y) - a.y) * (Rational(c.x) - a.x);
  return sign_of(ex);
}

// Positive iff p lies strictly inside the orthocircle of the counter-clockwise
// triangle abc, i.e. p would remove abc from the regular triangulation.
int power_test(const Site& a, const Site& b, const Site& c, const Site& p) {
  const double adx = a.x - p.x, ady = a.y - p.y;
  const double bdx = b.x - p.x, bdy = b.y - p.y;
  const double cdx = c.x - p.x, cdy = c.y - p.y;
  const double al = adx * adx + ady * ady - a.w + p.w;
  const double bl = bdx * bdx + bdy * bdy - b.w + p.w;
  const double cl = cdx * cdx + cdy * cdy - c.w + p.w;
  const double m_a = bdx * cdy - bdy * cdx;
  const double m_b = cdx * ady - cdy * adx;
  const double m_c = adx * bdy - ady * bdx;
  const double det = al * m_a + bl * m_b + cl * m_c;
  const double perm_a = adx * adx + ady * ady + std::abs(a.w) + std::abs(p.w);
  const double perm_b = bdx * bdx + bdy * bdy + std::abs(b.w) + std::abs(p.w);
  const double perm_c = cdx * cdx + cdy * cdy + std::abs(c.w) + std::abs(p.w);
  const double perm = perm_a * (std::abs(bdx * cdy) + std::abs(bdy * cdx)) +
                      perm_b * (std::abs(cdx * ady) + std::abs(cdy * adx)) +
                      perm_c * (std::abs(adx * bdy) + std::abs(ady * bdx));
  const double bound = kPowerFilter * perm;
  if (det > bound) return 1;
  if (det < -bound) return -1;
  const Rational ax = Rational(a.x) - p.x, ay = Rational(a.y) - p.y;
  const Rational bx = Rational(b.x) - p.x, by = Rational(b.y) - p.y;
  const Rational cx = Rational(c.x) - p.x, cy = Rational(c.y) - p.y;
  const Rational pw(p.w);
  const Rational el = ax * ax + ay * ay - a.w + pw;
  const Rational fl = bx * bx + by * by - b.w + pw;
  const Rational gl = cx * cx + cy * cy - c.w + pw;
  return sign_of(el * (bx * cy - by * cx) + fl * (cx * ay - cy * ax) + gl * (ax * by - ay * bx));
}

struct Triangle {
  std::array<int, 3> v;
  std::array<int, 3> n;
  bool alive = true;
};

class Triangulator {
 public:
  explicit Triangulator(std::vector<Site> sites) : sites_(std::move(sites)) {}

  bool run() {
    const int count = static_cast<int>(sites_.size());
    if (count < 3) return false;
    int third = -1;
    for (int i = 2; i < count; ++i) {
      if (orient(sites_[0], sites_[1], sites_[static_cast<std::size_t>(i)]) != 0) {
        third = i;
        break;
      }
    }
    if (third < 0) return false;
    seed(0, 1, third);
    for (int i = 2; i < count; ++i) {
      if (i != third) insert(i);
    }
    return true;
  }

  std::vector<std::array<int, 3>> real_triangles() const {
    std::vector<std::array<int, 3>> out;
    for (const auto& t : tris_) {
      if (t.alive && !is_ghost(t)) out.push_back(t.v);
    }
    return out;
  }

  const std::vector<Triangle>& triangles() const { return tris_; }

  static bool is_ghost(const Triangle& t) {
    return t.v[0] == kGhost || t.v[1] == kGhost || t.v[2] == kGhost;
  }

 private:
  const Site& site(int i) const { return sites_[static_cast<std::size_t>(i)]; }

  void seed(int a, int b, int c) {
    if (orient(site(a), site(b), site(c)) < 0) std::swap(b, c);
    tris_.push_back({{a, b, c}, {-1, -1, -1}});
    tris_.push_back({{c, b, kGhost}, {-1, -1, -1}});
    tris_.push_back({{a, c, kGhost}, {-1, -1, -1}});
    tris_.push_back({{b, a, kGhost}, {-1, -1, -1}});
    for (int t = 0; t < 4; ++t) {
      for (int i = 0; i < 3; ++i) {
        const int u = tris_[t].v[(i + 1) % 3];
        const int w = tris_[t].v[(i + 2) % 3];
        for (int s = 0; s < 4; ++s) {
          if (s != t && find_edge(tris_[s], w, u) >= 0) tris_[t].n[i] = s;
        }
      }
    }
    last_ = 0;
  }

  // Index i such that (v[i+1], v[i+2]) = (u, w), or -1.
  static int find_edge(const Triangle& t, int u, int w) {
    for (int i = 0; i < 3; ++i) {
      if (t.v[(i + 1) % 3] == u && t.v[(i + 2) % 3] == w) return i;
    }
    return -1;
  }

  bool conflicts(int t_index, int p) const {
    const Triangle& t = tris_[static_cast<std::size_t>(t_index)];
    if (!is_ghost(t)) return power_test(site(t.v[0]), site(t.v[1]), site(t.v[2]), site(p)) > 0;
    int g = 0;
    while (t.v[g] != kGhost) ++g;
    const Site& a = site(t.v[(g + 1) % 3]);
    const Site& b = site(t.v[(g + 2) % 3]);
    const int side = orient(a, b, site(p));
    if (side != 0) return side > 0;
    // On the hull line: conflict only strictly inside the segment, and then
    // exactly when the real triangle behind the edge conflicts.
    const Site& q = site(p);
    const double along = (q.x - a.x) * (b.x - a.x) + (q.y - a.y) * (b.y - a.y);
    const double length = (b.x - a.x) * (b.x - a.x) + (b.y - a.y) * (b.y - a.y);
    if (!(along > 0.0 && along < length)) return false;
    return conflicts(t.n[g], p);
  }

  int locate(int p) const {
    int t = last_;
    const std::size_t cap = 4 * tris_.size() + 64;
    for (std::size_t step = 0; step < cap; ++step) {
      const Triangle& tri = tris_[static_cast<std::size_t>(t)];
      if (is_ghost(tri)) return t;
      int next = -1;
      for (int k = 0; k < 3; ++k) {
        const int i = static_cast<int>((step + static_cast<std::size_t>(k)) % 3);
        if (orient(site(tri.v[(i + 1) % 3]), site(tri.v[(i + 2) % 3]), site(p)) < 0) {
          next = tri.n[i];
          break;
        }
      }
      if (next < 0) return t;
      t = next;
    }
    // Walk failed to terminate: exhaustive scan.
    for (int s = 0; s < static_cast<int>(tris_.size()); ++s) {
      const Triangle& tri = tris_[static_cast<std::size_t>(s)];
      if (!tri.alive || is_ghost(tri)) continue;
      bool inside = true;
      for (int i = 0; i < 3 && inside; ++i) {
        inside = orient(site(tri.v[(i + 1) % 3]), site(tri.v[(i + 2) % 3]), site(p)) >= 0;
      }
      if (inside) return s;
    }
    for (int s = 0; s < static_cast<int>(tris_.size()); ++s) {
      if (tris_[static_cast<std::size_t>(s)].alive && is_ghost(tris_[static_cast<std::size_t>(s)]) &&
          conflicts(s, p)) {
        return s;
      }
    }
    throw DomainError("regular triangulation: point location failed");
  }

  void insert(int p) {
    const int start = locate(p);
    if (!conflicts(start, p)) return;  // hidden by its neighbours
    ++stamp_;
    mark_.resize(tris_.size(), 0);
    verdict_.resize(tris_.size(), false);
    std::vector<int> cavity{start};
    std::vector<std::pair<int, int>> boundary;  // (cavity triangle, edge index)
    mark_[static_cast<std::size_t>(start)] = stamp_;
    verdict_[static_cast<std::size_t>(start)] = true;
    for (std::size_t c = 0; c < cavity.size(); ++c) {
      const int t = cavity[c];
      for (int i = 0; i < 3; ++i) {
        const int o = tris_[static_cast<std::size_t>(t)].n[i];
        auto& seen = mark_[static_cast<std::size_t>(o)];
        if (seen != stamp_) {
          seen = stamp_;
          verdict_[static_cast<std::size_t>(o)] = conflicts(o, p);
          if (verdict_[static_cast<std::size_t>(o)]) cavity.push_back(o);
        }
        if (!verdict_[static_cast<std::size_t>(o)]) boundary.emplace_back(t, i);
      }
    }
    std::unordered_map<int, int> by_first;
    std::unordered_map<int, int> by_second;
    std::vector<int> created;
    created.reserve(boundary.size());
    for (const auto& [t, i] : boundary) {
      const Triangle& old = tris_[static_cast<std::size_t>(t)];
      const int u = old.v[(i + 1) % 3];
      const int w = old.v[(i + 2) % 3];
      const int o = old.n[i];
      const int fresh = static_cast<int>(tris_.size());
      tris_.push_back({{u, w, p}, {-1, -1, o}});
      Triangle& outside = tris_[static_cast<std::size_t>(o)];
      for (int j = 0; j < 3; ++j) {
        if (outside.n[j] == t) outside.n[j] = fresh;
      }
      by_first[u] = fresh;
      by_second[w] = fresh;
      created.push_back(fresh);
    }
    for (const int fresh : created) {
      Triangle& tri = tris_[static_cast<std::size_t>(fresh)];
      tri.n[0] = by_first.at(tri.v[1]);
      tri.n[1] = by_second.at(tri.v[0]);
    }
    for (const int t : cavity) tris_[static_cast<std::size_t>(t)].alive = false;
    last_ = created.front();
    for (const int fresh : created) {
      if (!is_ghost(tris_[static_cast<std::size_t>(fresh)])) {
        last_ = fresh;
        break;
      }
    }
  }

  std::vector<Site> sites_;
  std::vector<Triangle> tris_;
  std::vector<unsigned> mark_;
  std::vector<bool> verdict_;
  unsigned stamp_ = 0;
  int last_ = 0;
};

struct Prepared {
  std::vector<Site> sites;
  std::vector<Vertex> original;  // site index -> input index
};

Prepared prepare(const Eigen::Matrix2Xd& points, const Eigen::VectorXd& weights) {
  const auto n = static_cast<std::size_t>(points.cols());
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  auto key = [&](std::size_t i) {
    return std::tuple(points(0, static_cast<Eigen::Index>(i)), points(1, static_cast<Eigen::Index>(i)));
  };
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (key(a) != key(b)) return key(a) < key(b);
    return weights[static_cast<Eigen::Index>(a)] > weights[static_cast<Eigen::Index>(b)];
  });
  std::vector<bool> keep(n, false);
  for (std::size_t s = 0; s < n; ++s) {
    if (s == 0 || key(order[s]) != key(order[s - 1])) keep[order[s]] = true;
  }
  // Insertion follows input order; sampled clouds are already in random order.
  Prepared out;
  for (std::size_t i = 0; i < n; ++i) {
    if (!keep[i]) continue;
    const auto col = static_cast<Eigen::Index>(i);
    out.sites.push_back({points(0, col), points(1, col), weights[col]});
    out.original.push_back(static_cast<Vertex>(i));
  }
  return out;
}

struct Orthocenter {
  double x;
  double y;
  double power;  // common power of the three sites at the orthocenter
};

Orthocenter orthocenter(const Site& a, const Site& b, const Site& c) {
  const double bx = b.x - a.x, by = b.y - a.y;
  const double cx = c.x - a.x, cy = c.y - a.y;
  const double rb = bx * bx + by * by - b.w + a.w;
  const double rc = cx * cx + cy * cy - c.w + a.w;
  const double den = 2.0 * (bx * cy - by * cx);
  const double zx = (rb * cy - rc * by) / den;
  const double zy = (bx * rc - cx * rb) / den;
  return {a.x + zx, a.y + zy, zx * zx + zy * zy - a.w};
}

}  // namespace

std::optional<RegularTriangulation2> regular_triangulation(const Eigen::Matrix2Xd& points,
                                                           const Eigen::VectorXd& weights) {
  if (weights.size() != points.cols()) throw DomainError("one weight per point is required");
  auto prepared = prepare(points, weights);
  Triangulator triangulator(prepared.sites);
  if (!triangulator.run()) return std::nullopt;
  RegularTriangulation2 out;
  out.present.assign(static_cast<std::size_t>(points.cols()), false);
  for (const auto& t : triangulator.real_triangles()) {
    std::array<Vertex, 3> mapped{};
    for (int i = 0; i < 3; ++i) {
      mapped[static_cast<std::size_t>(i)] = prepared.original[static_cast<std::size_t>(t[static_cast<std::size_t>(i)])];
      out.present[mapped[static_cast<std::size_t>(i)]] = true;
    }
    out.triangles.push_back(mapped);
  }
  return out;
}

SimplicialComplex build_weighted_alpha(const Eigen::MatrixXd& points, const Eigen::VectorXd& radii,
                                       double tol) {
  if (points.rows() != 2) throw DomainError("the weighted alpha complex is implemented for d = 2");
  if (radii.size() != points.cols()) throw DomainError("one radius per point is required");
  for (Eigen::Index i = 0; i < radii.size(); ++i) {
    if (!(radii[i] > 0) || !std::isfinite(radii[i])) {
      throw DomainError("radius of vertex " + std::to_string(i) + " must be positive and finite");
    }
  }
  const Eigen::VectorXd weights = radii.array().square().matrix();
  auto prepared = prepare(points, weights);
  Triangulator triangulator(prepared.sites);
  if (!triangulator.run()) return build_cech(points, radii, 2);

  const auto& sites = prepared.sites;
  const auto& tris = triangulator.triangles();
  auto site = [&](int i) -> const Site& { return sites[static_cast<std::size_t>(i)]; };
  auto original = [&](int i) { return prepared.original[static_cast<std::size_t>(i)]; };

  std::vector<Orthocenter> centers(tris.size());
  for (std::size_t t = 0; t < tris.size(); ++t) {
    if (tris[t].alive && !Triangulator::is_ghost(tris[t])) {
      centers[t] = orthocenter(site(tris[t].v[0]), site(tris[t].v[1]), site(tris[t].v[2]));
    }
  }

  SimplicialComplex out(static_cast<std::size_t>(points.cols()));
  std::vector<std::vector<int>> neighbours(sites.size());
  auto add_sorted = [&](std::vector<Vertex> simplex) {
    std::sort(simplex.begin(), simplex.end());
    out.add(simplex);
  };

  for (std::size_t t = 0; t < tris.size(); ++t) {
    const Triangle& tri = tris[t];
    if (!tri.alive || Triangulator::is_ghost(tri)) continue;
    if (centers[t].power <= tol) add_sorted({original(tri.v[0]), original(tri.v[1]), original(tri.v[2])});
    for (int i = 0; i < 3; ++i) {
      const int u = tri.v[(i + 1) % 3];
      const int w = tri.v[(i + 2) % 3];
      const int other = tri.n[i];
      const Triangle& across = tris[static_cast<std::size_t>(other)];
      const bool hull = Triangulator::is_ghost(across);
      if (!hull && other < static_cast<int>(t)) continue;  // handled from the other side
      neighbours[static_cast<std::size_t>(u)].push_back(w);
      neighbours[static_cast<std::size_t>(w)].push_back(u);
      // Radical point m on the line uw and the signed offsets of the dual
      // power edge along the left normal.
      const Site& a = site(u);
      const Site& b = site(w);
      const double dx = b.x - a.x, dy = b.y - a.y;
      const double len2 = dx * dx + dy * dy;
      const double len = std::sqrt(len2);
      const double lambda = 0.5 + (a.w - b.w) / (2.0 * len2);
      const double mx = a.x + lambda * dx, my = a.y + lambda * dy;
      const double nx = -dy / len, ny = dx / len;
      const double power_m = lambda * lambda * len2 - a.w;
      const double s_left = (centers[t].x - mx) * nx + (centers[t].y - my) * ny;
      double lo = -std::numeric_limits<double>::infinity();
      double hi = s_left;
      if (!hull) {
        const auto& z = centers[static_cast<std::size_t>(other)];
        const double s_right = (z.x - mx) * nx + (z.y - my) * ny;
        lo = std::min(s_left, s_right);
        hi = std::max(s_left, s_right);
      }
      const double s = std::clamp(0.0, lo, hi);
      if (power_m + s * s <= tol) add_sorted({original(u), original(w)});
    }
  }

  // A vertex whose center lies in its own power cell meets that cell.
  for (std::size_t i = 0; i < sites.size(); ++i) {
    if (neighbours[i].empty()) continue;
    const Site& a = sites[i];
    bool own_cell = true;
    for (const int j : neighbours[i]) {
      const Site& b = site(j);
      const double dx = a.x - b.x, dy = a.y - b.y;
      if (dx * dx + dy * dy - b.w < -a.w) {
        own_cell = false;
        break;
      }
    }
    if (own_cell) out.add({original(static_cast<int>(i))});
  }
  out.close_downward();
  return out;
}

NerveKind parse_nerve_kind(std::string_view name) {
  if (name == "auto") return NerveKind::Auto;
  if (name == "cech") return NerveKind::Cech;
  if (name == "alpha") return NerveKind::Alpha;
  throw ConfigError("unknown complex kind '" + std::string(name) + "' (expected auto, cech or alpha)");
}

std::string_view to_string(NerveKind kind) {
  switch (kind) {
    case NerveKind::Auto: return "auto";
    case NerveKind::Cech: return "cech";
    case NerveKind::Alpha: return "alpha";
  }
  return "auto";
}

SimplicialComplex build_union_nerve(const Eigen::MatrixXd& points, const Eigen::VectorXd& radii,
                                    int max_dim, NerveKind kind) {
  const bool planar_full = points.rows() == 2 && max_dim == 2;
  if (kind == NerveKind::Alpha && !planar_full) {
    throw DomainError("the alpha complex requires d = 2 and max_dim = 2");
  }
  if (kind == NerveKind::Alpha || (kind == NerveKind::Auto && planar_full)) {
    return build_weighted_alpha(points, radii);
  }
  return build_cech(points, radii, max_dim);
}

}  // namespace cracklelab
