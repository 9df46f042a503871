#include "beliefs/kl_clusters.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <utility>

#include "beliefs/error.hpp"

namespace beliefs {
namespace {

PointCloud prepare(const PointCloud& cloud, std::size_t dim, double floor, const char* name) {
  if (cloud.empty()) throw Error(ErrorCode::InvalidArgument, std::string(name) + " is empty");
  PointCloud out;
  out.reserve(cloud.size());
  for (const auto& v : cloud) {
    if (v.size() != dim) {
      throw Error(ErrorCode::LengthMismatch, std::to_string(v.size()) + " vs " + std::to_string(dim));
    }
    double s = 0.0;
    for (double x : v) {
      if (!(x >= 0.0)) throw Error(ErrorCode::InvalidArgument, std::string(name) + " has a negative entry");
      s += x;
    }
    if (std::fabs(s - 1.0) > 1e-9) {
      throw Error(ErrorCode::InvalidArgument, std::string(name) + " point sums to " + std::to_string(s));
    }
    std::vector<double> f(v);
    double t = 0.0;
    for (double& x : f) {
      x = std::max(x, floor);
      t += x;
    }
    for (double& x : f) x /= t;
    out.push_back(std::move(f));
  }
  return out;
}

// Convex combination of the vertices.
void combine(const PointCloud& verts, const std::vector<double>& w, std::vector<double>& out) {
  std::fill(out.begin(), out.end(), 0.0);
  for (std::size_t k = 0; k < verts.size(); ++k) {
    if (w[k] == 0.0) continue;
    for (std::size_t j = 0; j < out.size(); ++j) out[j] += w[k] * verts[k][j];
  }
}

double kl(const std::vector<double>& q, const std::vector<double>& p) {
  double d = 0.0;
  for (std::size_t j = 0; j < q.size(); ++j) {
    if (q[j] > 0.0) d += q[j] * std::log(q[j] / p[j]);
  }
  return d;
}

struct Block {
  const PointCloud* verts;
  std::vector<double> w;
  std::vector<double> x;  // current point
};

struct Candidate {
  double gap = -1.0;
  std::size_t block = 0;
  std::vector<double> dir;  // in weight space
  double max_step = 0.0;
};

class Solver {
 public:
  Solver(const PointCloud& a, const PointCloud& b) {
    blocks_[0] = {&a, std::vector<double>(a.size(), 1.0 / double(a.size())), {}};
    blocks_[1] = {&b, std::vector<double>(b.size(), 1.0 / double(b.size())), {}};
    for (auto& bl : blocks_) {
      bl.x.assign(a.front().size(), 0.0);
      combine(*bl.verts, bl.w, bl.x);
    }
  }

  HullDistance run(double tol) {
    for (std::size_t it = 0; it < kFrankWolfeCap; ++it) {
      double fw_gap = 0.0;
      Candidate best;
      for (std::size_t k = 0; k < 2; ++k) {
        const std::vector<double> g = weight_gradient(k);
        const auto& w = blocks_[k].w;
        const double wg = std::inner_product(w.begin(), w.end(), g.begin(), 0.0);
        const std::size_t s = static_cast<std::size_t>(std::min_element(g.begin(), g.end()) - g.begin());
        std::size_t a = s;
        for (std::size_t v = 0; v < w.size(); ++v) {
          if (w[v] > 0.0 && (w[a] == 0.0 || g[v] > g[a])) a = v;
        }
        const double toward = wg - g[s];
        const double away = g[a] - wg;
        fw_gap += std::max(toward, 0.0);
        if (toward >= away && toward > best.gap) {
          best.gap = toward;
          best.block = k;
          best.dir.assign(w.size(), 0.0);
          for (std::size_t v = 0; v < w.size(); ++v) best.dir[v] = -w[v];
          best.dir[s] += 1.0;
          best.max_step = 1.0;
        } else if (away > toward && away > best.gap) {
          best.gap = away;
          best.block = k;
          best.dir = w;
          best.dir[a] -= 1.0;
          best.max_step = w[a] < 1.0 ? w[a] / (1.0 - w[a]) : 1.0;
        }
      }
      if (fw_gap <= tol) return result(fw_gap, it);
      step(best);
    }
    throw Error(ErrorCode::NonConvergence, std::to_string(kFrankWolfeCap) + " iterations");
  }

 private:
  HullDistance result(double gap, std::size_t it) const {
    return {kl(blocks_[0].x, blocks_[1].x), blocks_[0].w, blocks_[1].w, gap, it};
  }

  // Gradient of KL(q || p) in the point coordinates of block k.
  std::vector<double> point_gradient(std::size_t k, const std::vector<double>& q,
                                     const std::vector<double>& p) const {
    std::vector<double> g(q.size());
    for (std::size_t j = 0; j < q.size(); ++j) {
      g[j] = k == 0 ? std::log(q[j] / p[j]) + 1.0 : -q[j] / p[j];
    }
    return g;
  }

  std::vector<double> weight_gradient(std::size_t k) const {
    const std::vector<double> gp = point_gradient(k, blocks_[0].x, blocks_[1].x);
    const PointCloud& verts = *blocks_[k].verts;
    std::vector<double> g(verts.size());
    for (std::size_t v = 0; v < verts.size(); ++v) {
      g[v] = std::inner_product(verts[v].begin(), verts[v].end(), gp.begin(), 0.0);
    }
    return g;
  }

  // Exact line search: bisection on the directional derivative, which is
  // nondecreasing along the segment by convexity.
  void step(const Candidate& c) {
    Block& bl = blocks_[c.block];
    std::vector<double> dx(bl.x.size());
    combine(*bl.verts, c.dir, dx);
    auto slope = [&](double t) {
      std::vector<double> q = blocks_[0].x;
      std::vector<double> p = blocks_[1].x;
      std::vector<double>& moved = c.block == 0 ? q : p;
      for (std::size_t j = 0; j < moved.size(); ++j) moved[j] += t * dx[j];
      const std::vector<double> g = point_gradient(c.block, q, p);
      return std::inner_product(g.begin(), g.end(), dx.begin(), 0.0);
    };
    double t = c.max_step;
    if (slope(c.max_step) > 0.0) {
      double lo = 0.0;
      double hi = c.max_step;
      for (int i = 0; i < 60; ++i) {
        const double mid = 0.5 * (lo + hi);
        (slope(mid) > 0.0 ? hi : lo) = mid;
      }
      t = 0.5 * (lo + hi);
    }
    for (std::size_t v = 0; v < bl.w.size(); ++v) {
      bl.w[v] = std::max(0.0, bl.w[v] + t * c.dir[v]);
    }
    const double s = std::accumulate(bl.w.begin(), bl.w.end(), 0.0);
    for (double& x : bl.w) x /= s;
    combine(*bl.verts, bl.w, bl.x);
  }

  Block blocks_[2];
};

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }
  Groups groups() {
    Groups out;
    std::vector<std::size_t> slot(parent_.size(), std::numeric_limits<std::size_t>::max());
    for (std::size_t i = 0; i < parent_.size(); ++i) {
      const std::size_t r = find(i);
      if (slot[r] == std::numeric_limits<std::size_t>::max()) {
        slot[r] = out.size();
        out.emplace_back();
      }
      out[slot[r]].push_back(i);
    }
    return out;
  }

 private:
  std::vector<std::size_t> parent_;
};

PointCloud subset(const PointCloud& cloud, const std::vector<std::size_t>& idx) {
  PointCloud out;
  for (std::size_t i : idx) out.push_back(cloud[i]);
  return out;
}

}  // namespace

HullDistance solve_hull_distance(const PointCloud& a, const PointCloud& b, double tol,
                                 double floor) {
  if (!(tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "tol must be positive");
  if (!(floor > 0.0)) throw Error(ErrorCode::InvalidArgument, "hull distances need a positive floor");
  if (a.empty() || b.empty()) throw Error(ErrorCode::InvalidArgument, "empty hull");
  const std::size_t dim = a.front().size();
  const PointCloud fa = prepare(a, dim, floor, "first hull");
  const PointCloud fb = prepare(b, dim, floor, "second hull");
  return Solver(fa, fb).run(tol);
}

double min_kl_hull_to_point(const PointCloud& hull, std::span<const double> target, double tol) {
  return solve_hull_distance(hull, {std::vector<double>(target.begin(), target.end())}, tol).value;
}

double min_kl_hull_to_hull(const PointCloud& a, const PointCloud& b, double tol) {
  return solve_hull_distance(a, b, tol).value;
}

ClusterPartition epsilon_kl_clusters(const PointCloud& cloud, double epsilon, double tol) {
  if (!(epsilon > 0.0)) throw Error(ErrorCode::InvalidArgument, "epsilon must be positive");
  if (cloud.empty()) throw Error(ErrorCode::InvalidArgument, "empty point cloud");
  const std::size_t n = cloud.size();
  ClusterPartition out;
  out.epsilon = epsilon;

  UnionFind uf(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j && kl_divergence(cloud[i], cloud[j]) < epsilon) uf.unite(i, j);
    }
  }
  Groups groups = uf.groups();
  out.count_history.push_back(groups.size());

  for (;;) {
    std::vector<std::pair<std::size_t, std::size_t>> merges;
    for (std::size_t a = 0; a < groups.size(); ++a) {
      const PointCloud va = subset(cloud, groups[a]);
      for (std::size_t b = a + 1; b < groups.size(); ++b) {
        const PointCloud vb = subset(cloud, groups[b]);
        if (min_kl_hull_to_hull(va, vb, tol) < epsilon || min_kl_hull_to_hull(vb, va, tol) < epsilon) {
          merges.emplace_back(a, b);
        }
      }
    }
    if (merges.empty()) break;
    for (auto [a, b] : merges) uf.unite(groups[a].front(), groups[b].front());
    groups = uf.groups();
    out.count_history.push_back(groups.size());
  }

  out.clusters = groups;
  for (const auto& g : groups) {
    bool ok = true;
    for (std::size_t k = 0; ok && g.size() > 1 && k < g.size(); ++k) {
      std::vector<std::size_t> rest(g);
      rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(k));
      ok = min_kl_hull_to_point(subset(cloud, rest), cloud[g[k]], tol) < epsilon;
    }
    out.internal_condition.push_back(ok);
  }
  return out;
}

PointCloud rows_of(const Matrix& m) {
  PointCloud out;
  for (std::size_t i = 0; i < m.rows(); ++i) out.emplace_back(m.row(i).begin(), m.row(i).end());
  return out;
}

PointCloud normalized_columns_of(const Matrix& m) {
  return rows_of(col_normalize(m).transposed());
}

}  // namespace beliefs
