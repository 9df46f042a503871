#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "beliefs/stochastic.hpp"

namespace beliefs {

struct TernaryStyle {
  double side = 600.0;    // triangle edge in SVG units
  double margin = 40.0;
  std::size_t rays = 720;
  std::size_t bisections = 40;
  std::string title;
};

// Barycentric embedding: h1 bottom left, h2 bottom right, h3 on top.
std::array<double, 2> ternary_point(std::span<const double> p, const TernaryStyle& style = {});

// Boundary of {x : KL(p || x) < eps} clipped to the triangle, one vertex per
// ray from p.
std::vector<std::array<double, 3>> kl_region_boundary(std::span<const double> p, double eps,
                                                      const TernaryStyle& style = {});

// One point per row of q, one shaded region per person (radius eps[i]),
// one segment per link. WrongDimension unless q has three concepts.
std::string render_ternary(const BeliefMatrix& q,
                           const std::vector<std::pair<std::size_t, std::size_t>>& links,
                           std::span<const double> eps, const TernaryStyle& style = {});

// Undirected off-diagonal links of a network matrix, i < j.
std::vector<std::pair<std::size_t, std::size_t>> undirected_links(const StochMatrix& p);

}  // namespace beliefs
