#include "beliefs/ternary.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

#include "beliefs/error.hpp"
#include "beliefs/homophily.hpp"

namespace beliefs {
namespace {

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
                                    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  std::string s(buf);
  return s == "-0.000" ? "0.000" : s;
}

double kl_to(std::span<const double> p, const std::array<double, 3>& x) {
  return kl_divergence(p, x);
}

}  // namespace

std::array<double, 2> ternary_point(std::span<const double> p, const TernaryStyle& style) {
  if (p.size() != 3) throw Error(ErrorCode::WrongDimension, std::to_string(p.size()) + " concepts");
  const double h = style.side * std::sqrt(3.0) / 2.0;
  const double x0 = style.margin;
  const double y0 = style.margin + h;
  return {x0 + p[1] * style.side + p[2] * style.side / 2.0, y0 - p[2] * h};
}

std::vector<std::array<double, 3>> kl_region_boundary(std::span<const double> p, double eps,
                                                      const TernaryStyle& style) {
  if (p.size() != 3) throw Error(ErrorCode::WrongDimension, std::to_string(p.size()) + " concepts");
  // Orthonormal basis of the plane sum(x) = 0.
  const double a[3] = {1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0), 0.0};
  const double b[3] = {1.0 / std::sqrt(6.0), 1.0 / std::sqrt(6.0), -2.0 / std::sqrt(6.0)};
  std::vector<std::array<double, 3>> out;
  out.reserve(style.rays);
  const double pi = std::acos(-1.0);
  for (std::size_t r = 0; r < style.rays; ++r) {
    const double th = 2.0 * pi * double(r) / double(style.rays);
    double u[3];
    for (int k = 0; k < 3; ++k) u[k] = std::cos(th) * a[k] + std::sin(th) * b[k];
    double t_max = std::numeric_limits<double>::infinity();
    for (int k = 0; k < 3; ++k) {
      if (u[k] < 0.0) t_max = std::min(t_max, -p[k] / u[k]);
    }
    auto at = [&](double t) {
      std::array<double, 3> x{};
      double s = 0.0;
      for (int k = 0; k < 3; ++k) {
        x[k] = std::max(0.0, p[k] + t * u[k]);
        s += x[k];
      }
      for (double& v : x) v /= s;
      return x;
    };
    double t = t_max;
    if (kl_to(p, at(t_max)) >= eps) {
      double lo = 0.0;
      double hi = t_max;
      for (std::size_t i = 0; i < style.bisections; ++i) {
        const double mid = 0.5 * (lo + hi);
        (kl_to(p, at(mid)) < eps ? lo : hi) = mid;
      }
      t = lo;
    }
    out.push_back(at(t));
  }
  return out;
}

std::string render_ternary(const BeliefMatrix& q,
                           const std::vector<std::pair<std::size_t, std::size_t>>& links,
                           std::span<const double> eps, const TernaryStyle& style) {
  if (q.concepts() != 3) {
    throw Error(ErrorCode::WrongDimension, std::to_string(q.concepts()) + " concepts");
  }
  if (eps.size() != q.people()) {
    throw Error(ErrorCode::LengthMismatch, "one region radius per person required");
  }
  const double h = style.side * std::sqrt(3.0) / 2.0;
  const double width = style.side + 2.0 * style.margin;
  const double height = h + 2.0 * style.margin;
  const std::array<double, 3> corners[3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(width) + "\" height=\"" +
         num(height) + "\" viewBox=\"0 0 " + num(width) + " " + num(height) + "\">\n";
  if (!style.title.empty()) {
    svg += "<text x=\"" + num(style.margin) + "\" y=\"" + num(style.margin / 2.0) +
           "\" font-size=\"14\">" + style.title + "</text>\n";
  }
  svg += "<polygon fill=\"none\" stroke=\"black\" points=\"";
  for (int k = 0; k < 3; ++k) {
    const auto c = ternary_point(corners[k], style);
    svg += (k ? " " : "") + num(c[0]) + "," + num(c[1]);
  }
  svg += "\"/>\n";
  const char* labels[3] = {"h1", "h2", "h3"};
  for (int k = 0; k < 3; ++k) {
    const auto c = ternary_point(corners[k], style);
    const double dy = k == 2 ? -8.0 : 18.0;
    svg += "<text x=\"" + num(c[0] - 8.0) + "\" y=\"" + num(c[1] + dy) + "\" font-size=\"12\">" +
           labels[k] + "</text>\n";
  }

  for (std::size_t i = 0; i < q.people(); ++i) {
    const char* color = kPalette[i % std::size(kPalette)];
    svg += "<polygon fill=\"" + std::string(color) + "\" fill-opacity=\"0.15\" stroke=\"" + color +
           "\" stroke-width=\"0.5\" points=\"";
    bool first = true;
    for (const auto& x : kl_region_boundary(q.belief(i), eps[i], style)) {
      const auto pt = ternary_point(x, style);
      svg += (first ? "" : " ") + num(pt[0]) + "," + num(pt[1]);
      first = false;
    }
    svg += "\"/>\n";
  }
  for (auto [i, j] : links) {
    const auto a = ternary_point(q.belief(i), style);
    const auto b = ternary_point(q.belief(j), style);
    svg += "<line x1=\"" + num(a[0]) + "\" y1=\"" + num(a[1]) + "\" x2=\"" + num(b[0]) +
           "\" y2=\"" + num(b[1]) + "\" stroke=\"black\" stroke-width=\"1\"/>\n";
  }
  for (std::size_t i = 0; i < q.people(); ++i) {
    const auto pt = ternary_point(q.belief(i), style);
    svg += "<circle cx=\"" + num(pt[0]) + "\" cy=\"" + num(pt[1]) + "\" r=\"4\" fill=\"" +
           kPalette[i % std::size(kPalette)] + "\"/>\n";
    svg += "<text x=\"" + num(pt[0] + 6.0) + "\" y=\"" + num(pt[1] - 6.0) +
           "\" font-size=\"11\">" + std::to_string(i + 1) + "</text>\n";
  }
  svg += "</svg>\n";
  return svg;
}

std::vector<std::pair<std::size_t, std::size_t>> undirected_links(const StochMatrix& p) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < p.rows(); ++i) {
    for (std::size_t j = i + 1; j < p.cols(); ++j) {
      if (p(i, j) > 0.0 || p(j, i) > 0.0) out.emplace_back(i, j);
    }
  }
  return out;
}

}  // namespace beliefs
