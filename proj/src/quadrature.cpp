#include "photon/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace photon {

GaussLegendre::GaussLegendre(int n) : nodes(n), weights(n) {
  if (n < 1) {
    throw std::invalid_argument("Gauss-Legendre rule needs at least one node");
  }
  // Newton iteration on P_n from the Chebyshev-like initial guess; roots
  // are symmetric so only half are computed.
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1;
      double p1 = x;
      for (int j = 2; j <= n; ++j) {
        const double p2 = ((2 * j - 1) * x * p1 - (j - 1) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) {
        break;
      }
    }
    const double w = 2 / ((1 - x * x) * dp * dp);
    nodes[i] = -x;
    nodes[n - 1 - i] = x;
    weights[i] = w;
    weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) {
    nodes[n / 2] = 0;
  }
}

double pairwise_sum(std::span<const double> values) {
  constexpr std::size_t kBlock = 64;
  if (values.size() <= kBlock) {
    double s = 0;
    for (double v : values) {
      s += v;
    }
    return s;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

QuadDomain QuadDomain::bounding(const QuadDomain& a, const QuadDomain& b) {
  const Eigen::Vector3d lo = a.lower().cwiseMin(b.lower());
  const Eigen::Vector3d hi = a.upper().cwiseMax(b.upper());
  QuadDomain out;
  out.center = (lo + hi) / 2;
  out.half_width = (hi - lo) / 2;
  // keep the node spacing of the finer input on every axis
  constexpr int kMaxPoints = 256;
  double points = std::max(a.points, b.points);
  for (const QuadDomain* d : {&a, &b}) {
    for (int ax = 0; ax < 3; ++ax) {
      points = std::max(points, d->points * out.half_width(ax) / d->half_width(ax));
    }
  }
  out.points = std::min(kMaxPoints, static_cast<int>(std::ceil(points - 1e-9)));
  return out;
}

MomentumGrid::MomentumGrid(const QuadDomain& domain) {
  const GaussLegendre rule(domain.points);
  for (int a = 0; a < 3; ++a) {
    axis[a].resize(rule.nodes.size());
    weight[a].resize(rule.nodes.size());
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      axis[a][i] = domain.center(a) + domain.half_width(a) * rule.nodes[i];
      weight[a][i] = domain.half_width(a) * rule.weights[i];
    }
  }
}

}  // namespace photon
