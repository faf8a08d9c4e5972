#pragma once

#include <Eigen/Dense>

#include <span>
#include <vector>

namespace photon {

/// Gauss-Legendre rule on [-1, 1].
struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;

  explicit GaussLegendre(int n);
};

/// Pairwise (cascade) summation; error grows as O(log n) instead of O(n).
double pairwise_sum(std::span<const double> values);

/// Axis-aligned box in momentum space with a tensor-product GL rule.
struct QuadDomain {
  Eigen::Vector3d center = Eigen::Vector3d::Zero();
  Eigen::Vector3d half_width = Eigen::Vector3d::Ones();
  int points = 48;  ///< per axis

  Eigen::Vector3d lower() const { return center - half_width; }
  Eigen::Vector3d upper() const { return center + half_width; }

  /// Smallest box containing both, with the node density of the denser one.
  static QuadDomain bounding(const QuadDomain& a, const QuadDomain& b);
};

/// Nodes and weights of a QuadDomain, one vector per axis.
struct MomentumGrid {
  std::vector<double> axis[3];
  std::vector<double> weight[3];

  explicit MomentumGrid(const QuadDomain& domain);

  std::size_t size(int a) const { return axis[a].size(); }
  std::size_t total() const { return size(0) * size(1) * size(2); }
};

}  // namespace photon
