#pragma once

#include <Eigen/Dense>
#include <vector>

namespace wormhole {

/// Chebyshev-Gauss-Lobatto collocation machinery on [0,1].
///
/// Nodes are the affine images of cos(j*pi/(n-1)) sorted ascending, so
/// nodes[0] == 0 and nodes[n-1] == 1 exactly. diff1 is the spectral
/// first-derivative matrix (barycentric form, negative-sum diagonal),
/// diff2 = diff1*diff1, and quad_weights are Clenshaw-Curtis weights
/// exact for polynomials of degree <= n-1.
struct Grid {
  int n = 0;
  Eigen::VectorXd nodes;
  Eigen::MatrixXd diff1;
  Eigen::MatrixXd diff2;
  Eigen::VectorXd quad_weights;
  Eigen::VectorXd bary_weights;
};

/// Builds a collocation grid with n >= 8 nodes. Throws std::invalid_argument
/// for coarser grids.
Grid make_grid(int n);

/// Barycentric Lagrange interpolation of nodal values at a point in [0,1].
/// Exact at the nodes. Throws std::domain_error outside [0,1].
double interpolate(const Grid& grid, const Eigen::VectorXd& values, double point);

/// Row vector w with w . values == interpolate(grid, values, point); an exact
/// unit row on node hits. Throws std::domain_error outside [0,1].
Eigen::RowVectorXd interpolation_row(const Grid& grid, double point);

/// All points in [0,1] where the interpolant of `values` equals `level`,
/// sorted ascending. Brackets are located by sign changes on a refinement of
/// the node set and polished by bisection on the interpolant to 1e-12 in the
/// argument.
std::vector<double> find_crossings(const Grid& grid, const Eigen::VectorXd& values,
                                   double level);

}  // namespace wormhole
