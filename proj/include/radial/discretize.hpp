#pragma once

// Finite-element discretization of the operators on a WeightedGrid.

#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "radial/grid.hpp"
#include "radial/operators.hpp"

namespace radial {

enum class OuterBoundary { Dirichlet, Neumann };

/// L_h = M^{-1} S with S the P1 stiffness matrix (exact edge conductances
/// 1 / int r^{1-d} dr, plus potential and junction terms) and M the lumped
/// mass. Unknowns are the grid nodes minus Dirichlet nodes.
struct DiscreteOperator {
  std::vector<int> dofOfNode;  // -1 for eliminated nodes
  std::vector<double> x;       // coordinate of each unknown
  std::vector<double> mass;
  Eigen::SparseMatrix<double> S;

  std::size_t size() const noexcept { return x.size(); }
  /// (S + lambda^2 M)^{-1}, the discrete counterpart of the resolvent kernel.
  Eigen::MatrixXd resolvent(double lambda) const;
  /// M^{-1/2} S M^{-1/2}.
  Eigen::MatrixXd symmetricForm() const;
};

/// Throws ParameterError when the grid does not match the operator's domain.
DiscreteOperator discretizeOperator(const OperatorSpec& op, const WeightedGrid& grid,
                                    OuterBoundary outer = OuterBoundary::Dirichlet);

/// u(x_i) = sum_j K(x_i, y_j) f(y_j) w_j with the exact resolvent kernel.
std::vector<double> applyResolvent(const OperatorSpec& op, double lambda,
                                   const std::vector<double>& f, const WeightedGrid& grid);

/// ||M^{1/2} ((S + lambda^2 M)^{-1} - K) M^{1/2}||_2 / ||M^{1/2} K M^{1/2}||_2
/// over the unknowns with |x| <= compareRadius (default: R - 20 / lambda, so
/// the artificial outer boundary does not enter).
double resolventDiscrepancy(const OperatorSpec& op, const WeightedGrid& grid, double lambda,
                            OuterBoundary outer = OuterBoundary::Dirichlet,
                            double compareRadius = 0.0);

/// Largest |eigenvalue| of a symmetric matrix by power iteration.
double symmetricSpectralNorm(const Eigen::MatrixXd& A, int iterations = 300);

}  // namespace radial
