#pragma once
// Exact proximity operators of phi-regularizations restricted to a 1D path.
//
// tv_prox_path solves
//     argmin_x 1/2 ||x - y||^2 + alpha * sum_k w_k |x(k+1) - x(k)|
// by the taut string construction: the running sums of the solution trace
// the shortest path through the tube of half-width alpha*w_k around the
// running sums of y, pinned at both ends. Linear time in the typical case,
// quadratic worst case.
//
// laplacian_prox_path solves the first-order system
//     (I + 2*lambda*L_path) x = y
// with L_path the (weighted) path-graph Laplacian, by the Thomas recursion.
// The matrix is strictly diagonally dominant, so no pivoting is required.
//
// laplacian_prox_dct is the unweighted transform route: I + 2*lambda*L is
// diagonalized by the type-II DCT with eigenvalues
//     1 + 4*lambda*(1 - cos(pi*k/n)),   k = 0..n-1,
// so x = C^-1 diag(.)^-1 C y, with both transforms computed through a
// complex FFT in O(n log n).

#include <span>

#include <Eigen/Core>

namespace snake::prox1d {

// Span kernels, writing into caller-owned storage (out may alias y).
void tv_prox_path(std::span<const double> y, double alpha, std::span<const double> weights,
                  std::span<double> out);
void laplacian_prox_path(std::span<const double> y, double lambda,
                         std::span<const double> weights, std::span<double> out);
void laplacian_prox_dct(std::span<const double> y, double lambda, std::span<double> out);

// Eigen conveniences.
Eigen::VectorXd tv_prox_path(const Eigen::Ref<const Eigen::VectorXd>& y, double alpha,
                             std::span<const double> weights = {});
Eigen::VectorXd laplacian_prox_path(const Eigen::Ref<const Eigen::VectorXd>& y, double lambda,
                                    std::span<const double> weights = {});
Eigen::VectorXd laplacian_prox_dct(const Eigen::Ref<const Eigen::VectorXd>& y, double lambda);

}  // namespace snake::prox1d
