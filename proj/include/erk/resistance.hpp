#pragma once

#include <cstddef>
#include <cstdint>

#include <Eigen/Core>

#include "erk/graph.hpp"

namespace erk {

/// Moore-Penrose pseudoinverse of a graph Laplacian.
class PseudoinverseMatrix {
public:
    const Eigen::MatrixXd& matrix() const noexcept { return m_; }
    std::size_t size() const noexcept { return static_cast<std::size_t>(m_.rows()); }
    double operator()(std::size_t i, std::size_t j) const { return m_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)); }
    /// Number of eigenvalues treated as exact zeros.
    std::size_t null_dimension() const noexcept { return null_dim_; }

private:
    friend PseudoinverseMatrix pseudoinverse(const LaplacianMatrix& L, double tau);
    PseudoinverseMatrix(Eigen::MatrixXd m, std::size_t null_dim) : m_(std::move(m)), null_dim_(null_dim) {}
    Eigen::MatrixXd m_;
    std::size_t null_dim_ = 0;
};

inline constexpr double kZeroEigenvalueCutoff = 1e-12;

/// L+ via symmetric eigendecomposition. Eigenvalues below
/// tau * lambda_max * n are zeroed rather than inverted.
PseudoinverseMatrix pseudoinverse(const LaplacianMatrix& L, double tau = kZeroEigenvalueCutoff);

/// (e_a - e_b)^T L+ (e_a - e_b), clamped at 0 against rounding.
/// On a disconnected graph a cross-component pair yields the quadratic form,
/// which is finite and not a physical resistance.
double resistance_from_pinv(const PseudoinverseMatrix& Lp, std::size_t a, std::size_t b);

struct SolverOptions {
    double tolerance = 1e-10;           // relative residual ||r|| / ||b||
    std::size_t max_iterations = 0;     // 0 means 10 * n
};

struct SolveStats {
    double resistance = 0.0;
    std::size_t iterations = 0;
    double relative_residual = 0.0;
};

/// Conjugate gradients on L x = e_a - e_b with every iterate projected off
/// the component indicator vectors. Requires a != b in one component.
/// Throws DisconnectedPairError or ConvergenceError.
SolveStats resistance_solve_stats(const Graph& g, std::size_t a, std::size_t b, SolverOptions options = {});

double resistance_solve(const Graph& g, std::size_t a, std::size_t b, double tol = 1e-10);

struct CommuteEstimate {
    double mean = 0.0;
    double standard_error = 0.0;
    std::size_t walks = 0;
};

/// Monte-Carlo estimate of the a -> b -> a round-trip time of a simple random
/// walk. Used as an independent check of C(a,b) = 2 m R(a,b).
CommuteEstimate mc_commute_time(const Graph& g, std::size_t a, std::size_t b, std::size_t walks,
                                std::uint64_t seed);

}  // namespace erk
