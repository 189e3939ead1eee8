#include "erk/resistance.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "erk/error.hpp"
#include "erk/rng.hpp"

namespace erk {

PseudoinverseMatrix pseudoinverse(const LaplacianMatrix& L, double tau) {
    const Eigen::Index n = L.matrix().rows();
    if (n == 0) return PseudoinverseMatrix(Eigen::MatrixXd(0, 0), 0);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(L.matrix());
    if (eig.info() != Eigen::Success) {
        throw ComputeError("eigendecomposition failed for " + std::to_string(n) + "x" + std::to_string(n) +
                           " Laplacian");
    }
    const Eigen::VectorXd& lambda = eig.eigenvalues();
    const double cutoff = tau * std::max(lambda.maxCoeff(), 0.0) * static_cast<double>(n);

    Eigen::VectorXd inv(n);
    std::size_t null_dim = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
        if (lambda[i] <= cutoff) {
            inv[i] = 0.0;
            ++null_dim;
        } else {
            inv[i] = 1.0 / lambda[i];
        }
    }
    const Eigen::MatrixXd& U = eig.eigenvectors();
    Eigen::MatrixXd pinv = U * inv.asDiagonal() * U.transpose();
    // exact symmetry; the triple product is only symmetric up to rounding
    pinv = 0.5 * (pinv + pinv.transpose()).eval();
    return PseudoinverseMatrix(std::move(pinv), null_dim);
}

double resistance_from_pinv(const PseudoinverseMatrix& Lp, std::size_t a, std::size_t b) {
    const std::size_t n = Lp.size();
    if (a >= n || b >= n) {
        throw InputError("vertex index out of range: (" + std::to_string(a) + ", " + std::to_string(b) +
                         ") with n = " + std::to_string(n));
    }
    if (a == b) return 0.0;
    // diagonal sum first so that R(a,b) and R(b,a) round identically
    const double r = (Lp(a, a) + Lp(b, b)) - 2.0 * Lp(a, b);
    return std::max(r, 0.0);
}

namespace {

void apply_laplacian(const Graph& g, const Eigen::VectorXd& x, Eigen::VectorXd& out) {
    for (Vertex v = 0; v < g.num_vertices(); ++v) {
        double acc = static_cast<double>(g.degree(v)) * x[v];
        for (Vertex w : g.neighbors(v)) acc -= x[w];
        out[v] = acc;
    }
}

// Removes the component of v along every component indicator vector.
class NullSpaceProjector {
public:
    explicit NullSpaceProjector(const Components& c) : labels_(c.label), sums_(c.count), sizes_(c.count, 0.0) {
        for (auto l : labels_) sizes_[l] += 1.0;
    }

    void operator()(Eigen::VectorXd& v) {
        std::fill(sums_.begin(), sums_.end(), 0.0);
        for (std::size_t i = 0; i < labels_.size(); ++i) sums_[labels_[i]] += v[static_cast<Eigen::Index>(i)];
        for (std::size_t i = 0; i < labels_.size(); ++i) {
            v[static_cast<Eigen::Index>(i)] -= sums_[labels_[i]] / sizes_[labels_[i]];
        }
    }

private:
    const std::vector<std::uint32_t>& labels_;
    std::vector<double> sums_;
    std::vector<double> sizes_;
};

}  // namespace

SolveStats resistance_solve_stats(const Graph& g, std::size_t a, std::size_t b, SolverOptions options) {
    const std::size_t n = g.num_vertices();
    if (a >= n || b >= n) {
        throw InputError("vertex index out of range: (" + std::to_string(a) + ", " + std::to_string(b) +
                         ") with n = " + std::to_string(n));
    }
    if (a == b) return {};

    const Components comps = connected_components(g);
    if (comps.label[a] != comps.label[b]) throw DisconnectedPairError(a, b);

    const auto N = static_cast<Eigen::Index>(n);
    const std::size_t cap = options.max_iterations ? options.max_iterations : 10 * n;
    NullSpaceProjector project(comps);

    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(N);
    rhs[static_cast<Eigen::Index>(a)] = 1.0;
    rhs[static_cast<Eigen::Index>(b)] = -1.0;
    const double rhs_norm = rhs.norm();

    Eigen::VectorXd x = Eigen::VectorXd::Zero(N);
    Eigen::VectorXd r = rhs;
    Eigen::VectorXd p = r;
    Eigen::VectorXd Ap(N);
    double rr = r.squaredNorm();

    SolveStats stats;
    stats.relative_residual = 1.0;
    for (std::size_t it = 1; it <= cap; ++it) {
        apply_laplacian(g, p, Ap);
        const double pAp = p.dot(Ap);
        if (!(pAp > 0.0)) break;
        const double alpha = rr / pAp;
        x.noalias() += alpha * p;
        r.noalias() -= alpha * Ap;
        project(r);
        const double rr_next = r.squaredNorm();
        stats.iterations = it;
        stats.relative_residual = std::sqrt(rr_next) / rhs_norm;
        if (stats.relative_residual <= options.tolerance) {
            stats.resistance = std::max(x[static_cast<Eigen::Index>(a)] - x[static_cast<Eigen::Index>(b)], 0.0);
            return stats;
        }
        p = r + (rr_next / rr) * p;
        project(p);
        rr = rr_next;
    }
    throw ConvergenceError(stats.iterations, stats.relative_residual);
}

double resistance_solve(const Graph& g, std::size_t a, std::size_t b, double tol) {
    return resistance_solve_stats(g, a, b, SolverOptions{.tolerance = tol}).resistance;
}

CommuteEstimate mc_commute_time(const Graph& g, std::size_t a, std::size_t b, std::size_t walks,
                                std::uint64_t seed) {
    const std::size_t n = g.num_vertices();
    if (a >= n || b >= n) throw InputError("vertex index out of range");
    if (walks == 0) throw InputError("walk count must be at least 1");
    if (a == b) return {0.0, 0.0, walks};
    const Components comps = connected_components(g);
    if (comps.label[a] != comps.label[b]) throw DisconnectedPairError(a, b);

    SplitMix64 rng(seed);
    const auto walk_until = [&](Vertex from, Vertex to) {
        std::uint64_t steps = 0;
        Vertex v = from;
        while (v != to) {
            const auto nb = g.neighbors(v);
            v = nb[rng.below(nb.size())];
            ++steps;
        }
        return steps;
    };

    // Welford accumulation of round-trip lengths
    double mean = 0.0;
    double m2 = 0.0;
    for (std::size_t k = 1; k <= walks; ++k) {
        const auto steps = static_cast<double>(walk_until(static_cast<Vertex>(a), static_cast<Vertex>(b)) +
                                               walk_until(static_cast<Vertex>(b), static_cast<Vertex>(a)));
        const double delta = steps - mean;
        mean += delta / static_cast<double>(k);
        m2 += delta * (steps - mean);
    }
    CommuteEstimate est;
    est.mean = mean;
    est.walks = walks;
    est.standard_error = walks > 1 ? std::sqrt(m2 / static_cast<double>(walks - 1) / static_cast<double>(walks)) : 0.0;
    return est;
}

}  // namespace erk
