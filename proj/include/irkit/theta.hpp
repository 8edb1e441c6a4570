#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "irkit/graph.hpp"

namespace irkit {

// Lovász theta as a certified bracket lo <= ϑ <= hi.
//   lo comes from a feasible primal matrix B (psd, trace 1, zero on edges): ϑ >= sum(B);
//   hi comes from dual multipliers: t*I + sum_e y_e (e_i e_j^T + e_j e_i^T) - J psd gives ϑ <= t.
struct ThetaValue {
    double value = 0;
    double lo = 0;
    double hi = 0;
    double tol = 0;
    Eigen::MatrixXd primal;
    std::vector<double> edge_multipliers; // one per edge of g, in g.edges() order
    double t = 0;
    int iterations = 0;

    double error() const { return hi - lo; }
};

struct ThetaOptions {
    double tol = 1e-6;
    std::size_t max_vertices = 200;
    std::size_t max_edges = 2500;
    int max_iterations = 250;
};

namespace detail {

inline double min_eigenvalue(const Eigen::MatrixXd& m)
{
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
    return es.eigenvalues()(0);
}

// Lower bound from an approximately feasible primal matrix; B is repaired in place.
inline double theta_lower_from_primal(const Graph& g, Eigen::MatrixXd& b)
{
    const auto n = static_cast<Eigen::Index>(g.n());
    b = ((b + b.transpose()) / 2.0).eval();
    for (auto [i, j] : g.edges()) b(i, j) = b(j, i) = 0.0;
    double lam = min_eigenvalue(b);
    // Shift past rounding in the eigenvalue so the repaired matrix is psd.
    double delta = std::max(0.0, -lam) + 1e-14 * std::max(1.0, b.norm());
    b += delta * Eigen::MatrixXd::Identity(n, n);
    double tr = b.trace();
    b /= tr;
    double s = b.sum();
    return s - 1e-12 * std::max(1.0, s);
}

// Step length toward the psd boundary along dir from positive definite base, damped by 0.95 and capped at 1.
inline double max_step(const Eigen::MatrixXd& base, const Eigen::MatrixXd& dir)
{
    Eigen::LLT<Eigen::MatrixXd> c(base);
    if (c.info() != Eigen::Success) return 0.0;
    Eigen::MatrixXd l = c.matrixL();
    Eigen::MatrixXd t = l.triangularView<Eigen::Lower>().solve(dir);
    t = l.triangularView<Eigen::Lower>().solve(t.transpose().eval()).transpose();
    double lam = min_eigenvalue((t + t.transpose()) / 2.0);
    if (!std::isfinite(lam)) return 0.0;
    if (lam >= 0) return 1.0;
    return std::min(1.0, 0.95 / -lam);
}

inline double theta_upper_from_dual(const Graph& g, const std::vector<double>& y, double t)
{
    const auto n = static_cast<Eigen::Index>(g.n());
    Eigen::MatrixXd z = t * Eigen::MatrixXd::Identity(n, n) - Eigen::MatrixXd::Ones(n, n);
    auto edges = g.edges();
    for (std::size_t e = 0; e < edges.size(); ++e) {
        z(edges[e].first, edges[e].second) += y[e];
        z(edges[e].second, edges[e].first) += y[e];
    }
    double lam = min_eigenvalue(z);
    double hi = t + std::max(0.0, -lam);
    return hi + 1e-12 * std::max(1.0, std::abs(hi)) + 1e-14 * z.norm();
}

} // namespace detail

// Primal-dual interior point method on
//   max <J,X>  s.t.  tr X = 1,  X_ij = 0 for ij in E,  X psd.
inline ThetaValue lovasz_theta(const Graph& g, const ThetaOptions& opts = {})
{
    const std::size_t nn = g.n();
    if (nn == 0) throw InvalidArgument("theta of the empty graph");
    if (nn > opts.max_vertices) throw SizeLimitError("theta: too many vertices");
    auto edges = g.edges();
    if (edges.size() > opts.max_edges) throw SizeLimitError("theta: too many edges");
    if (!(opts.tol > 0)) throw InvalidArgument("theta: tolerance must be positive");

    using Eigen::Index;
    using Eigen::MatrixXd;
    using Eigen::VectorXd;
    const Index n = static_cast<Index>(nn);
    const Index m1 = static_cast<Index>(edges.size());
    const Index m = m1 + 1;
    VectorXd b = VectorXd::Zero(m);
    b(m - 1) = 1;
    MatrixXd x = MatrixXd::Identity(n, n) / static_cast<double>(n);
    VectorXd y = VectorXd::Zero(m);
    y(m - 1) = static_cast<double>(n + 1);
    MatrixXd z = static_cast<double>(n + 1) * MatrixXd::Identity(n, n) - MatrixXd::Ones(n, n);
    double mu = 0.5 * z.cwiseProduct(x).sum() / static_cast<double>(n);

    ThetaValue best;
    best.lo = 0;
    best.hi = static_cast<double>(n);
    best.tol = opts.tol;
    MatrixXd best_primal = MatrixXd::Identity(n, n) / static_cast<double>(n);
    std::vector<double> best_y(m1, 0.0);
    best.t = static_cast<double>(n);
    bool have_upper = false;

    auto record = [&](int it) {
        MatrixXd bm = x;
        double lo = detail::theta_lower_from_primal(g, bm);
        std::vector<double> yv(y.data(), y.data() + m1);
        double hi = detail::theta_upper_from_dual(g, yv, y(m - 1));
        if (lo > best.lo) {
            best.lo = lo;
            best_primal = bm;
        }
        if (hi < best.hi || !have_upper) {
            best.hi = hi;
            best_y = yv;
            best.t = y(m - 1);
            have_upper = true;
        }
        best.iterations = it;
    };

    for (int it = 1; it <= opts.max_iterations; ++it) {
        Eigen::LLT<MatrixXd> zl(z);
        if (zl.info() != Eigen::Success) break;
        MatrixXd zi = zl.solve(MatrixXd::Identity(n, n));
        zi = ((zi + zi.transpose()) / 2.0).eval();
        MatrixXd zix = zi * x;

        MatrixXd mm(m, m);
        mm(m - 1, m - 1) = zi.cwiseProduct(x).sum();
        for (Index e = 0; e < m1; ++e) {
            const Index i = edges[e].first, j = edges[e].second;
            double v = zix(i, j) + zix(j, i);
            mm(m - 1, e) = mm(e, m - 1) = v;
            for (Index f = 0; f <= e; ++f) {
                const Index k = edges[f].first, l = edges[f].second;
                double w = zi(i, k) * x(l, j) + zi(j, l) * x(k, i) + zi(i, l) * x(k, j) + zi(j, k) * x(l, i);
                mm(e, f) = mm(f, e) = w;
            }
        }
        VectorXd rhs(m);
        rhs(m - 1) = zi.trace();
        for (Index e = 0; e < m1; ++e) rhs(e) = 2.0 * zi(edges[e].first, edges[e].second);
        VectorXd dy = mm.ldlt().solve(mu * rhs - b);
        if (!dy.allFinite()) break;

        MatrixXd dz = dy(m - 1) * MatrixXd::Identity(n, n);
        for (Index e = 0; e < m1; ++e) {
            dz(edges[e].first, edges[e].second) += dy(e);
            dz(edges[e].second, edges[e].first) += dy(e);
        }
        MatrixXd dx = mu * zi - x - zi * dz * x;
        dx = ((dx + dx.transpose()) / 2.0).eval();

        double ap = detail::max_step(x, dx), ad = detail::max_step(z, dz);
        if (ap == 0.0 && ad == 0.0) break;
        x += ap * dx;
        y += ad * dy;
        z += ad * dz;
        // Aggressive centering after long steps, conservative after short ones.
        double sigma = std::min(ap, ad) > 0.9 ? 0.1 : std::min(ap, ad) > 0.5 ? 0.3 : 0.5;
        mu = sigma * z.cwiseProduct(x).sum() / static_cast<double>(n);

        double phi = y(m - 1), psi = x.sum();
        if (phi - psi <= std::max(1.0, std::abs(phi)) * opts.tol * 1e-2 || it % 5 == 0 || it == opts.max_iterations) {
            record(it);
            if (best.hi - best.lo <= opts.tol) break;
        }
    }
    record(best.iterations);
    if (!(best.hi - best.lo <= opts.tol))
        throw SolverFailure("theta: certified gap " + std::to_string(best.hi - best.lo) + " above tolerance after " +
                            std::to_string(best.iterations) + " iterations");
    best.primal = best_primal;
    best.edge_multipliers = best_y;
    best.value = (best.lo + best.hi) / 2.0;
    return best;
}

// Recomputes the bracket from the stored witnesses.
inline bool verify_theta(const Graph& g, const ThetaValue& tv, std::string* why = nullptr)
{
    auto fail = [&](const std::string& m) {
        if (why) *why = m;
        return false;
    };
    if (tv.primal.rows() != static_cast<Eigen::Index>(g.n()) || tv.primal.cols() != tv.primal.rows())
        return fail("primal witness has the wrong shape");
    if (tv.edge_multipliers.size() != g.edge_count()) return fail("dual witness has the wrong length");
    Eigen::MatrixXd b = tv.primal;
    double lo = detail::theta_lower_from_primal(g, b);
    double hi = detail::theta_upper_from_dual(g, tv.edge_multipliers, tv.t);
    if (lo < tv.lo - 1e-9 || hi > tv.hi + 1e-9) return fail("witnesses do not reproduce the bracket");
    if (!(tv.lo <= tv.value && tv.value <= tv.hi)) return fail("value outside its bracket");
    return true;
}

} // namespace irkit
