#pragma once

// Dense symmetric eigensolver (cyclic Jacobi) and the spectral facts of
// G°(Pi,theta): lambda_1 = q+1 with multiplicity 1 and every other
// eigenvalue of magnitude at most sqrt(q).

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <string>
#include <vector>

#include "polarity/polarity_graph.hpp"

namespace polarity {

struct JacobiResult {
    std::vector<double> eigenvalues;  // unsorted (diagonal after sweeps)
    std::vector<double> vectors;      // n*n row-major; column j pairs with eigenvalue j
    int sweeps = 0;
    double offdiag_norm = 0.0;
    bool converged = false;
};

/// Cyclic Jacobi rotations on a dense symmetric matrix (row-major, by value).
/// Stops when the off-diagonal Frobenius norm drops below tol * max(1, ||A||_F),
/// capped at max_sweeps sweeps.
inline JacobiResult jacobi_eigensymm(std::vector<double> a, int n, double tol = 1e-10,
                                     int max_sweeps = 100) {
    JacobiResult r;
    r.vectors.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0.0);
    for (int i = 0; i < n; ++i) r.vectors[static_cast<std::size_t>(i) * n + i] = 1.0;
    auto at = [&](int i, int j) -> double& { return a[static_cast<std::size_t>(i) * n + j]; };

    double fro = 0.0;
    for (double x : a) fro += x * x;
    const double threshold = tol * std::max(1.0, std::sqrt(fro));

    auto offdiag = [&] {
        double s = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) s += at(i, j) * at(i, j);
        return std::sqrt(2.0 * s);
    };

    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        r.offdiag_norm = offdiag();
        if (r.offdiag_norm <= threshold) {
            r.converged = true;
            break;
        }
        ++r.sweeps;
        for (int p = 0; p < n - 1; ++p)
            for (int q = p + 1; q < n; ++q) {
                const double apq = at(p, q);
                if (apq == 0.0) continue;
                const double theta = (at(q, q) - at(p, p)) / (2.0 * apq);
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                at(p, p) -= t * apq;
                at(q, q) += t * apq;
                at(p, q) = at(q, p) = 0.0;
                for (int i = 0; i < n; ++i) {
                    if (i != p && i != q) {
                        const double aip = at(i, p), aiq = at(i, q);
                        at(i, p) = at(p, i) = c * aip - s * aiq;
                        at(i, q) = at(q, i) = s * aip + c * aiq;
                    }
                    double& vip = r.vectors[static_cast<std::size_t>(i) * n + p];
                    double& viq = r.vectors[static_cast<std::size_t>(i) * n + q];
                    const double tp = vip, tq = viq;
                    vip = c * tp - s * tq;
                    viq = s * tp + c * tq;
                }
            }
    }
    if (!r.converged) r.offdiag_norm = offdiag();
    r.eigenvalues.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) r.eigenvalues[static_cast<std::size_t>(i)] = at(i, i);
    return r;
}

struct SpectrumResult {
    std::vector<double> eigenvalues;  // sorted descending
    double lambda1 = 0.0;
    double lambda_rest_max = 0.0;  // max |lambda_i| over i >= 2
    double residual = 0.0;         // max eigenpair defect ||A v - lambda v||_2
    int sweeps = 0;
    bool converged = false;
};

inline std::vector<double> looped_matrix(const std::vector<std::vector<int>>& adj,
                                         const std::vector<bool>& loops) {
    const int n = static_cast<int>(adj.size());
    std::vector<double> a(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0.0);
    for (int u = 0; u < n; ++u) {
        for (int v : adj[static_cast<std::size_t>(u)])
            a[static_cast<std::size_t>(u) * n + v] = 1.0;
        if (loops[static_cast<std::size_t>(u)]) a[static_cast<std::size_t>(u) * n + u] = 1.0;
    }
    return a;
}

/// Spectrum of the 0/1 matrix of G° (diagonal 1 at looped vertices).
inline SpectrumResult adjacency_spectrum(const std::vector<std::vector<int>>& adj,
                                         const std::vector<bool>& loops) {
    const int n = static_cast<int>(adj.size());
    if (n > 4000) throw std::invalid_argument("spectral: dense solve capped at n = 4000");
    if (n == 0) throw std::invalid_argument("spectral: empty graph");
    const std::vector<double> a = looped_matrix(adj, loops);
    JacobiResult jr = jacobi_eigensymm(a, n);

    SpectrumResult s;
    s.sweeps = jr.sweeps;
    s.converged = jr.converged;

    // residual against the untouched matrix, one eigenpair at a time
    double worst = 0.0;
    std::vector<double> av(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            double acc = 0.0;
            for (int t = 0; t < n; ++t)
                acc += a[static_cast<std::size_t>(i) * n + t] *
                       jr.vectors[static_cast<std::size_t>(t) * n + j];
            av[static_cast<std::size_t>(i)] = acc;
        }
        double norm2 = 0.0;
        for (int i = 0; i < n; ++i) {
            const double d = av[static_cast<std::size_t>(i)] -
                             jr.eigenvalues[static_cast<std::size_t>(j)] *
                                 jr.vectors[static_cast<std::size_t>(i) * n + j];
            norm2 += d * d;
        }
        worst = std::max(worst, std::sqrt(norm2));
    }
    s.residual = worst;

    s.eigenvalues = jr.eigenvalues;
    std::sort(s.eigenvalues.begin(), s.eigenvalues.end(), std::greater<>());
    s.lambda1 = s.eigenvalues.front();
    for (std::size_t i = 1; i < s.eigenvalues.size(); ++i)
        s.lambda_rest_max = std::max(s.lambda_rest_max, std::abs(s.eigenvalues[i]));
    return s;
}

inline SpectrumResult adjacency_spectrum(const PolarityGraph& g) {
    std::vector<bool> loops(g.absolute.begin(), g.absolute.end());
    return adjacency_spectrum(g.adj, loops);
}

struct GapCheckResult {
    bool pass = false;
    std::vector<std::string> failures;
    double lambda1 = 0.0;
    double lambda_rest_max = 0.0;
    double sqrt_q = 0.0;
    int multiplicity = 0;  // eigenvalues within 1e-6 of lambda1
};

/// Verify lambda_1 = q+1 with multiplicity 1 (separation > 0.1) and
/// max_{i>=2} |lambda_i| <= sqrt(q).  The looped view must be (q+1)-regular.
inline GapCheckResult spectral_gap_check(const std::vector<std::vector<int>>& adj,
                                         const std::vector<bool>& loops, int q,
                                         const SpectrumResult& s, double tol = 1e-6) {
    GapCheckResult r;
    r.lambda1 = s.lambda1;
    r.lambda_rest_max = s.lambda_rest_max;
    r.sqrt_q = std::sqrt(static_cast<double>(q));

    const int d = q + 1;
    for (std::size_t v = 0; v < adj.size(); ++v) {
        int deg = static_cast<int>(adj[v].size()) + (loops[v] ? 1 : 0);
        if (deg != d) {
            r.failures.push_back("regularity precondition: vertex " + std::to_string(v) +
                                 " has looped degree " + std::to_string(deg) + ", expected " +
                                 std::to_string(d));
            break;
        }
    }
    if (!s.converged) r.failures.push_back("eigensolver did not converge");
    if (std::abs(s.lambda1 - d) > tol)
        r.failures.push_back("lambda1 = " + std::to_string(s.lambda1) + " != q+1");
    for (double ev : s.eigenvalues)
        if (std::abs(ev - s.lambda1) <= 1e-6) ++r.multiplicity;
    if (s.eigenvalues.size() > 1 && s.eigenvalues[0] - s.eigenvalues[1] <= 0.1)
        r.failures.push_back("lambda1 is not simple (gap " +
                             std::to_string(s.eigenvalues[0] - s.eigenvalues[1]) + ")");
    if (s.lambda_rest_max > r.sqrt_q + tol)
        r.failures.push_back("lambda_rest_max = " + std::to_string(s.lambda_rest_max) +
                             " exceeds sqrt(q)");
    r.pass = r.failures.empty();
    return r;
}

inline GapCheckResult spectral_gap_check(const PolarityGraph& g, const SpectrumResult& s,
                                         double tol = 1e-6) {
    std::vector<bool> loops(g.absolute.begin(), g.absolute.end());
    return spectral_gap_check(g.adj, loops, g.q, s, tol);
}

inline GapCheckResult spectral_gap_check(const PolarityGraph& g) {
    return spectral_gap_check(g, adjacency_spectrum(g));
}

}  // namespace polarity
