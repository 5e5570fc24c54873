#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "isopar/error.hpp"
#include "isopar/fkm.hpp"
#include "isopar/random.hpp"

namespace isopar {

struct GeometryTolerances {
    double sphere = 1e-12;  // |<x,x> - 1| after projection
    double level = 1e-10;   // |F(x) - c| after projection
    double cluster = 1e-5;  // eigenvalue clustering
    int max_iterations = 50;
    int max_halvings = 5;
    double irregular = 1e-8;  // minimum spherical gradient norm
};

/// A point of M = F^{-1}(c) on the unit sphere.
struct SurfacePoint {
    Eigen::VectorXd x;
    double level = 0.0;
    double residual_sphere = 0.0;
    double residual_level = 0.0;
    int iterations = 0;
};

// Component of grad F orthogonal to x.
inline Eigen::VectorXd spherical_gradient(const FkmPolynomial& F, const Eigen::VectorXd& x) {
    const Eigen::VectorXd g = F.grad(x);
    return g - (g.dot(x) / x.squaredNorm()) * x;
}

inline SurfacePoint project_to_level(const FkmPolynomial& F, Eigen::VectorXd x, double c, std::size_t index,
                                     const GeometryTolerances& tol = {}) {
    auto residuals = [&](const Eigen::VectorXd& y) {
        return std::pair{y.squaredNorm() - 1.0, F.eval(y) - c};
    };
    auto merit = [](std::pair<double, double> r) { return std::abs(r.first) + std::abs(r.second); };

    auto res = residuals(x);
    int it = 0;
    for (; it <= tol.max_iterations; ++it) {
        if (std::abs(res.first) <= tol.sphere && std::abs(res.second) <= tol.level) break;
        if (it == tol.max_iterations) {
            throw GeometryError(GeometryErrorKind::NonConvergence, index,
                                "level-set projection did not converge for sample " + std::to_string(index));
        }
        // Newton on {<x,x> = 1, F = c} restricted to span{x, s}; s is orthogonal to x.
        const double r = x.squaredNorm();
        const Eigen::VectorXd g = F.grad(x);
        const Eigen::VectorXd s = g - (g.dot(x) / r) * x;
        const double s2 = s.squaredNorm();
        if (s2 < tol.irregular * tol.irregular) {
            throw GeometryError(GeometryErrorKind::IrregularPoint, index,
                                "vanishing spherical gradient at sample " + std::to_string(index));
        }
        const double alpha = -res.first / (2.0 * r);
        const double beta = (-res.second - alpha * g.dot(x)) / s2;
        const Eigen::VectorXd step = alpha * x + beta * s;

        double t = 1.0;
        Eigen::VectorXd trial = x + step;
        auto trial_res = residuals(trial);
        for (int h = 0; h < tol.max_halvings && merit(trial_res) >= merit(res); ++h) {
            t *= 0.5;
            trial = x + t * step;
            trial_res = residuals(trial);
        }
        x = std::move(trial);
        res = trial_res;
    }
    x /= x.norm();
    res = residuals(x);

    SurfacePoint p;
    p.level = c;
    p.residual_sphere = std::abs(res.first);
    p.residual_level = std::abs(res.second);
    p.iterations = it;
    if (spherical_gradient(F, x).norm() < tol.irregular) {
        throw GeometryError(GeometryErrorKind::IrregularPoint, index,
                            "vanishing spherical gradient at sample " + std::to_string(index));
    }
    if (p.residual_sphere > tol.sphere || p.residual_level > tol.level) {
        throw GeometryError(GeometryErrorKind::NonConvergence, index,
                            "projection residual above tolerance for sample " + std::to_string(index));
    }
    p.x = std::move(x);
    return p;
}

/// `count` points on F^{-1}(c), each projected from the seeded random unit
/// start SampleRng(seed, i).unit_vector().  c must be a regular value in (-1, 1).
inline std::vector<SurfacePoint> sample_level_set(const FkmPolynomial& F, double c, std::size_t count,
                                                  std::uint64_t seed, const GeometryTolerances& tol = {}) {
    if (!(c > -1.0 && c < 1.0)) {
        throw DomainError("sample_level_set: level must lie in (-1, 1); +-1 are focal values");
    }
    if (count < 1) throw DomainError("sample_level_set: count must be >= 1");
    std::vector<SurfacePoint> pts;
    pts.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        SampleRng rng(seed, i);
        pts.push_back(project_to_level(F, rng.unit_vector(F.ambient_dim()), c, i, tol));
    }
    return pts;
}

struct ShapeOperator {
    Eigen::VectorXd normal;   // unit normal of M in the sphere
    Eigen::MatrixXd basis;    // N x n, orthonormal basis of T_pM
    Eigen::MatrixXd matrix;   // n x n, operator in that basis
};

/// Orthonormal basis of {x, xi}^perp from the standard basis, by Gram-Schmidt
/// with largest-residual pivoting (ties to lowest index).
inline Eigen::MatrixXd tangent_basis(const Eigen::VectorXd& x, const Eigen::VectorXd& xi) {
    const auto N = x.size();
    const auto n = N - 2;
    Eigen::MatrixXd cand = Eigen::MatrixXd::Identity(N, N);
    for (int pass = 0; pass < 2; ++pass) {
        cand -= x * (x.transpose() * cand);
        cand -= xi * (xi.transpose() * cand);
    }
    Eigen::MatrixXd basis(N, n);
    std::vector<bool> used(static_cast<std::size_t>(N), false);
    for (Eigen::Index j = 0; j < n; ++j) {
        Eigen::Index best = -1;
        double best_norm = -1.0;
        for (Eigen::Index c = 0; c < N; ++c) {
            if (used[static_cast<std::size_t>(c)]) continue;
            const double nc = cand.col(c).norm();
            if (nc > best_norm) {
                best_norm = nc;
                best = c;
            }
        }
        used[static_cast<std::size_t>(best)] = true;
        Eigen::VectorXd v = cand.col(best) / best_norm;
        for (int pass = 0; pass < 2; ++pass) {
            for (Eigen::Index i = 0; i < j; ++i) v -= basis.col(i).dot(v) * basis.col(i);
            v -= x.dot(v) * x;
            v -= xi.dot(v) * xi;
        }
        v /= v.norm();
        basis.col(j) = v;
        for (Eigen::Index c = 0; c < N; ++c) {
            if (!used[static_cast<std::size_t>(c)]) cand.col(c) -= v.dot(cand.col(c)) * v;
        }
    }
    return basis;
}

/// A(v) = -(D_v xi)^T with xi = s/|s| the normalized spherical gradient.  On T,
/// D_v s projects to H v - <grad F, x> v, hence A = -(B^T H B - <grad F, x> I) / |s|.
inline ShapeOperator shape_operator(const FkmPolynomial& F, const SurfacePoint& p, const GeometryTolerances& tol = {}) {
    const Eigen::VectorXd& x = p.x;
    const Eigen::VectorXd g = F.grad(x);
    const double radial = g.dot(x);
    const Eigen::VectorXd s = g - radial * x;
    const double s_norm = s.norm();
    if (s_norm < tol.irregular) {
        throw GeometryError(GeometryErrorKind::IrregularPoint, 0, "vanishing spherical gradient");
    }
    ShapeOperator op;
    op.normal = s / s_norm;
    op.basis = tangent_basis(x, op.normal);
    const auto n = op.basis.cols();
    op.matrix = -(op.basis.transpose() * F.hessian(x) * op.basis - radial * Eigen::MatrixXd::Identity(n, n)) / s_norm;
    return op;
}

struct CurvatureCluster {
    double value = 0.0;
    int multiplicity = 0;
};

struct CurvatureSpectrum {
    std::vector<double> eigenvalues;         // ascending
    std::vector<CurvatureCluster> clusters;  // ascending arccot, i.e. descending value
    double theta = 0.0;                      // arccot of the largest principal curvature

    std::size_t g() const noexcept { return clusters.size(); }

    std::vector<int> multiplicities() const {
        std::vector<int> out;
        for (const auto& c : clusters) out.push_back(c.multiplicity);
        return out;
    }
};

// arccot with values in (0, pi).
inline double arccot(double v) { return std::atan2(1.0, v); }

/// Groups eigenvalues whose neighbours differ by less than cluster_tol; gaps
/// must exceed 10 cluster_tol and each cluster's width must stay below cluster_tol.
inline CurvatureSpectrum cluster_spectrum(std::vector<double> eigenvalues, double cluster_tol) {
    if (!(cluster_tol > 0.0)) throw DomainError("cluster_spectrum: cluster_tol must be > 0");
    std::sort(eigenvalues.begin(), eigenvalues.end());
    CurvatureSpectrum spec;
    spec.eigenvalues = eigenvalues;
    std::vector<std::vector<double>> groups;
    for (auto it = eigenvalues.rbegin(); it != eigenvalues.rend(); ++it) {
        if (groups.empty()) {
            groups.push_back({*it});
            continue;
        }
        const double gap = groups.back().back() - *it;
        if (gap < cluster_tol) {
            groups.back().push_back(*it);
        } else if (gap > 10.0 * cluster_tol) {
            groups.push_back({*it});
        } else {
            throw GeometryError(GeometryErrorKind::AmbiguousClustering, 0,
                                "eigenvalue gap " + std::to_string(gap) + " lies between cluster_tol and 10 cluster_tol");
        }
    }
    for (const auto& grp : groups) {
        if (grp.front() - grp.back() >= cluster_tol) {
            throw GeometryError(GeometryErrorKind::AmbiguousClustering, 0, "cluster wider than cluster_tol");
        }
        double sum = 0.0;
        for (double v : grp) sum += v;
        spec.clusters.push_back({sum / static_cast<double>(grp.size()), static_cast<int>(grp.size())});
    }
    if (!spec.clusters.empty()) spec.theta = arccot(spec.clusters.front().value);
    return spec;
}

inline CurvatureSpectrum principal_curvatures(const FkmPolynomial& F, const SurfacePoint& p, double cluster_tol = 1e-5) {
    const auto op = shape_operator(F, p);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(op.matrix, Eigen::EigenvaluesOnly);
    const Eigen::VectorXd ev = es.eigenvalues();
    return cluster_spectrum(std::vector<double>(ev.data(), ev.data() + ev.size()), cluster_tol);
}

/// max | (arccot lambda_{j+1} - arccot lambda_j) - pi/g | over consecutive clusters.
inline double arccot_progression_residual(const CurvatureSpectrum& spec) {
    const auto g = spec.g();
    if (g < 2) return 0.0;
    const double step = std::numbers::pi / static_cast<double>(g);
    double worst = 0.0;
    for (std::size_t j = 0; j + 1 < g; ++j) {
        const double d = arccot(spec.clusters[j + 1].value) - arccot(spec.clusters[j].value);
        worst = std::max(worst, std::abs(d - step));
    }
    return worst;
}

struct CurvatureReport {
    std::int64_t n = 0;
    double level = 0.0;
    std::size_t g = 0;
    std::vector<int> multiplicities;
    std::vector<double> cluster_values;  // mean over samples
    double theta = 0.0;
    double mean_curvature = 0.0;         // H = sum m_i lambda_i
    double squared_norm = 0.0;           // |A|^2 = sum m_i lambda_i^2
    double spread = 0.0;                 // max over clusters of (max - min) across samples
    double progression_residual = 0.0;   // worst over samples
    double max_residual_sphere = 0.0;
    double max_residual_level = 0.0;
    std::size_t samples = 0;
    std::uint64_t seed = 0;

    // Gauss equation for a hypersurface of the unit sphere.
    double scalar_curvature() const {
        const auto nd = static_cast<double>(n);
        return nd * (nd - 1.0) + mean_curvature * mean_curvature - squared_norm;
    }
    double scalar_curvature_reference() const { return static_cast<double>(n * n - 4 * n); }
    double scalar_curvature_delta() const { return scalar_curvature() - scalar_curvature_reference(); }
};

inline CurvatureReport curvature_report(const FkmPolynomial& F, double c, std::size_t count, std::uint64_t seed,
                                        const GeometryTolerances& tol = {}) {
    if (count < 1) throw DomainError("curvature_report: count must be >= 1");
    const auto points = sample_level_set(F, c, count, seed, tol);

    CurvatureReport rep;
    rep.n = F.n();
    rep.level = c;
    rep.samples = count;
    rep.seed = seed;

    std::vector<double> lo, hi, sum;
    for (std::size_t i = 0; i < points.size(); ++i) {
        CurvatureSpectrum spec;
        try {
            spec = principal_curvatures(F, points[i], tol.cluster);
        } catch (const GeometryError& e) {
            throw GeometryError(e.kind(), i, std::string(e.what()) + " (sample " + std::to_string(i) + ")");
        }
        rep.max_residual_sphere = std::max(rep.max_residual_sphere, points[i].residual_sphere);
        rep.max_residual_level = std::max(rep.max_residual_level, points[i].residual_level);
        rep.progression_residual = std::max(rep.progression_residual, arccot_progression_residual(spec));
        if (i == 0) {
            rep.g = spec.g();
            rep.multiplicities = spec.multiplicities();
            for (const auto& cl : spec.clusters) {
                lo.push_back(cl.value);
                hi.push_back(cl.value);
                sum.push_back(0.0);
            }
        } else if (spec.multiplicities() != rep.multiplicities) {
            throw GeometryError(GeometryErrorKind::InconsistentSpectrum, i,
                                "multiplicity pattern differs at sample " + std::to_string(i));
        }
        for (std::size_t j = 0; j < spec.clusters.size(); ++j) {
            lo[j] = std::min(lo[j], spec.clusters[j].value);
            hi[j] = std::max(hi[j], spec.clusters[j].value);
            sum[j] += spec.clusters[j].value;
        }
    }
    for (std::size_t j = 0; j < rep.g; ++j) {
        const double v = sum[j] / static_cast<double>(count);
        const double m = rep.multiplicities[j];
        rep.cluster_values.push_back(v);
        rep.mean_curvature += m * v;
        rep.squared_norm += m * v * v;
        rep.spread = std::max(rep.spread, hi[j] - lo[j]);
    }
    if (!rep.cluster_values.empty()) rep.theta = arccot(rep.cluster_values.front());
    return rep;
}

} // namespace isopar
