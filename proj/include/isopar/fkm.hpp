#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "isopar/clifford.hpp"
#include "isopar/error.hpp"
#include "isopar/random.hpp"

namespace isopar {

/// F(x) = <x,x>^2 - 2 sum_i <P_i x, x>^2 for a Clifford system P_0..P_m on R^N.
/// The level sets of F on S^{N-1} are isoparametric with multiplicities
/// (m, n/2 - m, m, n/2 - m), n = N - 2.
class FkmPolynomial {
  public:
    explicit FkmPolynomial(CliffordSystem system) : system_(std::move(system)) {
        const auto N = static_cast<std::int64_t>(system_.dim);
        if (N < 2 || N % 2 != 0) throw DomainError("FkmPolynomial: ambient dimension must be even and >= 2");
        n_ = N - 2;
        if (n_ / 2 - system_.m < 1) {
            throw DomainError("focal degenerate: n/2 - m = " + std::to_string(n_ / 2 - system_.m) + " < 1");
        }
        for (const auto& p : system_.matrices) {
            if (p.size() != system_.dim) throw DomainError("FkmPolynomial: matrix size mismatch");
            Eigen::MatrixXd d(p.size(), p.size());
            for (std::size_t r = 0; r < p.size(); ++r)
                for (std::size_t c = 0; c < p.size(); ++c) d(r, c) = static_cast<double>(p(r, c));
            dense_.push_back(std::move(d));
        }
    }

    FkmPolynomial(std::int64_t m, std::int64_t k) : FkmPolynomial(build_clifford_system(m, k)) {}

    const CliffordSystem& system() const noexcept { return system_; }
    const std::vector<Eigen::MatrixXd>& matrices() const noexcept { return dense_; }
    Eigen::Index ambient_dim() const noexcept { return static_cast<Eigen::Index>(system_.dim); }
    std::int64_t n() const noexcept { return n_; }
    // Sign convention: (m_+, m_-) = (m, n/2 - m).
    std::int64_t m_plus() const noexcept { return system_.m; }
    std::int64_t m_minus() const noexcept { return n_ / 2 - system_.m; }

    double eval(const Eigen::VectorXd& x) const {
        check(x);
        const double r = x.squaredNorm();
        double s = 0.0;
        for (const auto& p : dense_) {
            const double a = x.dot(p * x);
            s += a * a;
        }
        return r * r - 2.0 * s;
    }

    Eigen::VectorXd grad(const Eigen::VectorXd& x) const {
        check(x);
        Eigen::VectorXd g = 4.0 * x.squaredNorm() * x;
        for (const auto& p : dense_) {
            const Eigen::VectorXd px = p * x;
            g -= 8.0 * x.dot(px) * px;
        }
        return g;
    }

    Eigen::MatrixXd hessian(const Eigen::VectorXd& x) const {
        check(x);
        const auto N = ambient_dim();
        Eigen::MatrixXd h = 4.0 * (x.squaredNorm() * Eigen::MatrixXd::Identity(N, N) + 2.0 * x * x.transpose());
        for (const auto& p : dense_) {
            const Eigen::VectorXd px = p * x;
            h -= 8.0 * (2.0 * px * px.transpose() + x.dot(px) * p);
        }
        return h;
    }

    double laplacian(const Eigen::VectorXd& x) const { return hessian(x).trace(); }

    // Expected Delta F / <x,x>, from tracing the Hessian with tr P_i = 0, P_i^2 = I.
    double laplacian_constant() const { return 8.0 * static_cast<double>(m_minus() - m_plus()); }

  private:
    void check(const Eigen::VectorXd& x) const {
        if (x.size() != ambient_dim()) {
            throw DomainError("FkmPolynomial: vector of length " + std::to_string(x.size()) + ", expected " +
                              std::to_string(ambient_dim()));
        }
    }

    CliffordSystem system_;
    std::vector<Eigen::MatrixXd> dense_;
    std::int64_t n_ = 0;
};

struct CartanMunznerReport {
    std::size_t samples = 0;
    std::size_t sphere_samples = 0;
    std::uint64_t seed = 0;
    double tol = 0.0;
    // max | |grad F|^2 - 16 r^3 | / (16 r^3)
    double grad_residual = 0.0;
    // max | Delta F / r - c | / max(1, |c|), c = 8 (m_- - m_+)
    double laplacian_residual = 0.0;
    double laplacian_constant = 0.0;
    double laplacian_ratio_min = 0.0;
    double laplacian_ratio_max = 0.0;
    double sphere_min = 0.0;
    double sphere_max = 0.0;
    bool grad_ok = false;
    bool laplacian_ok = false;
    bool range_ok = false;
    bool passed = false;
};

/// Random-evaluation check of |grad F|^2 = 16 <x,x>^3, Delta F = 8 (m_- - m_+) <x,x>,
/// and F(S^{N-1}) in [-1, 1].  Sample i draws from SampleRng(seed, i).
inline CartanMunznerReport verify_cartan_munzner(const FkmPolynomial& F, std::size_t sample_count, std::uint64_t seed,
                                                 double tol, std::size_t sphere_samples = 0) {
    if (sample_count < 1) throw DomainError("verify_cartan_munzner: sample_count must be >= 1");
    if (!(tol > 0.0)) throw DomainError("verify_cartan_munzner: tol must be > 0");
    if (sphere_samples == 0) sphere_samples = sample_count;

    CartanMunznerReport rep;
    rep.samples = sample_count;
    rep.sphere_samples = sphere_samples;
    rep.seed = seed;
    rep.tol = tol;
    rep.laplacian_constant = F.laplacian_constant();
    rep.laplacian_ratio_min = INFINITY;
    rep.laplacian_ratio_max = -INFINITY;
    rep.sphere_min = INFINITY;
    rep.sphere_max = -INFINITY;

    const auto N = F.ambient_dim();
    const double lap_scale = std::max(1.0, std::abs(rep.laplacian_constant));
    for (std::size_t i = 0; i < sample_count; ++i) {
        SampleRng rng(seed, i);
        const Eigen::VectorXd x = rng.gaussian_vector(N);
        const double r = x.squaredNorm();
        const double expect = 16.0 * r * r * r;
        rep.grad_residual = std::max(rep.grad_residual, std::abs(F.grad(x).squaredNorm() - expect) / expect);
        const double ratio = F.laplacian(x) / r;
        rep.laplacian_ratio_min = std::min(rep.laplacian_ratio_min, ratio);
        rep.laplacian_ratio_max = std::max(rep.laplacian_ratio_max, ratio);
        rep.laplacian_residual = std::max(rep.laplacian_residual, std::abs(ratio - rep.laplacian_constant) / lap_scale);
    }
    for (std::size_t i = 0; i < sphere_samples; ++i) {
        // Disjoint stream family from the identity samples.
        SampleRng rng(~seed, i);
        const double f = F.eval(rng.unit_vector(N));
        rep.sphere_min = std::min(rep.sphere_min, f);
        rep.sphere_max = std::max(rep.sphere_max, f);
    }
    rep.grad_ok = rep.grad_residual <= tol;
    rep.laplacian_ok = rep.laplacian_residual <= tol;
    rep.range_ok = rep.sphere_min >= -1.0 - tol && rep.sphere_max <= 1.0 + tol;
    rep.passed = rep.grad_ok && rep.laplacian_ok && rep.range_ok;
    return rep;
}

struct ExactIdentityReport {
    std::size_t samples = 0;
    std::size_t grad_failures = 0;
    std::size_t laplacian_failures = 0;
    bool passed = false;
};

/// The two Cartan-Munzner identities evaluated in exact integer arithmetic at
/// integer points with entries in [-bound, bound].  Limited to N <= 16.
inline ExactIdentityReport verify_cartan_munzner_exact(const FkmPolynomial& F, std::size_t sample_count,
                                                       std::uint64_t seed, std::int64_t bound = 50) {
    using i128 = __int128;
    const auto N = static_cast<std::size_t>(F.ambient_dim());
    if (N > 16) throw DomainError("verify_cartan_munzner_exact: only N <= 16 is supported");
    if (bound < 1 || bound > 1000) throw DomainError("verify_cartan_munzner_exact: bound out of range");
    const auto& ps = F.system().matrices;
    const i128 c_lap = 8 * (F.m_minus() - F.m_plus());

    ExactIdentityReport rep;
    rep.samples = sample_count;
    for (std::size_t s = 0; s < sample_count; ++s) {
        SampleRng rng(seed, s);
        std::uniform_int_distribution<std::int64_t> dist(-bound, bound);
        std::vector<i128> x(N);
        for (auto& v : x) v = dist(rng.engine());

        i128 r = 0;
        for (auto v : x) r += v * v;
        std::vector<i128> grad(N);
        for (std::size_t j = 0; j < N; ++j) grad[j] = 4 * r * x[j];
        i128 lap = 4 * static_cast<i128>(N + 2) * r;
        for (const auto& p : ps) {
            std::vector<i128> px(N, 0);
            for (std::size_t a = 0; a < N; ++a)
                for (std::size_t b = 0; b < N; ++b) px[a] += static_cast<i128>(p(a, b)) * x[b];
            i128 ai = 0, pxsq = 0;
            for (std::size_t a = 0; a < N; ++a) {
                ai += px[a] * x[a];
                pxsq += px[a] * px[a];
            }
            for (std::size_t j = 0; j < N; ++j) grad[j] -= 8 * ai * px[j];
            lap -= 8 * (2 * pxsq + ai * static_cast<i128>(p.trace()));
        }
        i128 gsq = 0;
        for (auto g : grad) gsq += g * g;
        if (gsq != 16 * r * r * r) ++rep.grad_failures;
        if (lap != c_lap * r) ++rep.laplacian_failures;
    }
    rep.passed = rep.grad_failures == 0 && rep.laplacian_failures == 0;
    return rep;
}

} // namespace isopar
