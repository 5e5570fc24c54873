// Acceptance suite: one PASS/FAIL line per criterion.
//   isopar_acceptance                 run every criterion
//   isopar_acceptance --criterion N   run criterion N only

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "isopar/arith.hpp"
#include "isopar/classify.hpp"
#include "isopar/clifford.hpp"
#include "isopar/fkm.hpp"
#include "isopar/geometry.hpp"
#include "isopar/homotopy.hpp"
#include "isopar_cli.hpp"
#include "oracles.hpp"

using namespace isopar;

namespace {

struct Outcome {
    bool pass = true;
    std::vector<std::string> notes;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            notes.push_back("FAILED: " + what);
        }
    }
    void info(const std::string& what) { notes.push_back(what); }
};

std::string fmt(double v) {
    std::ostringstream os;
    os << std::setprecision(6) << v;
    return os.str();
}

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

// 1. Exact Clifford relations for every (m, k) with 2 k delta(m) <= 64, < 1 s.
Outcome criterion_1() {
    Outcome o;
    const auto t0 = Clock::now();
    int systems = 0;
    for (std::int64_t m = 1; 2 * static_cast<std::int64_t>(delta(m)) <= 64; ++m)
        for (std::int64_t k = 1; 2 * k * static_cast<std::int64_t>(delta(m)) <= 64; ++k) {
            const auto rep = verify_clifford_system(build_clifford_system(m, k));
            o.require(rep.passed && rep.violations.empty(),
                      "(m,k) = (" + std::to_string(m) + "," + std::to_string(k) + ") has violations");
            ++systems;
        }
    const double t = seconds_since(t0);
    o.require(t < 1.0, "runtime " + fmt(t) + " s >= 1 s");
    o.info(std::to_string(systems) + " systems, " + fmt(t) + " s");
    return o;
}

// 2. delta table and 16-fold periodicity.
Outcome criterion_2() {
    Outcome o;
    const std::uint64_t table[8] = {1, 2, 4, 4, 8, 8, 8, 8};
    for (int m = 1; m <= 8; ++m) o.require(delta(m) == table[m - 1], "delta(" + std::to_string(m) + ")");
    for (int m = 1; m <= 24; ++m) o.require(delta(m + 8) == 16 * delta(m), "delta(" + std::to_string(m + 8) + ")");
    return o;
}

// 3. delta_divides(l, N) <=> radon_hurwitz(N) >= l + 1 for N <= 512, l <= 12, < 1 s.
Outcome criterion_3() {
    Outcome o;
    const auto t0 = Clock::now();
    int mismatches = 0, shifted_mismatches = 0;
    std::string first;
    for (std::int64_t N = 1; N <= 512; ++N)
        for (std::int64_t l = 0; l <= 12; ++l) {
            const bool lhs = delta_divides(l, N);
            const auto rho = radon_hurwitz(N);
            if (lhs != (rho >= static_cast<std::uint64_t>(l + 1))) {
                if (first.empty()) {
                    first = "l = " + std::to_string(l) + ", N = " + std::to_string(N) + ": delta_divides = " +
                            (lhs ? "true" : "false") + ", rho = " + std::to_string(rho);
                }
                ++mismatches;
            }
            if (lhs != (rho >= static_cast<std::uint64_t>(l))) ++shifted_mismatches;
        }
    const double t = seconds_since(t0);
    o.require(mismatches == 0, std::to_string(mismatches) + " of 6656 pairs disagree, first at " + first);
    o.require(t < 1.0, "runtime " + fmt(t) + " s >= 1 s");
    o.info("the relation delta_divides(l, N) <=> rho(N) >= l holds on the same range with " +
           std::to_string(shifted_mismatches) + " mismatches");
    return o;
}

// 4. Cartan-Munzner identities at 1000 points to relative 1e-9; range over 1e4 sphere samples; < 10 s.
Outcome criterion_4() {
    Outcome o;
    const auto t0 = Clock::now();
    for (auto [m, k] : {std::pair{1, 3}, {1, 4}, {2, 2}, {3, 2}, {4, 2}}) {
        const FkmPolynomial F(m, k);
        const auto rep = verify_cartan_munzner(F, 1000, 20240601, 1e-9, 10000);
        const auto tag = "FKM(" + std::to_string(m) + "," + std::to_string(k) + ")";
        o.require(rep.grad_ok && rep.grad_residual <= 1e-9, tag + " gradient residual " + fmt(rep.grad_residual));
        o.require(rep.laplacian_ok && rep.laplacian_residual <= 1e-9,
                  tag + " Laplacian residual " + fmt(rep.laplacian_residual));
        o.require(rep.sphere_min >= -1.0 - 1e-9 && rep.sphere_max <= 1.0 + 1e-9,
                  tag + " range [" + fmt(rep.sphere_min) + ", " + fmt(rep.sphere_max) + "]");
        o.info(tag + ": grad " + fmt(rep.grad_residual) + ", lap " + fmt(rep.laplacian_residual) + ", range [" +
               fmt(rep.sphere_min) + ", " + fmt(rep.sphere_max) + "]");
    }
    const double t = seconds_since(t0);
    o.require(t < 10.0, "runtime " + fmt(t) + " s >= 10 s");
    o.info(fmt(t) + " s");
    return o;
}

// 5. Multiplicities (m, n/2-m, m, n/2-m) recovered at 50 points per level, spread < 1e-5,
//    arccot steps pi/4 within 1e-6; < 30 s.
Outcome criterion_5() {
    Outcome o;
    const auto t0 = Clock::now();
    struct Case {
        int m, k;
        std::vector<int> sorted;
    };
    for (const auto& tc : {Case{1, 3, {1, 1, 1, 1}}, Case{2, 2, {1, 1, 2, 2}}, Case{4, 2, {3, 3, 4, 4}}}) {
        const FkmPolynomial F(tc.m, tc.k);
        for (double c : {-0.5, 0.0, 0.5}) {
            const auto tag = "FKM(" + std::to_string(tc.m) + "," + std::to_string(tc.k) + ") c = " + fmt(c);
            try {
                const auto rep = curvature_report(F, c, 50, 7);
                auto mult = rep.multiplicities;
                o.require(rep.g == 4, tag + " g = " + std::to_string(rep.g));
                if (mult.size() == 4) o.require(mult[0] == mult[2] && mult[1] == mult[3], tag + " not alternating");
                std::sort(mult.begin(), mult.end());
                o.require(mult == tc.sorted, tag + " multiplicity multiset");
                o.require(rep.spread < 1e-5, tag + " spread " + fmt(rep.spread));
                o.require(rep.progression_residual <= 1e-6, tag + " arccot step residual " + fmt(rep.progression_residual));
            } catch (const GeometryError& e) {
                o.require(false, tag + ": " + e.what());
            }
        }
    }
    const double t = seconds_since(t0);
    o.require(t < 30.0, "runtime " + fmt(t) + " s >= 30 s");
    o.info(fmt(t) + " s");
    return o;
}

// 6. Scalar curvature of FKM(1,3) level sets equals n^2 - 4n = 0 within 1e-6; other
//    multiplicities are measured and reported.
Outcome criterion_6() {
    Outcome o;
    const std::vector<double> levels{-0.9, -0.5, 0.0, 0.5, 0.9};
    {
        const FkmPolynomial F(1, 3);
        for (double c : levels) {
            const auto rep = curvature_report(F, c, 20, 11);
            o.require(std::abs(rep.scalar_curvature() - rep.scalar_curvature_reference()) <= 1e-6,
                      "FKM(1,3) c = " + fmt(c) + " scal = " + fmt(rep.scalar_curvature()));
        }
    }
    for (auto [m, k] : {std::pair{2, 2}, {4, 2}}) {
        const FkmPolynomial F(m, k);
        std::string line = "FKM(" + std::to_string(m) + "," + std::to_string(k) + ") scal - (n^2-4n):";
        for (double c : levels) {
            const auto rep = curvature_report(F, c, 20, 11);
            line += " c=" + fmt(c) + ": " + fmt(rep.scalar_curvature_delta());
        }
        o.info(line + " (recorded only)");
    }
    return o;
}

// 7. Dimension-triple verdicts and the (n; 1, 1) sweep.
Outcome criterion_7() {
    Outcome o;
    struct Ex {
        DimensionTriple t;
        bool admissible;
        std::vector<Case> cases;
    };
    const std::vector<Ex> examples{
        {{3, 1, 1}, true, {Case::OneThird}},   {{24, 8, 8}, true, {Case::OneThird}}, {{8, 1, 1}, false, {}},
        {{12, 4, 2}, false, {}},               {{8, 2, 2}, true, {Case::OneQuarter}}, {{5, 5, 5}, true, {Case::EqualN}},
        {{10, 4, 1}, true, {Case::RatioTwo}},
    };
    for (const auto& ex : examples) {
        const auto v = theorem_a(ex.t);
        o.require(v.admissible == ex.admissible && v.cases == ex.cases,
                  "(" + std::to_string(ex.t.n) + "; " + std::to_string(ex.t.m_plus) + ", " +
                      std::to_string(ex.t.m_minus) + ")");
    }
    const std::set<std::int64_t> allowed{1, 2, 3, 4, 6};
    for (std::int64_t n = 1; n <= 100; ++n) {
        o.require(theorem_a({n, 1, 1}).admissible == (allowed.count(n) == 1), "(" + std::to_string(n) + "; 1, 1)");
    }
    return o;
}

// 8. Stolz criteria examples and the FKM pairs up to ambient dimension 256.
Outcome criterion_8() {
    Outcome o;
    const auto hs = StolzVariant::HomotopySphere;
    const auto du = StolzVariant::Dupin;
    auto v = stolz(5, 4, hs);
    o.require(v.admissible && v.reason == StolzReason::ExceptionalPair, "(5,4) HomotopySphere");
    v = stolz(2, 2, du);
    o.require(v.admissible && v.reason == StolzReason::ExceptionalPair, "(2,2) Dupin");
    // The Dupin pair is listed in (m_-, m_+) order: m_- = 4, m_+ = 5.
    v = stolz(5, 4, du);
    o.require(v.admissible && v.reason == StolzReason::ExceptionalPair, "(4,5) Dupin");
    v = stolz(4, 3, hs);
    o.require(v.admissible && v.reason == StolzReason::Divisibility, "(4,3) HomotopySphere");
    v = stolz(5, 3, hs);
    o.require(!v.admissible && v.reason == StolzReason::Fails, "(5,3) HomotopySphere");
    int pairs = 0;
    for (const auto& e : enumerate_fkm(256)) {
        if (!(e.m_minus >= 2 && e.m_minus < e.m_plus)) continue;
        ++pairs;
        o.require(stolz(e.m_plus, e.m_minus, hs).admissible,
                  "FKM(" + std::to_string(e.m) + "," + std::to_string(e.k) + ") pair fails");
    }
    o.info(std::to_string(pairs) + " FKM pairs checked");
    return o;
}

// 9. Homology and fundamental-group tables, and rank H_i = Poincare coefficient for every
//    legal configuration with m_+ <= 10, every listed form, i <= 60; < 5 s.
Outcome criterion_9() {
    Outcome o;
    const auto t0 = Clock::now();
    auto cfg = [](std::int64_t a, std::int64_t b, bool tp = false, bool tm = false) { return FiberConfig{a, b, tp, tm}; };
    o.require(fiber_homology(cfg(4, 3), 7) == AbelianGroup::free(2), "H_7 (4,3)");
    o.require(fiber_homology(cfg(4, 3), 4) == AbelianGroup::free(1), "H_4 (4,3)");
    o.require(fiber_homology(cfg(4, 3), 5) == AbelianGroup::free(0), "H_5 (4,3)");
    o.require(fiber_homology(cfg(3, 1, true), 3) == AbelianGroup::make(0, {2}), "H_3 (3,1) twisted");
    o.require(fiber_homology(cfg(1, 1, true), 2) == AbelianGroup::make(0, {2}), "H_2 (1,1) one twist");
    o.require(fiber_homology(cfg(1, 1, true, true), 1) == AbelianGroup::make(0, {2, 2}), "H_1 (1,1) both twisted");
    o.require(fundamental_group(cfg(4, 3)) == FundamentalGroup::Trivial, "pi_1 (4,3)");
    o.require(fundamental_group(cfg(3, 1)) == FundamentalGroup::Z, "pi_1 (3,1)");
    o.require(fundamental_group(cfg(1, 1, true, true)) == FundamentalGroup::Q8, "pi_1 (1,1) both twisted");

    std::size_t configs = 0, forms = 0;
    for (std::int64_t a = 1; a <= 10; ++a)
        for (std::int64_t b = 1; b <= a; ++b)
            for (int tp = 0; tp < 2; ++tp)
                for (int tm = 0; tm < 2; ++tm) {
                    if ((tp && b != 1) || (tm && a != 1)) continue;
                    for (bool ctx : {false, true}) {
                        const auto rep = check_table_consistency(cfg(a, b, tp, tm), 60, ctx);
                        ++configs;
                        forms += rep.forms_checked;
                        for (const auto& mm : rep.mismatches) o.require(false, mm);
                    }
                }
    const double t = seconds_since(t0);
    o.require(t < 5.0, "runtime " + fmt(t) + " s >= 5 s");
    o.info(std::to_string(configs) + " configurations, " + std::to_string(forms) + " forms, " + fmt(t) + " s");
    return o;
}

// 10. Repeated `fkm 2 2 curvature --level 0 --seed 42` runs are byte-identical.
Outcome criterion_10() {
    Outcome o;
    const std::vector<std::string> args{"fkm", "2", "2", "curvature", "--level", "0", "--seed", "42"};
    std::string first;
    for (int run = 0; run < 3; ++run) {
        std::ostringstream out, err;
        const int code = cli::run(args, out, err);
        o.require(code == cli::kOk, "exit code " + std::to_string(code) + ": " + err.str());
        if (run == 0) {
            first = out.str();
            o.require(first.find("\"seed\": 42") != std::string::npos, "report does not carry the seed");
        } else {
            o.require(out.str() == first, "run " + std::to_string(run) + " differs");
        }
    }
    o.info(std::to_string(first.size()) + " bytes per report");
    return o;
}

struct Criterion {
    int id;
    const char* title;
    std::function<Outcome()> run;
};

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Acceptance criteria"};
    int only = 0;
    app.add_option("--criterion", only, "Run a single criterion (1-10)")->check(CLI::Range(1, 10));
    CLI11_PARSE(app, argc, argv);

    const std::vector<Criterion> criteria{
        {1, "Clifford exactness", criterion_1},
        {2, "delta table", criterion_2},
        {3, "Adams duality delta(l) | N <=> rho(N) >= l + 1", criterion_3},
        {4, "Cartan-Munzner identities", criterion_4},
        {5, "multiplicity recovery", criterion_5},
        {6, "scalar curvature, multiplicities (1,1)", criterion_6},
        {7, "dimension-triple verdicts", criterion_7},
        {8, "Stolz criteria", criterion_8},
        {9, "fiber table engine", criterion_9},
        {10, "determinism", criterion_10},
    };

    int failed = 0;
    for (const auto& c : criteria) {
        if (only != 0 && c.id != only) continue;
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.require(false, std::string("exception: ") + e.what());
        }
        std::cout << (o.pass ? "[PASS]" : "[FAIL]") << " criterion " << c.id << ": " << c.title << "\n";
        for (const auto& n : o.notes) std::cout << "       " << n << "\n";
        if (!o.pass) ++failed;
    }
    return failed == 0 ? 0 : 1;
}
