#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "isopar/error.hpp"

namespace isopar {

/// Data of the two sphere fibrations E -> B_+ and E -> B_- with fibers
/// S^{m_plus}, S^{m_minus}.  A fibration can only be twisted over a circle
/// companion: twist_plus needs m_minus = 1, twist_minus needs m_plus = 1.
struct FiberConfig {
    std::int64_t m_plus = 1;
    std::int64_t m_minus = 1;
    bool twist_plus = false;
    bool twist_minus = false;

    friend bool operator==(const FiberConfig&, const FiberConfig&) = default;
};

inline void validate(const FiberConfig& cfg) {
    if (cfg.m_minus < 1) throw DomainError("fiber config: m_minus must be >= 1");
    if (cfg.m_plus < cfg.m_minus) throw DomainError("fiber config: requires m_plus >= m_minus");
    if (cfg.twist_plus && cfg.m_minus != 1) throw DomainError("fiber config: phi_+ can only be twisted when m_minus = 1");
    if (cfg.twist_minus && cfg.m_plus != 1) throw DomainError("fiber config: phi_- can only be twisted when m_plus = 1");
}

/// Puts the larger multiplicity first, carrying the twist flags along.
inline FiberConfig normalized(FiberConfig cfg) {
    if (cfg.m_plus < cfg.m_minus) {
        std::swap(cfg.m_plus, cfg.m_minus);
        std::swap(cfg.twist_plus, cfg.twist_minus);
    }
    return cfg;
}

enum class FundamentalGroup { Trivial, Z, ZxZ, ZxZ2, Q8 };

inline constexpr std::string_view to_string(FundamentalGroup g) {
    switch (g) {
    case FundamentalGroup::Trivial: return "1";
    case FundamentalGroup::Z: return "Z";
    case FundamentalGroup::ZxZ: return "Z+Z";
    case FundamentalGroup::ZxZ2: return "Z+Z_2";
    case FundamentalGroup::Q8: return "Q8";
    }
    return "?";
}

inline FundamentalGroup fundamental_group(const FiberConfig& cfg) {
    validate(cfg);
    if (cfg.m_minus > 1) return FundamentalGroup::Trivial;
    if (cfg.m_plus > 1) return FundamentalGroup::Z;
    const int twists = int{cfg.twist_plus} + int{cfg.twist_minus};
    if (twists == 0) return FundamentalGroup::ZxZ;
    if (twists == 1) return FundamentalGroup::ZxZ2;
    return FundamentalGroup::Q8;
}

/// Finitely generated abelian group Z^rank + torsion (prime powers, sorted).
struct AbelianGroup {
    int rank = 0;
    std::vector<std::int64_t> torsion;

    static AbelianGroup free(int rank) { return {rank, {}}; }
    static AbelianGroup make(int rank, std::vector<std::int64_t> torsion) {
        std::sort(torsion.begin(), torsion.end());
        return {rank, std::move(torsion)};
    }

    friend bool operator==(const AbelianGroup&, const AbelianGroup&) = default;
};

inline std::string to_string(const AbelianGroup& a) {
    std::string out;
    for (int i = 0; i < a.rank; ++i) out += out.empty() ? "Z" : "+Z";
    for (auto t : a.torsion) out += (out.empty() ? "Z_" : "+Z_") + std::to_string(t);
    return out.empty() ? "0" : out;
}

enum class HomologyRow { Unequal, Equal, PlusTwisted, CircleOneTwist, CircleBothTwisted };

inline HomologyRow homology_row(const FiberConfig& cfg) {
    validate(cfg);
    const int twists = int{cfg.twist_plus} + int{cfg.twist_minus};
    if (cfg.m_plus == 1 && cfg.m_minus == 1 && twists == 2) return HomologyRow::CircleBothTwisted;
    if (cfg.m_plus == 1 && cfg.m_minus == 1 && twists == 1) return HomologyRow::CircleOneTwist;
    if (cfg.twist_plus) return HomologyRow::PlusTwisted;
    return cfg.m_plus == cfg.m_minus ? HomologyRow::Equal : HomologyRow::Unequal;
}

// Period of H_i(F) in i for i > 0.
inline std::int64_t homology_period(const FiberConfig& cfg) {
    switch (homology_row(cfg)) {
    case HomologyRow::Unequal: return cfg.m_plus + cfg.m_minus;
    case HomologyRow::Equal: return cfg.m_plus;
    case HomologyRow::PlusTwisted: return 2 * cfg.m_plus + 2;
    case HomologyRow::CircleOneTwist: return 4;
    case HomologyRow::CircleBothTwisted: return 3;
    }
    return 1;
}

/// H_i(F; Z) of the homotopy fiber of E -> DE.
inline AbelianGroup fiber_homology(const FiberConfig& cfg, std::int64_t i) {
    if (i < 0) throw DomainError("fiber_homology: degree must be >= 0");
    const auto row = homology_row(cfg);
    if (i == 0) return AbelianGroup::free(1);
    const auto p = homology_period(cfg);
    const auto r = i % p;
    const auto mp = cfg.m_plus, mm = cfg.m_minus;
    switch (row) {
    case HomologyRow::Unequal:
        if (r == 0) return AbelianGroup::free(2);
        if (r == mp % p || r == mm % p) return AbelianGroup::free(1);
        return {};
    case HomologyRow::Equal:
        return r == 0 ? AbelianGroup::free(2) : AbelianGroup{};
    case HomologyRow::PlusTwisted:
        if (r == 0) return AbelianGroup::free(2);
        if (r == 1 || r == p - 1) return AbelianGroup::free(1);
        if (r == mp || r == mp + 1) return AbelianGroup::make(0, {2});
        return {};
    case HomologyRow::CircleOneTwist:
        switch (r) {
        case 0: return AbelianGroup::free(2);
        case 1: return AbelianGroup::make(1, {2});
        case 2: return AbelianGroup::make(0, {2});
        default: return AbelianGroup::free(1);
        }
    case HomologyRow::CircleBothTwisted:
        if (r == 0) return AbelianGroup::free(2);
        if (r == 1) return AbelianGroup::make(0, {2, 2});
        return {};
    }
    return {};
}

// ---------------------------------------------------------------------------
// Rational homotopy types

enum class NamedQuotient { SU3_T2, Sp2_T2, G2_T2, Sp3_Sp1Cubed, F4_Spin8, SO3_Z2Z2, SO4_Z2Z2, SO2xSO3_Z2 };

struct Atom {
    enum class Kind { Sphere, LoopSphere, AmSpace, Named };
    Kind kind = Kind::Sphere;
    std::int64_t k = 0;  // sphere dimension, or generator degree of A_m(k)
    std::int64_t m = 0;  // A_m(k) height
    NamedQuotient name = NamedQuotient::SU3_T2;

    static Atom sphere(std::int64_t k) { return {Kind::Sphere, k, 0, {}}; }
    static Atom loop_sphere(std::int64_t k) { return {Kind::LoopSphere, k, 0, {}}; }
    static Atom am_space(std::int64_t m, std::int64_t k) { return {Kind::AmSpace, k, m, {}}; }
    static Atom named(NamedQuotient q) { return {Kind::Named, 0, 0, q}; }

    friend bool operator==(const Atom&, const Atom&) = default;
};

using Product = std::vector<Atom>;

/// One entry of the table: the first product is the listed form, the rest are
/// forms it is rationally equivalent to.
using Alternative = std::vector<Product>;

struct RationalType {
    std::vector<Alternative> alternatives;
};

inline std::string_view name_of(NamedQuotient q) {
    switch (q) {
    case NamedQuotient::SU3_T2: return "SU(3)/T^2";
    case NamedQuotient::Sp2_T2: return "Sp(2)/T^2";
    case NamedQuotient::G2_T2: return "G_2/T^2";
    case NamedQuotient::Sp3_Sp1Cubed: return "Sp(3)/Sp(1)^3";
    case NamedQuotient::F4_Spin8: return "F_4/Spin(8)";
    case NamedQuotient::SO3_Z2Z2: return "SO(3)/(Z_2+Z_2)";
    case NamedQuotient::SO4_Z2Z2: return "SO(4)/(Z_2+Z_2)";
    case NamedQuotient::SO2xSO3_Z2: return "(SO(2)xSO(3))/Z_2";
    }
    return "?";
}

/// Rational reduction of each homogeneous space.  The flag manifolds are the
/// A_m(k) spaces; the three finite quotients have the rational cohomology of
/// S^3, S^3 x S^3 and S^1 x S^3.
inline Product rational_reduction(NamedQuotient q) {
    switch (q) {
    case NamedQuotient::SU3_T2: return {Atom::am_space(3, 2)};
    case NamedQuotient::Sp2_T2: return {Atom::am_space(4, 2)};
    case NamedQuotient::G2_T2: return {Atom::am_space(6, 2)};
    case NamedQuotient::Sp3_Sp1Cubed: return {Atom::am_space(3, 4)};
    case NamedQuotient::F4_Spin8: return {Atom::am_space(3, 8)};
    case NamedQuotient::SO3_Z2Z2: return {Atom::sphere(3)};
    case NamedQuotient::SO4_Z2Z2: return {Atom::sphere(3), Atom::sphere(3)};
    case NamedQuotient::SO2xSO3_Z2: return {Atom::sphere(1), Atom::sphere(3)};
    }
    return {};
}

inline std::string to_string(const Atom& a) {
    switch (a.kind) {
    case Atom::Kind::Sphere: return "S^" + std::to_string(a.k);
    case Atom::Kind::LoopSphere: return "Loop(S^" + std::to_string(a.k) + ")";
    case Atom::Kind::AmSpace: return "A_" + std::to_string(a.m) + "(" + std::to_string(a.k) + ")";
    case Atom::Kind::Named: return std::string(name_of(a.name));
    }
    return "?";
}

inline std::string to_string(const Product& p) {
    std::string out;
    for (const auto& a : p) out += (out.empty() ? "" : " x ") + to_string(a);
    return out;
}

inline std::string to_string(const Alternative& alt) {
    std::string out;
    for (const auto& p : alt) out += (out.empty() ? "" : " ~Q ") + to_string(p);
    return out;
}

/// Rational homotopy type of the fiber F.  Multiple alternatives are returned
/// where the table lists several types.  With homotopy_sphere_context the
/// A_4(4) x Loop(S^17) and A_6(4) x Loop(S^25) alternatives are dropped.
/// For m_plus > m_minus = 1 with m_plus even and phi_+ twisted no type is
/// listed and the result is empty.
inline RationalType rational_type(const FiberConfig& cfg, bool homotopy_sphere_context = false) {
    validate(cfg);
    using A = Atom;
    const auto a = cfg.m_plus, b = cfg.m_minus;
    RationalType rt;
    auto& alts = rt.alternatives;
    switch (homology_row(cfg)) {
    case HomologyRow::CircleBothTwisted:
        alts.push_back({{A::named(NamedQuotient::SO3_Z2Z2), A::loop_sphere(4)},
                        {A::named(NamedQuotient::SO4_Z2Z2), A::loop_sphere(7)}});
        return rt;
    case HomologyRow::CircleOneTwist:
        alts.push_back({{A::named(NamedQuotient::SO2xSO3_Z2), A::loop_sphere(5)}});
        return rt;
    case HomologyRow::PlusTwisted:
        if (a % 2 == 1) alts.push_back({{A::sphere(1), A::sphere(2 * a + 1), A::loop_sphere(2 * a + 3)}});
        return rt;
    case HomologyRow::Unequal:
        if (b == 1) {
            Alternative alt{{A::sphere(1), A::sphere(a), A::loop_sphere(a + 2)}};
            if (a % 2 == 0) alt.push_back({A::sphere(1), A::sphere(a), A::sphere(a + 1), A::loop_sphere(2 * a + 3)});
            alts.push_back(std::move(alt));
        } else {
            alts.push_back({{A::sphere(a), A::sphere(b), A::loop_sphere(a + b + 1)}});
        }
        return rt;
    case HomologyRow::Equal:
        break;
    }

    const Product doubled{A::sphere(a), A::sphere(a), A::loop_sphere(2 * a + 1)};
    const Product single{A::sphere(a), A::loop_sphere(a + 1)};
    if (a % 2 == 1) {
        alts.push_back({doubled, single});
        return rt;
    }
    alts.push_back({doubled});
    alts.push_back({single});
    if (a == 2) {
        alts.push_back({{A::named(NamedQuotient::SU3_T2), A::loop_sphere(7)}});
        alts.push_back({{A::named(NamedQuotient::Sp2_T2), A::loop_sphere(9)}});
        alts.push_back({{A::named(NamedQuotient::G2_T2), A::loop_sphere(13)}});
    } else if (a == 4) {
        alts.push_back({{A::named(NamedQuotient::Sp3_Sp1Cubed), A::loop_sphere(13)}});
        if (!homotopy_sphere_context) {
            alts.push_back({{A::am_space(4, 4), A::loop_sphere(17)}});
            alts.push_back({{A::am_space(6, 4), A::loop_sphere(25)}});
        }
    } else if (a == 8) {
        alts.push_back({{A::named(NamedQuotient::F4_Spin8), A::loop_sphere(25)}});
    }
    return rt;
}

// ---------------------------------------------------------------------------
// Poincare series, truncated at max_degree

using Series = std::vector<std::int64_t>;

inline Series series_multiply(const Series& p, const Series& q) {
    Series out(p.size(), 0);
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] == 0) continue;
        for (std::size_t j = 0; i + j < out.size(); ++j) out[i + j] += p[i] * q[j];
    }
    return out;
}

inline Series atom_series(const Atom& atom, std::int64_t max_degree) {
    const auto len = static_cast<std::size_t>(max_degree + 1);
    Series s(len, 0);
    s[0] = 1;
    auto add = [&](std::int64_t deg, std::int64_t c) {
        if (deg <= max_degree) s[static_cast<std::size_t>(deg)] += c;
    };
    switch (atom.kind) {
    case Atom::Kind::Sphere:
        if (atom.k < 1) throw DomainError("atom_series: sphere dimension must be >= 1");
        add(atom.k, 1);
        return s;
    case Atom::Kind::LoopSphere: {
        if (atom.k < 2) throw DomainError("atom_series: Loop(S^k) needs k >= 2");
        if (atom.k % 2 == 1) {
            // H^*(Loop S^{2j+1}; Q) = Q[x], |x| = 2j.
            const auto step = atom.k - 1;
            for (std::int64_t d = step; d <= max_degree; d += step) add(d, 1);
            return s;
        }
        // Loop S^{2j} ~Q S^{2j-1} x Loop S^{4j-1}.
        return series_multiply(atom_series(Atom::sphere(atom.k - 1), max_degree),
                               atom_series(Atom::loop_sphere(2 * atom.k - 1), max_degree));
    }
    case Atom::Kind::AmSpace:
        if (atom.m < 1 || atom.k < 1) throw DomainError("atom_series: A_m(k) needs m, k >= 1");
        // Basis {x^i, x^{i-1} y} of Q[x,y]/(x^m, x^2 + c y^2).
        for (std::int64_t i = 1; i < atom.m; ++i) add(i * atom.k, 2);
        add(atom.m * atom.k, 1);
        return s;
    case Atom::Kind::Named: {
        Series out = s;
        for (const auto& part : rational_reduction(atom.name)) out = series_multiply(out, atom_series(part, max_degree));
        return out;
    }
    }
    return s;
}

/// Rational Betti numbers b_0..b_max_degree.
inline Series poincare_series(const Product& p, std::int64_t max_degree) {
    if (max_degree < 0) throw DomainError("poincare_series: max_degree must be >= 0");
    Series out(static_cast<std::size_t>(max_degree + 1), 0);
    out[0] = 1;
    for (const auto& a : p) out = series_multiply(out, atom_series(a, max_degree));
    return out;
}

/// Series shared by every alternative and equivalent form of rt.
inline Series poincare_series(const RationalType& rt, std::int64_t max_degree) {
    if (rt.alternatives.empty()) throw DomainError("poincare_series: empty rational type");
    const Series ref = poincare_series(rt.alternatives.front().front(), max_degree);
    for (const auto& alt : rt.alternatives)
        for (const auto& p : alt)
            if (poincare_series(p, max_degree) != ref) {
                throw InvariantViolation("poincare_series: alternatives disagree (" + to_string(p) + ")");
            }
    return ref;
}

struct ConsistencyReport {
    bool consistent = true;
    std::size_t forms_checked = 0;
    std::vector<std::string> mismatches;
};

/// rank H_i(F; Z) against the Poincare coefficient of every listed form, i <= max_degree.
inline ConsistencyReport check_table_consistency(const FiberConfig& cfg, std::int64_t max_degree,
                                                 bool homotopy_sphere_context = false) {
    ConsistencyReport rep;
    const auto rt = rational_type(cfg, homotopy_sphere_context);
    for (const auto& alt : rt.alternatives)
        for (const auto& p : alt) {
            ++rep.forms_checked;
            const auto s = poincare_series(p, max_degree);
            for (std::int64_t i = 0; i <= max_degree; ++i) {
                const auto rank = fiber_homology(cfg, i).rank;
                if (rank != s[static_cast<std::size_t>(i)]) {
                    rep.consistent = false;
                    rep.mismatches.push_back(to_string(p) + ": degree " + std::to_string(i) + " rank " +
                                             std::to_string(rank) + " vs b = " + std::to_string(s[static_cast<std::size_t>(i)]));
                    break;
                }
            }
        }
    return rep;
}

} // namespace isopar
