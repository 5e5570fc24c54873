#pragma once

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "isopar/arith.hpp"
#include "isopar/error.hpp"

namespace isopar {

/// A candidate (n; m_+, m_-): n is the dimension of the hypersurface, m_+
/// and m_- the dimensions of the normal spheres of the two dual submanifolds.
struct DimensionTriple {
    std::int64_t n;
    std::int64_t m_plus;
    std::int64_t m_minus;

    friend bool operator==(const DimensionTriple&, const DimensionTriple&) = default;
};

inline void validate(const DimensionTriple& t) {
    if (t.n < 1 || t.m_plus < 1 || t.m_minus < 1) {
        throw DomainError("triple entries must be positive");
    }
    if (t.m_plus > t.n || t.m_minus > t.n) {
        throw DomainError("multiplicities must not exceed n");
    }
}

enum class Case { EqualN, OneThird, OneQuarter, OneSixth, RatioOne, RatioTwo };

inline constexpr std::string_view to_string(Case c) {
    switch (c) {
    case Case::EqualN: return "EqualN";
    case Case::OneThird: return "OneThird";
    case Case::OneQuarter: return "OneQuarter";
    case Case::OneSixth: return "OneSixth";
    case Case::RatioOne: return "RatioOne";
    case Case::RatioTwo: return "RatioTwo";
    }
    return "?";
}

// Number of distinct principal curvatures implied by each case.
inline constexpr std::int64_t case_g(Case c) {
    switch (c) {
    case Case::EqualN: return 1;
    case Case::OneThird: return 3;
    case Case::OneQuarter: return 4;
    case Case::OneSixth: return 6;
    case Case::RatioOne: return 2;
    case Case::RatioTwo: return 4;
    }
    return 0;
}

struct Verdict {
    bool admissible = false;
    std::vector<Case> cases;     // in declaration order of Case
    std::optional<std::int64_t> g;

    bool has(Case c) const { return std::find(cases.begin(), cases.end(), c) != cases.end(); }
};

/// Necessary conditions on the dimensions of a dual pair in a simply connected
/// rational homology sphere.  Every matching case is reported; when several
/// match they agree on g.
inline Verdict theorem_a(const DimensionTriple& t) {
    validate(t);
    const auto n = t.n;
    const auto lo = std::min(t.m_plus, t.m_minus);
    const auto hi = std::max(t.m_plus, t.m_minus);
    const auto sum = lo + hi;

    Verdict v;
    const bool equal = lo == hi;
    auto in = [](std::int64_t x, std::initializer_list<std::int64_t> set) {
        return std::find(set.begin(), set.end(), x) != set.end();
    };

    // A point forces its dual to be a point.
    if (hi == n && lo != n) {
        return v;
    }
    if (equal && lo == n) v.cases.push_back(Case::EqualN);
    if (equal && 3 * lo == n && in(lo, {1, 2, 4, 8})) v.cases.push_back(Case::OneThird);
    if (equal && 4 * lo == n && in(lo, {1, 2})) v.cases.push_back(Case::OneQuarter);
    if (equal && 6 * lo == n && in(lo, {1, 2})) v.cases.push_back(Case::OneSixth);
    if (n == sum) v.cases.push_back(Case::RatioOne);
    if (n == 2 * sum && (lo == 1 || sum % 2 == 1)) v.cases.push_back(Case::RatioTwo);

    v.admissible = !v.cases.empty();
    if (v.admissible) {
        v.g = case_g(v.cases.front());
        for (auto c : v.cases) {
            if (case_g(c) != *v.g) {
                throw InvariantViolation("theorem_a: matching cases disagree on g");
            }
        }
    }
    return v;
}

/// g from 2n = g (m_+ + m_-), with equal multiplicities required when g is odd.
inline std::optional<std::int64_t> munzner_g(const DimensionTriple& t) {
    validate(t);
    const auto sum = t.m_plus + t.m_minus;
    if ((2 * t.n) % sum != 0) {
        return std::nullopt;
    }
    const auto g = 2 * t.n / sum;
    if (g % 2 == 1 && t.m_plus != t.m_minus) {
        return std::nullopt;
    }
    return g;
}

enum class StolzVariant { HomotopySphere, Dupin };
enum class StolzReason { ExceptionalPair, Divisibility, Fails };

inline constexpr std::string_view to_string(StolzVariant v) {
    return v == StolzVariant::HomotopySphere ? "HomotopySphere" : "Dupin";
}

inline constexpr std::string_view to_string(StolzReason r) {
    switch (r) {
    case StolzReason::ExceptionalPair: return "ExceptionalPair";
    case StolzReason::Divisibility: return "Divisibility";
    case StolzReason::Fails: return "Fails";
    }
    return "?";
}

struct StolzVerdict {
    bool admissible = false;
    StolzReason reason = StolzReason::Fails;
};

/// Realizability test for g = 4 multiplicity pairs.  HomotopySphere needs
/// 2 <= m_minus < m_plus and excepts (5,4); Dupin needs 1 <= m_minus <= m_plus
/// and excepts (m_plus, m_minus) = (2,2) and (5,4).  Otherwise the pair passes
/// iff delta(m_minus - 1) divides m_plus + m_minus + 1.
inline StolzVerdict stolz(std::int64_t m_plus, std::int64_t m_minus, StolzVariant variant) {
    const auto pair = "(" + std::to_string(m_plus) + "," + std::to_string(m_minus) + ")";
    if (variant == StolzVariant::HomotopySphere) {
        if (m_minus < 2) {
            throw DomainError("stolz(HomotopySphere): requires m_minus >= 2, got " + pair);
        }
        if (m_minus >= m_plus) {
            throw DomainError("stolz(HomotopySphere): requires m_minus < m_plus, got " + pair);
        }
        if (m_plus == 5 && m_minus == 4) {
            return {true, StolzReason::ExceptionalPair};
        }
    } else {
        if (m_minus < 1) {
            throw DomainError("stolz(Dupin): requires m_minus >= 1, got " + pair);
        }
        if (m_minus > m_plus) {
            throw DomainError("stolz(Dupin): requires m_minus <= m_plus, got " + pair);
        }
        if ((m_plus == 2 && m_minus == 2) || (m_plus == 5 && m_minus == 4)) {
            return {true, StolzReason::ExceptionalPair};
        }
    }
    if (delta_divides(m_minus - 1, m_plus + m_minus + 1)) {
        return {true, StolzReason::Divisibility};
    }
    return {false, StolzReason::Fails};
}

struct FkmEntry {
    std::int64_t m;      // Clifford index
    std::int64_t k;      // number of irreducible summands
    std::int64_t n;      // hypersurface dimension, n + 2 = 2 k delta(m)
    std::int64_t m_plus; // larger multiplicity
    std::int64_t m_minus;

    DimensionTriple triple() const { return {n, m_plus, m_minus}; }
};

/// All FKM multiplicity data on ambient spheres S^{n+1} with n + 1 <= max_ambient_dim
/// and both multiplicities m and k delta(m) - m - 1 positive.  Ordered by (m, k).
inline std::vector<FkmEntry> enumerate_fkm(std::int64_t max_ambient_dim) {
    if (max_ambient_dim < 4) {
        throw DomainError("enumerate_fkm: max_ambient_dim must be >= 4");
    }
    std::vector<FkmEntry> out;
    for (std::int64_t m = 1;; ++m) {
        // 2 k delta(m) >= 2(m + 2) grows without bound in m.
        if (2 * (m + 2) > max_ambient_dim + 1) break;
        if (m > 128 || delta(m) > static_cast<std::uint64_t>(max_ambient_dim)) continue;
        const auto d = static_cast<std::int64_t>(delta(m));
        // k must satisfy k d - m - 1 >= 1.
        const auto k_min = std::max<std::int64_t>(1, (m + 2 + d - 1) / d);
        if (2 * k_min * d > max_ambient_dim + 1) {
            continue;
        }
        for (std::int64_t k = k_min; 2 * k * d <= max_ambient_dim + 1; ++k) {
            const auto n = 2 * k * d - 2;
            const auto other = k * d - m - 1;
            out.push_back({m, k, n, std::max(m, other), std::min(m, other)});
        }
    }
    return out;
}

} // namespace isopar
