#include <catch_amalgamated.hpp>

#include <set>

#include "isopar/classify.hpp"
#include "oracles.hpp"

using namespace isopar;

namespace {
std::vector<Case> cases_of(std::int64_t n, std::int64_t a, std::int64_t b) { return theorem_a({n, a, b}).cases; }
} // namespace

TEST_CASE("theorem_a verdict table", "[classify]") {
    CHECK(cases_of(3, 1, 1) == std::vector{Case::OneThird});
    CHECK(cases_of(24, 8, 8) == std::vector{Case::OneThird});
    CHECK(cases_of(8, 1, 1).empty());
    CHECK(cases_of(12, 4, 2).empty());
    CHECK(cases_of(8, 2, 2) == std::vector{Case::OneQuarter});
    CHECK(cases_of(5, 5, 5) == std::vector{Case::EqualN});
    CHECK(cases_of(10, 4, 1) == std::vector{Case::RatioTwo});

    const auto v = theorem_a({24, 8, 8});
    CHECK(v.admissible);
    CHECK(v.g == 3);
    CHECK_FALSE(theorem_a({8, 1, 1}).admissible);
    CHECK_FALSE(theorem_a({8, 1, 1}).g.has_value());
}

TEST_CASE("overlapping bullets are all reported", "[classify]") {
    CHECK(cases_of(4, 1, 1) == std::vector{Case::OneQuarter, Case::RatioTwo});
    CHECK(theorem_a({4, 1, 1}).g == 4);
    CHECK(cases_of(2, 1, 1) == std::vector{Case::RatioOne});
}

TEST_CASE("a point forces the dual point", "[classify]") {
    CHECK(cases_of(5, 5, 1).empty());
    CHECK(cases_of(5, 1, 5).empty());
    CHECK(cases_of(1, 1, 1) == std::vector{Case::EqualN});
}

TEST_CASE("invalid triples are rejected", "[classify]") {
    CHECK_THROWS_AS(theorem_a({0, 1, 1}), DomainError);
    CHECK_THROWS_AS(theorem_a({4, 0, 1}), DomainError);
    CHECK_THROWS_AS(theorem_a({4, 5, 1}), DomainError);
}

TEST_CASE("theorem_a is symmetric and consistent with g", "[classify][property]") {
    for (std::int64_t n = 1; n <= 60; ++n)
        for (std::int64_t a = 1; a <= n; ++a)
            for (std::int64_t b = 1; b <= n; ++b) {
                const auto v = theorem_a({n, a, b});
                const auto w = theorem_a({n, b, a});
                REQUIRE(v.cases == w.cases);
                REQUIRE(v.admissible == !v.cases.empty());
                for (auto c : v.cases) REQUIRE(2 * n == case_g(c) * (a + b));
                if (v.admissible) REQUIRE(munzner_g({n, a, b}) == v.g);
            }
}

TEST_CASE("codimension-two dual pairs only in n = 1, 2, 3, 4, 6", "[classify][property]") {
    const std::set<std::int64_t> allowed{1, 2, 3, 4, 6};
    for (std::int64_t n = 1; n <= 100; ++n) {
        INFO("n = " << n);
        CHECK(theorem_a({n, 1, 1}).admissible == (allowed.count(n) == 1));
    }
}

TEST_CASE("munzner_g", "[classify]") {
    CHECK(munzner_g({4, 1, 1}) == 4);
    CHECK(munzner_g({24, 8, 8}) == 3);
    CHECK(munzner_g({12, 4, 2}) == 4);
    CHECK_FALSE(munzner_g({7, 2, 1}).has_value());  // 14/3
    CHECK_FALSE(munzner_g({9, 4, 2}).has_value());  // g = 3 with unequal multiplicities
    CHECK(munzner_g({9, 3, 3}) == 3);
}

TEST_CASE("stolz criteria", "[classify]") {
    auto hs = StolzVariant::HomotopySphere;
    auto du = StolzVariant::Dupin;
    auto v = stolz(5, 4, hs);
    CHECK(v.admissible);
    CHECK(v.reason == StolzReason::ExceptionalPair);
    v = stolz(2, 2, du);
    CHECK(v.admissible);
    CHECK(v.reason == StolzReason::ExceptionalPair);
    v = stolz(5, 4, du);
    CHECK(v.reason == StolzReason::ExceptionalPair);
    v = stolz(4, 3, hs);
    CHECK(v.admissible);
    CHECK(v.reason == StolzReason::Divisibility);
    v = stolz(5, 3, hs);
    CHECK_FALSE(v.admissible);
    CHECK(v.reason == StolzReason::Fails);
    // (6,4): delta(3) = 4 does not divide 11.
    CHECK_FALSE(stolz(6, 4, hs).admissible);
    // m_minus = 1: delta(0) = 1.
    CHECK(stolz(7, 1, du).reason == StolzReason::Divisibility);
}

TEST_CASE("stolz preconditions", "[classify]") {
    CHECK_THROWS_AS(stolz(5, 1, StolzVariant::HomotopySphere), DomainError);
    CHECK_THROWS_AS(stolz(4, 4, StolzVariant::HomotopySphere), DomainError);
    CHECK_THROWS_AS(stolz(3, 5, StolzVariant::HomotopySphere), DomainError);
    CHECK_THROWS_AS(stolz(4, 5, StolzVariant::Dupin), DomainError);
    CHECK_THROWS_AS(stolz(4, 0, StolzVariant::Dupin), DomainError);
    try {
        stolz(4, 4, StolzVariant::HomotopySphere);
    } catch (const DomainError& e) {
        CHECK(std::string(e.what()).find("m_minus < m_plus") != std::string::npos);
    }
}

TEST_CASE("enumerate_fkm examples", "[classify]") {
    const auto rows = enumerate_fkm(16);
    auto find = [&](std::int64_t m, std::int64_t k) -> const FkmEntry* {
        for (const auto& r : rows)
            if (r.m == m && r.k == k) return &r;
        return nullptr;
    };
    const auto* a = find(1, 3);
    REQUIRE(a);
    CHECK(a->n == 4);
    CHECK((a->m_plus == 1 && a->m_minus == 1));
    const auto* b = find(2, 2);
    REQUIRE(b);
    CHECK(b->n == 6);
    CHECK((b->m_plus == 2 && b->m_minus == 1));
    const auto* c = find(4, 2);
    REQUIRE(c);
    CHECK(c->n == 14);
    CHECK((c->m_plus == 4 && c->m_minus == 3));
    CHECK_FALSE(find(1, 2));  // n/2 - m = 0
    CHECK_THROWS_AS(enumerate_fkm(3), DomainError);
}

TEST_CASE("enumerate_fkm matches brute force", "[classify][oracle]") {
    const std::int64_t table[8] = {1, 2, 4, 4, 8, 8, 8, 8};
    auto table_delta = [&](std::int64_t m) {
        std::int64_t d = table[(m - 1) % 8];
        for (auto q = (m - 1) / 8; q > 0 && d < (std::int64_t{1} << 40); --q) d *= 16;
        return d;
    };
    for (std::int64_t D : {4, 6, 16, 31, 64, 256}) {
        auto expect = oracle::enumerate_fkm(D, table_delta);
        auto got = enumerate_fkm(D);
        std::set<std::tuple<std::int64_t, std::int64_t, std::int64_t, std::int64_t, std::int64_t>> e, g;
        for (const auto& r : expect) e.insert({r.m, r.k, r.n, r.hi, r.lo});
        for (const auto& r : got) g.insert({r.m, r.k, r.n, r.m_plus, r.m_minus});
        INFO("D = " << D);
        CHECK(e == g);
        CHECK(got.size() == expect.size());
    }
}

TEST_CASE("FKM data satisfies the dimension and Stolz conditions", "[classify][property]") {
    for (const auto& e : enumerate_fkm(256)) {
        INFO("m = " << e.m << ", k = " << e.k);
        const auto v = theorem_a(e.triple());
        REQUIRE(v.admissible);
        REQUIRE(v.has(Case::RatioTwo));
        if (e.m_minus >= 2) REQUIRE((e.m_plus + e.m_minus) % 2 == 1);
        if (e.m_minus >= 2 && e.m_minus < e.m_plus) REQUIRE(stolz(e.m_plus, e.m_minus, StolzVariant::HomotopySphere).admissible);
        REQUIRE(stolz(e.m_plus, e.m_minus, StolzVariant::Dupin).admissible);
    }
}
