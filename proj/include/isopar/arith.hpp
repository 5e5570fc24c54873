#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "isopar/error.hpp"

namespace isopar {

// Half the dimension of an irreducible real representation of the Clifford
// algebra on m+1 generators squaring to +1.  Periodic: delta(m+8) = 16 delta(m).
inline std::uint64_t delta(std::int64_t m) {
    static constexpr std::array<std::uint64_t, 8> table{1, 2, 4, 4, 8, 8, 8, 8};
    if (m < 1) {
        throw DomainError("delta: m must be >= 1, got " + std::to_string(m));
    }
    const auto shift = 4 * ((m - 1) / 8);
    if (shift > 60) {
        throw DomainError("delta: m = " + std::to_string(m) + " overflows 64 bits");
    }
    return table[static_cast<std::size_t>((m - 1) % 8)] << shift;
}

// rho(N) - 1 is the maximal number of pointwise linearly independent vector
// fields on S^{N-1}.  N = odd * 2^{4c+b} with 0 <= b <= 3 gives 2^b + 8c.
inline std::uint64_t radon_hurwitz(std::int64_t N) {
    if (N < 1) {
        throw DomainError("radon_hurwitz: N must be >= 1, got " + std::to_string(N));
    }
    std::uint64_t v = static_cast<std::uint64_t>(N);
    std::uint64_t a = 0;
    while ((v & 1U) == 0) {
        v >>= 1;
        ++a;
    }
    return (std::uint64_t{1} << (a % 4)) + 8 * (a / 4);
}

// delta(0) is taken to be 1.
inline bool delta_divides(std::int64_t ell, std::int64_t N) {
    if (ell < 0) {
        throw DomainError("delta_divides: ell must be >= 0, got " + std::to_string(ell));
    }
    if (N < 1) {
        throw DomainError("delta_divides: N must be >= 1, got " + std::to_string(N));
    }
    const std::uint64_t d = ell == 0 ? 1 : delta(ell);
    return static_cast<std::uint64_t>(N) % d == 0;
}

} // namespace isopar
