#pragma once

#include <cstdint>
#include <cstdlib>
#include <string>
#include <string_view>
#include <vector>

#include "isopar/arith.hpp"
#include "isopar/error.hpp"

namespace isopar {

/// Dense square integer matrix, row-major.
class IntMatrix {
  public:
    IntMatrix() = default;
    explicit IntMatrix(std::size_t n) : n_(n), data_(n * n, 0) {}

    static IntMatrix identity(std::size_t n) {
        IntMatrix m(n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    std::size_t size() const noexcept { return n_; }
    std::int64_t& operator()(std::size_t r, std::size_t c) { return data_[r * n_ + c]; }
    std::int64_t operator()(std::size_t r, std::size_t c) const { return data_[r * n_ + c]; }
    const std::vector<std::int64_t>& data() const noexcept { return data_; }

    IntMatrix transpose() const {
        IntMatrix t(n_);
        for (std::size_t r = 0; r < n_; ++r)
            for (std::size_t c = 0; c < n_; ++c) t(c, r) = (*this)(r, c);
        return t;
    }

    std::int64_t trace() const {
        std::int64_t s = 0;
        for (std::size_t i = 0; i < n_; ++i) s += (*this)(i, i);
        return s;
    }

    bool is_zero() const {
        for (auto v : data_)
            if (v != 0) return false;
        return true;
    }

    friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
        const auto n = a.n_;
        IntMatrix out(n);
        for (std::size_t r = 0; r < n; ++r) {
            for (std::size_t k = 0; k < n; ++k) {
                const auto av = a(r, k);
                if (av == 0) continue;
                for (std::size_t c = 0; c < n; ++c) out(r, c) += av * b(k, c);
            }
        }
        return out;
    }

    friend IntMatrix operator+(IntMatrix a, const IntMatrix& b) {
        for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] += b.data_[i];
        return a;
    }

    friend IntMatrix operator-(const IntMatrix& a) {
        IntMatrix out = a;
        for (auto& v : out.data_) v = -v;
        return out;
    }

    friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

  private:
    std::size_t n_ = 0;
    std::vector<std::int64_t> data_;
};

inline IntMatrix kron(const IntMatrix& a, const IntMatrix& b) {
    const auto na = a.size(), nb = b.size();
    IntMatrix out(na * nb);
    for (std::size_t i = 0; i < na; ++i)
        for (std::size_t j = 0; j < na; ++j) {
            const auto av = a(i, j);
            if (av == 0) continue;
            for (std::size_t k = 0; k < nb; ++k)
                for (std::size_t l = 0; l < nb; ++l) out(i * nb + k, j * nb + l) = av * b(k, l);
        }
    return out;
}

/// [[top_left, top_right], [bottom_left, bottom_right]] from equal-size blocks.
inline IntMatrix block2x2(const IntMatrix& tl, const IntMatrix& tr, const IntMatrix& bl, const IntMatrix& br) {
    const auto h = tl.size();
    IntMatrix out(2 * h);
    for (std::size_t r = 0; r < h; ++r)
        for (std::size_t c = 0; c < h; ++c) {
            out(r, c) = tl(r, c);
            out(r, c + h) = tr(r, c);
            out(r + h, c) = bl(r, c);
            out(r + h, c + h) = br(r, c);
        }
    return out;
}

namespace detail {

// Tensor word over the 2x2 signed permutations I, Z = diag(1,-1),
// X = antidiag(1,1), J = antidiag(1,-1).  Words with an odd number of J are
// skew-symmetric and square to -I; distinct non-identity letters anticommute.
inline IntMatrix tensor_word(std::string_view word) {
    IntMatrix out = IntMatrix::identity(1);
    for (char ch : word) {
        IntMatrix b(2);
        switch (ch) {
        case 'I': b(0, 0) = 1; b(1, 1) = 1; break;
        case 'Z': b(0, 0) = 1; b(1, 1) = -1; break;
        case 'X': b(0, 1) = 1; b(1, 0) = 1; break;
        case 'J': b(0, 1) = 1; b(1, 0) = -1; break;
        default: throw InvariantViolation("tensor_word: bad letter");
        }
        out = kron(out, b);
    }
    return out;
}

// Pairwise anticommuting complex structures on the base blocks of size 2, 4,
// 8 and 16.  The first r words of the block of size delta(r + 1) realize
// r generators; the size-16 family (r = 8) also drives the periodicity step.
inline const std::vector<std::string_view>& base_words(std::size_t block) {
    static const std::vector<std::string_view> b2{"J"};
    static const std::vector<std::string_view> b4{"IJ", "JZ", "JX"};
    static const std::vector<std::string_view> b8{"IIJ", "IJZ", "ZJX", "XJX", "JIX", "JZZ", "JXZ"};
    static const std::vector<std::string_view> b16{"IIIJ", "IIJZ", "IZJX", "IXJX", "IJIX", "IJZZ", "ZJXZ", "XJXZ"};
    switch (block) {
    case 2: return b2;
    case 4: return b4;
    case 8: return b8;
    case 16: return b16;
    default: throw InvariantViolation("base_words: no base block of size " + std::to_string(block));
    }
}

} // namespace detail

/// r pairwise anticommuting, skew-symmetric signed permutation matrices
/// squaring to -I on R^{delta(r+1)}.  For r > 8 the family is
/// {C_i (x) I} u {w (x) A_j}, where C_1..C_8 are the size-16 generators,
/// w = C_1...C_8 and A_j the family for r - 8.
inline std::vector<IntMatrix> hurwitz_radon_family(std::size_t r) {
    const auto dim = static_cast<std::size_t>(delta(static_cast<std::int64_t>(r) + 1));
    if (r == 0) return {};
    if (r <= 8) {
        const auto& words = detail::base_words(dim);
        std::vector<IntMatrix> out;
        for (std::size_t j = 0; j < r; ++j) out.push_back(detail::tensor_word(words[j]));
        return out;
    }
    const auto inner = hurwitz_radon_family(r - 8);
    const auto inner_dim = dim / 16;
    std::vector<IntMatrix> gens;
    IntMatrix omega = IntMatrix::identity(16);
    for (auto word : detail::base_words(16)) {
        gens.push_back(detail::tensor_word(word));
        omega = omega * gens.back();
    }
    std::vector<IntMatrix> out;
    for (const auto& c : gens) out.push_back(kron(c, IntMatrix::identity(inner_dim)));
    for (const auto& a : inner) out.push_back(kron(omega, a));
    return out;
}

/// Symmetric Clifford system P_0..P_m on R^{2 k delta(m)}.
struct CliffordSystem {
    std::int64_t m = 0;
    std::int64_t k = 0;
    std::size_t dim = 0;
    std::vector<IntMatrix> matrices;
};

/// On R^{2h} = {(u, v)} with h = k delta(m):
///   P_0 (u,v) = (u, -v),  P_1 (u,v) = (v, u),  P_{1+j} (u,v) = (E_j v, -E_j u),
/// with E_1..E_{m-1} the Hurwitz-Radon family on delta(m), repeated k times
/// block-diagonally.
inline CliffordSystem build_clifford_system(std::int64_t m, std::int64_t k) {
    if (m < 1) throw DomainError("build_clifford_system: m must be >= 1");
    if (k < 1) throw DomainError("build_clifford_system: k must be >= 1");
    const auto block = static_cast<std::size_t>(delta(m));
    const auto half = static_cast<std::size_t>(k) * block;
    if (half > (std::size_t{1} << 14)) throw DomainError("build_clifford_system: dimension too large");

    CliffordSystem sys;
    sys.m = m;
    sys.k = k;
    sys.dim = 2 * half;

    const IntMatrix id = IntMatrix::identity(half);
    const IntMatrix zero(half);
    sys.matrices.push_back(block2x2(id, zero, zero, -id));
    sys.matrices.push_back(block2x2(zero, id, id, zero));

    const auto repeat = IntMatrix::identity(static_cast<std::size_t>(k));
    for (const auto& e_small : hurwitz_radon_family(static_cast<std::size_t>(m - 1))) {
        if (e_small.size() != block) throw InvariantViolation("build_clifford_system: family has wrong size");
        const IntMatrix e = kron(repeat, e_small);
        sys.matrices.push_back(block2x2(zero, e, -e, zero));
    }
    return sys;
}

struct CliffordReport {
    bool passed = true;
    std::vector<std::string> violations;
};

/// Exact check of every Clifford system invariant.  Never throws.
inline CliffordReport verify_clifford_system(const CliffordSystem& sys) {
    CliffordReport rep;
    auto fail = [&](std::string msg) {
        rep.passed = false;
        rep.violations.push_back(std::move(msg));
    };
    const auto& ps = sys.matrices;
    if (sys.m >= 1 && ps.size() != static_cast<std::size_t>(sys.m + 1)) {
        fail("expected " + std::to_string(sys.m + 1) + " matrices, got " + std::to_string(ps.size()));
    }
    if (sys.m >= 1 && sys.k >= 1 && sys.m <= 128 &&
        sys.dim != 2 * static_cast<std::size_t>(sys.k) * delta(sys.m)) {
        fail("dim != 2k delta(m)");
    }
    for (std::size_t i = 0; i < ps.size(); ++i) {
        if (ps[i].size() != sys.dim) {
            fail("P_" + std::to_string(i) + " has size " + std::to_string(ps[i].size()));
            return rep;
        }
    }

    const auto id = IntMatrix::identity(sys.dim);
    for (std::size_t i = 0; i < ps.size(); ++i) {
        const auto name = "P_" + std::to_string(i);
        const auto& p = ps[i];
        if (!(p == p.transpose())) fail(name + " not symmetric");
        if (!(p * p == id)) fail(name + "^2 ≠ I");
        if (p.trace() != 0) fail("trace(" + name + ") ≠ 0");

        bool signed_perm = true;
        std::vector<int> col_count(sys.dim, 0);
        for (std::size_t r = 0; r < sys.dim && signed_perm; ++r) {
            int row_count = 0;
            for (std::size_t c = 0; c < sys.dim; ++c) {
                const auto v = p(r, c);
                if (v == 0) continue;
                if (std::llabs(v) != 1) signed_perm = false;
                ++row_count;
                ++col_count[c];
            }
            if (row_count != 1) signed_perm = false;
        }
        for (auto cc : col_count)
            if (cc != 1) signed_perm = false;
        if (!signed_perm) fail(name + " not signed permutation");
    }
    for (std::size_t i = 0; i < ps.size(); ++i)
        for (std::size_t j = i + 1; j < ps.size(); ++j) {
            if (!(ps[i] * ps[j] + ps[j] * ps[i]).is_zero()) {
                const auto a = "P_" + std::to_string(i), b = "P_" + std::to_string(j);
                fail(a + b + "+" + b + a + " ≠ 0");
            }
        }
    return rep;
}

} // namespace isopar
