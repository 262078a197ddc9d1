#pragma once

// Independent oracles used only by the test suites. They deliberately take
// different routes from the library: saturation by the unit-combination
// elimination loop instead of Smith elimination, and rank minima by
// exhaustive evaluation over P^1 of a quadratic extension field instead of
// gcd arguments.

#include <cstdint>
#include <optional>
#include <vector>

#include "pqs/diagnose.hpp"
#include "pqs/errors.hpp"
#include "pqs/fields.hpp"
#include "pqs/laurent.hpp"
#include "pqs/pencil.hpp"
#include "pqs/quadratic.hpp"

namespace pqs::oracle {

/// Saturation by iterated row normalization: shift each row to valuation 0,
/// and while the reductions mod t are k-proportional, subtract the constant
/// multiple and renormalize. Counts the total power of t shed.
template <CoefficientField F>
struct LoopSaturation {
    std::vector<Laurent<F>> row_f, row_g;
    std::int64_t shed = 0;
};

template <CoefficientField F>
LoopSaturation<F> loop_saturate(const QuadraticForm<F>& f, const QuadraticForm<F>& g) {
    LoopSaturation<F> st{f.monomial_coeffs(), g.monomial_coeffs(), 0};
    auto row_val = [](const std::vector<Laurent<F>>& row) -> std::optional<std::int64_t> {
        std::optional<std::int64_t> best;
        for (const auto& e : row)
            if (auto v = e.valuation(); v && (!best || *v < *best)) best = *v;
        return best;
    };
    auto shift_row = [](std::vector<Laurent<F>>& row, std::int64_t k) {
        for (auto& e : row) e = e.shifted(k);
    };
    for (int guard = 0; guard < 4096; ++guard) {
        const auto vf = row_val(st.row_f);
        const auto vg = row_val(st.row_g);
        if (!vf || !vg) throw DependentPencil();
        shift_row(st.row_f, -*vf);
        shift_row(st.row_g, -*vg);
        st.shed += *vf + *vg;
        // reductions mod t; both rows nonzero there by construction
        std::vector<F> bf, bg;
        for (const auto& e : st.row_f) bf.push_back(e.at_zero());
        for (const auto& e : st.row_g) bg.push_back(e.at_zero());
        std::size_t lead = 0;
        while (bf[lead].is_zero()) ++lead;
        const F c = bg[lead] * bf[lead].inverse();
        bool proportional = true;
        for (std::size_t i = 0; i < bf.size(); ++i)
            proportional = proportional && (bg[i] == c * bf[i]);
        if (!proportional) return st;
        for (std::size_t i = 0; i < st.row_g.size(); ++i)
            st.row_g[i] = st.row_g[i] - st.row_f[i].scaled(c);
    }
    throw Error("loop_saturate failed to terminate");
}

/// Quadratic extension F_p(s), s^2 = d with d a non-residue; just enough
/// arithmetic for rank computations.
struct Fp2 {
    std::uint32_t p = 0;
    std::int64_t d = 0;
    std::int64_t a = 0, b = 0;  // a + b s

    static std::int64_t non_residue(std::uint32_t p) {
        for (std::int64_t c = 2; c < static_cast<std::int64_t>(p); ++c) {
            // Euler criterion
            std::int64_t r = 1, base = c, e = (p - 1) / 2;
            while (e) {
                if (e & 1) r = r * base % p;
                base = base * base % p;
                e >>= 1;
            }
            if (r == static_cast<std::int64_t>(p) - 1) return c;
        }
        throw Error("no quadratic non-residue found");
    }

    static Fp2 make(std::uint32_t p, std::int64_t d, std::int64_t a, std::int64_t b) {
        auto red = [&](std::int64_t v) {
            v %= static_cast<std::int64_t>(p);
            return v < 0 ? v + p : v;
        };
        return Fp2{p, d, red(a), red(b)};
    }

    bool is_zero() const { return a == 0 && b == 0; }

    Fp2 operator+(const Fp2& o) const { return make(p, d, a + o.a, b + o.b); }
    Fp2 operator-(const Fp2& o) const { return make(p, d, a - o.a, b - o.b); }
    Fp2 operator*(const Fp2& o) const {
        return make(p, d, a * o.a + b * o.b % p * d, a * o.b + b * o.a);
    }
    Fp2 inverse() const {
        // (a - b s) / (a^2 - b^2 d)
        std::int64_t norm = (a * a - b * b % p * d) % static_cast<std::int64_t>(p);
        if (norm < 0) norm += p;
        if (norm == 0) throw DivisionByZero();
        // Fermat inverse of the norm
        std::int64_t inv = 1, base = norm, e = p - 2;
        while (e) {
            if (e & 1) inv = inv * base % p;
            base = base * base % p;
            e >>= 1;
        }
        return make(p, d, a * inv, -b * inv);
    }
    bool operator==(const Fp2& o) const { return a == o.a && b == o.b; }

    Fp2 embed(std::int64_t k) const { return make(p, d, k, 0); }
};

inline int rank_fp2(int n, std::vector<Fp2> m) {
    int rank = 0;
    int row = 0;
    for (int col = 0; col < n && row < n; ++col) {
        int pivot = -1;
        for (int r = row; r < n; ++r)
            if (!m[static_cast<std::size_t>(r) * n + col].is_zero()) {
                pivot = r;
                break;
            }
        if (pivot < 0) continue;
        for (int j = 0; j < n; ++j)
            std::swap(m[static_cast<std::size_t>(pivot) * n + j],
                      m[static_cast<std::size_t>(row) * n + j]);
        const Fp2 inv = m[static_cast<std::size_t>(row) * n + col].inverse();
        for (int r = row + 1; r < n; ++r) {
            const Fp2 factor = m[static_cast<std::size_t>(r) * n + col] * inv;
            if (factor.is_zero()) continue;
            for (int j = 0; j < n; ++j)
                m[static_cast<std::size_t>(r) * n + j] =
                    m[static_cast<std::size_t>(r) * n + j] -
                    factor * m[static_cast<std::size_t>(row) * n + j];
        }
        ++row;
        ++rank;
    }
    return rank;
}

/// Minimum rank of lambda f + mu g over all (lambda:mu) in P^1(F_{p^2}),
/// by exhaustive evaluation.
inline int min_rank_exhaustive(const pqs::CentralFibre<Fp>& fib, std::uint32_t p) {
    const int n = fib.n;
    const std::int64_t d = Fp2::non_residue(p);
    auto lift = [&](const Fp& x) { return Fp2::make(p, d, x.representative(), 0); };

    std::vector<Fp2> mf, mg;
    for (const auto& x : fib.mf) mf.push_back(lift(x));
    for (const auto& x : fib.mg) mg.push_back(lift(x));

    int best = n + 1;
    auto consider = [&](const Fp2& lam, const Fp2& mu) {
        std::vector<Fp2> m(static_cast<std::size_t>(n) * n);
        for (std::size_t k = 0; k < m.size(); ++k) m[k] = lam * mf[k] + mu * mg[k];
        best = std::min(best, rank_fp2(n, std::move(m)));
    };
    const Fp2 one = Fp2::make(p, d, 1, 0);
    consider(Fp2::make(p, d, 0, 0), one);  // (0 : 1)
    for (std::int64_t a = 0; a < static_cast<std::int64_t>(p); ++a)
        for (std::int64_t b = 0; b < static_cast<std::int64_t>(p); ++b)
            consider(one, Fp2::make(p, d, a, b));  // (1 : a + b s)
    return best;
}

/// True iff some point of P^1(F_{p^2}) is a root of every given form
/// of multiplicity >= 2 witnessed by the vanishing of both partials
/// (complete for repeated roots of forms of degree <= 5).
inline bool has_repeated_root_fp2(const pqs::BinForm<Fp>& phi, std::uint32_t p) {
    const std::int64_t d = Fp2::non_residue(p);
    auto lift = [&](const Fp& x) { return Fp2::make(p, d, x.representative(), 0); };
    pqs::BinForm<Fp2> f(phi.degree());
    for (std::int64_t i = 0; i <= phi.degree(); ++i) f.coeff(i) = lift(phi.coeff(i));
    const auto fl = f.derivative_lambda();
    const auto fm = f.derivative_mu();
    auto triple_zero = [&](const Fp2& lam, const Fp2& mu) {
        return f.evaluate(lam, mu).is_zero() && fl.evaluate(lam, mu).is_zero() &&
               fm.evaluate(lam, mu).is_zero();
    };
    const Fp2 one = Fp2::make(p, d, 1, 0);
    if (triple_zero(Fp2::make(p, d, 0, 0), one)) return true;
    for (std::int64_t a = 0; a < static_cast<std::int64_t>(p); ++a)
        for (std::int64_t b = 0; b < static_cast<std::int64_t>(p); ++b)
            if (triple_zero(one, Fp2::make(p, d, a, b))) return true;
    return false;
}

/// K-span equality of two pencils: Pluecker vectors projectively equal.
template <CoefficientField F>
bool same_k_pencil(const Pencil<F>& x, const Pencil<F>& y) {
    const auto u = x.plucker().minors;
    const auto v = y.plucker().minors;
    if (u.size() != v.size()) return false;
    for (std::size_t i = 0; i < u.size(); ++i)
        for (std::size_t j = i + 1; j < u.size(); ++j)
            if (u[i] * v[j] != u[j] * v[i]) return false;
    return true;
}

}  // namespace pqs::oracle
