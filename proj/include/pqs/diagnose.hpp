#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "pqs/binform.hpp"
#include "pqs/errors.hpp"
#include "pqs/fields.hpp"
#include "pqs/pencil.hpp"
#include "pqs/quadratic.hpp"

namespace pqs {

/// Reduction of a normalized pencil at t = 0: two symmetric n x n matrices
/// over the residue field k.
template <CoefficientField F>
struct CentralFibre {
    int n = 0;
    std::vector<F> mf, mg;  // row-major

    static CentralFibre from(const Pencil<F>& p) {
        if (!p.f().is_integral() || !p.g().is_integral())
            throw Error("central fibre requires an integral pencil");
        return {p.n(), p.f().matrix_at_zero(), p.g().matrix_at_zero()};
    }

    const F& f_at(int i, int j) const { return mf[static_cast<std::size_t>(i) * n + j]; }
    const F& g_at(int i, int j) const { return mg[static_cast<std::size_t>(i) * n + j]; }

    bool is_zero() const {
        for (const auto& x : mf)
            if (!x.is_zero()) return false;
        for (const auto& x : mg)
            if (!x.is_zero()) return false;
        return true;
    }
};

namespace detail {

template <typename T>
void for_each_subset(int n, int k, T&& visit) {
    std::vector<int> idx(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;
    for (;;) {
        visit(idx);
        int pos = k - 1;
        while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == n - k + pos) --pos;
        if (pos < 0) return;
        ++idx[static_cast<std::size_t>(pos)];
        for (int i = pos + 1; i < k; ++i)
            idx[static_cast<std::size_t>(i)] = idx[static_cast<std::size_t>(i - 1)] + 1;
    }
}

}  // namespace detail

/// Minimum over (lambda:mu) in P^1 of the algebraic closure of
/// rank(lambda f + mu g). Descends s = n-1, ..., 0 asking whether all
/// (s+1) x (s+1) minors of lambda M_f + mu M_g, binary forms of degree s+1,
/// share a projective root: a nonconstant common factor certifies a member
/// of rank <= s without leaving the base field.
template <CoefficientField F>
int min_rank_in_pencil(const CentralFibre<F>& fib) {
    if (fib.is_zero()) throw ZeroPencil();
    const int n = fib.n;
    for (int s = n - 1; s >= 0; --s) {
        // minors of size s+1
        std::vector<BinForm<F>> minors;
        detail::for_each_subset(n, s + 1, [&](const std::vector<int>& rows) {
            detail::for_each_subset(n, s + 1, [&](const std::vector<int>& cols) {
                auto entry = [&](int i, int j) {
                    BinForm<F> e(1);
                    e.coeff(1) = fib.f_at(rows[static_cast<std::size_t>(i)],
                                          cols[static_cast<std::size_t>(j)]);
                    e.coeff(0) = fib.g_at(rows[static_cast<std::size_t>(i)],
                                          cols[static_cast<std::size_t>(j)]);
                    return e;
                };
                minors.push_back(subset_det<BinForm<F>>(s + 1, entry));
            });
        });
        if (!has_common_projective_root(std::span<const BinForm<F>>(minors)))
            return s + 1;
    }
    return 0;
}

/// Brute force over all (n-2)-dimensional linear subspaces of k^n, k = F_p:
/// true iff both central-fibre forms vanish identically on some subspace
/// (a witness that the fibre contains an (n-3)-plane over F_p). Subspaces
/// are enumerated as reduced row echelon bases; their count is checked
/// against the cap first.
template <CoefficientField F>
bool contains_plane(const CentralFibre<F>& fib, std::uint64_t subspace_cap = 1000000) {
    const int n = fib.n;
    if (n < 3) throw Error("contains_plane requires n >= 3");
    std::uint32_t p = 0;
    for (const auto& x : fib.mf)
        if (x.characteristic() != 0) p = x.characteristic();
    for (const auto& x : fib.mg)
        if (p == 0 && x.characteristic() != 0) p = x.characteristic();
    if (p == 0) throw UnsupportedField("contains_plane is only available over a prime field");

    const int m = n - 2;
    const F one = [&] {
        for (const auto& x : fib.mf)
            if (x.characteristic() != 0) return x.embed(1);
        for (const auto& x : fib.mg)
            if (x.characteristic() != 0) return x.embed(1);
        return F(1);
    }();

    // Gaussian binomial [n choose m]_p
    BigInt count = 1;
    for (int i = 0; i < m; ++i) {
        BigInt num = boost::multiprecision::pow(BigInt(p), static_cast<unsigned>(n - i)) - 1;
        BigInt den = boost::multiprecision::pow(BigInt(p), static_cast<unsigned>(m - i)) - 1;
        count = count * num / den;
    }
    if (count > BigInt(subspace_cap))
        throw FieldTooLarge("subspace count " + count.str() + " exceeds cap " +
                            std::to_string(subspace_cap));

    bool found = false;
    auto vanishes_on = [&](const std::vector<F>& basis) {
        // basis: m x n row-major; check B M B^T = 0 for both matrices
        for (const std::vector<F>* mat : {&fib.mf, &fib.mg}) {
            for (int a = 0; a < m && !found; ++a)
                for (int b = a; b < m; ++b) {
                    F s(0);
                    for (int u = 0; u < n; ++u) {
                        F row(0);
                        for (int v = 0; v < n; ++v)
                            row += (*mat)[static_cast<std::size_t>(u) * n + v] *
                                   basis[static_cast<std::size_t>(b) * n + v];
                        s += basis[static_cast<std::size_t>(a) * n + u] * row;
                    }
                    if (!s.is_zero()) return false;
                }
        }
        return true;
    };

    detail::for_each_subset(n, m, [&](const std::vector<int>& pivots) {
        if (found) return;
        // free positions: (row i, col j) with j > pivots[i], j not a pivot
        std::vector<std::pair<int, int>> free_pos;
        for (int i = 0; i < m; ++i)
            for (int j = pivots[static_cast<std::size_t>(i)] + 1; j < n; ++j) {
                bool is_pivot = false;
                for (int l = 0; l < m; ++l) is_pivot = is_pivot || pivots[static_cast<std::size_t>(l)] == j;
                if (!is_pivot) free_pos.emplace_back(i, j);
            }
        std::vector<std::uint32_t> digits(free_pos.size(), 0);
        for (;;) {
            std::vector<F> basis(static_cast<std::size_t>(m) * n, F(0));
            for (int i = 0; i < m; ++i)
                basis[static_cast<std::size_t>(i) * n + pivots[static_cast<std::size_t>(i)]] = one;
            for (std::size_t k = 0; k < free_pos.size(); ++k)
                basis[static_cast<std::size_t>(free_pos[k].first) * n + free_pos[k].second] =
                    one.embed(static_cast<std::int64_t>(digits[k]));
            if (vanishes_on(basis)) {
                found = true;
                return;
            }
            std::size_t k = 0;
            while (k < digits.size() && ++digits[k] == p) digits[k++] = 0;
            if (k == digits.size()) break;
        }
    });
    return found;
}

template <CoefficientField F>
struct PointDiagnosis {
    std::vector<F> point;
    bool is_singular = false;
    std::optional<bool> is_hypersurface_singularity;  // set when singular
};

/// Per-point test on the central fibre. The point is moved to
/// [0 : ... : 0 : 1] by a residue-field coordinate change; singularity is
/// decided by the rank of the 2 x (n+1) Jacobian in (x_1, ..., x_n, t) at
/// (pt, t = 0), and a singular point is a hypersurface singularity iff some
/// basis member keeps a nonzero linear part in (x_1, ..., x_(n-1), t).
template <CoefficientField F>
PointDiagnosis<F> diagnose_point(const Pencil<F>& p, std::span<const F> pt) {
    const int n = p.n();
    if (static_cast<int>(pt.size()) != n) throw Error("point has wrong length");
    int lead = -1;
    for (int i = 0; i < n && lead < 0; ++i)
        if (!pt[static_cast<std::size_t>(i)].is_zero()) lead = i;
    if (lead < 0) throw Error("projective point cannot be zero");
    if (!p.f().is_integral() || !p.g().is_integral())
        throw Error("diagnose_point requires an integral pencil");

    for (const QuadraticForm<F>* q : {&p.f(), &p.g()}) {
        const auto v = q->evaluate(pt).valuation();
        if (v && *v <= 0) throw PointNotOnFibre();
    }

    // k-coordinate change with last column = pt, remaining columns the
    // standard basis vectors away from the leading index
    std::vector<F> c(static_cast<std::size_t>(n) * n, F(0));
    int col = 0;
    for (int i = 0; i < n; ++i) {
        if (i == lead) continue;
        if (col < n - 1) c[static_cast<std::size_t>(i) * n + col++] = pt[static_cast<std::size_t>(lead)].embed(1);
    }
    for (int i = 0; i < n; ++i) c[static_cast<std::size_t>(i) * n + (n - 1)] = pt[static_cast<std::size_t>(i)];
    const auto cc = CoordinateChange<F>::from_field_matrix(n, c);

    const QuadraticForm<F> fm = p.f().conjugated(cc.entries());
    const QuadraticForm<F> gm = p.g().conjugated(cc.entries());

    // rows of the Jacobian over k: d/dx_i (i = 0..n-1) then d/dt
    std::vector<F> rf, rg;
    for (const QuadraticForm<F>* q : {&fm, &gm}) {
        std::vector<F> row;
        for (int i = 0; i < n; ++i) {
            const F e = q->at(i, n - 1).at_zero();
            row.push_back(e + e);  // 2 m_{i,n}
        }
        row.push_back(q->at(n - 1, n - 1).coeff(1));
        (q == &fm ? rf : rg) = std::move(row);
    }

    int rank = 0;
    bool rf_zero = true, rg_zero = true;
    for (const auto& x : rf) rf_zero = rf_zero && x.is_zero();
    for (const auto& x : rg) rg_zero = rg_zero && x.is_zero();
    if (!rf_zero || !rg_zero) {
        rank = 1;
        for (std::size_t a = 0; a < rf.size() && rank < 2; ++a)
            for (std::size_t b = a + 1; b < rf.size() && rank < 2; ++b)
                if (!(rf[a] * rg[b] - rf[b] * rg[a]).is_zero()) rank = 2;
    }

    PointDiagnosis<F> out;
    out.point.assign(pt.begin(), pt.end());
    out.is_singular = rank < 2;
    if (out.is_singular) out.is_hypersurface_singularity = (rank >= 1);
    return out;
}

}  // namespace pqs
