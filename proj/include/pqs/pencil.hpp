#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "pqs/binform.hpp"
#include "pqs/errors.hpp"
#include "pqs/fields.hpp"
#include "pqs/laurent.hpp"
#include "pqs/quadratic.hpp"

namespace pqs {

/// Invertible coordinate change over the valuation ring R: integral entries
/// and unit determinant (val_t det = 0). Checked on construction.
template <CoefficientField F>
class CoordinateChange {
public:
    CoordinateChange(int n, std::vector<Laurent<F>> entries)
        : n_(n), m_(std::move(entries)) {
        if (static_cast<int>(m_.size()) != n * n) throw Error("coordinate change: bad entry count");
        for (const auto& e : m_)
            if (!e.is_integral()) throw Error("coordinate change: entry with negative valuation");
        const Laurent<F> d = subset_det<Laurent<F>>(
            n_, [&](int i, int j) { return m_[static_cast<std::size_t>(i) * n_ + j]; });
        if (!d.is_unit()) throw Error("coordinate change: determinant is not a unit of R");
    }

    static CoordinateChange identity(int n) {
        std::vector<Laurent<F>> e(static_cast<std::size_t>(n) * n);
        for (int i = 0; i < n; ++i) e[static_cast<std::size_t>(i) * n + i] = Laurent<F>(F(1));
        return CoordinateChange(n, std::move(e));
    }

    /// Matrix sending e_j to e_(perm[j]).
    static CoordinateChange permutation(const std::vector<int>& perm) {
        const int n = static_cast<int>(perm.size());
        std::vector<Laurent<F>> e(static_cast<std::size_t>(n) * n);
        for (int j = 0; j < n; ++j)
            e[static_cast<std::size_t>(perm[static_cast<std::size_t>(j)]) * n + j] = Laurent<F>(F(1));
        return CoordinateChange(n, std::move(e));
    }

    static CoordinateChange from_field_matrix(int n, const std::vector<F>& entries) {
        std::vector<Laurent<F>> e;
        e.reserve(entries.size());
        for (const auto& x : entries) e.emplace_back(x);
        return CoordinateChange(n, std::move(e));
    }

    int n() const { return n_; }
    const std::vector<Laurent<F>>& entries() const { return m_; }
    const Laurent<F>& at(int i, int j) const {
        return m_[static_cast<std::size_t>(i) * n_ + j];
    }

    bool operator==(const CoordinateChange& o) const { return n_ == o.n_ && m_ == o.m_; }

private:
    int n_;
    std::vector<Laurent<F>> m_;
};

/// All 2x2 minors of the pencil's 2 x r coefficient matrix, indexed by pairs
/// (a, b), a < b, of flattened monomial indices.
template <CoefficientField F>
struct PluckerVector {
    std::vector<Laurent<F>> minors;

    std::optional<std::int64_t> min_valuation() const {
        std::optional<std::int64_t> best;
        for (const auto& m : minors) {
            const auto v = m.valuation();
            if (v && (!best || *v < *best)) best = *v;
        }
        return best;
    }

    bool is_zero() const { return !min_valuation().has_value(); }
};

namespace detail {

template <CoefficientField F>
struct RowReduction {
    bool dependent = false;
    std::int64_t d1 = 0;  // min valuation over all entries
    std::int64_t d2 = 0;  // min valuation of the eliminated second row
    std::vector<Laurent<F>> row1, row2;
};

/// One elimination step of the Smith normal form of the 2 x r matrix over
/// the valuation ring: the pivot of minimal valuation t^d1 * u stays in row
/// one; row two is replaced by u*row2 - (m2p/t^d1)*row1 (a GL_2(R)
/// operation, determinant u), which zeroes the pivot column. The elementary
/// divisors are then t^d1 and t^d2 with d2 the minimal valuation left in
/// row two.
template <CoefficientField F>
RowReduction<F> reduce_rows(std::vector<Laurent<F>> r1, std::vector<Laurent<F>> r2) {
    RowReduction<F> out;
    std::optional<std::int64_t> d1;
    int pivot_col = -1;
    bool pivot_in_second = false;
    for (std::size_t c = 0; c < r1.size(); ++c) {
        if (auto v = r1[c].valuation(); v && (!d1 || *v < *d1)) {
            d1 = *v;
            pivot_col = static_cast<int>(c);
            pivot_in_second = false;
        }
    }
    for (std::size_t c = 0; c < r2.size(); ++c) {
        if (auto v = r2[c].valuation(); v && (!d1 || *v < *d1)) {
            d1 = *v;
            pivot_col = static_cast<int>(c);
            pivot_in_second = true;
        }
    }
    if (!d1) {
        out.dependent = true;
        return out;
    }
    if (pivot_in_second) std::swap(r1, r2);
    out.d1 = *d1;

    const auto& pivot = r1[static_cast<std::size_t>(pivot_col)];
    const Laurent<F> u = pivot.shifted(-*d1);                                       // unit of R
    const Laurent<F> m = r2[static_cast<std::size_t>(pivot_col)].shifted(-*d1);     // in R
    std::optional<std::int64_t> d2;
    for (std::size_t c = 0; c < r2.size(); ++c) {
        r2[c] = u * r2[c] - m * r1[c];
        if (auto v = r2[c].valuation(); v && (!d2 || *v < *d2)) d2 = *v;
    }
    if (!d2) {
        out.dependent = true;
        return out;
    }
    out.d2 = *d2;
    out.row1 = std::move(r1);
    out.row2 = std::move(r2);
    return out;
}

/// Rebuilds a quadratic form from a flattened monomial-coefficient vector.
template <CoefficientField F>
QuadraticForm<F> form_from_monomial_coeffs(int n, const std::vector<Laurent<F>>& coeffs) {
    QuadraticForm<F> q(n);
    const auto pairs = monomial_pairs(n);
    for (std::size_t k = 0; k < pairs.size(); ++k)
        q.add_monomial(pairs[k].first, pairs[k].second, coeffs[k]);
    return q;
}

}  // namespace detail

/// Pencil of quadrics: an ordered basis (f, g), linearly independent over
/// the fraction field K. A pencil is "normalized" when both forms are
/// integral and the minimum valuation over its Pluecker coordinates is 0.
template <CoefficientField F>
class Pencil {
public:
    Pencil(QuadraticForm<F> f, QuadraticForm<F> g) : f_(std::move(f)), g_(std::move(g)) {
        if (f_.n() != g_.n()) throw Error("pencil: mismatched variable counts");
        const auto red = detail::reduce_rows(f_.monomial_coeffs(), g_.monomial_coeffs());
        if (red.dependent) throw DependentPencil();
    }

    int n() const { return f_.n(); }
    const QuadraticForm<F>& f() const { return f_; }
    const QuadraticForm<F>& g() const { return g_; }

    PluckerVector<F> plucker() const {
        const auto rf = f_.monomial_coeffs();
        const auto rg = g_.monomial_coeffs();
        PluckerVector<F> out;
        out.minors.reserve(rf.size() * (rf.size() - 1) / 2);
        for (std::size_t a = 0; a < rf.size(); ++a)
            for (std::size_t b = a + 1; b < rf.size(); ++b)
                out.minors.push_back(rf[a] * rg[b] - rf[b] * rg[a]);
        return out;
    }

    bool is_normalized() const {
        if (!f_.is_integral() || !g_.is_integral()) return false;
        const auto v = plucker().min_valuation();
        return v && *v == 0;
    }

    bool operator==(const Pencil& o) const { return f_ == o.f_ && g_ == o.g_; }

private:
    QuadraticForm<F> f_, g_;
};

/// Substitutes x -> C x and then x_i -> t^(w_i) x_i in both quadrics; the
/// result generally lives over K (entries may acquire poles for negative
/// weights) and is not normalized.
template <CoefficientField F>
Pencil<F> act(const Pencil<F>& p, const WeightSystem& rho, const CoordinateChange<F>& c) {
    return Pencil<F>(p.f().conjugated(c.entries()).weighted(rho),
                     p.g().conjugated(c.entries()).weighted(rho));
}

template <CoefficientField F>
struct SaturationResult {
    Pencil<F> pencil;
    std::int64_t shed;  // t-valuation removed from the Pluecker vector: d1 + d2
};

/// Renormalizes a K-basis of a pencil to an R-basis spanning the same
/// K-pencil with Pluecker valuation 0 (Smith normal form over the DVR on
/// the 2 x r coefficient matrix).
template <CoefficientField F>
SaturationResult<F> saturate(const QuadraticForm<F>& f, const QuadraticForm<F>& g) {
    auto red = detail::reduce_rows(f.monomial_coeffs(), g.monomial_coeffs());
    if (red.dependent) throw DependentPencil();
    for (auto& e : red.row1) e = e.shifted(-red.d1);
    for (auto& e : red.row2) e = e.shifted(-red.d2);
    const int n = f.n();
    Pencil<F> out(detail::form_from_monomial_coeffs(n, red.row1),
                  detail::form_from_monomial_coeffs(n, red.row2));
    return {std::move(out), red.d1 + red.d2};
}

template <CoefficientField F>
SaturationResult<F> saturate(const Pencil<F>& p) {
    return saturate(p.f(), p.g());
}

/// Multiplicity of the model change (rho, C): the minimum t-valuation over
/// the Pluecker coordinates of the transformed pencil. For a normalized
/// input this equals the saturation shed of act(p, rho, C).
template <CoefficientField F>
std::int64_t multiplicity(const Pencil<F>& p, const WeightSystem& rho,
                          const CoordinateChange<F>& c) {
    const auto v = act(p, rho, c).plucker().min_valuation();
    if (!v) throw DependentPencil();
    return *v;
}

/// Basis change (f, g) -> (a f + b g, c f + d g); mix is a row-major 2x2
/// Laurent matrix.
template <CoefficientField F>
Pencil<F> mix_basis(const Pencil<F>& p, const std::vector<Laurent<F>>& mix) {
    return Pencil<F>(combine(mix[0], p.f(), mix[1], p.g()),
                     combine(mix[2], p.f(), mix[3], p.g()));
}

}  // namespace pqs
