#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "pqs/errors.hpp"
#include "pqs/fields.hpp"
#include "pqs/laurent.hpp"

namespace pqs {

/// Integer weight vector (w_1, ..., w_n); acts on coordinates by
/// x_i -> t^(w_i) x_i.
struct WeightSystem {
    std::vector<std::int64_t> w;

    int n() const { return static_cast<int>(w.size()); }
    bool effective() const {
        for (auto v : w)
            if (v < 0) return false;
        return true;
    }
    std::int64_t sum() const {
        std::int64_t s = 0;
        for (auto v : w) s += v;
        return s;
    }
    bool operator==(const WeightSystem& o) const { return w == o.w; }
};

/// Monomial index pairs (i, j), i <= j, in lexicographic order; the fixed
/// flattening order used for coefficient vectors throughout.
inline std::vector<std::pair<int, int>> monomial_pairs(int n) {
    std::vector<std::pair<int, int>> out;
    out.reserve(static_cast<std::size_t>(n) * (n + 1) / 2);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) out.emplace_back(i, j);
    return out;
}

inline int monomial_count(int n) { return n * (n + 1) / 2; }

/// Quadratic form in n variables with Laurent-scalar coefficients, stored as
/// a symmetric n x n matrix. Off-diagonal entries hold half the monomial
/// coefficient (valid since char k != 2); the flattened coefficient vector
/// restores the monomial coefficient itself.
template <CoefficientField F>
class QuadraticForm {
public:
    explicit QuadraticForm(int n) : n_(n), m_(static_cast<std::size_t>(n) * n) {
        if (n < 2) throw Error("quadratic form needs n >= 2");
    }

    int n() const { return n_; }

    const Laurent<F>& at(int i, int j) const { return m_[idx(i, j)]; }

    void set_entry(int i, int j, Laurent<F> v) {
        m_[idx(i, j)] = v;
        m_[idx(j, i)] = std::move(v);
    }

    /// Adds c * x_i x_j (monomial coefficient; split across the two
    /// symmetric matrix slots when i != j).
    void add_monomial(int i, int j, const Laurent<F>& c) {
        if (c.is_zero()) return;
        if (i == j) {
            m_[idx(i, i)] += c;
            return;
        }
        const F half = c.coeffs().front().embed(2).inverse();
        const Laurent<F> h = c.scaled(half);
        m_[idx(i, j)] += h;
        m_[idx(j, i)] += h;
    }

    bool is_zero() const {
        for (const auto& e : m_)
            if (!e.is_zero()) return false;
        return true;
    }

    /// All entries in R (no pole at t = 0).
    bool is_integral() const {
        for (const auto& e : m_)
            if (!e.is_integral()) return false;
        return true;
    }

    /// Flattened monomial coefficients in monomial_pairs order: m_ii on the
    /// diagonal, 2 m_ij off it.
    std::vector<Laurent<F>> monomial_coeffs() const {
        std::vector<Laurent<F>> out;
        out.reserve(static_cast<std::size_t>(monomial_count(n_)));
        for (auto [i, j] : monomial_pairs(n_))
            out.push_back(i == j ? at(i, i) : at(i, j).times_int(2));
        return out;
    }

    /// Substitution x -> C x: M -> C^T M C.
    QuadraticForm conjugated(const std::vector<Laurent<F>>& c) const {
        // c is row-major n x n
        QuadraticForm r(n_);
        std::vector<Laurent<F>> tmp(static_cast<std::size_t>(n_) * n_);  // M * C
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j) {
                Laurent<F> s;
                for (int k = 0; k < n_; ++k) s += at(i, k) * c[idx(k, j)];
                tmp[idx(i, j)] = std::move(s);
            }
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j) {
                Laurent<F> s;
                for (int k = 0; k < n_; ++k) s += c[idx(k, i)] * tmp[idx(k, j)];
                r.m_[idx(i, j)] = std::move(s);
            }
        return r;
    }

    /// Substitution x_i -> t^(w_i) x_i: entry (i, j) gains t^(w_i + w_j).
    QuadraticForm weighted(const WeightSystem& rho) const {
        QuadraticForm r(*this);
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j)
                r.m_[idx(i, j)] = r.m_[idx(i, j)].shifted(rho.w[static_cast<std::size_t>(i)] +
                                                          rho.w[static_cast<std::size_t>(j)]);
        return r;
    }

    QuadraticForm scaled(const Laurent<F>& s) const {
        QuadraticForm r(*this);
        for (auto& e : r.m_) e = e * s;
        return r;
    }

    QuadraticForm operator+(const QuadraticForm& o) const {
        QuadraticForm r(*this);
        for (std::size_t k = 0; k < m_.size(); ++k) r.m_[k] += o.m_[k];
        return r;
    }

    bool operator==(const QuadraticForm& o) const { return n_ == o.n_ && m_ == o.m_; }
    bool operator!=(const QuadraticForm& o) const { return !(*this == o); }

    Laurent<F> evaluate(std::span<const F> point) const {
        Laurent<F> s;
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j) {
                const F pij = point[static_cast<std::size_t>(i)] * point[static_cast<std::size_t>(j)];
                s += at(i, j).scaled(pij);
            }
        return s;
    }

    /// Entry-wise value at t = 0; requires integral entries.
    std::vector<F> matrix_at_zero() const {
        std::vector<F> out(m_.size());
        for (std::size_t k = 0; k < m_.size(); ++k) out[k] = m_[k].at_zero();
        return out;
    }

private:
    std::size_t idx(int i, int j) const {
        return static_cast<std::size_t>(i) * n_ + static_cast<std::size_t>(j);
    }

    int n_;
    std::vector<Laurent<F>> m_;
};

/// a*f + b*g with Laurent scalars.
template <CoefficientField F>
QuadraticForm<F> combine(const Laurent<F>& a, const QuadraticForm<F>& f, const Laurent<F>& b,
                         const QuadraticForm<F>& g) {
    QuadraticForm<F> r = f.scaled(a);
    return r + g.scaled(b);
}

/// Largest N with t^(-N) (rho . q) still integral: the minimum over nonzero
/// entries of val(q_ij) + w_i + w_j.
template <CoefficientField F>
std::int64_t weighted_valuation(const QuadraticForm<F>& q, const WeightSystem& rho) {
    if (q.is_zero()) throw ZeroForm();
    bool found = false;
    std::int64_t best = 0;
    for (int i = 0; i < q.n(); ++i)
        for (int j = 0; j < q.n(); ++j) {
            const auto v = q.at(i, j).valuation();
            if (!v) continue;
            const std::int64_t cand = *v + rho.w[static_cast<std::size_t>(i)] +
                                      rho.w[static_cast<std::size_t>(j)];
            if (!found || cand < best) {
                best = cand;
                found = true;
            }
        }
    return best;
}

}  // namespace pqs
