#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pqs/errors.hpp"
#include "pqs/fields.hpp"
#include "pqs/laurent.hpp"

namespace pqs {

template <class C>
C ring_times_int(const C& c, std::int64_t k) {
    if constexpr (requires { c.times_int(k); }) {
        return c.times_int(k);
    } else {
        return c * c.embed(k);
    }
}

/// Homogeneous form of fixed degree in two variables (lambda, mu) with
/// coefficients in a commutative ring C; coeff(i) multiplies
/// lambda^i * mu^(degree - i). The zero form of each degree keeps its
/// length, so ring operations can check degree compatibility.
template <class C>
class BinForm {
public:
    BinForm() = default;  // degree-less placeholder, only valid as an assignment target

    explicit BinForm(std::int64_t degree) : c_(static_cast<std::size_t>(degree + 1)) {}

    static BinForm from_coeffs(std::vector<C> coeffs) {
        BinForm r;
        r.c_ = std::move(coeffs);
        return r;
    }

    std::int64_t degree() const { return static_cast<std::int64_t>(c_.size()) - 1; }

    const C& coeff(std::int64_t i) const { return c_[static_cast<std::size_t>(i)]; }
    C& coeff(std::int64_t i) { return c_[static_cast<std::size_t>(i)]; }
    const std::vector<C>& coeffs() const { return c_; }

    bool is_zero() const {
        for (const auto& x : c_)
            if (!x.is_zero()) return false;
        return true;
    }

    BinForm operator+(const BinForm& o) const {
        check_same_degree(o);
        BinForm r(*this);
        for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] = r.c_[i] + o.c_[i];
        return r;
    }

    BinForm operator-(const BinForm& o) const {
        check_same_degree(o);
        BinForm r(*this);
        for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] = r.c_[i] - o.c_[i];
        return r;
    }

    BinForm operator-() const {
        BinForm r(*this);
        for (auto& x : r.c_) x = -x;
        return r;
    }

    BinForm operator*(const BinForm& o) const {
        if (c_.empty() || o.c_.empty()) throw Error("binary form placeholder in arithmetic");
        BinForm r(degree() + o.degree());
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (c_[i].is_zero()) continue;
            for (std::size_t j = 0; j < o.c_.size(); ++j) {
                if (o.c_[j].is_zero()) continue;
                r.c_[i + j] = r.c_[i + j] + c_[i] * o.c_[j];
            }
        }
        return r;
    }

    bool operator==(const BinForm& o) const { return c_ == o.c_; }
    bool operator!=(const BinForm& o) const { return !(*this == o); }

    /// d/d(lambda); degree drops by one.
    BinForm derivative_lambda() const {
        BinForm r(degree() - 1);
        for (std::int64_t j = 0; j < degree(); ++j)
            r.coeff(j) = ring_times_int(coeff(j + 1), j + 1);
        return r;
    }

    /// d/d(mu); degree drops by one.
    BinForm derivative_mu() const {
        BinForm r(degree() - 1);
        for (std::int64_t j = 0; j < degree(); ++j)
            r.coeff(j) = ring_times_int(coeff(j), degree() - j);
        return r;
    }

    C evaluate(const C& a, const C& b) const {
        if (c_.empty()) throw Error("binary form placeholder in arithmetic");
        const std::int64_t d = degree();
        C r = c_[static_cast<std::size_t>(d)];
        if (d == 0) return r;
        C bp = b;
        for (std::int64_t i = d - 1; i >= 0; --i) {
            r = r * a + c_[static_cast<std::size_t>(i)] * bp;
            if (i > 0) bp = bp * b;
        }
        return r;
    }

private:
    void check_same_degree(const BinForm& o) const {
        if (c_.size() != o.c_.size()) throw Error("binary form degree mismatch");
    }

    std::vector<C> c_;
};

/// Determinant by column-subset dynamic programming (cofactor expansion with
/// memoization); no division, so it works over any commutative ring.
template <class R, class EntryFn>
R subset_det(int n, EntryFn&& entry) {
    if (n < 1) throw Error("determinant of an empty matrix");
    if (n > 16) throw Error("determinant size cap (16) exceeded");
    const std::uint32_t full = (n == 32) ? 0xffffffffu : ((1u << n) - 1u);
    std::vector<R> dp(static_cast<std::size_t>(full) + 1);
    for (int j = 0; j < n; ++j) dp[1u << j] = entry(0, j);
    for (std::uint32_t mask = 1; mask <= full; ++mask) {
        const int m = __builtin_popcount(mask);
        if (m < 2) continue;
        std::optional<R> acc;
        int pos = 0;
        for (int j = 0; j < n; ++j) {
            if (!(mask & (1u << j))) continue;
            R term = entry(m - 1, j) * dp[mask ^ (1u << j)];
            const bool negative = ((m - 1 + pos) % 2) != 0;
            if (!acc) {
                acc = negative ? -term : term;
            } else {
                acc = negative ? (*acc - term) : (*acc + term);
            }
            ++pos;
        }
        dp[mask] = std::move(*acc);
    }
    return dp[full];
}

/// Resultant of two binary forms taken at their formal degrees (vanishing
/// leading coefficients participate, so roots at (1:0) are handled without
/// dehomogenizing): determinant of the (m+l) x (m+l) Sylvester matrix.
template <class C>
C sylvester_resultant(const BinForm<C>& f, const BinForm<C>& g) {
    const std::int64_t m = f.degree();
    const std::int64_t l = g.degree();
    if (m < 0 || l < 0) throw Error("resultant of placeholder form");
    const int sz = static_cast<int>(m + l);
    if (sz < 1) throw Error("resultant of two constants");
    auto entry = [&](int i, int j) -> C {
        // first l rows carry f, shifted; remaining m rows carry g
        if (i < l) {
            const std::int64_t k = j - i;  // column offset; coefficient lambda^(m-k)
            if (k < 0 || k > m) return C{};
            return f.coeff(m - k);
        }
        const std::int64_t k = j - (i - l);
        if (k < 0 || k > l) return C{};
        return g.coeff(l - k);
    };
    return subset_det<C>(sz, entry);
}

namespace detail {

// Dense univariate polynomials over a field, ascending coefficients,
// trailing zeros trimmed; just enough for gcd degree questions.
template <CoefficientField F>
using KPoly = std::vector<F>;

template <CoefficientField F>
void kpoly_trim(KPoly<F>& p) {
    while (!p.empty() && p.back().is_zero()) p.pop_back();
}

template <CoefficientField F>
std::int64_t kpoly_deg(const KPoly<F>& p) {
    return static_cast<std::int64_t>(p.size()) - 1;  // -1 for the zero polynomial
}

template <CoefficientField F>
KPoly<F> kpoly_rem(KPoly<F> a, const KPoly<F>& b) {
    const std::int64_t db = kpoly_deg(b);
    const F inv_lead = b.back().inverse();
    while (kpoly_deg(a) >= db) {
        const F q = a.back() * inv_lead;
        const std::size_t shift = a.size() - b.size();
        for (std::size_t i = 0; i < b.size(); ++i)
            a[shift + i] = a[shift + i] - q * b[i];
        a.pop_back();
        kpoly_trim(a);
    }
    return a;
}

template <CoefficientField F>
KPoly<F> kpoly_gcd(KPoly<F> a, KPoly<F> b) {
    kpoly_trim(a);
    kpoly_trim(b);
    while (!b.empty()) {
        KPoly<F> r = kpoly_rem(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

}  // namespace detail

/// True iff the given binary forms over a field share a common root in
/// P^1 over the algebraic closure. Zero forms impose no condition; if every
/// form is zero, any point works, so the answer is true.
template <CoefficientField F>
bool has_common_projective_root(std::span<const BinForm<F>> forms) {
    bool all_zero = true;
    bool mu_divides_all = true;   // common root at (1:0)
    std::optional<detail::KPoly<F>> g;  // gcd of dehomogenizations F(x, 1)
    for (const auto& form : forms) {
        if (form.is_zero()) continue;
        all_zero = false;
        if (!form.coeff(form.degree()).is_zero()) mu_divides_all = false;
        detail::KPoly<F> p(form.coeffs());
        detail::kpoly_trim(p);
        g = g ? detail::kpoly_gcd(std::move(*g), std::move(p)) : std::move(p);
    }
    if (all_zero) return true;
    if (mu_divides_all) return true;
    return detail::kpoly_deg(*g) >= 1;
}

}  // namespace pqs
