#pragma once

#include <cstdint>
#include <optional>

#include "pqs/binform.hpp"
#include "pqs/errors.hpp"
#include "pqs/fields.hpp"
#include "pqs/laurent.hpp"
#include "pqs/pencil.hpp"
#include "pqs/quadratic.hpp"

namespace pqs {

/// det(lambda A + mu B) as a binary form of degree n; exact expansion in
/// the commutative ring k[t,t^-1][lambda,mu], no division.
template <CoefficientField F>
BinForm<Laurent<F>> pencil_determinant(const QuadraticForm<F>& a, const QuadraticForm<F>& b) {
    const int n = a.n();
    auto entry = [&](int i, int j) {
        BinForm<Laurent<F>> e(1);
        e.coeff(1) = a.at(i, j);
        e.coeff(0) = b.at(i, j);
        return e;
    };
    return subset_det<BinForm<Laurent<F>>>(n, entry);
}

template <CoefficientField F>
BinForm<Laurent<F>> pencil_determinant(const Pencil<F>& p) {
    return pencil_determinant(p.f(), p.g());
}

namespace detail {

inline Laurent<Rational> lift_laurent(const Laurent<Fp>& x) {
    std::vector<Rational> cs;
    cs.reserve(x.coeffs().size());
    for (const auto& c : x.coeffs()) cs.emplace_back(c.representative());
    return Laurent<Rational>::from_coeffs(x.lead_exponent(), std::move(cs));
}

inline Laurent<Fp> reduce_laurent(const Laurent<Rational>& x, std::uint32_t p) {
    std::vector<Fp> cs;
    cs.reserve(x.coeffs().size());
    for (const auto& c : x.coeffs()) {
        const BigRational& q = c.value();
        if (boost::multiprecision::denominator(q) != 1)
            throw InternalInvariantViolation("non-integral coefficient in lifted discriminant");
        const BigInt rem = boost::multiprecision::numerator(q) % BigInt(p);
        cs.push_back(Fp::make(p, static_cast<std::int64_t>(rem)));
    }
    return Laurent<Fp>::from_coeffs(x.lead_exponent(), std::move(cs));
}

/// Discriminant with the fixed integral normalization
///   D(Phi) = (-1)^(n(n-1)/2) * Res(dPhi/dlambda, dPhi/dmu) / n^(n-2),
/// evaluated directly in the coefficient field. Requires char k to not
/// divide n (otherwise n^(n-2) is not invertible).
template <CoefficientField F>
Laurent<F> disc_direct(const BinForm<Laurent<F>>& phi) {
    const std::int64_t n = phi.degree();
    Laurent<F> res = sylvester_resultant(phi.derivative_lambda(), phi.derivative_mu());
    if (res.is_zero()) return res;
    const F scale = res.coeffs().front().embed(n).pow(static_cast<std::uint64_t>(n - 2)).inverse();
    Laurent<F> out = res.scaled(scale);
    if ((n * (n - 1) / 2) % 2 != 0) out = -out;
    return out;
}

}  // namespace detail

/// Discriminant of a binary form of degree n >= 2: the universal integer
/// polynomial in the coefficients, homogeneous of degree 2n-2 and
/// quasihomogeneous of degree n(n-1); zero iff the form has a repeated
/// projective root over the algebraic closure (or is identically zero).
///
/// When char k divides n the defining division by n^(n-2) is performed over
/// a characteristic-zero lift and reduced back, so the value stays correct
/// in every characteristic != 2.
template <CoefficientField F>
Laurent<F> binary_discriminant(const BinForm<Laurent<F>>& phi) {
    const std::int64_t n = phi.degree();
    if (n < 2) throw Error("discriminant needs degree >= 2");
    if (phi.is_zero()) return {};
    std::uint32_t p = 0;
    for (const auto& c : phi.coeffs())
        if (c.characteristic() != 0) {
            p = c.characteristic();
            break;
        }
    if (p == 0 || n % static_cast<std::int64_t>(p) != 0) return detail::disc_direct(phi);
    if constexpr (std::is_same_v<F, Fp>) {
        BinForm<Laurent<Rational>> lifted(n);
        for (std::int64_t i = 0; i <= n; ++i)
            lifted.coeff(i) = detail::lift_laurent(phi.coeff(i));
        return detail::reduce_laurent(detail::disc_direct(lifted), p);
    } else {
        throw Error("unreachable: positive characteristic in a char-0 field");
    }
}

/// t-valuation of D(det(lambda A + mu B)); nullopt encodes +infinity (D = 0,
/// in particular a pencil whose determinant vanishes identically). For a
/// normalized pencil this is invariant under GL_2(R) basis changes and
/// GL_n(R) coordinate changes.
template <CoefficientField F>
std::optional<std::int64_t> disc_valuation(const Pencil<F>& p) {
    const auto delta = pencil_determinant(p);
    if (delta.is_zero()) return std::nullopt;
    return binary_discriminant(delta).valuation();
}

/// Smoothness of the generic fibre: det(lambda A + mu B) not identically
/// zero with n distinct roots in P^1 over the closure, i.e. nonzero
/// discriminant.
template <CoefficientField F>
bool generic_fibre_smooth(const Pencil<F>& p) {
    const auto delta = pencil_determinant(p);
    if (delta.is_zero()) return false;
    return !binary_discriminant(delta).is_zero();
}

/// Exact check of the scaling law
///   D(det(lambda xi A + mu zeta B)) = xi^(n(n-1)) zeta^(n(n-1)) D(det(lambda A + mu B)).
template <CoefficientField F>
bool check_scaling_identity(const QuadraticForm<F>& a, const QuadraticForm<F>& b,
                            const Laurent<F>& xi, const Laurent<F>& zeta) {
    if (xi.is_zero() || zeta.is_zero()) throw Error("scaling identity requires nonzero scalars");
    const std::int64_t n = a.n();
    const auto lhs = binary_discriminant(pencil_determinant(a.scaled(xi), b.scaled(zeta)));
    const auto base = binary_discriminant(pencil_determinant(a, b));
    const std::uint64_t e = static_cast<std::uint64_t>(n * (n - 1));
    const auto rhs = base * xi.pow(e) * zeta.pow(e);
    return lhs == rhs;
}

}  // namespace pqs
