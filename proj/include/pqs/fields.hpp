#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <concepts>
#include <cstdint>
#include <string>

#include "pqs/errors.hpp"

namespace pqs {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

/// Exact rational number; element of the coefficient field Q.
class Rational {
public:
    Rational() = default;
    Rational(std::int64_t v) : v_(v) {}  // NOLINT: implicit by design, mirrors integer literals
    explicit Rational(BigRational v) : v_(std::move(v)) {}
    Rational(const BigInt& num, const BigInt& den) {
        if (den == 0) throw DivisionByZero();
        v_ = (den < 0) ? BigRational(-num, -den) : BigRational(num, den);
    }

    bool is_zero() const { return v_ == 0; }
    bool is_one() const { return v_ == 1; }

    Rational operator+(const Rational& o) const { return Rational(BigRational(v_ + o.v_)); }
    Rational operator-(const Rational& o) const { return Rational(BigRational(v_ - o.v_)); }
    Rational operator*(const Rational& o) const { return Rational(BigRational(v_ * o.v_)); }
    Rational operator-() const { return Rational(BigRational(-v_)); }
    Rational operator/(const Rational& o) const { return *this * o.inverse(); }
    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }

    bool operator==(const Rational& o) const { return v_ == o.v_; }
    bool operator!=(const Rational& o) const { return v_ != o.v_; }

    Rational inverse() const {
        if (is_zero()) throw DivisionByZero();
        return Rational(BigRational(1) / v_);
    }

    /// Integer embedded into the same field as *this (trivial for Q).
    Rational embed(std::int64_t k) const { return Rational(k); }

    Rational pow(std::uint64_t e) const {
        Rational r(1), b(*this);
        for (; e != 0; e >>= 1) {
            if (e & 1) r *= b;
            b *= b;
        }
        return r;
    }

    static std::uint32_t characteristic() { return 0; }

    const BigRational& value() const { return v_; }

    std::string str() const { return v_.str(); }

private:
    BigRational v_;
};

/// Element of a prime field F_p with runtime modulus.
///
/// An element either carries its modulus (p > 0, value reduced to [0, p)) or
/// is an unattached integer literal (p == 0). Literals arise from
/// default-constructed zeros and from small integer constants inside generic
/// algorithms; they adopt the modulus of the first attached operand they
/// meet. Mixing two distinct moduli throws.
class Fp {
public:
    Fp() = default;
    Fp(std::int64_t v) : v_(v) {}  // NOLINT: integer literal, modulus adopted later

    static Fp make(std::uint32_t p, std::int64_t v) {
        Fp r;
        r.p_ = p;
        std::int64_t m = v % static_cast<std::int64_t>(p);
        if (m < 0) m += static_cast<std::int64_t>(p);
        r.v_ = m;
        return r;
    }

    bool is_zero() const { return v_ == 0; }
    bool is_one() const { return v_ == 1; }
    bool is_literal() const { return p_ == 0; }
    std::uint32_t characteristic() const { return p_; }
    std::int64_t representative() const { return v_; }

    Fp operator+(const Fp& o) const {
        auto [a, b, p] = unify(*this, o);
        if (p == 0) return literal_checked(a, b, '+');
        std::int64_t s = a + b;  // both < p <= 2^32, no overflow
        if (s >= static_cast<std::int64_t>(p)) s -= p;
        return make_raw(p, s);
    }
    Fp operator-(const Fp& o) const {
        auto [a, b, p] = unify(*this, o);
        if (p == 0) return literal_checked(a, b, '-');
        std::int64_t s = a - b;
        if (s < 0) s += static_cast<std::int64_t>(p);
        return make_raw(p, s);
    }
    Fp operator*(const Fp& o) const {
        auto [a, b, p] = unify(*this, o);
        if (p == 0) return literal_checked(a, b, '*');
        auto prod = static_cast<unsigned __int128>(a) * static_cast<unsigned __int128>(b);
        return make_raw(p, static_cast<std::int64_t>(prod % p));
    }
    Fp operator-() const {
        if (p_ == 0) {
            std::int64_t r;
            if (__builtin_sub_overflow(std::int64_t{0}, v_, &r)) throw Error("integer literal overflow");
            return Fp(r);
        }
        return v_ == 0 ? *this : make_raw(p_, static_cast<std::int64_t>(p_) - v_);
    }
    Fp operator/(const Fp& o) const {
        auto [a, b, p] = unify(*this, o);
        Fp den = (p == 0) ? Fp(b) : make_raw(p, b);
        Fp num = (p == 0) ? Fp(a) : make_raw(p, a);
        return num * den.inverse();
    }
    Fp& operator+=(const Fp& o) { return *this = *this + o; }
    Fp& operator-=(const Fp& o) { return *this = *this - o; }
    Fp& operator*=(const Fp& o) { return *this = *this * o; }

    bool operator==(const Fp& o) const {
        auto [a, b, p] = unify(*this, o);
        return a == b;
    }
    bool operator!=(const Fp& o) const { return !(*this == o); }

    Fp inverse() const {
        if (is_zero()) throw DivisionByZero();
        if (p_ == 0) {
            if (v_ == 1 || v_ == -1) return *this;
            throw MixedField("cannot invert an integer literal without a field modulus");
        }
        // extended Euclid on (v_, p_)
        std::int64_t t = 0, nt = 1;
        std::int64_t r = static_cast<std::int64_t>(p_), nr = v_;
        while (nr != 0) {
            std::int64_t q = r / nr;
            std::int64_t tmp = t - q * nt;
            t = nt;
            nt = tmp;
            tmp = r - q * nr;
            r = nr;
            nr = tmp;
        }
        if (t < 0) t += static_cast<std::int64_t>(p_);
        return make_raw(p_, t);
    }

    /// Integer embedded into the field carrying *this.
    Fp embed(std::int64_t k) const {
        if (p_ == 0) return Fp(k);
        return make(p_, k);
    }

    Fp pow(std::uint64_t e) const {
        Fp r = embed(1), b = *this;
        for (; e != 0; e >>= 1) {
            if (e & 1) r *= b;
            b *= b;
        }
        return r;
    }

    std::string str() const { return std::to_string(v_); }

private:
    static Fp make_raw(std::uint32_t p, std::int64_t reduced) {
        Fp r;
        r.p_ = p;
        r.v_ = reduced;
        return r;
    }

    struct Unified {
        std::int64_t a;
        std::int64_t b;
        std::uint32_t p;
    };

    static Unified unify(const Fp& x, const Fp& y) {
        if (x.p_ == y.p_) return {x.v_, y.v_, x.p_};
        if (x.p_ == 0) return {make(y.p_, x.v_).v_, y.v_, y.p_};
        if (y.p_ == 0) return {x.v_, make(x.p_, y.v_).v_, x.p_};
        throw MixedField("arithmetic between F_" + std::to_string(x.p_) + " and F_" +
                         std::to_string(y.p_));
    }

    static Fp literal_checked(std::int64_t a, std::int64_t b, char op) {
        std::int64_t r = 0;
        bool ovf = false;
        switch (op) {
            case '+': ovf = __builtin_add_overflow(a, b, &r); break;
            case '-': ovf = __builtin_sub_overflow(a, b, &r); break;
            case '*': ovf = __builtin_mul_overflow(a, b, &r); break;
            default: ovf = true;
        }
        if (ovf) throw Error("integer literal overflow");
        return Fp(r);
    }

    std::int64_t v_ = 0;
    std::uint32_t p_ = 0;
};

/// Requirements placed on a coefficient-field element type by the generic
/// layers (Laurent scalars, forms, pencils).
template <class T>
concept CoefficientField = std::regular<T> && requires(const T a, const T b, std::int64_t k) {
    { a + b } -> std::same_as<T>;
    { a - b } -> std::same_as<T>;
    { a * b } -> std::same_as<T>;
    { -a } -> std::same_as<T>;
    { a.is_zero() } -> std::convertible_to<bool>;
    { a.is_one() } -> std::convertible_to<bool>;
    { a.inverse() } -> std::same_as<T>;
    { a.embed(k) } -> std::same_as<T>;
    { a.characteristic() } -> std::convertible_to<std::uint32_t>;
    { a.str() } -> std::same_as<std::string>;
};

static_assert(CoefficientField<Rational>);
static_assert(CoefficientField<Fp>);

inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

/// Runtime handle for Q; builds elements and names the field.
struct RationalField {
    using Elem = Rational;
    Elem operator()(std::int64_t v) const { return Rational(v); }
    Elem fraction(const BigInt& num, const BigInt& den) const { return Rational(num, den); }
    static std::uint32_t characteristic() { return 0; }
    std::string name() const { return "Q"; }
};

/// Runtime handle for F_p, p an odd prime (all constructions assume the
/// coefficient field has characteristic != 2).
struct PrimeField {
    using Elem = Fp;

    explicit PrimeField(std::uint32_t p_) : p(p_) {
        if (p == 2) throw UnsupportedField("characteristic 2 is not supported");
        if (!is_prime(p)) throw UnsupportedField(std::to_string(p) + " is not prime");
    }

    Elem operator()(std::int64_t v) const { return Fp::make(p, v); }
    Elem fraction(const BigInt& num, const BigInt& den) const {
        return (*this)(to_int(num)) / (*this)(to_int(den));
    }
    std::uint32_t characteristic() const { return p; }
    std::string name() const { return "F" + std::to_string(p); }

    std::uint32_t p;

private:
    std::int64_t to_int(const BigInt& v) const {
        return static_cast<std::int64_t>(v % BigInt(p));
    }
};

}  // namespace pqs
