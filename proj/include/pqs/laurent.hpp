#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pqs/errors.hpp"
#include "pqs/fields.hpp"

namespace pqs {

/// Element of k[t, t^-1] in canonical form: the coefficient of the lowest
/// power of t is stored first and is nonzero; zero is the empty sequence.
/// The t-valuation of a nonzero element is the exponent of that lowest
/// power; val(x*y) = val(x) + val(y).
template <CoefficientField F>
class Laurent {
public:
    Laurent() = default;

    explicit Laurent(F constant) : Laurent(std::move(constant), 0) {}

    Laurent(F coeff, std::int64_t exponent) {
        if (!coeff.is_zero()) {
            lead_ = exponent;
            c_.push_back(std::move(coeff));
        }
    }

    /// Builds lead + sum_k coeffs[k] * t^(lead+k), then normalizes.
    static Laurent from_coeffs(std::int64_t lead, std::vector<F> coeffs) {
        Laurent r;
        r.lead_ = lead;
        r.c_ = std::move(coeffs);
        r.normalize();
        return r;
    }

    bool is_zero() const { return c_.empty(); }
    bool is_one() const { return lead_ == 0 && c_.size() == 1 && c_[0].is_one(); }

    /// t-valuation; +infinity (nullopt) for zero.
    std::optional<std::int64_t> valuation() const {
        if (is_zero()) return std::nullopt;
        return lead_;
    }

    /// Top exponent; nullopt for zero.
    std::optional<std::int64_t> degree() const {
        if (is_zero()) return std::nullopt;
        return lead_ + static_cast<std::int64_t>(c_.size()) - 1;
    }

    /// Unit of the valuation subring R = {val >= 0}, i.e. valuation 0.
    bool is_unit() const { return !is_zero() && lead_ == 0; }

    /// True iff the element lies in R (val >= 0).
    bool is_integral() const { return is_zero() || lead_ >= 0; }

    F coeff(std::int64_t exponent) const {
        if (is_zero()) return F{};
        const std::int64_t k = exponent - lead_;
        if (k < 0 || k >= static_cast<std::int64_t>(c_.size())) return F{};
        return c_[static_cast<std::size_t>(k)];
    }

    /// Value at t = 0; requires val >= 0.
    F at_zero() const {
        if (is_zero()) return F{};
        if (lead_ < 0) throw Error("evaluation at t=0 of an element with a pole");
        return lead_ == 0 ? c_[0] : F{};
    }

    Laurent operator+(const Laurent& o) const {
        if (is_zero()) return o;
        if (o.is_zero()) return *this;
        const std::int64_t lead = std::min(lead_, o.lead_);
        const std::int64_t top = std::max(lead_ + static_cast<std::int64_t>(c_.size()),
                                          o.lead_ + static_cast<std::int64_t>(o.c_.size()));
        std::vector<F> out(static_cast<std::size_t>(top - lead));
        for (std::size_t k = 0; k < c_.size(); ++k)
            out[static_cast<std::size_t>(lead_ - lead) + k] += c_[k];
        for (std::size_t k = 0; k < o.c_.size(); ++k)
            out[static_cast<std::size_t>(o.lead_ - lead) + k] += o.c_[k];
        return from_coeffs(lead, std::move(out));
    }

    Laurent operator-() const {
        Laurent r(*this);
        for (auto& x : r.c_) x = -x;
        return r;
    }

    Laurent operator-(const Laurent& o) const { return *this + (-o); }

    Laurent operator*(const Laurent& o) const {
        if (is_zero() || o.is_zero()) return {};
        std::vector<F> out(c_.size() + o.c_.size() - 1);
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (c_[i].is_zero()) continue;
            for (std::size_t j = 0; j < o.c_.size(); ++j) {
                if (o.c_[j].is_zero()) continue;
                out[i + j] += c_[i] * o.c_[j];
            }
        }
        return from_coeffs(lead_ + o.lead_, std::move(out));
    }

    Laurent& operator+=(const Laurent& o) { return *this = *this + o; }
    Laurent& operator-=(const Laurent& o) { return *this = *this - o; }
    Laurent& operator*=(const Laurent& o) { return *this = *this * o; }

    bool operator==(const Laurent& o) const {
        return lead_ == o.lead_ && c_ == o.c_;
    }
    bool operator!=(const Laurent& o) const { return !(*this == o); }

    /// Multiplication by t^k.
    Laurent shifted(std::int64_t k) const {
        Laurent r(*this);
        if (!r.is_zero()) r.lead_ += k;
        return r;
    }

    Laurent pow(std::uint64_t e) const {
        Laurent r(F(1));
        Laurent b(*this);
        for (; e != 0; e >>= 1) {
            if (e & 1) r *= b;
            b *= b;
        }
        return r;
    }

    /// Coefficient-wise multiplication by a field scalar.
    Laurent scaled(const F& s) const {
        if (s.is_zero()) return {};
        Laurent r(*this);
        for (auto& x : r.c_) x = x * s;
        return r;
    }

    Laurent times_int(std::int64_t k) const {
        if (is_zero()) return {};
        return scaled(c_[0].embed(k));
    }

    /// Modulus carried by the coefficients (0 = characteristic zero or
    /// no attached coefficient present).
    std::uint32_t characteristic() const {
        for (const auto& x : c_)
            if (x.characteristic() != 0) return x.characteristic();
        return 0;
    }

    const std::vector<F>& coeffs() const { return c_; }
    std::int64_t lead_exponent() const { return lead_; }

    /// Canonical literal, e.g. "1 + 2*t^3 - 1/2*t^5"; parseable back by the
    /// io layer.
    std::string str() const {
        if (is_zero()) return "0";
        std::string out;
        for (std::size_t k = 0; k < c_.size(); ++k) {
            if (c_[k].is_zero()) continue;
            const std::int64_t e = lead_ + static_cast<std::int64_t>(k);
            std::string cs = c_[k].str();
            bool neg = !cs.empty() && cs[0] == '-';
            if (neg) cs.erase(0, 1);
            if (out.empty()) {
                if (neg) out += "-";
            } else {
                out += neg ? " - " : " + ";
            }
            const bool unit_coeff = (cs == "1");
            if (e == 0) {
                out += cs;
            } else {
                if (!unit_coeff) {
                    out += cs;
                    out += "*";
                }
                out += "t";
                if (e != 1) out += "^" + std::to_string(e);
            }
        }
        return out.empty() ? "0" : out;
    }

private:
    void normalize() {
        std::size_t first = 0;
        while (first < c_.size() && c_[first].is_zero()) ++first;
        if (first == c_.size()) {
            c_.clear();
            lead_ = 0;
            return;
        }
        std::size_t last = c_.size();
        while (c_[last - 1].is_zero()) --last;
        if (first > 0 || last < c_.size()) {
            c_ = std::vector<F>(c_.begin() + static_cast<std::ptrdiff_t>(first),
                                c_.begin() + static_cast<std::ptrdiff_t>(last));
        }
        lead_ += static_cast<std::int64_t>(first);
    }

    std::int64_t lead_ = 0;
    std::vector<F> c_;
};

template <CoefficientField F>
std::optional<std::int64_t> val_t(const Laurent<F>& x) {
    return x.valuation();
}

}  // namespace pqs
