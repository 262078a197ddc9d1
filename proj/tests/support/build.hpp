#pragma once

// Terse construction helpers for tests: forms from 1-based sparse monomial
// entries with polynomial-literal strings.

#include <initializer_list>
#include <string>
#include <tuple>
#include <vector>

#include "pqs/io.hpp"
#include "pqs/pencil.hpp"
#include "pqs/quadratic.hpp"

namespace pqs::testbuild {

template <class Ctx>
pqs::QuadraticForm<typename Ctx::Elem> qf(
    const Ctx& k, int n, std::initializer_list<std::tuple<int, int, const char*>> entries) {
    pqs::QuadraticForm<typename Ctx::Elem> q(n);
    for (const auto& [i, j, lit] : entries)
        q.add_monomial(i - 1, j - 1, pqs::parse_laurent(k, lit));
    return q;
}

template <class Ctx>
pqs::QuadraticForm<typename Ctx::Elem> diag(const Ctx& k, const std::vector<std::string>& lits) {
    const int n = static_cast<int>(lits.size());
    pqs::QuadraticForm<typename Ctx::Elem> q(n);
    for (int i = 0; i < n; ++i) q.add_monomial(i, i, pqs::parse_laurent(k, lits[static_cast<std::size_t>(i)]));
    return q;
}

template <class Ctx>
pqs::WeightSystem w(const Ctx&, std::vector<std::int64_t> ws) {
    return pqs::WeightSystem{std::move(ws)};
}

}  // namespace pqs::testbuild
