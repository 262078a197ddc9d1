#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "pqs/disc.hpp"
#include "pqs/errors.hpp"
#include "pqs/fields.hpp"
#include "pqs/laurent.hpp"
#include "pqs/pencil.hpp"
#include "pqs/quadratic.hpp"

namespace pqs {

/// Bounds for the destabilizer search and the reduction loop. All
/// randomness is drawn from rng_seed, so identical budgets give identical
/// results.
struct SearchBudget {
    std::int64_t max_weight_sum = 4;
    int max_random_coord_changes = 200;
    std::uint64_t rng_seed = 0;
    int max_reduction_steps = 64;
    bool use_certificate = true;
};

enum class Stability {
    SemistableCertified,   // no destabilizer exists, over all weights and coordinates
    SemistableUpToBudget,  // no destabilizer found within the search budget
    Unstable,
};

inline const char* to_string(Stability s) {
    switch (s) {
        case Stability::SemistableCertified: return "semistable_certified";
        case Stability::SemistableUpToBudget: return "semistable_up_to_budget";
        case Stability::Unstable: return "unstable";
    }
    return "?";
}

template <CoefficientField F>
struct Witness {
    WeightSystem rho;
    CoordinateChange<F> coord;
    std::int64_t mult = 0;
    std::int64_t bound_num = 0;  // exact bound (4/n) * sum(w) as bound_num / bound_den
    std::int64_t bound_den = 1;
};

template <CoefficientField F>
struct StabilityVerdict {
    Stability status = Stability::SemistableUpToBudget;
    std::optional<Witness<F>> witness;
    std::optional<std::int64_t> disc_val;  // nullopt = +infinity
    std::int64_t threshold = 0;            // n - 2
};

/// Any coefficient attached to the pencil's field, for embedding integers.
template <CoefficientField F>
F field_exemplar(const QuadraticForm<F>& q) {
    for (int i = 0; i < q.n(); ++i)
        for (int j = i; j < q.n(); ++j)
            for (const auto& c : q.at(i, j).coeffs())
                if (c.characteristic() != 0) return c;
    return F(1);
}

template <CoefficientField F>
F field_exemplar(const Pencil<F>& p) {
    const F a = field_exemplar(p.f());
    if (a.characteristic() != 0) return a;
    return field_exemplar(p.g());
}

// High-yield weight shapes for n = 5, searched ahead of the exhaustive
// enumeration; they detect the classical degenerations of quadric pencils
// in P^4 (low-rank members, contained planes, non-hypersurface points).
inline const std::vector<std::vector<std::int64_t>>& seed_weight_patterns_n5() {
    static const std::vector<std::vector<std::int64_t>> patterns = {
        {1, 1, 0, 1, 0}, {2, 1, 0, 1, 0}, {1, 0, 0, 1, 0}, {1, 0, 1, 0, 0},
        {1, 1, 1, 0, 0}, {1, 0, 1, 1, 0}, {1, 0, 2, 1, 0}, {1, 1, 1, 1, 0},
    };
    return patterns;
}

/// Deterministic candidate list: for n = 5 the seed patterns under all
/// entry permutations first, then every effective weight system with
/// 0 < sum(w) <= max_sum in ascending lexicographic order; duplicates keep
/// their first position.
inline std::vector<WeightSystem> candidate_weight_systems(int n, std::int64_t max_sum) {
    std::vector<WeightSystem> out;
    std::set<std::vector<std::int64_t>> seen;
    auto push = [&](std::vector<std::int64_t> w) {
        if (seen.insert(w).second) out.push_back(WeightSystem{std::move(w)});
    };
    if (n == 5) {
        for (const auto& pat : seed_weight_patterns_n5()) {
            std::vector<std::int64_t> w = pat;
            std::sort(w.begin(), w.end());
            do {
                push(w);
            } while (std::next_permutation(w.begin(), w.end()));
        }
    }
    std::vector<std::int64_t> w(static_cast<std::size_t>(n), 0);
    auto rec = [&](auto&& self, int idx, std::int64_t left) -> void {
        if (idx == n) {
            if (left < max_sum) push(w);  // skip the zero vector (left == max_sum)
            return;
        }
        for (std::int64_t v = 0; v <= left; ++v) {
            w[static_cast<std::size_t>(idx)] = v;
            self(self, idx + 1, left - v);
        }
        w[static_cast<std::size_t>(idx)] = 0;
    };
    rec(rec, 0, max_sum);
    return out;
}

template <CoefficientField F>
bool field_matrix_invertible(int n, std::vector<F> m) {
    for (int c = 0; c < n; ++c) {
        int pivot = -1;
        for (int r = c; r < n; ++r)
            if (!m[static_cast<std::size_t>(r) * n + c].is_zero()) {
                pivot = r;
                break;
            }
        if (pivot < 0) return false;
        if (pivot != c)
            for (int j = 0; j < n; ++j)
                std::swap(m[static_cast<std::size_t>(pivot) * n + j],
                          m[static_cast<std::size_t>(c) * n + j]);
        const F inv = m[static_cast<std::size_t>(c) * n + c].inverse();
        for (int r = c + 1; r < n; ++r) {
            const F factor = m[static_cast<std::size_t>(r) * n + c] * inv;
            if (factor.is_zero()) continue;
            for (int j = c; j < n; ++j)
                m[static_cast<std::size_t>(r) * n + j] =
                    m[static_cast<std::size_t>(r) * n + j] -
                    factor * m[static_cast<std::size_t>(c) * n + j];
        }
    }
    return true;
}

/// Deterministic candidate coordinate changes over the residue field k:
/// all permutation matrices (lexicographic), then the transvections
/// x_i -> x_i + c x_j for c in a fixed small set, then seeded random
/// GL_n(k) samples.
template <CoefficientField F>
std::vector<CoordinateChange<F>> candidate_coordinate_changes(int n, const F& exemplar,
                                                              const SearchBudget& budget) {
    std::vector<CoordinateChange<F>> out;
    std::vector<int> perm(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;
    do {
        out.push_back(CoordinateChange<F>::permutation(perm));
    } while (std::next_permutation(perm.begin(), perm.end()));

    std::vector<F> cs;
    for (std::int64_t v : {std::int64_t{1}, std::int64_t{-1}, std::int64_t{2}}) {
        F x = exemplar.embed(v);
        bool dup = false;
        for (const auto& y : cs) dup = dup || (x == y);
        if (!dup && !x.is_zero()) cs.push_back(x);
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            for (const auto& c : cs) {
                std::vector<F> m(static_cast<std::size_t>(n) * n, F(0));
                for (int d = 0; d < n; ++d) m[static_cast<std::size_t>(d) * n + d] = exemplar.embed(1);
                m[static_cast<std::size_t>(i) * n + j] = c;
                out.push_back(CoordinateChange<F>::from_field_matrix(n, m));
            }
        }

    std::mt19937_64 rng(budget.rng_seed);
    const std::uint32_t p = exemplar.characteristic();
    int produced = 0;
    while (produced < budget.max_random_coord_changes) {
        std::vector<F> m;
        m.reserve(static_cast<std::size_t>(n) * n);
        for (int k = 0; k < n * n; ++k) {
            const std::uint64_t raw = rng();
            const std::int64_t v = (p != 0) ? static_cast<std::int64_t>(raw % p)
                                            : static_cast<std::int64_t>(raw % 5) - 2;
            m.push_back(exemplar.embed(v));
        }
        if (!field_matrix_invertible(n, m)) continue;
        out.push_back(CoordinateChange<F>::from_field_matrix(n, m));
        ++produced;
    }
    return out;
}

/// True iff mult(p, rho, C) strictly exceeds (4/n) sum(w), compared in
/// exact rational arithmetic. Requires a smooth generic fibre.
template <CoefficientField F>
bool is_destabilizer(const Pencil<F>& p, const WeightSystem& rho, const CoordinateChange<F>& c) {
    if (!generic_fibre_smooth(p)) throw NonSmoothGenericFibre();
    const std::int64_t m = multiplicity(p, rho, c);
    return static_cast<std::int64_t>(p.n()) * m > 4 * rho.sum();
}

/// Scans candidates in the deterministic order (weight-major, coordinate
/// changes within a weight) and returns the first destabilizing pair found.
///
/// Exactness of the shortcut: the weight action multiplies the Pluecker
/// coordinate indexed by monomials (i,j),(l,m) by t^(w_i+w_j+w_l+w_m)
/// exactly, so the minor valuations of the conjugated pencil are computed
/// once per coordinate change and each weight system costs only integer
/// additions.
template <CoefficientField F>
std::optional<Witness<F>> search_over(const Pencil<F>& p, const std::vector<WeightSystem>& weights,
                                      const std::vector<CoordinateChange<F>>& coords) {
    const int n = p.n();
    const auto pairs = monomial_pairs(n);
    const std::size_t r = pairs.size();

    std::size_t best_rho = weights.size();
    std::size_t best_c = 0;

    std::vector<std::optional<std::int64_t>> base;
    base.reserve(r * (r - 1) / 2);
    std::vector<std::int64_t> monw(r);

    for (std::size_t ci = 0; ci < coords.size() && best_rho > 0; ++ci) {
        const auto cf = p.f().conjugated(coords[ci].entries()).monomial_coeffs();
        const auto cg = p.g().conjugated(coords[ci].entries()).monomial_coeffs();
        base.clear();
        for (std::size_t a = 0; a < r; ++a)
            for (std::size_t b = a + 1; b < r; ++b)
                base.push_back((cf[a] * cg[b] - cf[b] * cg[a]).valuation());

        for (std::size_t ri = 0; ri < best_rho; ++ri) {
            const auto& rho = weights[ri];
            for (std::size_t a = 0; a < r; ++a)
                monw[a] = rho.w[static_cast<std::size_t>(pairs[a].first)] +
                          rho.w[static_cast<std::size_t>(pairs[a].second)];
            std::optional<std::int64_t> mult;
            std::size_t k = 0;
            for (std::size_t a = 0; a < r; ++a)
                for (std::size_t b = a + 1; b < r; ++b, ++k) {
                    if (!base[k]) continue;
                    const std::int64_t v = *base[k] + monw[a] + monw[b];
                    if (!mult || v < *mult) mult = v;
                }
            if (mult && static_cast<std::int64_t>(n) * *mult > 4 * rho.sum()) {
                best_rho = ri;
                best_c = ci;
                break;
            }
        }
    }
    if (best_rho == weights.size()) return std::nullopt;

    Witness<F> w{weights[best_rho], coords[best_c], 0, 4 * weights[best_rho].sum(),
                 static_cast<std::int64_t>(n)};
    w.mult = multiplicity(p, w.rho, w.coord);
    if (static_cast<std::int64_t>(n) * w.mult <= w.bound_num)
        throw InternalInvariantViolation("witness failed re-verification");
    return w;
}

/// True when disc_valuation(p) <= n-2: any destabilizing model change would
/// lower the discriminant valuation by a positive multiple of n-1 while the
/// discriminant stays integral, so none can exist. A true certificate rules
/// out all weight systems in all coordinates, not just the searched ones.
template <CoefficientField F>
bool certificate_semistable(const Pencil<F>& p) {
    const auto v = disc_valuation(p);
    if (!v) throw NonSmoothGenericFibre();
    return *v <= static_cast<std::int64_t>(p.n()) - 2;
}

namespace detail {

template <CoefficientField F>
std::optional<Witness<F>> search_budgeted(const Pencil<F>& p, const SearchBudget& budget) {
    const auto weights = candidate_weight_systems(p.n(), budget.max_weight_sum);
    const auto coords = candidate_coordinate_changes(p.n(), field_exemplar(p), budget);
    return search_over(p, weights, coords);
}

}  // namespace detail

/// First destabilizer in the deterministic search order, or nullopt within
/// budget. When the certificate applies the search is skipped: the answer
/// "none" is then exact rather than budget-limited.
template <CoefficientField F>
std::optional<Witness<F>> search_destabilizer(const Pencil<F>& p, const SearchBudget& budget) {
    const auto v = disc_valuation(p);
    if (!v) throw NonSmoothGenericFibre();
    if (budget.use_certificate && *v <= static_cast<std::int64_t>(p.n()) - 2) return std::nullopt;
    return detail::search_budgeted(p, budget);
}

template <CoefficientField F>
struct ModelChange {
    Pencil<F> pencil;  // saturated transform of the input
    std::int64_t mult;
    std::int64_t shed;
    std::int64_t disc_val_before;
    std::int64_t disc_val_after;
    std::int64_t drop;  // disc_val_before - disc_val_after
};

/// Applies (rho, C), saturates, and verifies by direct recomputation that
/// the discriminant valuation moved by exactly
///   n(n-1) mult - 4(n-1) sum(w).
/// A mismatch falsifies either the implementation or the input and is
/// fatal. Requires a smooth generic fibre; the bound sign is not checked
/// here, so the valuation may also rise (non-destabilizing changes).
template <CoefficientField F>
ModelChange<F> change_model(const Pencil<F>& p, const WeightSystem& rho,
                            const CoordinateChange<F>& c) {
    const auto before = disc_valuation(p);
    if (!before) throw NonSmoothGenericFibre();
    const Pencil<F> moved = act(p, rho, c);
    const auto mult = moved.plucker().min_valuation();
    if (!mult) throw DependentPencil();
    auto sat = saturate(moved);
    const auto after = disc_valuation(sat.pencil);
    const std::int64_t n = p.n();
    const std::int64_t expected_drop = n * (n - 1) * *mult - 4 * (n - 1) * rho.sum();
    if (!after || *before - *after != expected_drop)
        throw InternalInvariantViolation(
            "discriminant valuation law violated: before=" + std::to_string(*before) +
            " after=" + (after ? std::to_string(*after) : std::string("+inf")) +
            " expected drop=" + std::to_string(expected_drop));
    return {std::move(sat.pencil), *mult, sat.shed, *before, *after, expected_drop};
}

/// One reduction step; refuses pairs that are not strict destabilizers.
template <CoefficientField F>
std::pair<Pencil<F>, std::int64_t> destabilization_step(const Pencil<F>& p,
                                                        const WeightSystem& rho,
                                                        const CoordinateChange<F>& c) {
    if (!is_destabilizer(p, rho, c))
        throw Error("destabilization_step: (rho, C) does not strictly violate the bound");
    auto mc = change_model(p, rho, c);
    return {std::move(mc.pencil), mc.drop};
}

template <CoefficientField F>
struct ReductionStep {
    WeightSystem rho;
    CoordinateChange<F> coord;
    std::int64_t mult;
    std::int64_t disc_val_before;
    std::int64_t disc_val_after;
};

template <CoefficientField F>
struct ReductionTrace {
    std::vector<ReductionStep<F>> steps;
    Pencil<F> final_pencil;
    StabilityVerdict<F> final_status;
};

/// Single stability verdict: certificate first, then budgeted search.
template <CoefficientField F>
StabilityVerdict<F> check_stability(const Pencil<F>& p, const SearchBudget& budget) {
    StabilityVerdict<F> out;
    out.threshold = static_cast<std::int64_t>(p.n()) - 2;
    const auto v = disc_valuation(p);
    if (!v) throw NonSmoothGenericFibre();
    out.disc_val = v;
    if (budget.use_certificate && *v <= out.threshold) {
        out.status = Stability::SemistableCertified;
        return out;
    }
    out.witness = detail::search_budgeted(p, budget);
    out.status = out.witness ? Stability::Unstable : Stability::SemistableUpToBudget;
    return out;
}

/// Iterates search + verified step until the certificate fires or no
/// witness is found in budget. Every step strictly lowers the discriminant
/// valuation by at least n-1, which bounds the step count a priori by
/// disc_valuation / (n-1).
template <CoefficientField F>
ReductionTrace<F> semistable_reduce(Pencil<F> p, const SearchBudget& budget) {
    auto val = disc_valuation(p);
    if (!val) throw NonSmoothGenericFibre();
    const std::int64_t threshold = static_cast<std::int64_t>(p.n()) - 2;

    std::vector<ReductionStep<F>> steps;
    for (;;) {
        if (*val <= threshold) {
            StabilityVerdict<F> verdict{Stability::SemistableCertified, std::nullopt, val, threshold};
            return {std::move(steps), std::move(p), std::move(verdict)};
        }
        auto witness = detail::search_budgeted(p, budget);
        if (!witness) {
            StabilityVerdict<F> verdict{Stability::SemistableUpToBudget, std::nullopt, val, threshold};
            return {std::move(steps), std::move(p), std::move(verdict)};
        }
        if (static_cast<int>(steps.size()) >= budget.max_reduction_steps) {
            StabilityVerdict<F> verdict{Stability::Unstable, std::move(witness), val, threshold};
            return {std::move(steps), std::move(p), std::move(verdict)};
        }
        auto mc = change_model(p, witness->rho, witness->coord);
        steps.push_back({witness->rho, witness->coord, mc.mult, mc.disc_val_before,
                         mc.disc_val_after});
        p = std::move(mc.pencil);
        val = mc.disc_val_after;
    }
}

}  // namespace pqs
