#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "pqs/errors.hpp"
#include "pqs/fields.hpp"
#include "pqs/laurent.hpp"
#include "pqs/pencil.hpp"
#include "pqs/quadratic.hpp"

namespace pqs {

using Json = nlohmann::ordered_json;

/// Coefficient field named in input files: "Q" or "F<p>".
struct FieldSpec {
    enum class Kind { Rationals, Prime };
    Kind kind = Kind::Rationals;
    std::uint32_t p = 0;

    static FieldSpec rationals() { return {}; }
    static FieldSpec prime(std::uint32_t p) {
        FieldSpec fs;
        fs.kind = Kind::Prime;
        fs.p = p;
        fs.validate();
        return fs;
    }

    static FieldSpec parse(const std::string& s) {
        if (s == "Q") return rationals();
        if (s.size() >= 2 && s[0] == 'F') {
            std::uint64_t v = 0;
            for (std::size_t i = 1; i < s.size(); ++i) {
                if (!std::isdigit(static_cast<unsigned char>(s[i])))
                    throw ParseError("bad field name '" + s + "'");
                v = v * 10 + static_cast<std::uint64_t>(s[i] - '0');
                if (v > 0xffffffffull) throw ParseError("field modulus too large in '" + s + "'");
            }
            return prime(static_cast<std::uint32_t>(v));
        }
        throw ParseError("bad field name '" + s + "' (expected \"Q\" or \"F<p>\")");
    }

    void validate() const {
        if (kind == Kind::Prime) PrimeField check(p);  // throws on p = 2 or composite
    }

    std::string str() const {
        return kind == Kind::Rationals ? "Q" : "F" + std::to_string(p);
    }
};

/// Dispatches a generic callable on the runtime field choice.
template <class Fn>
auto with_field(const FieldSpec& fs, Fn&& fn) {
    if (fs.kind == FieldSpec::Kind::Rationals) return fn(RationalField{});
    return fn(PrimeField{fs.p});
}

namespace detail {

// Recursive-descent parser for polynomial literals: sums of terms
// c, c*t^e, t^e with integer or num/den coefficients, e >= 0;
// whitespace-insensitive.
template <class Ctx>
class LiteralParser {
public:
    LiteralParser(const Ctx& ctx, const std::string& s, std::int64_t max_exp)
        : ctx_(ctx), s_(s), max_exp_(max_exp) {}

    Laurent<typename Ctx::Elem> parse() {
        Laurent<typename Ctx::Elem> acc;
        skip_ws();
        if (eof()) fail("empty literal");
        bool first = true;
        while (!eof()) {
            int sign = 1;
            skip_ws();
            if (peek() == '+' || peek() == '-') {
                sign = (take() == '-') ? -1 : 1;
            } else if (!first) {
                fail("expected '+' or '-' between terms");
            }
            acc += term(sign);
            skip_ws();
            first = false;
        }
        return acc;
    }

private:
    using Elem = typename Ctx::Elem;

    Laurent<Elem> term(int sign) {
        skip_ws();
        Elem coeff = ctx_(1);
        bool have_coeff = false;
        if (!eof() && std::isdigit(static_cast<unsigned char>(peek()))) {
            coeff = coefficient();
            have_coeff = true;
            skip_ws();
            if (!eof() && peek() == '*') {
                take();
                skip_ws();
                if (eof() || peek() != 't') fail("expected 't' after '*'");
            }
        }
        std::int64_t exp = 0;
        if (!eof() && peek() == 't') {
            take();
            skip_ws();
            exp = 1;
            if (!eof() && peek() == '^') {
                take();
                skip_ws();
                exp = exponent();
            }
        } else if (!have_coeff) {
            fail("expected a coefficient or 't'");
        }
        if (sign < 0) coeff = -coeff;
        return Laurent<Elem>(coeff, exp);
    }

    Elem coefficient() {
        const BigInt num = integer();
        skip_ws();
        if (!eof() && peek() == '/') {
            take();
            skip_ws();
            if (eof() || !std::isdigit(static_cast<unsigned char>(peek())))
                fail("expected denominator digits after '/'");
            const BigInt den = integer();
            if (den == 0) fail("zero denominator");
            return ctx_.fraction(num, den);
        }
        return ctx_.fraction(num, 1);
    }

    BigInt integer() {
        std::string digits;
        while (!eof() && std::isdigit(static_cast<unsigned char>(peek()))) digits += take();
        if (digits.empty()) fail("expected digits");
        return BigInt(digits);
    }

    std::int64_t exponent() {
        if (eof() || !std::isdigit(static_cast<unsigned char>(peek())))
            fail("expected a nonnegative exponent after '^'");
        std::int64_t e = 0;
        while (!eof() && std::isdigit(static_cast<unsigned char>(peek()))) {
            e = e * 10 + (take() - '0');
            if (e > max_exp_)
                fail("t-exponent exceeds the degree cap " + std::to_string(max_exp_));
        }
        return e;
    }

    bool eof() const { return pos_ >= s_.size(); }
    char peek() const { return s_[pos_]; }
    char take() { return s_[pos_++]; }
    void skip_ws() {
        while (!eof() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
    }
    [[noreturn]] void fail(const std::string& why) const {
        throw ParseError("polynomial literal: " + why + " (at offset " + std::to_string(pos_) +
                             " in \"" + s_ + "\")",
                         0, pos_ + 1);
    }

    const Ctx& ctx_;
    const std::string& s_;
    std::int64_t max_exp_;
    std::size_t pos_ = 0;
};

}  // namespace detail

inline constexpr std::int64_t kDefaultDegreeCap = 64;

/// Parses a polynomial literal like "1 + 2*t^3 - 1/2*t^5". Input exponents
/// are nonnegative by grammar; the cap guards against runaway expressions.
template <class Ctx>
Laurent<typename Ctx::Elem> parse_laurent(const Ctx& ctx, const std::string& s,
                                          std::int64_t degree_cap = kDefaultDegreeCap) {
    return detail::LiteralParser<Ctx>(ctx, s, degree_cap).parse();
}

/// Parses a projective point "a1:a2:...:an" with coefficient-literal parts.
template <class Ctx>
std::vector<typename Ctx::Elem> parse_point(const Ctx& ctx, const std::string& s) {
    std::vector<typename Ctx::Elem> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t colon = s.find(':', start);
        const std::string part = s.substr(start, colon == std::string::npos ? colon : colon - start);
        const Laurent<typename Ctx::Elem> v = parse_laurent(ctx, part, 0);
        out.push_back(v.coeff(0));
        if (colon == std::string::npos) break;
        start = colon + 1;
    }
    return out;
}

struct PencilEntry {
    int i = 0;  // 1-based, i <= j
    int j = 0;
    std::string lit;
};

/// On-disk pencil description; sparse monomial entries with polynomial
/// literals, plus the coefficient field and optional metadata.
struct PencilFile {
    FieldSpec field;
    int n = 0;
    std::vector<PencilEntry> f, g;
    std::string name;
    std::string comment;
};

namespace detail {

inline std::vector<PencilEntry> entries_from_json(const Json& j, const std::string& key, int n) {
    if (!j.is_array()) throw ParseError("\"" + key + "\" must be an array of [i, j, literal]");
    std::vector<PencilEntry> out;
    std::vector<std::vector<bool>> seen(static_cast<std::size_t>(n) + 1,
                                        std::vector<bool>(static_cast<std::size_t>(n) + 1, false));
    for (const auto& e : j) {
        if (!e.is_array() || e.size() != 3 || !e[0].is_number_integer() ||
            !e[1].is_number_integer() || !e[2].is_string())
            throw ParseError("\"" + key + "\": each entry must be [i, j, \"literal\"]");
        PencilEntry pe{e[0].get<int>(), e[1].get<int>(), e[2].get<std::string>()};
        if (pe.i < 1 || pe.j < 1 || pe.i > n || pe.j > n)
            throw ParseError("\"" + key + "\": index out of range in entry (" +
                             std::to_string(pe.i) + ", " + std::to_string(pe.j) + ")");
        if (pe.i > pe.j)
            throw ParseError("\"" + key + "\": entries must have i <= j, got (" +
                             std::to_string(pe.i) + ", " + std::to_string(pe.j) + ")");
        if (seen[static_cast<std::size_t>(pe.i)][static_cast<std::size_t>(pe.j)])
            throw ParseError("\"" + key + "\": duplicate entry (" + std::to_string(pe.i) + ", " +
                             std::to_string(pe.j) + ")");
        seen[static_cast<std::size_t>(pe.i)][static_cast<std::size_t>(pe.j)] = true;
        out.push_back(std::move(pe));
    }
    std::sort(out.begin(), out.end(),
              [](const PencilEntry& a, const PencilEntry& b) {
                  return std::pair(a.i, a.j) < std::pair(b.i, b.j);
              });
    return out;
}

}  // namespace detail

inline PencilFile pencil_file_from_json(const Json& j) {
    if (!j.is_object()) throw ParseError("pencil file must be a JSON object");
    for (const auto& key : {"field", "n", "f", "g"})
        if (!j.contains(key)) throw ParseError(std::string("missing \"") + key + "\"");
    PencilFile pf;
    if (!j["field"].is_string()) throw ParseError("\"field\" must be a string");
    pf.field = FieldSpec::parse(j["field"].get<std::string>());
    if (!j["n"].is_number_integer()) throw ParseError("\"n\" must be an integer");
    pf.n = j["n"].get<int>();
    if (pf.n < 2) throw ParseError("\"n\" must be >= 2");
    pf.f = detail::entries_from_json(j["f"], "f", pf.n);
    pf.g = detail::entries_from_json(j["g"], "g", pf.n);
    if (j.contains("name")) pf.name = j["name"].get<std::string>();
    if (j.contains("comment")) pf.comment = j["comment"].get<std::string>();
    return pf;
}

inline PencilFile parse_pencil_file(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        // recover line/column from the byte offset
        std::size_t line = 1, col = 1;
        for (std::size_t k = 0; k < e.byte && k < text.size(); ++k) {
            if (text[k] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw ParseError(std::string("JSON syntax error: ") + e.what(), line, col);
    }
    return pencil_file_from_json(j);
}

inline Json pencil_file_to_json(const PencilFile& pf) {
    Json j;
    j["field"] = pf.field.str();
    j["n"] = pf.n;
    auto entries = [](const std::vector<PencilEntry>& es) {
        Json arr = Json::array();
        for (const auto& e : es) arr.push_back(Json::array({e.i, e.j, e.lit}));
        return arr;
    };
    auto sorted = [](std::vector<PencilEntry> es) {
        std::sort(es.begin(), es.end(), [](const PencilEntry& a, const PencilEntry& b) {
            return std::pair(a.i, a.j) < std::pair(b.i, b.j);
        });
        return es;
    };
    j["f"] = entries(sorted(pf.f));
    j["g"] = entries(sorted(pf.g));
    if (!pf.name.empty()) j["name"] = pf.name;
    if (!pf.comment.empty()) j["comment"] = pf.comment;
    return j;
}

/// Instantiates the typed pencil over the file's field.
template <class Ctx>
Pencil<typename Ctx::Elem> build_pencil(const Ctx& ctx, const PencilFile& pf,
                                        std::int64_t degree_cap = kDefaultDegreeCap) {
    using Elem = typename Ctx::Elem;
    QuadraticForm<Elem> f(pf.n), g(pf.n);
    for (const auto& e : pf.f) f.add_monomial(e.i - 1, e.j - 1, parse_laurent(ctx, e.lit, degree_cap));
    for (const auto& e : pf.g) g.add_monomial(e.i - 1, e.j - 1, parse_laurent(ctx, e.lit, degree_cap));
    return Pencil<Elem>(std::move(f), std::move(g));
}

/// Canonical sparse entries of a quadratic form (monomial coefficients,
/// (i, j) ascending, zero entries omitted). Requires integral entries.
template <CoefficientField F>
std::vector<PencilEntry> entries_of(const QuadraticForm<F>& q) {
    std::vector<PencilEntry> out;
    const auto coeffs = q.monomial_coeffs();
    const auto pairs = monomial_pairs(q.n());
    for (std::size_t k = 0; k < pairs.size(); ++k) {
        if (coeffs[k].is_zero()) continue;
        if (!coeffs[k].is_integral()) throw Error("cannot serialize an entry with a pole at t=0");
        out.push_back({pairs[k].first + 1, pairs[k].second + 1, coeffs[k].str()});
    }
    return out;
}

template <CoefficientField F>
PencilFile pencil_to_file(const Pencil<F>& p, const FieldSpec& fs, std::string name = {},
                          std::string comment = {}) {
    PencilFile pf;
    pf.field = fs;
    pf.n = p.n();
    pf.f = entries_of(p.f());
    pf.g = entries_of(p.g());
    pf.name = std::move(name);
    pf.comment = std::move(comment);
    return pf;
}

}  // namespace pqs
