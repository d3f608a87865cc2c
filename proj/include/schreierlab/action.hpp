#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "schreierlab/detail/numeric.hpp"
#include "schreierlab/errors.hpp"
#include "schreierlab/rng.hpp"

namespace schreierlab {

using Point = std::uint64_t;

enum class Family {
    SymmetricNatural,     // S_{n0} on {0..n0-1}
    SymmetricTuples,      // S_{n0} on ordered r-tuples of distinct points
    CyclicRegular,        // Z_m on itself
    AbelianPowerRegular,  // Z_m^d on itself
    Dihedral,             // D_m on the m vertices of an m-gon
    AffinePrime,          // AGL(1,p) on F_p
    ProjectiveLine,       // PGL(2,p) on P^1(F_p)
};

struct FamilySpec {
    Family family = Family::CyclicRegular;
    std::uint64_t n0 = 0;  // symmetric families
    std::uint64_t r = 0;   // tuple length
    std::uint64_t m = 0;   // modulus
    std::uint64_t d = 0;   // power
    std::uint64_t p = 0;   // prime

    // Grammar: name:key=val[,key=val]*  e.g. "sym:n=30", "abelian:m=2,d=12".
    static FamilySpec parse(std::string_view text);
    std::string to_string() const;
};

// ---------------------------------------------------------------------------
// Element payloads
// ---------------------------------------------------------------------------

struct PermTable {
    std::vector<std::uint32_t> img;  // img[i] = image of i; a bijection
};

struct Residue {
    std::uint64_t v;
};

struct ResidueVec {
    std::vector<std::uint64_t> v;
};

struct DihedralPair {
    std::uint64_t rot;
    std::uint8_t flip;  // 0: p -> p+rot, 1: p -> rot-p
};

struct AffineMap {
    std::uint64_t a, b;  // x -> a*x + b, a != 0 mod p
};

struct ProjMat {
    // Row-major [[e0 e1],[e2 e3]] over F_p, det != 0, canonicalized so the
    // first nonzero entry is 1 (a unique representative per PGL class).
    std::uint64_t e0, e1, e2, e3;
};

struct GroupElement {
    Family family;
    std::variant<PermTable, Residue, ResidueVec, DihedralPair, AffineMap, ProjMat> payload;
};

// ---------------------------------------------------------------------------

namespace detail {

inline void parse_kv(std::string_view text, std::string_view& name,
                     std::vector<std::pair<std::string, std::uint64_t>>& kvs) {
    const auto colon = text.find(':');
    name = text.substr(0, colon);
    if (colon == std::string_view::npos) return;
    std::string_view rest = text.substr(colon + 1);
    while (!rest.empty()) {
        const auto comma = rest.find(',');
        std::string_view item = rest.substr(0, comma);
        const auto eq = item.find('=');
        if (eq == std::string_view::npos || eq == 0 || eq + 1 >= item.size())
            throw InvalidFamilyParams("malformed family parameter '" + std::string(item) +
                                      "' (expected key=val)");
        std::uint64_t value = 0;
        const std::string_view digits = item.substr(eq + 1);
        for (char c : digits) {
            if (c < '0' || c > '9')
                throw InvalidFamilyParams("family parameter value must be a nonnegative integer: '" +
                                          std::string(item) + "'");
            const std::uint64_t next = value * 10 + static_cast<std::uint64_t>(c - '0');
            if (next < value) throw InvalidFamilyParams("family parameter overflows 64 bits");
            value = next;
        }
        kvs.emplace_back(std::string(item.substr(0, eq)), value);
        if (comma == std::string_view::npos) break;
        rest = rest.substr(comma + 1);
    }
}

inline std::uint64_t require_param(const std::vector<std::pair<std::string, std::uint64_t>>& kvs,
                                   const std::string& key, std::string_view family) {
    for (const auto& [k, v] : kvs)
        if (k == key) return v;
    throw InvalidFamilyParams("family '" + std::string(family) + "' requires parameter '" + key + "'");
}

// Ordered r-tuple of distinct values in [0,n0) <-> mixed-radix index.
// Digit i has radix n0-i and equals the rank of tuple[i] among the values
// unused by tuple[0..i-1].
inline std::uint64_t encode_tuple(const std::uint32_t* tuple, std::uint64_t r, std::uint64_t n0) {
    std::uint64_t index = 0;
    for (std::uint64_t i = 0; i < r; ++i) {
        std::uint64_t rank = tuple[i];
        for (std::uint64_t j = 0; j < i; ++j)
            if (tuple[j] < tuple[i]) --rank;
        index = index * (n0 - i) + rank;
    }
    return index;
}

inline void decode_tuple(std::uint64_t index, std::uint64_t r, std::uint64_t n0, std::uint32_t* tuple) {
    // Extract digits least-significant first, then map ranks back to values.
    std::uint64_t digits[16];
    for (std::uint64_t i = r; i-- > 0;) {
        digits[i] = index % (n0 - i);
        index /= (n0 - i);
    }
    for (std::uint64_t i = 0; i < r; ++i) {
        // The rank counts unused values below the target; walk the used ones
        // in increasing order, shifting the candidate upward.
        std::uint32_t used[16];
        std::uint64_t used_count = 0;
        for (std::uint64_t j = 0; j < i; ++j) used[used_count++] = tuple[j];
        std::sort(used, used + used_count);
        std::uint64_t value = digits[i];
        for (std::uint64_t j = 0; j < used_count; ++j)
            if (used[j] <= value) ++value;
        tuple[i] = static_cast<std::uint32_t>(value);
    }
}

} // namespace detail

inline FamilySpec FamilySpec::parse(std::string_view text) {
    std::string_view name;
    std::vector<std::pair<std::string, std::uint64_t>> kvs;
    detail::parse_kv(text, name, kvs);
    FamilySpec spec;
    if (name == "sym") {
        spec.family = Family::SymmetricNatural;
        spec.n0 = detail::require_param(kvs, "n", name);
    } else if (name == "sym-tuples") {
        spec.family = Family::SymmetricTuples;
        spec.n0 = detail::require_param(kvs, "n", name);
        spec.r = detail::require_param(kvs, "r", name);
    } else if (name == "cyclic") {
        spec.family = Family::CyclicRegular;
        spec.m = detail::require_param(kvs, "m", name);
    } else if (name == "abelian") {
        spec.family = Family::AbelianPowerRegular;
        spec.m = detail::require_param(kvs, "m", name);
        spec.d = detail::require_param(kvs, "d", name);
    } else if (name == "dihedral") {
        spec.family = Family::Dihedral;
        spec.m = detail::require_param(kvs, "m", name);
    } else if (name == "affine") {
        spec.family = Family::AffinePrime;
        spec.p = detail::require_param(kvs, "p", name);
    } else if (name == "proj") {
        spec.family = Family::ProjectiveLine;
        spec.p = detail::require_param(kvs, "p", name);
    } else {
        throw InvalidFamilyParams("unknown family '" + std::string(name) +
                                  "' (expected sym, sym-tuples, cyclic, abelian, dihedral, affine, proj)");
    }
    return spec;
}

inline std::string FamilySpec::to_string() const {
    switch (family) {
        case Family::SymmetricNatural: return "sym:n=" + std::to_string(n0);
        case Family::SymmetricTuples:
            return "sym-tuples:n=" + std::to_string(n0) + ",r=" + std::to_string(r);
        case Family::CyclicRegular: return "cyclic:m=" + std::to_string(m);
        case Family::AbelianPowerRegular:
            return "abelian:m=" + std::to_string(m) + ",d=" + std::to_string(d);
        case Family::Dihedral: return "dihedral:m=" + std::to_string(m);
        case Family::AffinePrime: return "affine:p=" + std::to_string(p);
        case Family::ProjectiveLine: return "proj:p=" + std::to_string(p);
    }
    return "?";
}

// ---------------------------------------------------------------------------
// ActionInstance: a concrete transitive action G on [0, degree) with element
// arithmetic under the right-action convention act(compose(g,h), p) =
// act(h, act(g, p)) -- words apply their leftmost factor first.
// ---------------------------------------------------------------------------

class ActionInstance {
public:
    explicit ActionInstance(FamilySpec spec) : spec_(spec) {
        validate_and_fill();
    }

    const FamilySpec& spec() const { return spec_; }
    Family family() const { return spec_.family; }
    std::uint64_t degree() const { return degree_; }
    std::optional<std::uint64_t> group_order() const { return order_; }
    double log_group_order() const { return log_order_; }

    // |G| / n; exact only when the order fits a machine word.
    std::optional<std::uint64_t> stabilizer_order() const {
        if (!order_) return std::nullopt;
        return *order_ / degree_;
    }

    GroupElement identity() const {
        switch (spec_.family) {
            case Family::SymmetricNatural:
            case Family::SymmetricTuples: {
                PermTable t;
                t.img.resize(spec_.n0);
                std::iota(t.img.begin(), t.img.end(), 0u);
                return {spec_.family, std::move(t)};
            }
            case Family::CyclicRegular: return {spec_.family, Residue{0}};
            case Family::AbelianPowerRegular:
                return {spec_.family, ResidueVec{std::vector<std::uint64_t>(spec_.d, 0)}};
            case Family::Dihedral: return {spec_.family, DihedralPair{0, 0}};
            case Family::AffinePrime: return {spec_.family, AffineMap{1, 0}};
            case Family::ProjectiveLine: return {spec_.family, ProjMat{1, 0, 0, 1}};
        }
        throw Error("unreachable");
    }

    Point act(const GroupElement& g, Point pt) const {
        check_family(g);
        switch (spec_.family) {
            case Family::SymmetricNatural:
                return std::get<PermTable>(g.payload).img[pt];
            case Family::SymmetricTuples: {
                const auto& img = std::get<PermTable>(g.payload).img;
                std::uint32_t tuple[16];
                detail::decode_tuple(pt, spec_.r, spec_.n0, tuple);
                for (std::uint64_t i = 0; i < spec_.r; ++i) tuple[i] = img[tuple[i]];
                return detail::encode_tuple(tuple, spec_.r, spec_.n0);
            }
            case Family::CyclicRegular: {
                const auto v = std::get<Residue>(g.payload).v;
                const auto s = pt + v;
                return s >= spec_.m ? s - spec_.m : s;
            }
            case Family::AbelianPowerRegular: {
                const auto& v = std::get<ResidueVec>(g.payload).v;
                // Point index is base-m digits, least significant first.
                std::uint64_t out = 0, mult = 1, rest = pt;
                for (std::uint64_t i = 0; i < spec_.d; ++i) {
                    const std::uint64_t digit = (rest % spec_.m + v[i]) % spec_.m;
                    out += digit * mult;
                    mult *= spec_.m;
                    rest /= spec_.m;
                }
                return out;
            }
            case Family::Dihedral: {
                const auto& e = std::get<DihedralPair>(g.payload);
                if (e.flip) return (e.rot + spec_.m - pt) % spec_.m;
                const auto s = pt + e.rot;
                return s >= spec_.m ? s - spec_.m : s;
            }
            case Family::AffinePrime: {
                const auto& e = std::get<AffineMap>(g.payload);
                return (detail::mulmod(e.a, pt, spec_.p) + e.b) % spec_.p;
            }
            case Family::ProjectiveLine: {
                const auto& e = std::get<ProjMat>(g.payload);
                const std::uint64_t p = spec_.p;
                std::uint64_t num, den;
                if (pt == p) {  // the point at infinity is [1 : 0]
                    num = e.e0;
                    den = e.e2;
                } else {
                    num = (detail::mulmod(e.e0, pt, p) + e.e1) % p;
                    den = (detail::mulmod(e.e2, pt, p) + e.e3) % p;
                }
                if (den == 0) return p;
                return detail::mulmod(num, detail::inv_mod_prime(den, p), p);
            }
        }
        throw Error("unreachable");
    }

    // gh, applying g first: act(compose(g,h), p) == act(h, act(g,p)).
    GroupElement compose(const GroupElement& g, const GroupElement& h) const {
        check_family(g);
        check_family(h);
        switch (spec_.family) {
            case Family::SymmetricNatural:
            case Family::SymmetricTuples: {
                const auto& a = std::get<PermTable>(g.payload).img;
                const auto& b = std::get<PermTable>(h.payload).img;
                PermTable out;
                out.img.resize(a.size());
                for (std::size_t i = 0; i < a.size(); ++i) out.img[i] = b[a[i]];
                return {spec_.family, std::move(out)};
            }
            case Family::CyclicRegular: {
                const auto x = std::get<Residue>(g.payload).v;
                const auto y = std::get<Residue>(h.payload).v;
                return {spec_.family, Residue{(x + y) % spec_.m}};
            }
            case Family::AbelianPowerRegular: {
                const auto& x = std::get<ResidueVec>(g.payload).v;
                const auto& y = std::get<ResidueVec>(h.payload).v;
                ResidueVec out;
                out.v.resize(spec_.d);
                for (std::uint64_t i = 0; i < spec_.d; ++i) out.v[i] = (x[i] + y[i]) % spec_.m;
                return {spec_.family, std::move(out)};
            }
            case Family::Dihedral: {
                const auto& x = std::get<DihedralPair>(g.payload);
                const auto& y = std::get<DihedralPair>(h.payload);
                DihedralPair out;
                out.flip = x.flip ^ y.flip;
                out.rot = y.flip ? (y.rot + spec_.m - x.rot) % spec_.m
                                 : (x.rot + y.rot) % spec_.m;
                return {spec_.family, out};
            }
            case Family::AffinePrime: {
                const auto& x = std::get<AffineMap>(g.payload);
                const auto& y = std::get<AffineMap>(h.payload);
                AffineMap out;
                out.a = detail::mulmod(x.a, y.a, spec_.p);
                out.b = (detail::mulmod(y.a, x.b, spec_.p) + y.b) % spec_.p;
                return {spec_.family, out};
            }
            case Family::ProjectiveLine: {
                // Right action composes as the matrix product h*g.
                const auto& x = std::get<ProjMat>(g.payload);
                const auto& y = std::get<ProjMat>(h.payload);
                const std::uint64_t p = spec_.p;
                ProjMat out;
                out.e0 = (detail::mulmod(y.e0, x.e0, p) + detail::mulmod(y.e1, x.e2, p)) % p;
                out.e1 = (detail::mulmod(y.e0, x.e1, p) + detail::mulmod(y.e1, x.e3, p)) % p;
                out.e2 = (detail::mulmod(y.e2, x.e0, p) + detail::mulmod(y.e3, x.e2, p)) % p;
                out.e3 = (detail::mulmod(y.e2, x.e1, p) + detail::mulmod(y.e3, x.e3, p)) % p;
                canonicalize(out);
                return {spec_.family, out};
            }
        }
        throw Error("unreachable");
    }

    GroupElement invert(const GroupElement& g) const {
        check_family(g);
        switch (spec_.family) {
            case Family::SymmetricNatural:
            case Family::SymmetricTuples: {
                const auto& a = std::get<PermTable>(g.payload).img;
                PermTable out;
                out.img.resize(a.size());
                for (std::size_t i = 0; i < a.size(); ++i) out.img[a[i]] = static_cast<std::uint32_t>(i);
                return {spec_.family, std::move(out)};
            }
            case Family::CyclicRegular: {
                const auto v = std::get<Residue>(g.payload).v;
                return {spec_.family, Residue{v == 0 ? 0 : spec_.m - v}};
            }
            case Family::AbelianPowerRegular: {
                const auto& x = std::get<ResidueVec>(g.payload).v;
                ResidueVec out;
                out.v.resize(spec_.d);
                for (std::uint64_t i = 0; i < spec_.d; ++i) out.v[i] = x[i] == 0 ? 0 : spec_.m - x[i];
                return {spec_.family, std::move(out)};
            }
            case Family::Dihedral: {
                const auto& e = std::get<DihedralPair>(g.payload);
                if (e.flip) return {spec_.family, e};  // reflections are involutions
                return {spec_.family, DihedralPair{e.rot == 0 ? 0 : spec_.m - e.rot, 0}};
            }
            case Family::AffinePrime: {
                const auto& e = std::get<AffineMap>(g.payload);
                AffineMap out;
                out.a = detail::inv_mod_prime(e.a, spec_.p);
                out.b = (spec_.p - detail::mulmod(out.a, e.b, spec_.p)) % spec_.p;
                return {spec_.family, out};
            }
            case Family::ProjectiveLine: {
                const auto& e = std::get<ProjMat>(g.payload);
                const std::uint64_t p = spec_.p;
                // Adjugate equals the inverse up to scalar.
                ProjMat out{e.e3, (p - e.e1) % p, (p - e.e2) % p, e.e0};
                canonicalize(out);
                return {spec_.family, out};
            }
        }
        throw Error("unreachable");
    }

    // Exactly uniform over G.
    GroupElement sample_uniform(SeededRng& rng) const {
        switch (spec_.family) {
            case Family::SymmetricNatural:
            case Family::SymmetricTuples: {
                PermTable t;
                t.img.resize(spec_.n0);
                std::iota(t.img.begin(), t.img.end(), 0u);
                for (std::uint64_t i = spec_.n0; i > 1; --i) {
                    const std::uint64_t j = rng.next_below(i);
                    std::swap(t.img[i - 1], t.img[j]);
                }
                return {spec_.family, std::move(t)};
            }
            case Family::CyclicRegular:
                return {spec_.family, Residue{rng.next_below(spec_.m)}};
            case Family::AbelianPowerRegular: {
                ResidueVec out;
                out.v.resize(spec_.d);
                for (auto& c : out.v) c = rng.next_below(spec_.m);
                return {spec_.family, std::move(out)};
            }
            case Family::Dihedral:
                return {spec_.family,
                        DihedralPair{rng.next_below(spec_.m), static_cast<std::uint8_t>(rng.next_below(2))}};
            case Family::AffinePrime:
                return {spec_.family, AffineMap{1 + rng.next_below(spec_.p - 1), rng.next_below(spec_.p)}};
            case Family::ProjectiveLine: {
                // Rejection over GL(2,p); every PGL class has exactly p-1
                // GL preimages, so the canonicalized draw is uniform on PGL.
                const std::uint64_t p = spec_.p;
                for (;;) {
                    ProjMat c{rng.next_below(p), rng.next_below(p), rng.next_below(p), rng.next_below(p)};
                    const std::uint64_t det =
                        (detail::mulmod(c.e0, c.e3, p) + p - detail::mulmod(c.e1, c.e2, p)) % p;
                    if (det == 0) continue;
                    canonicalize(c);
                    return {spec_.family, c};
                }
            }
        }
        throw Error("unreachable");
    }

    // table[p] = act(g, p); the fastest apply for BFS.
    std::vector<std::uint32_t> materialize(const GroupElement& g) const {
        check_family(g);
        if (spec_.family == Family::SymmetricNatural)
            return std::get<PermTable>(g.payload).img;
        std::vector<std::uint32_t> table(degree_);
        for (std::uint64_t pt = 0; pt < degree_; ++pt)
            table[pt] = static_cast<std::uint32_t>(act(g, pt));
        return table;
    }

    // Every element exactly once. Throws BudgetExceeded (carrying |G|, or
    // UINT64_MAX when the order overflows a word) if |G| > budget.
    std::vector<GroupElement> enumerate_group(std::uint64_t budget) const {
        if (!order_)
            throw BudgetExceeded(UINT64_MAX, "group order exceeds 64 bits; enumeration refused");
        if (*order_ > budget)
            throw BudgetExceeded(*order_, "group order " + std::to_string(*order_) +
                                              " exceeds enumeration budget " + std::to_string(budget));
        std::vector<GroupElement> out;
        out.reserve(*order_);
        switch (spec_.family) {
            case Family::SymmetricNatural:
            case Family::SymmetricTuples: {
                PermTable t;
                t.img.resize(spec_.n0);
                std::iota(t.img.begin(), t.img.end(), 0u);
                do {
                    out.push_back({spec_.family, t});
                } while (std::next_permutation(t.img.begin(), t.img.end()));
                break;
            }
            case Family::CyclicRegular:
                for (std::uint64_t v = 0; v < spec_.m; ++v) out.push_back({spec_.family, Residue{v}});
                break;
            case Family::AbelianPowerRegular: {
                ResidueVec vec{std::vector<std::uint64_t>(spec_.d, 0)};
                for (;;) {
                    out.push_back({spec_.family, vec});
                    std::uint64_t i = 0;
                    while (i < spec_.d && ++vec.v[i] == spec_.m) vec.v[i++] = 0;
                    if (i == spec_.d) break;
                }
                break;
            }
            case Family::Dihedral:
                for (std::uint64_t f = 0; f < 2; ++f)
                    for (std::uint64_t s = 0; s < spec_.m; ++s)
                        out.push_back({spec_.family, DihedralPair{s, static_cast<std::uint8_t>(f)}});
                break;
            case Family::AffinePrime:
                for (std::uint64_t a = 1; a < spec_.p; ++a)
                    for (std::uint64_t b = 0; b < spec_.p; ++b)
                        out.push_back({spec_.family, AffineMap{a, b}});
                break;
            case Family::ProjectiveLine: {
                // Canonical representatives are exactly the matrices whose
                // first nonzero entry is 1.
                const std::uint64_t p = spec_.p;
                for (std::uint64_t e0 = 0; e0 < p; ++e0)
                    for (std::uint64_t e1 = 0; e1 < p; ++e1)
                        for (std::uint64_t e2 = 0; e2 < p; ++e2)
                            for (std::uint64_t e3 = 0; e3 < p; ++e3) {
                                const std::uint64_t det =
                                    (detail::mulmod(e0, e3, p) + p - detail::mulmod(e1, e2, p)) % p;
                                if (det == 0) continue;
                                const std::uint64_t first =
                                    e0 != 0 ? e0 : (e1 != 0 ? e1 : (e2 != 0 ? e2 : e3));
                                if (first != 1) continue;
                                out.push_back({spec_.family, ProjMat{e0, e1, e2, e3}});
                            }
                break;
            }
        }
        return out;
    }

private:
    FamilySpec spec_;
    std::uint64_t degree_ = 0;
    std::optional<std::uint64_t> order_;
    double log_order_ = 0.0;

    void check_family(const GroupElement& g) const {
        if (g.family != spec_.family)
            throw FamilyMismatch("group element belongs to a different family");
    }

    void canonicalize(ProjMat& c) const {
        const std::uint64_t p = spec_.p;
        const std::uint64_t first = c.e0 != 0 ? c.e0 : (c.e1 != 0 ? c.e1 : (c.e2 != 0 ? c.e2 : c.e3));
        const std::uint64_t inv = detail::inv_mod_prime(first, p);
        c.e0 = detail::mulmod(c.e0, inv, p);
        c.e1 = detail::mulmod(c.e1, inv, p);
        c.e2 = detail::mulmod(c.e2, inv, p);
        c.e3 = detail::mulmod(c.e3, inv, p);
    }

    void validate_and_fill() {
        switch (spec_.family) {
            case Family::SymmetricNatural: {
                if (spec_.n0 < 1) throw InvalidFamilyParams("sym requires n >= 1");
                degree_ = spec_.n0;
                order_ = detail::factorial_exact(spec_.n0);
                log_order_ = detail::log_factorial(spec_.n0);
                break;
            }
            case Family::SymmetricTuples: {
                if (spec_.n0 < 1) throw InvalidFamilyParams("sym-tuples requires n >= 1");
                if (spec_.r < 1 || spec_.r > spec_.n0)
                    throw InvalidFamilyParams("sym-tuples requires 1 <= r <= n");
                if (spec_.r > 15) throw InvalidFamilyParams("sym-tuples supports r <= 15");
                auto deg = detail::falling_factorial(spec_.n0, spec_.r);
                if (!deg) throw InvalidFamilyParams("sym-tuples degree overflows 64 bits");
                degree_ = *deg;
                order_ = detail::factorial_exact(spec_.n0);
                log_order_ = detail::log_factorial(spec_.n0);
                break;
            }
            case Family::CyclicRegular: {
                if (spec_.m < 1) throw InvalidFamilyParams("cyclic requires m >= 1");
                degree_ = spec_.m;
                order_ = spec_.m;
                log_order_ = std::log(static_cast<double>(spec_.m));
                break;
            }
            case Family::AbelianPowerRegular: {
                if (spec_.m < 1 || spec_.d < 1)
                    throw InvalidFamilyParams("abelian requires m >= 1 and d >= 1");
                auto deg = detail::checked_pow(spec_.m, spec_.d);
                if (!deg) throw InvalidFamilyParams("abelian degree m^d overflows 64 bits");
                degree_ = *deg;
                order_ = *deg;
                log_order_ = static_cast<double>(spec_.d) * std::log(static_cast<double>(spec_.m));
                break;
            }
            case Family::Dihedral: {
                if (spec_.m < 1) throw InvalidFamilyParams("dihedral requires m >= 1");
                degree_ = spec_.m;
                order_ = 2 * spec_.m;
                log_order_ = std::log(2.0 * static_cast<double>(spec_.m));
                break;
            }
            case Family::AffinePrime: {
                if (!detail::is_prime(spec_.p))
                    throw InvalidFamilyParams("affine requires a prime p, got " + std::to_string(spec_.p));
                degree_ = spec_.p;
                order_ = detail::checked_mul(spec_.p, spec_.p - 1);
                log_order_ = std::log(static_cast<double>(spec_.p)) +
                             std::log(static_cast<double>(spec_.p - 1));
                break;
            }
            case Family::ProjectiveLine: {
                if (!detail::is_prime(spec_.p))
                    throw InvalidFamilyParams("proj requires a prime p, got " + std::to_string(spec_.p));
                degree_ = spec_.p + 1;
                auto sq = detail::checked_mul(spec_.p, spec_.p);
                order_ = sq ? detail::checked_mul(*sq - 1, spec_.p) : std::nullopt;
                log_order_ = 3.0 * std::log(static_cast<double>(spec_.p)) +
                             std::log1p(-1.0 / (static_cast<double>(spec_.p) * spec_.p));
                break;
            }
        }
        if (degree_ == 0) throw InvalidFamilyParams("zero-size domain");
        if (degree_ > (1ull << 31))
            throw InvalidFamilyParams("degree " + std::to_string(degree_) +
                                      " exceeds the supported maximum 2^31");
    }
};

inline ActionInstance build_action(const FamilySpec& spec) { return ActionInstance(spec); }

inline ActionInstance build_action(std::string_view spec_text) {
    return ActionInstance(FamilySpec::parse(spec_text));
}

} // namespace schreierlab
