#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace codegraph {

// A field element is an integer index into the owning Field's tables.
// 0 is the additive identity and 1 the multiplicative identity.
using GfElem = std::uint8_t;

inline constexpr int kMaxFieldOrder = 64;

// GF(p^e) with full arithmetic tables, q = p^e <= 64.
//
// For e > 1 an element index encodes the coefficient vector of its residue
// polynomial in base p (the coefficient of x^i is the i-th base-p digit).
// The modulus is the first irreducible monic polynomial
// x^e + c_{e-1}x^{e-1} + ... + c_0 in ascending order of the integer
// encoding c_0 + c_1 p + ... + c_{e-1} p^{e-1}, so a given (p, e) always
// yields the same field tables.
class Field {
public:
    static std::shared_ptr<const Field> make(int p, int e);

    int p() const { return p_; }
    int e() const { return e_; }
    int q() const { return q_; }

    // Monic modulus as coefficient list c_0..c_e (c_e = 1); size e+1.
    // For e == 1 this is {0, 1}, i.e. the polynomial x.
    const std::vector<GfElem>& modulus() const { return modulus_; }

    GfElem add(GfElem a, GfElem b) const { return add_[idx(a, b)]; }
    GfElem sub(GfElem a, GfElem b) const { return add_[idx(a, neg_[b])]; }
    GfElem mul(GfElem a, GfElem b) const { return mul_[idx(a, b)]; }
    GfElem neg(GfElem a) const { return neg_[a]; }
    GfElem inv(GfElem a) const; // throws std::domain_error on 0
    GfElem div(GfElem a, GfElem b) const { return mul(a, inv(b)); }

    // a^m with pow(a, 0) == 1 for every a (empty product convention).
    GfElem pow(GfElem a, std::uint64_t m) const;

    // x -> x^p, the generating field automorphism.
    GfElem frobenius(GfElem a) const { return pow(a, static_cast<std::uint64_t>(p_)); }

    // Smallest element index of multiplicative order q-1 (1 for GF(2)).
    GfElem primitive_element() const { return primitive_; }

    std::string label() const { return "GF(" + std::to_string(q_) + ")"; }

    // Raw table access for hot loops.
    const GfElem* add_table() const { return add_.data(); }
    const GfElem* mul_table() const { return mul_.data(); }

private:
    Field() = default;
    std::size_t idx(GfElem a, GfElem b) const {
        return static_cast<std::size_t>(a) * q_ + b;
    }

    int p_ = 0, e_ = 0, q_ = 0;
    std::vector<GfElem> modulus_;
    std::vector<GfElem> add_, mul_, neg_, inv_;
    GfElem primitive_ = 1;
};

using FieldPtr = std::shared_ptr<const Field>;

// Validates p prime, e >= 1, p^e <= 64. Throws std::invalid_argument.
FieldPtr make_field(int p, int e);

// Factors q as p^e (q must be a prime power <= 64) and builds the field.
FieldPtr field_for_order(int q);

// Serialized form: {"p":..., "e":..., "modulus":[...]}.
std::string field_to_json(const Field& f);

} // namespace codegraph
