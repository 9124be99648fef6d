#pragma once

#include "codegraph/matrix.hpp"

#include <atomic>
#include <optional>
#include <string>
#include <vector>

namespace codegraph {

// Dual minimum distance together with a witness: a smallest set of
// generator-matrix columns that is linearly dependent.
struct DualDistanceProfile {
    int d_perp = 0;
    std::vector<int> witness_columns; // ascending column indices, size d_perp
};

// An [n, k] linear code over GF(q), held in canonical (RREF) generator form.
// Two codes are equal iff their canonical generator matrices are equal.
class LinearCode {
public:
    LinearCode() = default;

    // Canonicalizes the row space of `gen`; requires 0 < rank < cols.
    static LinearCode from_matrix(const MatGF& gen);

    int n() const { return gen_.cols(); }
    int k() const { return gen_.rows(); }
    int q() const { return gen_.field()->q(); }
    const MatGF& generator() const { return gen_; }
    const FieldPtr& field() const { return gen_.field(); }

    // Minimum number of linearly dependent generator columns, in [1, k+1]
    // (columns of a k x n matrix of rank k; any k+1 of them are dependent).
    // Computed on first use and cached.
    int dual_distance() const;
    DualDistanceProfile dual_distance_profile() const;

    // Membership in the family of [n, k] codes with dual distance >= t + 1.
    // t = 0 accepts every code; t may not exceed k.
    bool in_class(int t) const;

    // The [n, n-k] dual code, generated by the kernel of the generator.
    LinearCode dual_code() const;

    // The (k-1)-dimensional subcode whose kernel functional is the
    // projective point `kernel_point` (a length-k coordinate vector, not
    // all zero). Distinct projective points give distinct subcodes.
    // Returns nullopt when k == 1 (the only proper subcode is zero).
    std::optional<LinearCode> subcode_by_kernel(const std::vector<GfElem>& kernel_point) const;

    // All (q^k - 1)/(q - 1) hyperplane subcodes, in the pinned order of
    // projective points of the kernel space (see saturation module).
    std::vector<LinearCode> all_subcodes() const;

    bool operator==(const LinearCode& o) const { return gen_ == o.gen_; }
    bool operator!=(const LinearCode& o) const { return !(*this == o); }

    LinearCode(const LinearCode& o);
    LinearCode& operator=(const LinearCode& o);
    LinearCode(LinearCode&& o) noexcept;
    LinearCode& operator=(LinearCode&& o) noexcept;

private:
    MatGF gen_; // always in RREF with full row rank
    // d_perp cache: 0 = unknown; safe to race, all writers store one value.
    mutable std::atomic<int> dperp_cache_{0};
};

std::string code_to_json(const LinearCode& c); // {"q","n","k","gen"}

} // namespace codegraph
