#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace semilab {

// Generators and semigroup elements are confined to [1, 2^31] so that every
// Apery value (bounded by q * max_generator) fits a signed 64-bit integer.
inline constexpr std::int64_t kMaxGenerator = std::int64_t{1} << 31;

// A finite generating set: sorted, deduplicated, with its gcd. The generated
// semigroup <A> is co-finite exactly when gcd = 1.
struct GeneratorSet {
    std::vector<std::int64_t> elements;
    std::int64_t gcd = 0;
};

// Sort, deduplicate and gcd the raw input. Rejects empty input, entries < 1,
// and entries past the overflow guard. No redundancy elimination happens
// here; minimal generators are a separate computation.
GeneratorSet normalize_generators(std::span<const std::int64_t> raw);

// Apery table of S with respect to its multiplicity q = min(A): for each
// residue r mod q, w[r] is the least element of S congruent to r. This is the
// canonical finite representation: membership, Frobenius number, genus and
// the minimal generating set all read off it.
struct AperyTable {
    std::int64_t q = 0;
    std::vector<std::int64_t> w;
};

// Requires gcd = 1 (throws NotCofinite otherwise). Round-robin relaxation
// over residue classes: repeatedly relax w[(r + a) mod q] <= w[r] + a for
// each generator a until a fixpoint. Values only decrease, so termination is
// guaranteed; typical pass counts are small.
AperyTable apery_set(const GeneratorSet& gens);

// Largest gap, max_r w[r] - q. Equals -1 when S is all of Z>=0.
std::int64_t frobenius(const AperyTable& ap);

// Number of gaps, sum_r (w[r] - r) / q. Each summand is an exact integer
// since w[r] = r (mod q).
std::int64_t genus(const AperyTable& ap);

// n in S iff n >= 0 and n >= w[n mod q].
bool membership(const AperyTable& ap, std::int64_t n);

// The unique minimal generating set: elements of S \ {0} that are not a sum
// of two nonzero elements of S. Candidates are restricted to {q} and the
// nonzero Apery values; a candidate w[r] decomposes iff w[r1] + w[r2] = w[r]
// for some nonzero residues r1 + r2 = r (mod q), which is the decomposition
// scan over S collapsed along residue classes.
std::vector<std::int64_t> minimal_generators(const AperyTable& ap);

// The four headline invariants of one semigroup.
struct InvariantsRecord {
    std::int64_t frobenius = -1;
    std::int64_t genus = 0;
    std::int64_t embedding_dim = 1;
    std::int64_t multiplicity = 1;

    // Enforces (F+1)/2 <= g <= F+1, e <= F+2 and e <= q. Throws
    // InvariantViolation; every construction path calls this.
    void validate() const;

    // "F=<int> g=<int> e=<int> q=<int>"
    std::string to_string() const;
};

// Full invariant computation through the Apery path. Requires gcd = 1.
InvariantsRecord invariants(const GeneratorSet& gens);

// Boolean table of <A> restricted to [0, bound]. Well-defined for any
// generator set, co-finite or not.
struct MembershipTable {
    std::int64_t bound = 0;
    std::vector<std::uint8_t> member;

    bool is_member(std::int64_t n) const {
        return n >= 0 && n <= bound && member[static_cast<std::size_t>(n)] != 0;
    }
};

// Dynamic-programming closure: member[n] is true iff n is a nonnegative
// integer combination of the generators.
MembershipTable semigroup_prefix(const GeneratorSet& gens, std::int64_t bound);

// Incremental closure table used where the bound grows by doubling. Extending
// the bound only appends: generators discovered later are larger than the old
// bound, so previously filled entries stay valid.
class PrefixCloser {
public:
    // gens must be sorted ascending and unique, must contain every generator
    // passed previously, and any new generator must exceed the old bound.
    void extend(std::span<const std::int64_t> gens, std::int64_t new_bound);

    std::int64_t bound() const { return bound_; }
    const std::vector<std::uint8_t>& table() const { return member_; }
    bool is_member(std::int64_t n) const {
        return n >= 0 && n <= bound_ && member_[static_cast<std::size_t>(n)] != 0;
    }

private:
    std::vector<std::uint8_t> member_;
    std::vector<std::int64_t> gens_;
    std::int64_t bound_ = -1;
};

} // namespace semilab
