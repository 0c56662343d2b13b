#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace semilab {

// Arbitrary-precision natural number, base 10^9 limbs, little-endian. Only
// the operations the partition recurrence needs: add, subtract (minuend must
// dominate), compare, and conversions.
class BigNat {
public:
    BigNat() = default;
    explicit BigNat(std::uint64_t value);

    BigNat& operator+=(const BigNat& rhs);
    // Requires *this >= rhs; throws InvariantViolation otherwise.
    BigNat& operator-=(const BigNat& rhs);

    bool is_zero() const { return limbs_.empty(); }

    // -1, 0, +1
    int compare(const BigNat& rhs) const;
    bool operator==(const BigNat& rhs) const { return compare(rhs) == 0; }
    bool operator<(const BigNat& rhs) const { return compare(rhs) < 0; }
    bool operator<=(const BigNat& rhs) const { return compare(rhs) <= 0; }

    // Loses precision past 2^53; returns +inf on overflow (not reachable for
    // the partition sizes this project touches).
    double to_double() const;

    std::string to_string() const;

private:
    static constexpr std::uint32_t kBase = 1000000000u;
    std::vector<std::uint32_t> limbs_;
};

} // namespace semilab
