#include "semilab/bignat.hpp"

#include <cstdio>

#include "semilab/errors.hpp"

namespace semilab {

BigNat::BigNat(std::uint64_t value) {
    while (value > 0) {
        limbs_.push_back(static_cast<std::uint32_t>(value % kBase));
        value /= kBase;
    }
}

BigNat& BigNat::operator+=(const BigNat& rhs) {
    const std::size_t n = std::max(limbs_.size(), rhs.limbs_.size());
    limbs_.resize(n, 0);
    std::uint32_t carry = 0;
    for (std::size_t i = 0; i < n; ++i) {
        std::uint64_t sum = static_cast<std::uint64_t>(limbs_[i]) + carry;
        if (i < rhs.limbs_.size()) sum += rhs.limbs_[i];
        limbs_[i] = static_cast<std::uint32_t>(sum % kBase);
        carry = static_cast<std::uint32_t>(sum / kBase);
    }
    if (carry) limbs_.push_back(carry);
    return *this;
}

BigNat& BigNat::operator-=(const BigNat& rhs) {
    if (compare(rhs) < 0) {
        throw InvariantViolation("BigNat subtraction would go negative");
    }
    std::int64_t borrow = 0;
    for (std::size_t i = 0; i < limbs_.size(); ++i) {
        std::int64_t diff = static_cast<std::int64_t>(limbs_[i]) - borrow;
        if (i < rhs.limbs_.size()) diff -= rhs.limbs_[i];
        if (diff < 0) {
            diff += kBase;
            borrow = 1;
        } else {
            borrow = 0;
        }
        limbs_[i] = static_cast<std::uint32_t>(diff);
    }
    while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
    return *this;
}

int BigNat::compare(const BigNat& rhs) const {
    if (limbs_.size() != rhs.limbs_.size()) {
        return limbs_.size() < rhs.limbs_.size() ? -1 : 1;
    }
    for (std::size_t i = limbs_.size(); i-- > 0;) {
        if (limbs_[i] != rhs.limbs_[i]) {
            return limbs_[i] < rhs.limbs_[i] ? -1 : 1;
        }
    }
    return 0;
}

double BigNat::to_double() const {
    double value = 0.0;
    for (std::size_t i = limbs_.size(); i-- > 0;) {
        value = value * static_cast<double>(kBase) + static_cast<double>(limbs_[i]);
    }
    return value;
}

std::string BigNat::to_string() const {
    if (limbs_.empty()) return "0";
    std::string out = std::to_string(limbs_.back());
    char buf[16];
    for (std::size_t i = limbs_.size() - 1; i-- > 0;) {
        std::snprintf(buf, sizeof(buf), "%09u", limbs_[i]);
        out += buf;
    }
    return out;
}

} // namespace semilab
