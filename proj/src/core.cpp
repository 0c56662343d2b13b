#include "semilab/core.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>
#include <numeric>

#include "semilab/errors.hpp"

namespace semilab {

namespace {
constexpr std::int64_t kUnset = std::numeric_limits<std::int64_t>::max();
} // namespace

GeneratorSet normalize_generators(std::span<const std::int64_t> raw) {
    if (raw.empty()) {
        throw InvalidGenerators("generator list is empty");
    }
    GeneratorSet out;
    out.elements.assign(raw.begin(), raw.end());
    for (std::int64_t a : out.elements) {
        if (a < 1) {
            throw InvalidGenerators("generators must be >= 1, got " + std::to_string(a));
        }
        if (a > kMaxGenerator) {
            throw InvalidGenerators("generator " + std::to_string(a) +
                                    " exceeds the 2^31 overflow guard");
        }
    }
    std::sort(out.elements.begin(), out.elements.end());
    out.elements.erase(std::unique(out.elements.begin(), out.elements.end()),
                       out.elements.end());
    out.gcd = 0;
    for (std::int64_t a : out.elements) out.gcd = std::gcd(out.gcd, a);
    return out;
}

AperyTable apery_set(const GeneratorSet& gens) {
    if (gens.gcd != 1) {
        throw NotCofinite("apery_set requires gcd(generators) = 1, got gcd " +
                          std::to_string(gens.gcd));
    }
    AperyTable ap;
    ap.q = gens.elements.front();
    ap.w.assign(static_cast<std::size_t>(ap.q), kUnset);
    ap.w[0] = 0;
    if (ap.q == 1) return ap;

    // Generators congruent to 0 mod q can never improve an entry.
    std::vector<std::int64_t> useful;
    for (std::int64_t a : gens.elements) {
        if (a % ap.q != 0) useful.push_back(a);
    }

    bool changed = true;
    while (changed) {
        changed = false;
        for (std::int64_t r = 0; r < ap.q; ++r) {
            const std::int64_t base = ap.w[static_cast<std::size_t>(r)];
            if (base == kUnset) continue;
            for (std::int64_t a : useful) {
                const std::int64_t to = (r + a) % ap.q;
                const std::int64_t cand = base + a;
                if (cand < ap.w[static_cast<std::size_t>(to)]) {
                    ap.w[static_cast<std::size_t>(to)] = cand;
                    changed = true;
                }
            }
        }
    }
    return ap;
}

std::int64_t frobenius(const AperyTable& ap) {
    std::int64_t max_w = 0;
    for (std::int64_t v : ap.w) max_w = std::max(max_w, v);
    return max_w - ap.q;
}

std::int64_t genus(const AperyTable& ap) {
    std::int64_t g = 0;
    for (std::int64_t r = 0; r < ap.q; ++r) {
        g += (ap.w[static_cast<std::size_t>(r)] - r) / ap.q;
    }
    return g;
}

bool membership(const AperyTable& ap, std::int64_t n) {
    if (n < 0) return false;
    return n >= ap.w[static_cast<std::size_t>(n % ap.q)];
}

std::vector<std::int64_t> minimal_generators(const AperyTable& ap) {
    if (ap.q == 1) return {1};
    std::vector<std::int64_t> out;
    out.push_back(ap.q); // q < any sum of two nonzero elements, always minimal
    for (std::int64_t r = 1; r < ap.q; ++r) {
        const std::int64_t v = ap.w[static_cast<std::size_t>(r)];
        bool decomposable = false;
        for (std::int64_t r1 = 1; r1 < ap.q && !decomposable; ++r1) {
            const std::int64_t r2 = (r - r1 + ap.q) % ap.q;
            if (r2 == 0) continue;
            decomposable = ap.w[static_cast<std::size_t>(r1)] +
                               ap.w[static_cast<std::size_t>(r2)] ==
                           v;
        }
        if (!decomposable) out.push_back(v);
    }
    std::sort(out.begin(), out.end());
    return out;
}

void InvariantsRecord::validate() const {
    const auto fail = [this](const char* what) {
        throw InvariantViolation(std::string("invariants record violates ") + what +
                                 ": " + to_string());
    };
    if (frobenius < -1) fail("F >= -1");
    if (genus < 0) fail("g >= 0");
    if (embedding_dim < 1) fail("e >= 1");
    if (multiplicity < 1) fail("q >= 1");
    if (frobenius + 1 > 2 * genus) fail("(F+1)/2 <= g");
    if (genus > frobenius + 1) fail("g <= F+1");
    if (embedding_dim > frobenius + 2) fail("e <= F+2");
    if (embedding_dim > multiplicity) fail("e <= q");
}

std::string InvariantsRecord::to_string() const {
    char buf[128];
    std::snprintf(buf, sizeof(buf), "F=%lld g=%lld e=%lld q=%lld",
                  static_cast<long long>(frobenius), static_cast<long long>(genus),
                  static_cast<long long>(embedding_dim),
                  static_cast<long long>(multiplicity));
    return buf;
}

InvariantsRecord invariants(const GeneratorSet& gens) {
    if (gens.gcd != 1) {
        throw NotCofinite("invariants require gcd(generators) = 1, got gcd " +
                          std::to_string(gens.gcd));
    }
    const AperyTable ap = apery_set(gens);
    InvariantsRecord rec;
    rec.frobenius = frobenius(ap);
    rec.genus = genus(ap);
    rec.embedding_dim = static_cast<std::int64_t>(minimal_generators(ap).size());
    rec.multiplicity = ap.q;
    rec.validate();
    return rec;
}

void PrefixCloser::extend(std::span<const std::int64_t> gens, std::int64_t new_bound) {
    if (new_bound < 0) {
        throw InvalidParameter("prefix bound must be >= 0");
    }
    std::size_t known = 0;
    for (std::int64_t a : gens) {
        if (a <= bound_) ++known;
    }
    if (known != gens_.size()) {
        throw InvariantViolation("prefix closure extended with a generator at or "
                                 "below the already-filled bound");
    }
    gens_.assign(gens.begin(), gens.end());
    const std::int64_t old_bound = bound_;
    member_.resize(static_cast<std::size_t>(new_bound) + 1, 0);
    member_[0] = 1;
    for (std::int64_t n = std::max<std::int64_t>(old_bound + 1, 1); n <= new_bound; ++n) {
        for (std::int64_t a : gens_) {
            if (a > n) break;
            if (member_[static_cast<std::size_t>(n - a)]) {
                member_[static_cast<std::size_t>(n)] = 1;
                break;
            }
        }
    }
    bound_ = new_bound;
}

MembershipTable semigroup_prefix(const GeneratorSet& gens, std::int64_t bound) {
    PrefixCloser closer;
    closer.extend(gens.elements, bound);
    MembershipTable table;
    table.bound = bound;
    table.member = closer.table();
    return table;
}

} // namespace semilab
