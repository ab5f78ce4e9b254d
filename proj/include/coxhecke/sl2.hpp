#pragma once

// SL2 mirror recursion. E^0_l is the Weyl character of highest weight l;
// E^{k+1}_l is obtained from E^k by reflecting the block index floor(l/p^k)
// through the mirrors p-1, 2p-1, 3p-1, ... and alternating signs.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "coxhecke/errors.hpp"
#include "coxhecke/laurent.hpp"

namespace coxhecke {

/// Integer combination of Weyl characters: weight -> nonzero coefficient.
struct CharCombo {
    std::map<std::uint64_t, Coeff> coeffs;

    static CharCombo unit(std::uint64_t weight) {
        CharCombo c;
        c.coeffs[weight] = 1;
        return c;
    }

    void add_scaled(const CharCombo& o, Coeff s) {
        for (const auto& [w, c] : o.coeffs) {
            Coeff nc = checked_add(coeffs[w], checked_mul(c, s));
            if (nc == 0)
                coeffs.erase(w);
            else
                coeffs[w] = nc;
        }
    }

    /// sum c * (weight + 1)
    Coeff dimension() const {
        Coeff d = 0;
        for (const auto& [w, c] : coeffs) d = checked_add(d, checked_mul(c, static_cast<Coeff>(w + 1)));
        return d;
    }

    Coeff coefficient(std::uint64_t weight) const {
        auto it = coeffs.find(weight);
        return it == coeffs.end() ? 0 : it->second;
    }

    friend bool operator==(const CharCombo&, const CharCombo&) = default;
};

inline bool is_prime(std::uint64_t p) {
    if (p < 2) return false;
    for (std::uint64_t d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

/// Memoizing evaluator for one p. Not thread-safe; use one per thread.
class MirrorRecursion {
public:
    explicit MirrorRecursion(std::uint64_t p) : p_(p) {
        if (p < 2) throw InvalidArgument("p must be at least 2");
    }

    std::uint64_t p() const { return p_; }

    /// Indices r_0 = j > r_1 > ... obtained by repeated reflection in the
    /// largest mirror below; empty chain tail once below p.
    std::vector<std::uint64_t> chain(std::uint64_t j) const {
        std::vector<std::uint64_t> out{j};
        if (j % p_ == p_ - 1) return out;
        while (j >= p_) {
            std::uint64_t mirror = p_ * (j / p_) - 1;
            j = 2 * mirror - j;
            out.push_back(j);
        }
        return out;
    }

    const CharCombo& stage(unsigned k, std::uint64_t lambda) {
        auto key = std::make_pair(k, lambda);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        CharCombo result;
        if (k == 0) {
            result = CharCombo::unit(lambda);
        } else {
            const std::uint64_t block = power(k - 1);
            const std::uint64_t j = lambda / block;
            const std::uint64_t t = lambda % block;
            auto idx = chain(j);
            Coeff sign = 1;
            for (auto jr : idx) {
                result.add_scaled(stage(k - 1, jr * block + t), sign);
                sign = -sign;
            }
        }
        return memo_.emplace(key, std::move(result)).first->second;
    }

    /// Smallest k with lambda < (p-1) p^k.
    unsigned stable_stage(std::uint64_t lambda) const {
        unsigned k = 0;
        while (lambda >= (p_ - 1) * power(k)) ++k;
        return k;
    }

    CharCombo infinity(std::uint64_t lambda) {
        unsigned k = stable_stage(lambda);
        CharCombo e = stage(k, lambda);
        if (!(e == stage(k + 1, lambda)))
            throw StabilizationFailure("E^" + std::to_string(k) + " and E^" + std::to_string(k + 1) +
                                       " differ at weight " + std::to_string(lambda));
        return e;
    }

private:
    std::uint64_t power(unsigned k) const {
        std::uint64_t r = 1;
        for (unsigned i = 0; i < k; ++i) {
            if (r > UINT64_MAX / p_) throw ArithmeticOverflow("p^k overflows");
            r *= p_;
        }
        return r;
    }

    std::uint64_t p_;
    std::map<std::pair<unsigned, std::uint64_t>, CharCombo> memo_;
};

inline CharCombo e_stage(std::uint64_t p, unsigned k, std::uint64_t lambda) {
    MirrorRecursion r(p);
    return r.stage(k, lambda);
}

inline CharCombo e_infinity(std::uint64_t p, std::uint64_t lambda) {
    MirrorRecursion r(p);
    return r.infinity(lambda);
}

/// prod over base-p digits of (digit + 1).
inline Coeff digit_product_dim(std::uint64_t p, std::uint64_t lambda) {
    if (p < 2) throw InvalidArgument("p must be at least 2");
    Coeff d = 1;
    while (lambda > 0) {
        d = checked_mul(d, static_cast<Coeff>(lambda % p + 1));
        lambda /= p;
    }
    return d;
}

inline std::vector<Coeff> stage_dimension_row(std::uint64_t p, unsigned k, std::uint64_t max_weight) {
    MirrorRecursion r(p);
    std::vector<Coeff> row;
    for (std::uint64_t l = 0; l <= max_weight; ++l) row.push_back(r.stage(k, l).dimension());
    return row;
}

} // namespace coxhecke
