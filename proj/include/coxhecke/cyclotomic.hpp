#pragma once

// Exact arithmetic in Z[zeta_n] = Z[x] / Phi_n(x). Elements are dense
// coefficient vectors of length deg Phi_n, so two elements are equal iff
// their vectors are equal.

#include <cstdint>
#include <map>
#include <mutex>
#include <numeric>
#include <vector>

#include "coxhecke/laurent.hpp"

namespace coxhecke {

using IntPoly = std::vector<Coeff>;  // ascending coefficients

namespace detail {

// a / b for monic b dividing a exactly.
inline IntPoly exact_divide(IntPoly a, const IntPoly& b) {
    const std::size_t db = b.size() - 1;
    IntPoly quot(a.size() - db, 0);
    for (std::size_t k = a.size(); k-- > db;) {
        Coeff c = a[k];
        quot[k - db] = c;
        if (c == 0) continue;
        for (std::size_t i = 0; i <= db; ++i) a[k - db + i] = checked_add(a[k - db + i], checked_mul(-c, b[i]));
    }
    return quot;
}

} // namespace detail

/// The n-th cyclotomic polynomial, from x^n - 1 = prod_{d | n} Phi_d.
inline IntPoly cyclotomic_polynomial(unsigned n) {
    static std::map<unsigned, IntPoly> cache;
    static std::recursive_mutex mutex;
    std::lock_guard lock(mutex);
    if (auto it = cache.find(n); it != cache.end()) return it->second;
    IntPoly p(n + 1, 0);
    p[0] = -1;
    p[n] = 1;
    for (unsigned d = 1; d < n; ++d)
        if (n % d == 0) p = detail::exact_divide(std::move(p), cyclotomic_polynomial(d));
    cache.emplace(n, p);
    return p;
}

class CyclotomicRing {
public:
    using Value = std::vector<Coeff>;

    explicit CyclotomicRing(unsigned n) : n_(n), modulus_(cyclotomic_polynomial(n)) {}

    unsigned order() const { return n_; }
    std::size_t degree() const { return modulus_.size() - 1; }

    Value zero() const { return Value(degree(), 0); }

    Value integer(Coeff c) const {
        Value r = zero();
        r[0] = c;
        return r;
    }

    /// zeta^k for any integer k.
    Value zeta_power(long k) const {
        long m = static_cast<long>(n_);
        k = ((k % m) + m) % m;
        IntPoly x(static_cast<std::size_t>(k) + 1, 0);
        x[static_cast<std::size_t>(k)] = 1;
        return reduce(std::move(x));
    }

    Value add(const Value& a, const Value& b) const {
        Value r(a);
        for (std::size_t i = 0; i < r.size(); ++i) r[i] = checked_add(r[i], b[i]);
        return r;
    }

    Value multiply(const Value& a, const Value& b) const {
        IntPoly prod(2 * degree(), 0);
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (a[i] == 0) continue;
            for (std::size_t j = 0; j < b.size(); ++j)
                if (b[j] != 0) prod[i + j] = checked_add(prod[i + j], checked_mul(a[i], b[j]));
        }
        return reduce(std::move(prod));
    }

    /// acc += a * b, where acc and b are slices of length degree().
    void multiply_add(Coeff* acc, const Value& a, const Coeff* b) const {
        const std::size_t d = degree();
        scratch_.assign(2 * d, 0);
        for (std::size_t i = 0; i < d; ++i) {
            if (a[i] == 0) continue;
            for (std::size_t j = 0; j < d; ++j)
                if (b[j] != 0) scratch_[i + j] = checked_add(scratch_[i + j], checked_mul(a[i], b[j]));
        }
        reduce_in_place(scratch_);
        for (std::size_t i = 0; i < d; ++i) acc[i] = checked_add(acc[i], scratch_[i]);
    }

private:
    Value reduce(IntPoly p) const {
        reduce_in_place(p);
        return p;
    }

    void reduce_in_place(IntPoly& p) const {
        const std::size_t d = degree();
        for (std::size_t k = p.size(); k-- > d;) {
            Coeff c = p[k];
            if (c == 0) continue;
            for (std::size_t i = 0; i <= d; ++i) p[k - d + i] = checked_add(p[k - d + i], checked_mul(-c, modulus_[i]));
        }
        p.resize(d, 0);
    }

    unsigned n_;
    IntPoly modulus_;
    mutable IntPoly scratch_;
};

} // namespace coxhecke
