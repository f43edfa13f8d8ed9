#include "cmap/factor.hpp"

#include "cmap/errors.hpp"

#include <algorithm>

namespace cmap {

namespace {

// Smallest prime factor for every n <= sieve_bound; spf[p] == p iff p prime.
const std::vector<std::int32_t>& spf_table() {
    static const std::vector<std::int32_t> spf = [] {
        std::vector<std::int32_t> t(sieve_bound + 1, 0);
        for (std::int64_t i = 2; i <= sieve_bound; ++i) {
            if (t[i] != 0)
                continue;
            for (std::int64_t j = i; j <= sieve_bound; j += i)
                if (t[j] == 0)
                    t[j] = static_cast<std::int32_t>(i);
        }
        return t;
    }();
    return spf;
}

void factor_small(std::int64_t m, std::map<std::int64_t, int>& out) {
    const auto& spf = spf_table();
    while (m > 1) {
        const std::int64_t p = spf[m];
        int v = 0;
        do {
            m /= p;
            ++v;
        } while (m % p == 0);
        out[p] += v;
    }
}

} // namespace

const std::vector<std::int32_t>& small_primes() {
    static const std::vector<std::int32_t> primes = [] {
        const auto& spf = spf_table();
        std::vector<std::int32_t> out;
        for (std::int64_t i = 2; i <= sieve_bound; ++i)
            if (spf[i] == i)
                out.push_back(static_cast<std::int32_t>(i));
        return out;
    }();
    return primes;
}

bool is_small_prime(std::int64_t p) {
    if (p < 2 || p > sieve_bound)
        return false;
    return spf_table()[p] == p;
}

std::map<std::int64_t, int> factorize(const big_int& n) {
    if (n == 0)
        throw zero_argument_error("factorize of zero");
    big_int m = abs(n);
    std::map<std::int64_t, int> out;
    if (m <= sieve_bound) {
        factor_small(m.convert_to<std::int64_t>(), out);
        return out;
    }
    for (const std::int32_t p : small_primes()) {
        if (m % p == 0) {
            int v = 0;
            do {
                m /= p;
                ++v;
            } while (m % p == 0);
            out[p] = v;
        }
        if (m <= sieve_bound) {
            factor_small(m.convert_to<std::int64_t>(), out);
            return out;
        }
        if (big_int(p) * p > m)
            break; // remaining cofactor is prime
    }
    if (m != 1) {
        if (m >= prime_cofactor_bound)
            throw factor_too_large_error(
                "cofactor " + m.str() + " exceeds the trial-division primality bound " +
                std::to_string(prime_cofactor_bound));
        out[m.convert_to<std::int64_t>()] += 1;
    }
    return out;
}

std::map<std::int64_t, int> factorize(const rational& q) {
    if (q == 0)
        throw zero_argument_error("factorize of zero");
    std::map<std::int64_t, int> out = factorize(numer(q));
    for (const auto& [p, v] : factorize(denom(q))) {
        out[p] -= v;
        if (out[p] == 0)
            out.erase(p);
    }
    return out;
}

} // namespace cmap
