#include "cmap/rational.hpp"

#include "cmap/errors.hpp"

#include <cmath>

namespace cmap {

namespace {

big_int parse_big_int(const std::string& text, const std::string& whole) {
    try {
        return big_int(text);
    } catch (const std::runtime_error&) {
        throw parse_error("bad rational literal '" + whole + "'");
    }
}

} // namespace

rational parse_rational(const std::string& text) {
    if (text.empty())
        throw parse_error("empty rational literal");
    const auto slash = text.find('/');
    if (slash == std::string::npos)
        return rational(parse_big_int(text, text));
    big_int num = parse_big_int(text.substr(0, slash), text);
    big_int den = parse_big_int(text.substr(slash + 1), text);
    if (den == 0)
        throw parse_error("zero denominator in '" + text + "'");
    if (den < 0) { // the representation wants its sign on the numerator
        num = -num;
        den = -den;
    }
    return rational(num, den);
}

std::string format_rational(const rational& q) {
    std::string s = numer(q).str();
    if (denom(q) != 1)
        s += "/" + denom(q).str();
    return s;
}

int vp(big_int n, const big_int& p) {
    if (n == 0)
        throw zero_argument_error("vp of zero");
    int v = 0;
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

int vp(const rational& q, const big_int& p) {
    return vp(numer(q), p) - vp(denom(q), p);
}

// Walk the continued fraction of x until the convergent denominator passes
// max_den, then compare the last admissible convergent with the best
// semiconvergent. All comparisons are exact.
best_approx_result best_rational_approx(double x, const big_int& max_den) {
    if (max_den < 1)
        throw cmap_error("best_rational_approx: max_den >= 1 required");
    const rational target(x);
    big_int n = numer(target);
    big_int d = denom(target);

    big_int h0 = 0, k0 = 1; // convergent index -2
    big_int h1 = 1, k1 = 0; // convergent index -1
    while (d != 0) {
        big_int a = n / d;
        big_int r = n - a * d;
        if (r < 0) { // floor division for negative numerators
            a -= 1;
            r += d;
        }
        const big_int h2 = a * h1 + h0;
        const big_int k2 = a * k1 + k0;
        if (k2 > max_den) {
            // k1 >= 1 here: the first real convergent has denominator 1 and
            // max_den >= 1, so the overflow can only happen at a later step.
            rational best(h1, k1);
            rational best_err = abs(target - best);
            // Best semiconvergent: largest t with t*k1 + k0 <= max_den.
            const big_int t = (max_den - k0) / k1;
            if (t > 0) {
                const rational semi(t * h1 + h0, t * k1 + k0);
                const rational semi_err = abs(target - semi);
                if (semi_err < best_err) {
                    best = semi;
                    best_err = semi_err;
                }
            }
            return {best, best_err};
        }
        h0 = h1;
        k0 = k1;
        h1 = h2;
        k1 = k2;
        n = d;
        d = r;
    }
    return {rational(h1, k1), rational(0)};
}

std::optional<rational> rational_detect(double x, const big_int& max_den, double tolerance) {
    if (max_den < 1 || !(tolerance > 0))
        throw cmap_error("rational_detect: max_den >= 1 and tolerance > 0 required");
    if (!std::isfinite(x))
        return std::nullopt;
    const best_approx_result r = best_rational_approx(x, max_den);
    if (r.error <= rational(tolerance))
        return r.value;
    return std::nullopt;
}

} // namespace cmap
