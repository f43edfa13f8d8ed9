#include "cmap/places.hpp"

#include "cmap/errors.hpp"
#include "cmap/factor.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

namespace cmap {

std::string splitting_name(splitting s) {
    switch (s) {
    case splitting::split: return "split";
    case splitting::inert: return "inert";
    case splitting::ramified: return "ram";
    }
    return "?";
}

int place::local_degree() const {
    switch (kind) {
    case kind_t::rational_prime:
    case kind_t::rational_infinity:
        return 1;
    case kind_t::arch_embedding:
        return field->is_real() ? 1 : 2;
    case kind_t::nonarch:
        return split_type == splitting::split ? 1 : 2;
    }
    return 1;
}

int place::ram_index() const {
    if (kind == kind_t::nonarch && split_type == splitting::ramified)
        return 2;
    return 1;
}

int place::residue_degree() const {
    if (kind == kind_t::nonarch && split_type == splitting::inert)
        return 2;
    return 1;
}

std::string place::to_string() const {
    switch (kind) {
    case kind_t::rational_infinity:
        return "inf";
    case kind_t::rational_prime:
        return std::to_string(p);
    case kind_t::arch_embedding:
        return "inf:" + std::to_string(index);
    case kind_t::nonarch:
        if (split_type == splitting::split)
            return std::to_string(p) + ":split:" + std::to_string(index);
        return std::to_string(p) + ":" + splitting_name(split_type);
    }
    return "?";
}

namespace {

std::tuple<int, std::int64_t, int, std::int64_t, int> order_key(const place& v) {
    const int kind_rank = static_cast<int>(v.kind);
    const std::int64_t fd = v.field ? v.field->d : 0;
    return {v.is_arch() ? 0 : 1, v.is_arch() ? 0 : v.p, kind_rank, fd, v.index};
}

} // namespace

bool place::operator<(const place& other) const {
    return order_key(*this) < order_key(other);
}

place q_prime_place(std::int64_t p) {
    place v;
    v.kind = place::kind_t::rational_prime;
    v.p = p;
    return v;
}

place q_infinity() {
    place v;
    v.kind = place::kind_t::rational_infinity;
    return v;
}

place arch_place(const quad_field& K, int index) {
    if (index != 1 && index != 2)
        throw cmap_error("archimedean embedding index must be 1 or 2");
    if (index == 2 && !K.is_real())
        throw cmap_error("imaginary fields have a single archimedean place");
    place v;
    v.kind = place::kind_t::arch_embedding;
    v.field = K;
    v.index = index;
    return v;
}

place nonarch_place(const quad_field& K, std::int64_t p, splitting s, int index) {
    if (s != splitting::split && index != 1)
        throw cmap_error("only split places carry an index");
    if (index != 1 && index != 2)
        throw cmap_error("split place index must be 1 or 2");
    place v;
    v.kind = place::kind_t::nonarch;
    v.field = K;
    v.p = p;
    v.split_type = s;
    v.index = index;
    return v;
}

int kronecker_symbol(std::int64_t n, std::int64_t p) {
    if (p == 2) {
        if (n % 2 == 0)
            return 0;
        const std::int64_t m = ((n % 8) + 8) % 8;
        return (m == 1 || m == 7) ? 1 : -1;
    }
    const big_int bp(p);
    big_int bn = big_int(n) % bp;
    if (bn < 0)
        bn += bp;
    if (bn == 0)
        return 0;
    const big_int r = boost::multiprecision::powm(bn, (bp - 1) / 2, bp);
    return r == 1 ? 1 : -1;
}

splitting splitting_type(const quad_field& K, std::int64_t p) {
    if (K.discriminant % p == 0)
        return splitting::ramified;
    return kronecker_symbol(K.discriminant, p) == 1 ? splitting::split : splitting::inert;
}

std::vector<place> places_above(const quad_field& K, const place& below) {
    if (below.field)
        throw cmap_error("places_above expects a place of Q");
    if (below.kind == place::kind_t::rational_infinity) {
        if (K.is_real())
            return {arch_place(K, 1), arch_place(K, 2)};
        return {arch_place(K, 1)};
    }
    return places_above_prime(K, below.p);
}

std::vector<place> places_above_prime(const quad_field& K, std::int64_t p) {
    const splitting s = splitting_type(K, p);
    if (s == splitting::split)
        return {nonarch_place(K, p, s, 1), nonarch_place(K, p, s, 2)};
    return {nonarch_place(K, p, s)};
}

place place_below(const place& w) {
    if (!w.field)
        return w;
    if (w.is_arch())
        return q_infinity();
    return q_prime_place(w.p);
}

namespace {

// Square root mod an odd prime (n a quadratic residue, p not dividing n).
big_int tonelli_shanks(const big_int& n, const big_int& p) {
    using boost::multiprecision::powm;
    if (p % 4 == 3)
        return powm(n, (p + 1) / 4, p);
    // Write p-1 = q * 2^s with q odd.
    big_int q = p - 1;
    int s = 0;
    while (q % 2 == 0) {
        q /= 2;
        ++s;
    }
    // Any quadratic non-residue works as the twiddle base.
    big_int z = 2;
    while (powm(z, (p - 1) / 2, p) == 1)
        ++z;
    big_int m(s), c = powm(z, q, p), t = powm(n, q, p), r = powm(n, (q + 1) / 2, p);
    while (t != 1) {
        big_int i = 0, t2 = t;
        while (t2 != 1) {
            t2 = t2 * t2 % p;
            ++i;
            if (i == m)
                throw cmap_error("tonelli_shanks: argument is not a quadratic residue");
        }
        big_int b = c;
        for (big_int j = 0; j < m - i - 1; ++j)
            b = b * b % p;
        m = i;
        c = b * b % p;
        t = t * c % p;
        r = r * b % p;
    }
    return r;
}

big_int mod_inverse(const big_int& a, const big_int& m) {
    // Extended Euclid; a must be invertible mod m.
    big_int old_r = a % m, r = m;
    if (old_r < 0)
        old_r += m;
    big_int old_s = 1, s = 0;
    while (r != 0) {
        const big_int q = old_r / r;
        big_int tmp = old_r - q * r;
        old_r = r;
        r = tmp;
        tmp = old_s - q * s;
        old_s = s;
        s = tmp;
    }
    if (old_r != 1)
        throw cmap_error("mod_inverse: arguments are not coprime");
    old_s %= m;
    if (old_s < 0)
        old_s += m;
    return old_s;
}

big_int pow_int(std::int64_t p, int e) {
    big_int out = 1;
    for (int i = 0; i < e; ++i)
        out *= p;
    return out;
}

} // namespace

big_int hensel_root(std::int64_t d, std::int64_t p, int precision, int index) {
    if (precision < 1)
        throw cmap_error("hensel_root: precision must be >= 1");
    const big_int pm = pow_int(p, precision);
    big_int r;
    if (p == 2) {
        // Split at 2 means d = 1 mod 8; all lifts keep the index-1 root
        // = 1 mod 4, stepping one bit of precision at a time.
        if ((((d % 8) + 8) % 8) != 1)
            throw cmap_error("hensel_root: 2 does not split (d != 1 mod 8)");
        // One step past the target: a root mod 2^(m+1) reduces mod 2^m to a
        // genuine 2-adic root, while a bare root mod 2^m can sit on a
        // spurious branch (e.g. 9^2 = 17 mod 64 but 9 lifts no further).
        r = 1;
        for (int k = 3; k <= precision; ++k) {
            const big_int mod_next = pow_int(2, k + 1);
            if ((r * r - d) % mod_next != 0)
                r += pow_int(2, k - 1);
        }
        r %= pm;
    } else {
        const big_int bp(p);
        big_int n = big_int(d) % bp;
        if (n < 0)
            n += bp;
        if (n == 0)
            throw cmap_error("hensel_root: p divides d");
        r = tonelli_shanks(n, bp);
        if ((r * r - d) % bp != 0)
            throw cmap_error("hensel_root: no square root mod p (place is not split)");
        // Linear Hensel steps: r <- r - f(r)/f'(r) mod p^{k+1}.
        big_int modulus = bp;
        for (int k = 1; k < precision; ++k) {
            modulus *= bp;
            const big_int f = (r * r - d) % modulus;
            const big_int inv = mod_inverse(2 * r % modulus, modulus);
            r = (r - f * inv) % modulus;
            if (r < 0)
                r += modulus;
        }
        // Canonical labeling: index 1 holds the root with r mod p in (0, p/2).
        const big_int r0 = r % bp;
        const bool is_index1 = 2 * r0 < bp;
        if ((index == 1) != is_index1)
            r = pm - r;
    }
    if (index == 2 && p == 2)
        r = (pm - r) % pm;
    return r % pm;
}

rational valuation(const field_element& x, const place& w) {
    if (x.is_zero())
        throw zero_element_error("valuation of zero");
    if (w.kind == place::kind_t::rational_prime) {
        if (!x.is_rational())
            throw cmap_error("rational place applied to an irrational element");
        return rational(vp(x.a, big_int(w.p)));
    }
    if (!w.field || !(*w.field == x.field))
        throw cmap_error("valuation: place does not belong to the element's field");
    if (w.is_arch())
        throw cmap_error("valuation at an archimedean place");

    const std::int64_t p = w.p;
    const big_int bp(p);
    // Clear denominators: x = (A + B*sqrt(d)) / t.
    const big_int t = lcm(denom(x.a), denom(x.b));
    const big_int A = numer(x.a * rational(t));
    const big_int B = numer(x.b * rational(t));
    const big_int N = A * A - x.field.d * B * B;
    const int vN = vp(N, bp);
    const int vt = t % bp == 0 ? vp(t, bp) : 0;

    switch (w.split_type) {
    case splitting::split: {
        const int m = vN + 1;
        const big_int pm = pow_int(p, m);
        const big_int r = hensel_root(x.field.d, p, m, w.index);
        big_int s = (A + B * r) % pm;
        if (s < 0)
            s += pm;
        if (s == 0)
            throw cmap_error("valuation: Hensel precision exhausted (internal)");
        return rational(vp(s, bp) - vt);
    }
    case splitting::inert: {
        if (vN % 2 != 0)
            throw cmap_error("valuation: odd norm valuation at an inert place (internal)");
        return rational(vN / 2 - vt);
    }
    case splitting::ramified:
        return rational(vN - 2 * vt);
    }
    throw cmap_error("unreachable");
}

rational valuation_rational(const rational& x, const place& q) {
    if (x == 0)
        throw zero_element_error("valuation of zero");
    if (q.kind != place::kind_t::rational_prime)
        throw cmap_error("valuation_rational expects a finite place of Q");
    return rational(vp(x, big_int(q.p)));
}

double log_abs_value::to_double() const {
    if (arch_value)
        return *arch_value;
    return cmap::to_double(*nonarch_exponent) * std::log(static_cast<double>(v.p));
}

log_abs_value log_abs(const field_element& x, const place& v, const rational& exponent) {
    if (x.is_zero())
        throw zero_element_error("log_abs of zero");
    log_abs_value out;
    out.v = v;
    switch (v.kind) {
    case place::kind_t::rational_infinity: {
        if (!x.is_rational())
            throw cmap_error("rational place applied to an irrational element");
        out.arch_value = to_double(exponent) * std::log(std::abs(to_double(x.a)));
        return out;
    }
    case place::kind_t::rational_prime:
        out.nonarch_exponent = -exponent * valuation(x, v);
        return out;
    case place::kind_t::arch_embedding: {
        if (!(*v.field == x.field))
            throw cmap_error("log_abs: place does not belong to the element's field");
        double val;
        if (x.field.is_real()) {
            val = std::log(std::abs(embed(x, v.index)));
        } else {
            // |sigma(x)| = sqrt(a^2 + |d| b^2) = sqrt(norm(x))
            val = 0.5 * std::log(to_double(norm(x)));
        }
        out.arch_value = to_double(exponent) * val;
        return out;
    }
    case place::kind_t::nonarch:
        out.nonarch_exponent = -exponent * valuation(x, v) / v.ram_index();
        return out;
    }
    throw cmap_error("unreachable");
}

log_abs_value log_abs_rational(const rational& x, const place& v, const rational& exponent) {
    if (x == 0)
        throw zero_element_error("log_abs of zero");
    log_abs_value out;
    out.v = v;
    if (v.kind == place::kind_t::rational_infinity) {
        out.arch_value = to_double(exponent) * std::log(std::abs(to_double(x)));
        return out;
    }
    if (v.kind == place::kind_t::rational_prime) {
        out.nonarch_exponent = -exponent * rational(vp(x, big_int(v.p)));
        return out;
    }
    throw cmap_error("log_abs_rational expects a place of Q");
}

namespace {

// Unit-normalize a generator: scan associates, prefer norm > 0, then
// minimal a > 0, then b > 0.
field_element normalize_generator(const field_element& raw) {
    const quad_field K = raw.field;
    std::vector<field_element> multipliers;
    if (K.is_real()) {
        const field_element eps = fundamental_unit(K);
        field_element u = pow(eps, -64);
        for (int k = -64; k <= 64; ++k) {
            multipliers.push_back(u);
            multipliers.push_back(-u);
            u = u * eps;
        }
    } else {
        multipliers = torsion_units(K);
    }

    std::optional<field_element> best;
    auto better = [](const field_element& lhs, const field_element& rhs) {
        // true when lhs should replace rhs
        const bool lpos = norm(lhs) > 0, rpos = norm(rhs) > 0;
        if (lpos != rpos)
            return lpos;
        if (lhs.a != rhs.a)
            return lhs.a < rhs.a;
        const bool lb = lhs.b > 0, rb = rhs.b > 0;
        if (lb != rb)
            return lb;
        return abs(lhs.b) < abs(rhs.b);
    };
    for (const field_element& u : multipliers) {
        const field_element c = raw * u;
        if (c.a < 0 || (c.a == 0 && c.b < 0))
            continue; // its negation is also in the candidate set
        if (!best || better(c, *best))
            best = c;
    }
    if (!best)
        throw cmap_error("generator normalization found no candidate (internal)");
    return *best;
}

} // namespace

field_element ideal_generator_search(const quad_field& K, const place& w, std::int64_t bound) {
    if (!w.field || !(*w.field == K) || w.is_arch())
        throw cmap_error("ideal_generator_search expects a non-archimedean place of K");
    const std::int64_t p = w.p;
    if (splitting_type(K, p) != w.split_type)
        throw cmap_error("place " + w.to_string() + " disagrees with the actual splitting");

    if (w.split_type == splitting::inert) {
        // (p) itself is the prime ideal; p has a > 0 and norm p^2 > 0.
        return from_rational(K, rational(p));
    }

    // Need |norm(beta)| = p. Integer coordinates: A^2 - d B^2 = +-p.
    // Half-integer coordinates (d = 1 mod 4): U^2 - d V^2 = +-4p, U = V mod 2,
    // beta = (U + V sqrt(d))/2.
    const auto try_candidate = [&](const rational& a, const rational& b) -> std::optional<field_element> {
        const field_element beta{K, a, b};
        if (beta.is_zero())
            return std::nullopt;
        if (valuation(beta, w) == 1)
            return beta;
        return std::nullopt;
    };

    std::optional<field_element> raw;
    const auto scan = [&](const big_int& rhs_base, int denom_scale) {
        // Solve A^2 = s*rhs_base + d*B^2 over 0 <= B <= denom_scale*bound.
        const std::int64_t blimit = denom_scale * bound;
        for (std::int64_t B = 0; B <= blimit && !raw; ++B) {
            for (int sgn = 0; sgn < 2 && !raw; ++sgn) {
                const big_int rhs = (sgn == 0 ? rhs_base : -rhs_base) + big_int(K.d) * B * B;
                if (rhs < 0)
                    continue;
                const big_int A = boost::multiprecision::sqrt(rhs);
                if (A * A != rhs)
                    continue;
                if (denom_scale == 2 && (A - B) % 2 != 0)
                    continue;
                const rational ra = rational(A) / denom_scale;
                const rational rb = rational(B) / denom_scale;
                for (const rational& b : {rb, rational(-rb)}) {
                    if (auto hit = try_candidate(ra, b)) {
                        raw = hit;
                        break;
                    }
                    if (rb == 0)
                        break;
                }
            }
            if (K.d < 0 && big_int(K.d) * B * B + rhs_base < 0)
                break; // both signs are now negative forever
        }
    };

    scan(big_int(p), 1);
    if (!raw && K.d_is_1_mod_4())
        scan(big_int(4) * p, 2);

    if (!raw)
        throw generator_not_found_error(
            "no generator of the prime ideal over " + std::to_string(p) + " with |norm| = " +
            std::to_string(p) + " within coordinate bound " + std::to_string(bound) +
            "; the ideal is likely non-principal (class-number obstruction)");
    return normalize_generator(*raw);
}

place parse_place(const std::string& text, const std::optional<quad_field>& context) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
        const auto colon = text.find(':', start);
        if (colon == std::string::npos) {
            parts.push_back(text.substr(start));
            break;
        }
        parts.push_back(text.substr(start, colon - start));
        start = colon + 1;
    }
    if (parts.empty() || parts[0].empty())
        throw parse_error("empty place text");

    const auto need_field = [&]() -> quad_field {
        if (!context)
            throw parse_error("place '" + text + "' needs a field context");
        return *context;
    };

    if (parts[0] == "inf") {
        if (parts.size() == 1)
            return q_infinity();
        if (parts.size() != 2)
            throw parse_error("bad archimedean place '" + text + "'");
        const quad_field K = need_field();
        if (parts[1] == "1")
            return arch_place(K, 1);
        if (parts[1] == "2")
            return arch_place(K, 2);
        throw parse_error("bad archimedean index in '" + text + "'");
    }

    std::int64_t p;
    try {
        p = std::stoll(parts[0]);
    } catch (const std::exception&) {
        throw parse_error("bad prime in place '" + text + "'");
    }
    if (p < 2 || !is_small_prime(p))
        throw parse_error("'" + parts[0] + "' is not a prime in the supported range");

    if (parts.size() == 1)
        return q_prime_place(p);

    const quad_field K = need_field();
    const splitting actual = splitting_type(K, p);
    if (parts[1] == "split") {
        if (parts.size() != 3 || (parts[2] != "1" && parts[2] != "2"))
            throw parse_error("split place needs an index, e.g. '7:split:1'");
        if (actual != splitting::split)
            throw parse_error("place '" + text + "': " + std::to_string(p) + " is " +
                              splitting_name(actual) + " in this field, not split");
        return nonarch_place(K, p, splitting::split, parts[2] == "1" ? 1 : 2);
    }
    if (parts.size() != 2)
        throw parse_error("bad place '" + text + "'");
    if (parts[1] == "inert") {
        if (actual != splitting::inert)
            throw parse_error("place '" + text + "': " + std::to_string(p) + " is " +
                              splitting_name(actual) + " in this field, not inert");
        return nonarch_place(K, p, splitting::inert);
    }
    if (parts[1] == "ram") {
        if (actual != splitting::ramified)
            throw parse_error("place '" + text + "': " + std::to_string(p) + " is " +
                              splitting_name(actual) + " in this field, not ramified");
        return nonarch_place(K, p, splitting::ramified);
    }
    throw parse_error("bad place '" + text + "'");
}

} // namespace cmap
