#include "cmap/quadfield.hpp"

#include "cmap/errors.hpp"
#include "cmap/factor.hpp"

#include <cctype>
#include <cmath>
#include <sstream>

namespace cmap {

quad_field make_field(std::int64_t d) {
    if (d == 0 || d == 1)
        throw invalid_d_error("d must not be 0 or 1");
    for (const auto& [p, v] : factorize(big_int(d)))
        if (v >= 2)
            throw invalid_d_error("d = " + std::to_string(d) + " is not squarefree (divisible by " +
                                  std::to_string(p) + "^2)");
    quad_field K;
    K.d = d;
    K.discriminant = K.d_is_1_mod_4() ? d : 4 * d;
    return K;
}

field_element make_element(const quad_field& K, const rational& a, const rational& b) {
    return field_element{K, a, b};
}

field_element from_rational(const quad_field& K, const rational& q) {
    return field_element{K, q, rational(0)};
}

namespace {

void require_same_field(const field_element& x, const field_element& y) {
    if (!(x.field == y.field))
        throw cmap_error("field elements belong to different fields");
}

} // namespace

field_element operator+(const field_element& x, const field_element& y) {
    require_same_field(x, y);
    return {x.field, x.a + y.a, x.b + y.b};
}

field_element operator-(const field_element& x, const field_element& y) {
    require_same_field(x, y);
    return {x.field, x.a - y.a, x.b - y.b};
}

field_element operator-(const field_element& x) {
    return {x.field, -x.a, -x.b};
}

field_element operator*(const field_element& x, const field_element& y) {
    require_same_field(x, y);
    return {x.field, x.a * y.a + rational(x.field.d) * x.b * y.b, x.a * y.b + x.b * y.a};
}

field_element operator/(const field_element& x, const field_element& y) {
    require_same_field(x, y);
    const rational n = norm(y);
    if (n == 0)
        throw division_by_zero_error("division by zero field element");
    const field_element num = x * conj(y);
    return {x.field, num.a / n, num.b / n};
}

field_element conj(const field_element& x) {
    return {x.field, x.a, -x.b};
}

rational norm(const field_element& x) {
    return x.a * x.a - rational(x.field.d) * x.b * x.b;
}

rational trace(const field_element& x) {
    return 2 * x.a;
}

field_element pow(const field_element& x, std::int64_t k) {
    if (k < 0) {
        const field_element inv = from_rational(x.field, rational(1)) / x;
        return pow(inv, -k);
    }
    field_element acc = from_rational(x.field, rational(1));
    field_element base = x;
    while (k > 0) {
        if (k & 1)
            acc = acc * base;
        base = base * base;
        k >>= 1;
    }
    return acc;
}

bool is_integral(const field_element& x) {
    if (x.field.d_is_1_mod_4())
        return is_integer(x.a - x.b) && is_integer(2 * x.b);
    return is_integer(x.a) && is_integer(x.b);
}

bool is_unit(const field_element& x) {
    if (!is_integral(x))
        return false;
    const rational n = norm(x);
    return n == 1 || n == -1;
}

double embed(const field_element& x, int index) {
    if (!x.field.is_real())
        throw cmap_error("real embedding requested for an imaginary field");
    const double root = std::sqrt(static_cast<double>(x.field.d));
    const double sign = index == 1 ? 1.0 : -1.0;
    return to_double(x.a) + to_double(x.b) * sign * root;
}

// PQa continued-fraction walk for theta = (P0 + sqrt(d))/Q0, taking
// (P0,Q0) = (1,2) when d = 1 mod 4 (theta = omega) and (0,1) otherwise
// (theta = sqrt(d)). The candidate h_k - k_k*conj(theta) is an integral unit
// exactly when Q_{k+1} = Q0, which first happens at the period end and
// yields the fundamental unit.
field_element fundamental_unit(const quad_field& K) {
    if (!K.is_real())
        throw not_real_field_error("fundamental unit requires a real field (d > 0)");
    const big_int d(K.d);
    const big_int s = boost::multiprecision::sqrt(d); // floor(sqrt(d))
    big_int P = K.d_is_1_mod_4() ? 1 : 0;
    big_int Q = K.d_is_1_mod_4() ? 2 : 1;
    const big_int Q0 = Q;
    const big_int P0 = P;

    big_int h0 = 0, k0 = 1; // convergent index -2
    big_int h1 = 1, k1 = 0; // convergent index -1
    for (int iter = 0; iter < 100000; ++iter) {
        if (Q <= 0)
            throw cmap_error("continued-fraction walk left the reduced range");
        const big_int a = (P + s) / Q; // floor((P + sqrt(d))/Q), Q > 0
        const big_int h2 = a * h1 + h0;
        const big_int k2 = a * k1 + k0;
        P = a * Q - P;
        Q = (d - P * P) / Q;
        if (Q == Q0) {
            // epsilon = h - k*conj(theta) = (h - k*P0/Q0) + (k/Q0)*sqrt(d)
            const rational ea = rational(h2) - rational(k2) * rational(P0) / rational(Q0);
            const rational eb = rational(k2) / rational(Q0);
            const field_element eps{K, ea, eb};
            const rational n = norm(eps);
            if ((n == 1 || n == -1) && is_integral(eps))
                return eps;
        }
        h0 = h1;
        k0 = k1;
        h1 = h2;
        k1 = k2;
    }
    throw cmap_error("continued-fraction unit search did not close a period");
}

int torsion_order(const quad_field& K) {
    if (K.d == -1)
        return 4;
    if (K.d == -3)
        return 6;
    return 2;
}

std::vector<field_element> torsion_units(const quad_field& K) {
    field_element gen{K, rational(-1), rational(0)};
    if (K.d == -1)
        gen = field_element{K, rational(0), rational(1)}; // i
    else if (K.d == -3)
        gen = field_element{K, rational(1, 2), rational(1, 2)}; // primitive 6th root
    std::vector<field_element> out;
    field_element z = from_rational(K, rational(1));
    const int order = torsion_order(K);
    for (int i = 0; i < order; ++i) {
        out.push_back(z);
        z = z * gen;
    }
    return out;
}

namespace {

// Scanner for "a+b*sqrt(d)"-shaped element text.
struct element_scanner {
    const std::string& s;
    std::size_t i = 0;

    explicit element_scanner(const std::string& text) : s(text) {}

    void skip_space() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i])))
            ++i;
    }

    bool at_end() {
        skip_space();
        return i >= s.size();
    }

    bool peek_sqrt() {
        skip_space();
        return s.compare(i, 5, "sqrt(") == 0;
    }

    // [sign] digits [/ digits]
    rational scan_rational() {
        skip_space();
        std::size_t start = i;
        if (i < s.size() && (s[i] == '+' || s[i] == '-'))
            ++i;
        std::size_t digits_start = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])))
            ++i;
        if (i == digits_start)
            throw parse_error("expected a number at position " + std::to_string(start) + " in '" +
                              s + "'");
        if (i < s.size() && s[i] == '/') {
            ++i;
            std::size_t den_start = i;
            while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])))
                ++i;
            if (i == den_start)
                throw parse_error("expected a denominator in '" + s + "'");
        }
        return parse_rational(s.substr(start, i - start));
    }

    std::int64_t scan_sqrt_argument() {
        skip_space();
        if (s.compare(i, 5, "sqrt(") != 0)
            throw parse_error("expected 'sqrt(' in '" + s + "'");
        i += 5;
        skip_space();
        std::size_t start = i;
        if (i < s.size() && (s[i] == '+' || s[i] == '-'))
            ++i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])))
            ++i;
        if (i == start)
            throw parse_error("expected an integer inside sqrt() in '" + s + "'");
        const std::string digits = s.substr(start, i - start);
        skip_space();
        if (i >= s.size() || s[i] != ')')
            throw parse_error("expected ')' in '" + s + "'");
        ++i;
        try {
            return std::stoll(digits);
        } catch (const std::exception&) {
            throw parse_error("sqrt argument out of range in '" + s + "'");
        }
    }
};

} // namespace

parsed_element parse_element(const std::string& text) {
    element_scanner sc(text);
    parsed_element out;
    out.a = 0;
    out.b = 0;
    if (sc.at_end())
        throw parse_error("empty element text");

    bool first = true;
    while (!sc.at_end()) {
        rational sign(1);
        sc.skip_space();
        if (sc.s[sc.i] == '+' || sc.s[sc.i] == '-') {
            if (sc.s[sc.i] == '-')
                sign = -1;
            ++sc.i;
        } else if (!first) {
            throw parse_error("expected '+' or '-' between terms in '" + text + "'");
        }
        first = false;

        rational coef(1);
        bool have_coef = false;
        if (!sc.peek_sqrt()) {
            coef = sc.scan_rational();
            have_coef = true;
        }
        sc.skip_space();
        bool is_radical = false;
        if (have_coef && sc.i < sc.s.size() && sc.s[sc.i] == '*') {
            ++sc.i;
            is_radical = true;
        } else if (!have_coef) {
            is_radical = true;
        }
        if (is_radical) {
            const std::int64_t d = sc.scan_sqrt_argument();
            if (d == 0 || d == 1)
                throw parse_error("degenerate radical sqrt(" + std::to_string(d) + ") in '" +
                                  text + "'");
            if (out.d && *out.d != d)
                throw parse_error("mixed radicals in '" + text + "'");
            out.d = d;
            out.b += sign * coef;
        } else {
            out.a += sign * coef;
        }
    }
    return out;
}

field_element parse_element_in(const std::string& text, const quad_field& K) {
    const parsed_element p = parse_element(text);
    if (p.d && *p.d != K.d)
        throw parse_error("element '" + text + "' lives in Q(sqrt(" + std::to_string(*p.d) +
                          ")), expected d = " + std::to_string(K.d));
    return field_element{K, p.a, p.b};
}

std::string format_element(const field_element& x) {
    if (x.b == 0)
        return format_rational(x.a);
    std::ostringstream out;
    out << format_rational(x.a);
    if (x.b > 0)
        out << "+" << format_rational(x.b);
    else
        out << "-" << format_rational(-x.b);
    out << "*sqrt(" << x.field.d << ")";
    return out.str();
}

} // namespace cmap
