#include "cmap/loglinear.hpp"

#include <cmath>
#include <sstream>

namespace cmap {

void log_linear_number::add_log_term(std::int64_t p, const rational& coeff) {
    if (coeff == 0)
        return;
    auto it = log_terms.find(p);
    if (it == log_terms.end()) {
        log_terms.emplace(p, coeff);
        return;
    }
    it->second += coeff;
    if (it->second == 0)
        log_terms.erase(it);
}

log_linear_number& log_linear_number::operator+=(const log_linear_number& other) {
    rational_part += other.rational_part;
    for (const auto& [p, c] : other.log_terms)
        add_log_term(p, c);
    float_part += other.float_part;
    return *this;
}

log_linear_number log_linear_number::scaled(const rational& t) const {
    log_linear_number out;
    if (t == 0)
        return out;
    out.rational_part = rational_part * t;
    for (const auto& [p, c] : log_terms)
        out.log_terms.emplace(p, c * t);
    out.float_part = float_part * cmap::to_double(t);
    return out;
}

double log_linear_number::to_double() const {
    double x = cmap::to_double(rational_part);
    for (const auto& [p, c] : log_terms)
        x += cmap::to_double(c) * std::log(static_cast<double>(p));
    return x + float_part;
}

bool log_linear_number::operator==(const log_linear_number& other) const {
    return rational_part == other.rational_part && log_terms == other.log_terms &&
           float_part == other.float_part;
}

std::string log_linear_number::to_string() const {
    std::ostringstream out;
    bool wrote = false;
    if (rational_part != 0) {
        out << format_rational(rational_part);
        wrote = true;
    }
    for (const auto& [p, c] : log_terms) {
        if (wrote)
            out << " + ";
        out << format_rational(c) << "*log(" << p << ")";
        wrote = true;
    }
    if (float_part != 0.0) {
        if (wrote)
            out << " + ";
        out << float_part;
        wrote = true;
    }
    if (!wrote)
        out << "0";
    return out.str();
}

} // namespace cmap
