#pragma once

#include <stdexcept>
#include <string>

namespace cmap {

// Common base so callers can catch everything from this library at once.
struct cmap_error : std::runtime_error {
    explicit cmap_error(const std::string& msg) : std::runtime_error(msg) {}
};

struct parse_error : cmap_error {
    explicit parse_error(const std::string& msg) : cmap_error(msg) {}
};

struct invalid_d_error : cmap_error {
    explicit invalid_d_error(const std::string& msg) : cmap_error(msg) {}
};

struct not_real_field_error : cmap_error {
    explicit not_real_field_error(const std::string& msg) : cmap_error(msg) {}
};

struct division_by_zero_error : cmap_error {
    explicit division_by_zero_error(const std::string& msg) : cmap_error(msg) {}
};

struct zero_element_error : cmap_error {
    explicit zero_element_error(const std::string& msg) : cmap_error(msg) {}
};

struct zero_argument_error : cmap_error {
    explicit zero_argument_error(const std::string& msg) : cmap_error(msg) {}
};

struct factor_too_large_error : cmap_error {
    explicit factor_too_large_error(const std::string& msg) : cmap_error(msg) {}
};

struct generator_not_found_error : cmap_error {
    explicit generator_not_found_error(const std::string& msg) : cmap_error(msg) {}
};

struct unsupported_field_pair_error : cmap_error {
    explicit unsupported_field_pair_error(const std::string& msg) : cmap_error(msg) {}
};

struct incomplete_arch_values_error : cmap_error {
    explicit incomplete_arch_values_error(const std::string& msg) : cmap_error(msg) {}
};

struct not_s_unit_error : cmap_error {
    explicit not_s_unit_error(const std::string& msg) : cmap_error(msg) {}
};

struct non_integral_exponent_error : cmap_error {
    explicit non_integral_exponent_error(const std::string& msg) : cmap_error(msg) {}
};

struct singular_system_error : cmap_error {
    explicit singular_system_error(const std::string& msg) : cmap_error(msg) {}
};

struct zero_denominator_error : cmap_error {
    explicit zero_denominator_error(const std::string& msg) : cmap_error(msg) {}
};

} // namespace cmap
