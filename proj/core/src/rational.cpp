#include "cbdiff/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace cbd {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

[[noreturn]] void reject(std::string_view text) {
    throw std::invalid_argument("not an exact decimal or fraction: '" + std::string(text) + "'");
}

}  // namespace

Rational parse_rational(std::string_view text) {
    const std::string_view original = text;
    text = trim(text);
    bool negative = false;
    if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
        negative = text.front() == '-';
        text.remove_prefix(1);
    }

    Rational value;
    if (const auto slash = text.find('/'); slash != std::string_view::npos) {
        const auto num = trim(text.substr(0, slash));
        const auto den = trim(text.substr(slash + 1));
        if (!all_digits(num) || !all_digits(den)) reject(original);
        Integer d{std::string(den), 10};
        if (d == 0) reject(original);
        value = Rational{Integer{std::string(num), 10}, d};
    } else {
        const auto dot = text.find('.');
        const auto int_part = text.substr(0, dot);
        const auto frac_part = dot == std::string_view::npos ? std::string_view{} : text.substr(dot + 1);
        if (int_part.empty() && frac_part.empty()) reject(original);
        if (!int_part.empty() && !all_digits(int_part)) reject(original);
        if (dot != std::string_view::npos && !frac_part.empty() && !all_digits(frac_part)) reject(original);
        if (dot != std::string_view::npos && frac_part.empty() && int_part.empty()) reject(original);
        std::string digits = std::string(int_part) + std::string(frac_part);
        if (digits.empty()) reject(original);
        Integer den = 1;
        mpz_ui_pow_ui(den.get_mpz_t(), 10, frac_part.size());
        value = Rational{Integer{digits, 10}, den};
    }
    value.canonicalize();
    return negative ? Rational{-value} : value;
}

bool has_terminating_decimal(const Rational& value) {
    Integer den = value.get_den();
    while (mpz_divisible_ui_p(den.get_mpz_t(), 2)) den /= 2;
    while (mpz_divisible_ui_p(den.get_mpz_t(), 5)) den /= 5;
    return den == 1;
}

std::string format_rational(const Rational& value) {
    if (value.get_den() == 1) return value.get_num().get_str();
    if (!has_terminating_decimal(value)) return value.get_str();

    // Smallest k with den | 10^k.
    std::size_t k = 0;
    Integer scale = 1;
    while (!mpz_divisible_p(scale.get_mpz_t(), value.get_den().get_mpz_t())) {
        scale *= 10;
        ++k;
    }
    Integer scaled = abs(value.get_num()) * (scale / value.get_den());
    std::string digits = scaled.get_str();
    if (digits.size() <= k) digits.insert(0, k - digits.size() + 1, '0');
    digits.insert(digits.size() - k, 1, '.');
    return (sgn(value) < 0 ? "-" : "") + digits;
}

}  // namespace cbd
