#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>

namespace gridlab {

/// Exact fraction with 64-bit numerator and positive denominator, always in
/// lowest terms. Intermediate products use 128-bit integers; results that do
/// not fit in 64 bits throw std::overflow_error instead of wrapping.
class Rational {
public:
    constexpr Rational() = default;
    constexpr Rational(std::int64_t value) : num_(value) {}  // NOLINT(implicit)
    Rational(std::int64_t num, std::int64_t den);

    [[nodiscard]] std::int64_t num() const { return num_; }
    [[nodiscard]] std::int64_t den() const { return den_; }

    [[nodiscard]] bool is_integer() const { return den_ == 1; }
    [[nodiscard]] std::int64_t floor() const;
    [[nodiscard]] std::int64_t ceil() const;
    /// x - floor(x), in [0, 1).
    [[nodiscard]] Rational fractional_part() const;
    /// True iff this value is k/q for some integer k.
    [[nodiscard]] bool is_multiple_of_inverse(std::int64_t q) const { return q % den_ == 0; }

    Rational operator-() const;
    Rational& operator+=(const Rational& o);
    Rational& operator-=(const Rational& o);
    Rational& operator*=(const Rational& o);
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational&, const Rational&) = default;
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

    /// Always "p/q", including integers ("3/1").
    [[nodiscard]] std::string str() const;
    /// Accepts "p/q" or a bare integer "p". Throws std::invalid_argument on
    /// anything else, including decimals and zero denominators.
    static Rational parse(std::string_view text);

private:
    static Rational from_wide(__int128 num, __int128 den);

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

Rational abs(const Rational& r);
Rational min(const Rational& a, const Rational& b);
Rational max(const Rational& a, const Rational& b);

}  // namespace gridlab

template <>
struct std::hash<gridlab::Rational> {
    std::size_t operator()(const gridlab::Rational& r) const noexcept {
        return std::hash<std::int64_t>{}(r.num()) * 1000003u ^ std::hash<std::int64_t>{}(r.den());
    }
};
