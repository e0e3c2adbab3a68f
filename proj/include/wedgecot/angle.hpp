#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace wedgecot
{
//---------------------------------------------------------------------------//
/*!
 * An angle stored exactly as a rational multiple of pi.
 *
 * Always normalized: den > 0 and gcd(num, den) == 1.
 */
class PiFraction
{
  public:
    constexpr PiFraction() = default;
    PiFraction(std::int64_t num, std::int64_t den);

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    double radians() const;

    //! Reduced into [0, 2) (i.e. [0, 2 pi) radians).
    PiFraction wrapped() const;

    //! "0", "pi", "pi/5", "6pi/5", "-2pi/3"
    std::string str() const;

    friend PiFraction operator+(PiFraction a, PiFraction b);
    friend PiFraction operator-(PiFraction a, PiFraction b);
    friend PiFraction operator*(std::int64_t s, PiFraction a);
    friend bool operator==(PiFraction a, PiFraction b) = default;

  private:
    std::int64_t num_{0};
    std::int64_t den_{1};
};

//! Wrap an angle in radians into [0, 2 pi).
double wrap_two_pi(double radians);

//! Smallest signed difference a - b on the circle, in (-pi, pi].
double angle_difference(double a, double b);

//! An angle parsed from text: radians plus the exact form when one was given.
struct ParsedAngle
{
    double radians{0};
    std::optional<PiFraction> exact;
};

/*!
 * Parse an angle: "pi", "pi/15", "2pi/5", "2*pi/5", "-pi/3", or plain
 * radians ("0.2094"). Throws Error(domain) on malformed text.
 */
ParsedAngle parse_angle(std::string_view text);

}  // namespace wedgecot
