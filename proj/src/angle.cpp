#include "wedgecot/angle.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <numeric>

#include "wedgecot/errors.hpp"

namespace wedgecot
{
PiFraction::PiFraction(std::int64_t num, std::int64_t den)
{
    if (den == 0)
    {
        fail(ErrorKind::domain, "PiFraction: zero denominator");
    }
    if (den < 0)
    {
        num = -num;
        den = -den;
    }
    auto g = std::gcd(num, den);
    num_ = num / g;
    den_ = den / g;
}

double PiFraction::radians() const
{
    return static_cast<double>(num_) * std::numbers::pi / static_cast<double>(den_);
}

PiFraction PiFraction::wrapped() const
{
    auto period = 2 * den_;
    auto n = num_ % period;
    if (n < 0)
        n += period;
    return {n, den_};
}

std::string PiFraction::str() const
{
    if (num_ == 0)
        return "0";
    std::string out;
    if (num_ == -1)
        out = "-";
    else if (num_ != 1)
        out = std::to_string(num_);
    out += "pi";
    if (den_ != 1)
        out += "/" + std::to_string(den_);
    return out;
}

PiFraction operator+(PiFraction a, PiFraction b)
{
    return {a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_};
}

PiFraction operator-(PiFraction a, PiFraction b)
{
    return {a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_};
}

PiFraction operator*(std::int64_t s, PiFraction a)
{
    return {s * a.num_, a.den_};
}

double wrap_two_pi(double radians)
{
    constexpr double two_pi = 2 * std::numbers::pi;
    double r = std::fmod(radians, two_pi);
    if (r < 0)
        r += two_pi;
    if (r >= two_pi)
        r = 0;
    return r;
}

double angle_difference(double a, double b)
{
    double d = wrap_two_pi(a - b);
    return d > std::numbers::pi ? d - 2 * std::numbers::pi : d;
}

namespace
{
bool parse_int(std::string_view s, std::int64_t& out)
{
    if (s.empty())
        return false;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc{} && ptr == s.data() + s.size();
}

[[noreturn]] void bad_angle(std::string_view text)
{
    fail(ErrorKind::domain,
         "cannot parse angle '" + std::string(text)
             + "' (expected radians or a fraction such as pi/15, 2pi/5)");
}
}  // namespace

ParsedAngle parse_angle(std::string_view text)
{
    auto pos = text.find("pi");
    if (pos == std::string_view::npos)
    {
        double value{};
        auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
        if (ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(value))
            bad_angle(text);
        return {value, std::nullopt};
    }

    // [sign][int][*]pi[/int]
    std::string_view coeff = text.substr(0, pos);
    std::string_view rest = text.substr(pos + 2);
    if (!coeff.empty() && coeff.back() == '*')
        coeff.remove_suffix(1);

    std::int64_t num = 1;
    if (coeff == "-")
        num = -1;
    else if (coeff == "+" || coeff.empty())
        num = 1;
    else if (!parse_int(coeff, num))
        bad_angle(text);

    std::int64_t den = 1;
    if (!rest.empty())
    {
        if (rest.front() != '/' || !parse_int(rest.substr(1), den) || den <= 0)
            bad_angle(text);
    }
    PiFraction exact{num, den};
    return {exact.radians(), exact};
}

}  // namespace wedgecot
