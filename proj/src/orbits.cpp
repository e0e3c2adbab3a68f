#include "wedgecot/orbits.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <sstream>

#include "wedgecot/errors.hpp"

namespace wedgecot
{
namespace
{
constexpr double kPi = std::numbers::pi;

int reflection_count(int j, int n)
{
    return j <= n ? j : 2 * n - j;
}

void check_analytic_inputs(int n, double rho, double beta)
{
    if (n < 1)
        fail(ErrorKind::domain, "wedge N must be a positive integer");
    if (!(rho > 0))
        fail(ErrorKind::domain, "ion distance rho must be positive");
    if (!(beta > 0 && beta < kPi / n))
    {
        std::ostringstream msg;
        msg << "ion angle beta=" << beta << " must lie strictly inside (0, pi/" << n << ")";
        fail(ErrorKind::domain, msg.str());
    }
}
}  // namespace

//---------------------------------------------------------------------------//
std::vector<ClosedOrbit> enumerate_analytic(int n, IonPosition const& ion)
{
    check_analytic_inputs(n, ion.rho, ion.beta);

    auto outgoing = [&](int j) {
        return j % 2 == 1 ? (j + 1) * kPi / (2 * n) : j * kPi / (2 * n) + ion.beta;
    };

    std::vector<ClosedOrbit> orbits;
    orbits.reserve(2 * n - 1);
    for (int j = 1; j <= 2 * n - 1; ++j)
    {
        ClosedOrbit o;
        o.index = j;
        o.phi_out = wrap_two_pi(outgoing(j));
        // Odd orbits retrace themselves; even orbit j returns along the
        // reverse of its partner 2N - j.
        o.phi_ret = wrap_two_pi((j % 2 == 1 ? outgoing(j) : outgoing(2 * n - j)) + kPi);
        o.m = reflection_count(j, n);
        o.length = 2 * ion.rho * std::abs(std::sin(outgoing(j) - ion.beta));
        orbits.push_back(o);
    }
    return orbits;
}

std::vector<SymbolicOrbit> enumerate_symbolic(int n, PiFraction beta)
{
    check_analytic_inputs(n, 1.0, beta.radians());
    // Exact check as well: 0 < num/den < 1/n
    if (!(beta.num() > 0 && beta.num() * n < beta.den()))
        fail(ErrorKind::domain, "ion angle beta=" + beta.str() + " must lie inside (0, pi/N)");

    auto outgoing = [&](int j) {
        return j % 2 == 1 ? PiFraction(j + 1, 2 * n) : PiFraction(j, 2 * n) + beta;
    };
    PiFraction const half_turn{1, 1};

    std::vector<SymbolicOrbit> orbits;
    for (int j = 1; j <= 2 * n - 1; ++j)
    {
        SymbolicOrbit o;
        o.index = j;
        o.phi_out = outgoing(j).wrapped();
        o.phi_ret = ((j % 2 == 1 ? outgoing(j) : outgoing(2 * n - j)) + half_turn).wrapped();
        o.m = reflection_count(j, n);
        o.length_arg = outgoing(j) - beta;
        orbits.push_back(o);
    }
    return orbits;
}

ClosedOrbit to_numeric(SymbolicOrbit const& orbit, double rho)
{
    return {orbit.index,
            orbit.phi_out.radians(),
            orbit.phi_ret.radians(),
            orbit.m,
            2 * rho * std::abs(std::sin(orbit.length_arg.radians()))};
}

//---------------------------------------------------------------------------//
OrbitSearchConfig OrbitSearchConfig::with_max_reflections(int max_reflections)
{
    OrbitSearchConfig cfg;
    cfg.max_reflections = max_reflections;
    cfg.scan_samples = 720 * max_reflections;
    return cfg;
}

OrbitSearchConfig OrbitSearchConfig::defaults_for(WedgeGeometry const& wedge)
{
    // No trajectory in a wedge of angle alpha bounces more than ceil(pi/alpha) times
    int bound = static_cast<int>(std::ceil(kPi / wedge.opening_angle() - 1e-9));
    return with_max_reflections(std::max(1, bound));
}

void OrbitSearchConfig::validate() const
{
    if (max_reflections < 1)
        fail(ErrorKind::domain, "orbit search needs max_reflections >= 1");
    if (scan_samples < 4 * max_reflections)
        fail(ErrorKind::domain, "orbit search needs scan_samples >= 4 * max_reflections");
    if (!(return_radius > 0 && angle_tolerance > 0 && dedupe_tolerance > 0))
        fail(ErrorKind::domain, "orbit search tolerances must be positive");
}

//---------------------------------------------------------------------------//
namespace
{
class Shooter
{
  public:
    Shooter(WedgeGeometry const& wedge, IonPosition const& ion, int max_reflections)
        : wedge_(wedge), start_(ion_cartesian(wedge, ion)), max_reflections_(max_reflections)
    {
    }

    //! Trace along an azimuth; empty when the ray meets the apex.
    std::optional<RayPath> operator()(double phi, int max_reflections = -1) const
    {
        try
        {
            return trace(wedge_,
                         start_,
                         Vec2::from_azimuth(phi),
                         max_reflections < 0 ? max_reflections_ : max_reflections);
        }
        catch (Error const& e)
        {
            if (e.kind() == ErrorKind::apex_singularity
                || e.kind() == ErrorKind::degenerate_incidence)
            {
                return std::nullopt;
            }
            throw;
        }
    }

    Vec2 start() const { return start_; }

  private:
    WedgeGeometry wedge_;
    Vec2 start_;
    int max_reflections_;
};

std::optional<Approach> approach_after(RayPath const& path, int m)
{
    for (auto const& a : path.approaches)
    {
        if (a.reflections == m)
            return a;
    }
    return std::nullopt;
}

std::string describe_root(double phi, int m)
{
    std::ostringstream msg;
    msg.precision(12);
    msg << "phi=" << wrap_two_pi(phi) << " m=" << m;
    return msg.str();
}

class RootRefiner
{
  public:
    RootRefiner(Shooter const& shoot, OrbitSearchConfig const& cfg, OrbitSearchResult& result)
        : shoot_(shoot), cfg_(cfg), result_(result)
    {
    }

    std::optional<ClosedOrbit> refine(int m, double a, double b, double fa) const
    {
        for (int iter = 0; iter < 200 && b - a > cfg_.angle_tolerance; ++iter)
        {
            double mid = 0.5 * (a + b);
            auto path = shoot_(mid);
            if (!path)
                return apex_limit(m, mid);
            auto fm = approach_after(*path, m);
            if (!fm)
            {
                result_.diagnostics.push_back("skipped root near " + describe_root(mid, m)
                                              + ": closest approach left the segment");
                return std::nullopt;
            }
            if (fm->miss == 0)
            {
                a = b = mid;
                break;
            }
            if (std::signbit(fm->miss) == std::signbit(fa))
            {
                a = mid;
                fa = fm->miss;
            }
            else
            {
                b = mid;
            }
        }
        return finish(m, 0.5 * (a + b));
    }

    std::optional<ClosedOrbit> finish(int m, double phi) const
    {
        auto path = shoot_(phi, m);
        if (!path)
            return apex_limit(m, phi);
        auto hit = approach_after(*path, m);
        if (!hit || std::abs(hit->miss) > cfg_.return_radius)
        {
            result_.diagnostics.push_back("rejected discontinuity at " + describe_root(phi, m));
            return std::nullopt;
        }
        return ClosedOrbit{0, wrap_two_pi(phi), hit->direction.azimuth(), m, hit->path_length};
    }

    /*!
     * A root whose trajectory runs into the apex. When the miss distance
     * vanishes continuously on both sides (alpha = pi/N), the orbit is the
     * limit of its neighbours; otherwise the root is a discontinuity.
     */
    std::optional<ClosedOrbit> apex_limit(int m, double phi) const
    {
        constexpr double delta = 1e-7;
        auto lo = shoot_(phi - delta, m);
        auto hi = shoot_(phi + delta, m);
        std::optional<Approach> alo = lo ? approach_after(*lo, m) : std::nullopt;
        std::optional<Approach> ahi = hi ? approach_after(*hi, m) : std::nullopt;
        if (alo && ahi && std::signbit(alo->miss) != std::signbit(ahi->miss))
        {
            double length = 0.5 * (alo->path_length + ahi->path_length);
            double bound = 4 * delta * length;
            if (std::abs(alo->miss) <= bound && std::abs(ahi->miss) <= bound)
            {
                double ret_lo = alo->direction.azimuth();
                double ret = wrap_two_pi(
                    ret_lo + 0.5 * angle_difference(ahi->direction.azimuth(), ret_lo));
                result_.diagnostics.push_back("apex-limit orbit at " + describe_root(phi, m));
                return ClosedOrbit{0, wrap_two_pi(phi), ret, m, length};
            }
        }
        result_.diagnostics.push_back("skipped apex-grazing root at " + describe_root(phi, m));
        return std::nullopt;
    }

  private:
    Shooter const& shoot_;
    OrbitSearchConfig const& cfg_;
    OrbitSearchResult& result_;
};
}  // namespace

OrbitSearchResult find_numeric(WedgeGeometry const& wedge,
                               IonPosition const& ion,
                               OrbitSearchConfig const& cfg)
{
    cfg.validate();
    validate(wedge, ion);

    OrbitSearchResult result;
    Shooter shoot(wedge, ion, cfg.max_reflections);
    RootRefiner refiner(shoot, cfg, result);

    // Launch fan that meets a wall: from the right surface's azimuth
    // counterclockwise to the left surface's azimuth (3 pi / 2).
    double const lo = wedge.opening_angle() - kPi / 2;
    double const hi = 1.5 * kPi;
    int const n = cfg.scan_samples;
    double const step = (hi - lo) / n;

    // miss[i][m] for sample i and reflection count m
    std::vector<std::vector<std::optional<double>>> miss(n);
    for (int i = 0; i < n; ++i)
    {
        auto path = shoot(lo + (i + 0.5) * step);
        miss[i].assign(cfg.max_reflections + 1, std::nullopt);
        if (!path)
            continue;
        for (auto const& a : path->approaches)
            miss[i][a.reflections] = a.miss;
    }

    std::vector<ClosedOrbit> found;
    for (int i = 0; i < n; ++i)
    {
        double phi_i = lo + (i + 0.5) * step;
        for (int m = 1; m <= cfg.max_reflections; ++m)
        {
            auto const& fi = miss[i][m];
            if (!fi)
                continue;
            std::optional<ClosedOrbit> orbit;
            if (*fi == 0)
            {
                orbit = refiner.finish(m, phi_i);
            }
            else if (i + 1 < n && miss[i + 1][m]
                     && std::signbit(*fi) != std::signbit(*miss[i + 1][m])
                     && *miss[i + 1][m] != 0)
            {
                orbit = refiner.refine(m, phi_i, phi_i + step, *fi);
            }
            if (orbit)
                found.push_back(*orbit);
        }
    }

    std::sort(found.begin(), found.end(), [](ClosedOrbit const& x, ClosedOrbit const& y) {
        return x.phi_out < y.phi_out || (x.phi_out == y.phi_out && x.m < y.m);
    });
    for (auto const& o : found)
    {
        bool duplicate = std::any_of(result.orbits.begin(), result.orbits.end(), [&](auto const& kept) {
            return kept.m == o.m
                   && std::abs(angle_difference(kept.phi_out, o.phi_out)) <= cfg.dedupe_tolerance;
        });
        if (!duplicate)
            result.orbits.push_back(o);
    }
    for (std::size_t j = 0; j < result.orbits.size(); ++j)
        result.orbits[j].index = static_cast<int>(j) + 1;
    return result;
}

}  // namespace wedgecot
