#include "wedgecot/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "wedgecot/angle.hpp"
#include "wedgecot/errors.hpp"

namespace wedgecot
{
namespace
{
constexpr double kPi = std::numbers::pi;
constexpr double kApexTolerance = 1e-12;    // relative to |start|
constexpr double kParallelTolerance = 1e-15;

struct Hit
{
    double t;
    Surface surface;
};

std::optional<Hit> next_hit(WedgeGeometry const& wedge,
                            Vec2 p,
                            Vec2 d,
                            std::optional<Surface> last,
                            double scale)
{
    std::optional<Hit> best;
    for (auto s : {Surface::left, Surface::right})
    {
        if (last && *last == s)
            continue;
        Vec2 n = outward_normal(s, wedge);
        double nd = dot(n, d);
        if (nd <= 0)
            continue;
        double t = -dot(n, p) / nd;
        if (!(t > 0))
            continue;
        Vec2 h = p + t * d;
        // Hits on the supporting line beyond the apex are not on this surface
        if (dot(h, surface_direction(s, wedge)) < -kApexTolerance * scale)
            continue;
        if (!best || t < best->t)
            best = Hit{t, s};
    }
    return best;
}

void check_apex(Vec2 p, Vec2 d, double length, double scale)
{
    double s = std::clamp(-dot(p, d), 0.0, length);
    if ((p + s * d).norm() < kApexTolerance * scale)
    {
        std::ostringstream msg;
        msg << "ray from (" << p.x << ", " << p.y << ") passes within "
            << kApexTolerance << " rho of the wedge apex";
        fail(ErrorKind::apex_singularity, msg.str());
    }
}
}  // namespace

double Vec2::azimuth() const
{
    return wrap_two_pi(std::atan2(y, x));
}

//---------------------------------------------------------------------------//
WedgeGeometry WedgeGeometry::from_n(int n)
{
    if (n < 1)
    {
        fail(ErrorKind::domain, "wedge N must be a positive integer, got " + std::to_string(n));
    }
    return WedgeGeometry{kPi / n, n};
}

WedgeGeometry WedgeGeometry::from_angle(double alpha)
{
    if (!(alpha > 0 && alpha <= kPi))
    {
        std::ostringstream msg;
        msg << "wedge opening angle must lie in (0, pi], got " << alpha;
        fail(ErrorKind::domain, msg.str());
    }
    int n = static_cast<int>(std::lround(kPi / alpha));
    if (n >= 1 && std::abs(alpha - kPi / n) <= 1e-12)
        return WedgeGeometry{alpha, n};
    return WedgeGeometry{alpha, std::nullopt};
}

void validate(WedgeGeometry const& wedge, IonPosition const& ion)
{
    if (!(ion.rho > 0) || !std::isfinite(ion.rho))
    {
        std::ostringstream msg;
        msg << "ion distance rho must be positive, got " << ion.rho;
        fail(ErrorKind::domain, msg.str());
    }
    if (!(ion.beta > 0 && ion.beta < wedge.opening_angle()))
    {
        std::ostringstream msg;
        msg << "ion angle beta=" << ion.beta << " must lie strictly inside (0, alpha="
            << wedge.opening_angle() << ")";
        fail(ErrorKind::domain, msg.str());
    }
}

Vec2 ion_cartesian(WedgeGeometry const& wedge, IonPosition const& ion)
{
    validate(wedge, ion);
    return {ion.rho * std::sin(ion.beta), -ion.rho * std::cos(ion.beta)};
}

Vec2 outward_normal(Surface surface, WedgeGeometry const& wedge)
{
    if (surface == Surface::left)
        return {-1.0, 0.0};
    double alpha = wedge.opening_angle();
    return {std::cos(alpha), std::sin(alpha)};
}

Vec2 surface_direction(Surface surface, WedgeGeometry const& wedge)
{
    if (surface == Surface::left)
        return {0.0, -1.0};
    double alpha = wedge.opening_angle();
    return {std::sin(alpha), -std::cos(alpha)};
}

double distance_to_surface(Vec2 point, Surface surface, WedgeGeometry const& wedge)
{
    return std::abs(dot(outward_normal(surface, wedge), point));
}

Vec2 reflect(Vec2 direction, Surface surface, WedgeGeometry const& wedge)
{
    Vec2 n = outward_normal(surface, wedge);
    double nd = dot(direction, n);
    if (std::abs(nd) <= kParallelTolerance)
    {
        fail(ErrorKind::degenerate_incidence,
             std::string("direction is parallel to the ")
                 + (surface == Surface::left ? "left" : "right") + " surface");
    }
    return direction - (2 * nd) * n;
}

//---------------------------------------------------------------------------//
RayPath trace(WedgeGeometry const& wedge, Vec2 start, Vec2 direction, int max_reflections)
{
    if (max_reflections < 0)
        fail(ErrorKind::domain, "max_reflections must be non-negative");
    if (std::abs(direction.norm() - 1) > 1e-12)
        fail(ErrorKind::domain, "ray direction must be a unit vector");
    if (!(dot(outward_normal(Surface::left, wedge), start) < 0
          && dot(outward_normal(Surface::right, wedge), start) < 0))
    {
        std::ostringstream msg;
        msg << "trace start (" << start.x << ", " << start.y
            << ") is not strictly inside the wedge";
        fail(ErrorKind::domain, msg.str());
    }

    double const scale = start.norm();
    RayPath path;
    Vec2 p = start;
    Vec2 d = direction;
    std::optional<Surface> last;
    double travelled = 0;

    while (true)
    {
        auto hit = next_hit(wedge, p, d, last, scale);
        double seg = hit ? hit->t : std::numeric_limits<double>::infinity();
        check_apex(p, d, seg, scale);

        std::optional<double> foot;
        if (path.reflections >= 1)
        {
            Vec2 rel = start - p;
            double along = dot(d, rel);
            if (along > 0 && along < seg)
            {
                foot = along;
                path.approaches.push_back(
                    {path.reflections, cross(d, rel), travelled + along, d});
            }
        }

        if (!hit || path.reflections == max_reflections)
        {
            if (foot)
            {
                path.segments.push_back({p, p + *foot * d});
                travelled += *foot;
            }
            else if (hit)
            {
                path.segments.push_back({p, p + seg * d});
                travelled += seg;
            }
            path.escaped = !hit;
            path.final_direction = d;
            break;
        }

        Vec2 h = p + seg * d;
        path.segments.push_back({p, h});
        travelled += seg;
        d = reflect(d, hit->surface, wedge);
        p = h;
        last = hit->surface;
        path.bounces.push_back(hit->surface);
        ++path.reflections;
    }
    path.total_length = travelled;
    return path;
}

}  // namespace wedgecot
