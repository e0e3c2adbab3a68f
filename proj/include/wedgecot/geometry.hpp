#pragma once

#include <cmath>
#include <optional>
#include <vector>

namespace wedgecot
{
//---------------------------------------------------------------------------//
// Small planar vector on the cross-sectional plane (lengths in bohr radii)
//---------------------------------------------------------------------------//
struct Vec2
{
    double x{0};
    double y{0};

    static Vec2 from_azimuth(double phi) { return {std::cos(phi), std::sin(phi)}; }

    double norm() const { return std::hypot(x, y); }
    double azimuth() const;  //!< in [0, 2 pi)
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }

//---------------------------------------------------------------------------//
/*!
 * Wedge cavity with its apex at the origin.
 *
 * The left surface is the half-line along -y; the right surface is the
 * half-line at polar angle (alpha - pi/2). The interior is the fan of polar
 * angles [-pi/2, alpha - pi/2].
 */
class WedgeGeometry
{
  public:
    //! Wedge with opening angle pi/N.
    static WedgeGeometry from_n(int n);
    //! Any opening angle in (0, pi]; N is detected when alpha = pi/N to 1e-12.
    static WedgeGeometry from_angle(double alpha);

    double opening_angle() const { return alpha_; }
    std::optional<int> n_integer() const { return n_; }

  private:
    WedgeGeometry(double alpha, std::optional<int> n) : alpha_(alpha), n_(n) {}

    double alpha_;
    std::optional<int> n_;
};

//! Ion placement: distance from the wedge axis and angle from the left surface.
struct IonPosition
{
    double rho{0};
    double beta{0};
};

enum class Surface
{
    left,
    right
};

//! Throws Error(domain) unless rho > 0 and 0 < beta < alpha.
void validate(WedgeGeometry const& wedge, IonPosition const& ion);

//! Ion position (rho sin beta, -rho cos beta).
Vec2 ion_cartesian(WedgeGeometry const& wedge, IonPosition const& ion);

//! Outward unit normal of a surface (pointing out of the cavity).
Vec2 outward_normal(Surface surface, WedgeGeometry const& wedge);

//! Unit vector along a surface, pointing away from the apex.
Vec2 surface_direction(Surface surface, WedgeGeometry const& wedge);

//! Perpendicular distance from a point to a surface's supporting line.
double distance_to_surface(Vec2 point, Surface surface, WedgeGeometry const& wedge);

/*!
 * Specular reflection off a surface: tangential component kept, normal
 * component negated. Throws Error(degenerate_incidence) for a direction
 * parallel to the surface.
 */
Vec2 reflect(Vec2 direction, Surface surface, WedgeGeometry const& wedge);

struct Ray
{
    Vec2 origin;
    Vec2 direction;
};

struct Segment
{
    Vec2 start;
    Vec2 end;

    double length() const { return (end - start).norm(); }
};

//! Closest approach of a post-reflection segment to the trace's start point.
struct Approach
{
    int reflections{0};    //!< bounces before this segment
    double miss{0};        //!< signed perpendicular distance (cross(d, start - p))
    double path_length{0}; //!< arc length from the start to the approach point
    Vec2 direction;        //!< segment direction at the approach
};

struct RayPath
{
    std::vector<Segment> segments;
    std::vector<Surface> bounces;       //!< surface sequence
    std::vector<Approach> approaches;   //!< one per segment whose foot lies on it
    int reflections{0};
    double total_length{0};
    bool escaped{false};                //!< left the wedge towards infinity
    Vec2 final_direction;
};

/*!
 * Follow a ray through the wedge.
 *
 * Segments run wall to wall. Tracing stops after \c max_reflections bounces
 * or when the ray escapes. The last segment is cut at the closest approach
 * to \c start when that approach lies on it; otherwise it ends at the next
 * wall (without reflecting) or is dropped when the ray escapes.
 *
 * Throws Error(domain) when \c start is not strictly inside the wedge and
 * Error(apex_singularity) when a segment passes within 1e-12 |start| of the
 * apex.
 */
RayPath trace(WedgeGeometry const& wedge,
              Vec2 start,
              Vec2 direction,
              int max_reflections);

inline RayPath trace(WedgeGeometry const& wedge, Ray const& ray, int max_reflections)
{
    return trace(wedge, ray.origin, ray.direction, max_reflections);
}

}  // namespace wedgecot
