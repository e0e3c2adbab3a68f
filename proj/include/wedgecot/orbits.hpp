#pragma once

#include <string>
#include <vector>

#include "angle.hpp"
#include "geometry.hpp"

namespace wedgecot
{
//---------------------------------------------------------------------------//
/*!
 * A closed orbit that leaves the ion and returns to it after \c m specular
 * reflections. All closed orbits are planar (theta_out = theta_ret = pi/2),
 * so only azimuths are stored.
 */
struct ClosedOrbit
{
    int index{0};        //!< 1-based label in ascending phi_out order
    double phi_out{0};   //!< outgoing azimuth, [0, 2 pi)
    double phi_ret{0};   //!< azimuth of the returning momentum, [0, 2 pi)
    int m{0};            //!< reflection count
    double length{0};    //!< bohr radii
};

//! Exact form of an analytic orbit when beta is a rational multiple of pi.
struct SymbolicOrbit
{
    int index{0};
    PiFraction phi_out;
    PiFraction phi_ret;
    int m{0};
    PiFraction length_arg;  //!< L = 2 rho |sin(length_arg)|
};

//! Orbit catalog for alpha = pi/N by the method of images (2N - 1 orbits).
std::vector<ClosedOrbit> enumerate_analytic(int n, IonPosition const& ion);

//! Same catalog with exact rational-multiple-of-pi angles.
std::vector<SymbolicOrbit> enumerate_symbolic(int n, PiFraction beta);

//! Evaluate a symbolic orbit at a given rho.
ClosedOrbit to_numeric(SymbolicOrbit const& orbit, double rho);

//---------------------------------------------------------------------------//
struct OrbitSearchConfig
{
    int max_reflections{1};
    int scan_samples{720};
    double return_radius{1e-6};    //!< max |miss| accepted for a refined root
    double angle_tolerance{1e-13}; //!< bisection bracket width
    double dedupe_tolerance{1e-9};

    //! 720 samples per allowed reflection.
    static OrbitSearchConfig with_max_reflections(int max_reflections);
    //! Enough reflections to cover every trajectory in the wedge.
    static OrbitSearchConfig defaults_for(WedgeGeometry const& wedge);

    void validate() const;
};

struct OrbitSearchResult
{
    std::vector<ClosedOrbit> orbits;
    std::vector<std::string> diagnostics;  //!< skipped roots, apex-limit orbits
};

/*!
 * Find closed orbits by shooting: scan launch azimuths over the fan that
 * meets a wall, bracket sign changes of the signed miss distance after each
 * reflection count, refine by bisection, and deduplicate on (phi_out, m).
 */
OrbitSearchResult find_numeric(WedgeGeometry const& wedge,
                               IonPosition const& ion,
                               OrbitSearchConfig const& cfg);

}  // namespace wedgecot
