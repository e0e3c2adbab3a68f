#include "wedgecot/spectrum.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>

#include "wedgecot/angle.hpp"
#include "wedgecot/errors.hpp"

namespace wedgecot
{
namespace
{
constexpr double kPi = std::numbers::pi;

// 2 pi split for Cody-Waite reduction: kTwoPiHi has 32 significant bits so
// n * kTwoPiHi is exact in long double for n < 2^32.
constexpr long double kTwoPiHi = 3373259426.0L / 536870912.0L;
constexpr long double kTwoPiLo = 2.430840202602477040590058e-10L;
constexpr long double kTwoPi = 6.283185307179586476925286766559L;

long double reduce_two_pi(long double x)
{
    long double n = std::nearbyint(x / kTwoPi);
    return (x - n * kTwoPiHi) - n * kTwoPiLo;
}

void check_closed_form(int n, IonPosition const& ion, ReflectionModel const& refl)
{
    if (refl.delta != kPi)
    {
        std::ostringstream msg;
        msg << "closed forms assume hard walls (delta = pi); got delta=" << refl.delta
            << " (use sigma_total for other reflection models)";
        fail(ErrorKind::domain, msg.str());
    }
    if (n < 1)
        fail(ErrorKind::domain, "wedge N must be a positive integer");
    validate(WedgeGeometry::from_n(n), ion);
}

SpectrumPoint smooth_point(double photon_energy_ev, PhysicalConstants const& consts)
{
    auto ee = energy_conversion(photon_energy_ev, consts);
    SpectrumPoint p;
    p.photon_energy = photon_energy_ev;
    p.energy = ee.energy;
    p.k = ee.k;
    p.sigma0 = sigma_background(ee.energy, consts);
    return p;
}
}  // namespace

//---------------------------------------------------------------------------//
Polarization Polarization::from_angles(double theta, double phi)
{
    if (!(theta >= 0 && theta <= kPi) || !std::isfinite(phi))
    {
        std::ostringstream msg;
        msg << "polarization theta_L=" << theta << " must lie in [0, pi]";
        fail(ErrorKind::domain, msg.str());
    }
    return {theta, wrap_two_pi(phi)};
}

std::array<double, 3> Polarization::unit_vector() const
{
    return {std::sin(theta_) * std::cos(phi_), std::sin(theta_) * std::sin(phi_), std::cos(theta_)};
}

//---------------------------------------------------------------------------//
ElectronEnergy energy_conversion(double photon_energy_ev, PhysicalConstants const& consts)
{
    double energy = photon_energy_ev / consts.ev_per_hartree - consts.binding_energy;
    if (!(energy > 0))
    {
        std::ostringstream msg;
        msg << "photon energy " << photon_energy_ev << " eV is at or below the binding energy "
            << consts.binding_energy_ev() << " eV";
        fail(ErrorKind::below_threshold, msg.str());
    }
    return {energy, std::sqrt(2 * energy)};
}

namespace
{
// Quadrant index when x is a multiple of pi/2 to within a few ulps, so the
// planar orbits and the named polarizations give exact zeros.
std::optional<int> quadrant(double x)
{
    double const q = std::nearbyint(x / (kPi / 2));
    double const tol = 4 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(x));
    if (std::abs(x - q * (kPi / 2)) > tol)
        return std::nullopt;
    return static_cast<int>(((static_cast<long long>(q) % 4) + 4) % 4);
}

double exact_cos(double x)
{
    if (auto r = quadrant(x))
        return std::array{1.0, 0.0, -1.0, 0.0}[*r];
    return std::cos(x);
}

double exact_sin(double x)
{
    if (auto r = quadrant(x))
        return std::array{0.0, 1.0, 0.0, -1.0}[*r];
    return std::sin(x);
}
}  // namespace

double angular_factor(double theta, double phi, Polarization const& pol)
{
    return exact_cos(theta) * exact_cos(pol.theta())
           + exact_sin(theta) * exact_sin(pol.theta()) * exact_cos(phi - pol.phi());
}

double sigma_background(double energy, PhysicalConstants const& consts)
{
    if (!(energy > 0))
        fail(ErrorKind::below_threshold, "detached-electron energy must be positive");
    double const b = consts.normalization;
    double const denom = consts.binding_energy + energy;
    return 16 * std::numbers::sqrt2 * b * b * kPi * kPi * std::pow(energy, 1.5)
           / (3 * consts.speed_of_light * denom * denom * denom);
}

double phase_sine(double kl, int m, double delta)
{
    long double const shift = reduce_two_pi(static_cast<long double>(m) * delta);
    if (std::abs(kl) <= 4294967296.0)
        return static_cast<double>(std::sin(kl - shift));
    // sinl/cosl reduce any argument exactly, so kl never meets the subtraction
    long double const x = kl;
    return static_cast<double>(std::sin(x) * std::cos(shift) - std::cos(x) * std::sin(shift));
}

double orbit_term(ClosedOrbit const& orbit,
                  double k,
                  Polarization const& pol,
                  ReflectionModel const& refl,
                  PhysicalConstants const& consts)
{
    if (!(orbit.length > 0))
        fail(ErrorKind::zero_length_orbit, "closed orbit " + std::to_string(orbit.index) + " has zero length");
    if (!(k > 0))
        fail(ErrorKind::below_threshold, "electron momentum must be positive");
    double const prefactor = 3 * sigma_background(0.5 * k * k, consts) / k;
    double const f_out = angular_factor(kPi / 2, orbit.phi_out, pol);
    double const f_ret = angular_factor(kPi / 2, orbit.phi_ret, pol);
    return prefactor * f_out * f_ret * phase_sine(k * orbit.length, orbit.m, refl.delta) / orbit.length;
}

double oscillatory_sum(std::span<ClosedOrbit const> orbits,
                       double k,
                       Polarization const& pol,
                       ReflectionModel const& refl,
                       PhysicalConstants const& consts)
{
    double sum = 0;
    for (auto const& o : orbits)
        sum += orbit_term(o, k, pol, refl, consts);
    return sum;
}

SpectrumPoint evaluate_spectrum(double photon_energy_ev,
                                std::span<ClosedOrbit const> orbits,
                                Polarization const& pol,
                                ReflectionModel const& refl,
                                PhysicalConstants const& consts)
{
    auto p = smooth_point(photon_energy_ev, consts);
    p.sigma_osc = oscillatory_sum(orbits, p.k, pol, refl, consts);
    p.sigma = p.sigma0 + p.sigma_osc;
    return p;
}

void check_beta_guard(WedgeGeometry const& wedge, IonPosition const& ion, double beta_min)
{
    double const alpha = wedge.opening_angle();
    if (!(ion.beta >= beta_min && ion.beta <= alpha - beta_min))
    {
        std::ostringstream msg;
        msg << "beta=" << ion.beta << " outside the guard [beta_min, alpha - beta_min] = ["
            << beta_min << ", " << alpha - beta_min << "]";
        fail(ErrorKind::ion_too_close, msg.str());
    }
}

std::vector<ClosedOrbit> orbit_catalog(WedgeGeometry const& wedge,
                                       IonPosition const& ion,
                                       OrbitSource source)
{
    validate(wedge, ion);
    if (source == OrbitSource::analytic)
    {
        if (!wedge.n_integer())
            fail(ErrorKind::domain, "analytic orbits need an opening angle pi/N; use the numeric source");
        return enumerate_analytic(*wedge.n_integer(), ion);
    }
    return find_numeric(wedge, ion, OrbitSearchConfig::defaults_for(wedge)).orbits;
}

SpectrumPoint sigma_total(double photon_energy_ev,
                          WedgeGeometry const& wedge,
                          IonPosition const& ion,
                          Polarization const& pol,
                          ReflectionModel const& refl,
                          OrbitSource source,
                          PhysicalConstants const& consts,
                          double beta_min)
{
    consts.validate();
    check_beta_guard(wedge, ion, beta_min);
    validate(wedge, ion);
    energy_conversion(photon_energy_ev, consts);
    auto orbits = orbit_catalog(wedge, ion, source);
    return evaluate_spectrum(photon_energy_ev, orbits, pol, refl, consts);
}

//---------------------------------------------------------------------------//
SpectrumPoint sigma_x_closed_form(double photon_energy_ev,
                                  int n,
                                  IonPosition const& ion,
                                  PhysicalConstants const& consts,
                                  ReflectionModel const& refl)
{
    check_closed_form(n, ion, refl);
    auto p = smooth_point(photon_energy_ev, consts);
    double const k = p.k;
    double const rho = ion.rho;
    double const beta = ion.beta;
    double const s0 = p.sigma0;

    auto wave = [&](double half_length) {
        double arg = 2 * k * rho * half_length;
        return 3 * s0 * std::sin(arg) / arg;
    };

    double osc = wave(std::sin(beta));
    for (int j = 1; j < n; ++j)
    {
        double a = j * kPi / n;
        double c = std::cos(a);
        osc += c * c * wave(std::sin(a - beta));
        osc += std::cos(a + beta) * std::cos(a - beta) * wave(std::sin(a));
    }
    p.sigma_osc = osc;
    p.sigma = p.sigma0 + p.sigma_osc;
    return p;
}

SpectrumPoint sigma_y_closed_form(double photon_energy_ev,
                                  int n,
                                  IonPosition const& ion,
                                  PhysicalConstants const& consts,
                                  ReflectionModel const& refl)
{
    check_closed_form(n, ion, refl);
    auto p = smooth_point(photon_energy_ev, consts);
    double const k = p.k;
    double const rho = ion.rho;
    double const beta = ion.beta;
    double const s0 = p.sigma0;

    auto wave = [&](double half_length) {
        double arg = 2 * k * rho * half_length;
        return 3 * s0 * std::sin(arg) / arg;
    };

    double osc = 0;
    for (int j = 1; j < n; ++j)
    {
        double a = j * kPi / n;
        double s = std::sin(a);
        osc += s * s * wave(std::sin(a - beta));
        osc -= std::sin(a + beta) * std::sin(a - beta) * wave(std::sin(a));
    }
    p.sigma_osc = osc;
    p.sigma = p.sigma0 + p.sigma_osc;
    return p;
}

SpectrumPoint sigma_z_closed_form(double photon_energy_ev, PhysicalConstants const& consts)
{
    auto p = smooth_point(photon_energy_ev, consts);
    p.sigma_osc = 0;
    p.sigma = p.sigma0;
    return p;
}

}  // namespace wedgecot
