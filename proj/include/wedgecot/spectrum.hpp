#pragma once

#include <array>
#include <span>
#include <vector>

#include "constants.hpp"
#include "geometry.hpp"
#include "orbits.hpp"

namespace wedgecot
{
//---------------------------------------------------------------------------//
//! Linear laser polarization direction in spherical angles.
class Polarization
{
  public:
    static Polarization x() { return {kHalfPi, 0.0}; }
    static Polarization y() { return {kHalfPi, kHalfPi}; }
    static Polarization z() { return {0.0, 0.0}; }
    //! theta in [0, pi]; phi is wrapped into [0, 2 pi).
    static Polarization from_angles(double theta, double phi);

    double theta() const { return theta_; }
    double phi() const { return phi_; }
    std::array<double, 3> unit_vector() const;

  private:
    static constexpr double kHalfPi = 1.5707963267948966;
    Polarization(double theta, double phi) : theta_(theta), phi_(phi) {}

    double theta_;
    double phi_;
};

//! Phase lost per wall reflection.
struct ReflectionModel
{
    double delta{3.141592653589793};

    static ReflectionModel hard() { return {3.141592653589793}; }
    static ReflectionModel soft() { return {1.5707963267948966}; }
};

enum class OrbitSource
{
    analytic,
    numeric
};

//! Default guard keeping the ion away from the walls for cross sections.
inline constexpr double kDefaultBetaMin = 1e-3;

struct SpectrumPoint
{
    double photon_energy{0};  //!< eV
    double energy{0};         //!< detached electron, hartree
    double k{0};              //!< a.u.
    double sigma0{0};         //!< a0^2
    double sigma_osc{0};
    double sigma{0};
};

struct ElectronEnergy
{
    double energy{0};  //!< hartree
    double k{0};
};

//! E = E_photon - E_b (hartree) and k = sqrt(2E); throws below threshold.
ElectronEnergy energy_conversion(double photon_energy_ev, PhysicalConstants const& consts);

//! r-hat . epsilon-hat for direction (theta, phi).
double angular_factor(double theta, double phi, Polarization const& pol);

//! Free-ion cross section sigma_0(E); E in hartree, E > 0.
double sigma_background(double energy, PhysicalConstants const& consts);

//! sin(kL - m delta) with extended-precision reduction of large kL.
double phase_sine(double kl, int m, double delta);

//! Contribution of one closed orbit at momentum k.
double orbit_term(ClosedOrbit const& orbit,
                  double k,
                  Polarization const& pol,
                  ReflectionModel const& refl,
                  PhysicalConstants const& consts);

//! Sum of orbit_term over a catalog at momentum k.
double oscillatory_sum(std::span<ClosedOrbit const> orbits,
                       double k,
                       Polarization const& pol,
                       ReflectionModel const& refl,
                       PhysicalConstants const& consts);

//! Evaluate sigma at one photon energy for a precomputed orbit catalog.
SpectrumPoint evaluate_spectrum(double photon_energy_ev,
                                std::span<ClosedOrbit const> orbits,
                                Polarization const& pol,
                                ReflectionModel const& refl,
                                PhysicalConstants const& consts);

//! Throws Error(ion_too_close) unless beta lies in [beta_min, alpha - beta_min].
void check_beta_guard(WedgeGeometry const& wedge, IonPosition const& ion, double beta_min);

//! Orbit catalog for a configuration (analytic requires alpha = pi/N).
std::vector<ClosedOrbit> orbit_catalog(WedgeGeometry const& wedge,
                                       IonPosition const& ion,
                                       OrbitSource source);

//! Total cross section at one photon energy.
SpectrumPoint sigma_total(double photon_energy_ev,
                          WedgeGeometry const& wedge,
                          IonPosition const& ion,
                          Polarization const& pol,
                          ReflectionModel const& refl,
                          OrbitSource source,
                          PhysicalConstants const& consts = {},
                          double beta_min = kDefaultBetaMin);

//! Hard-wall x-polarization closed form; rejects any delta other than pi.
SpectrumPoint sigma_x_closed_form(double photon_energy_ev,
                                  int n,
                                  IonPosition const& ion,
                                  PhysicalConstants const& consts = {},
                                  ReflectionModel const& refl = ReflectionModel::hard());

//! Hard-wall y-polarization closed form; rejects any delta other than pi.
SpectrumPoint sigma_y_closed_form(double photon_energy_ev,
                                  int n,
                                  IonPosition const& ion,
                                  PhysicalConstants const& consts = {},
                                  ReflectionModel const& refl = ReflectionModel::hard());

//! z-polarization: no oscillation.
SpectrumPoint sigma_z_closed_form(double photon_energy_ev, PhysicalConstants const& consts = {});

}  // namespace wedgecot
