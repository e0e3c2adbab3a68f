#pragma once

#include <array>
#include <complex>
#include <span>
#include <vector>

#include "constants.hpp"
#include "spectrum.hpp"

namespace wedgecot::oracle
{
using Vec3 = std::array<double, 3>;

//! Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendreRule
{
    std::vector<double> nodes;
    std::vector<double> weights;
};

GaussLegendreRule gauss_legendre(int n);

//---------------------------------------------------------------------------//
struct QuadratureSpec
{
    double radial_cutoff{0};  //!< a0
    int radial_nodes{512};
    int polar_nodes{96};
    int azimuthal_nodes{64};

    //! Cutoff 40/k_b with default node counts.
    static QuadratureSpec defaults(PhysicalConstants const& consts);

    //! All node counts multiplied by \c factor.
    QuadratureSpec scaled(int factor) const;

    void validate(PhysicalConstants const& consts) const;
};

struct OverlapResult
{
    std::complex<double> value;
    double error_estimate{0};  //!< |I(n) - I(n/2)| plus the radial tail bound
    double scale{0};           //!< |overlap| for epsilon parallel to k_ret
};

/*!
 * Numerically integrate f(theta, phi; pol) B exp(-k_b r) exp(i k_ret . r)
 * over all space. Throws Error(convergence) when the error estimate exceeds
 * 1e-6 of the scale.
 */
OverlapResult overlap_quadrature(double k,
                                 Polarization const& pol,
                                 Vec3 const& k_ret_direction,
                                 QuadratureSpec const& spec,
                                 PhysicalConstants const& consts = {});

//! Closed form 8 i B k pi (eps . k_ret) / (k_b^2 + k^2)^2 for comparison.
std::complex<double> overlap_closed_form(double k,
                                         Polarization const& pol,
                                         Vec3 const& k_ret_direction,
                                         PhysicalConstants const& consts = {});

//! Adaptive quadrature of int_0^inf exp(-k_b r) j1(k r) r^2 dr.
double radial_integral(double k, PhysicalConstants const& consts = {});

//! Sphere quadrature of int f(theta, phi; pol) (r-hat . k-hat) dOmega.
double angular_integral_check(Polarization const& pol, Vec3 const& k_ret_direction);

//---------------------------------------------------------------------------//
enum class Window
{
    none,
    hann,
    blackman_harris
};

struct SpectralSample
{
    double k{0};
    double value{0};
};

struct Peak
{
    double length{0};
    double magnitude{0};
};

struct ActionSpectrumOptions
{
    Window window{Window::hann};
    double noise_floor{5e-3};     //!< fraction of the largest magnitude
    int min_separation_bins{4};   //!< weaker maxima this close to a peak are leakage
};

struct ActionSpectrum
{
    std::vector<double> lengths;
    std::vector<double> magnitudes;
    std::vector<Peak> peaks;  //!< sorted by length
    double bin_width{0};
};

/*!
 * Magnitude of the windowed Fourier transform of samples on a uniform k grid,
 * as a function of orbit length. Needs at least 512 samples.
 */
ActionSpectrum action_spectrum(std::span<SpectralSample const> samples,
                               ActionSpectrumOptions const& options = {});

//! sigma_osc k / (3 sigma_0): removes the smooth k-dependent prefactor.
double reduced_oscillation(SpectrumPoint const& point);

}  // namespace wedgecot::oracle
