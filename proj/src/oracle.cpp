#include "wedgecot/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numbers>
#include <sstream>
#include <utility>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/bessel.hpp>
#include <fftw3.h>

#include "wedgecot/errors.hpp"

namespace wedgecot::oracle
{
namespace
{
constexpr double kPi = std::numbers::pi;
constexpr int kPanelOrder = 16;

Vec3 normalized(Vec3 v)
{
    double n = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
    if (!(n > 0) || !std::isfinite(n))
        fail(ErrorKind::domain, "return direction must be a non-zero finite vector");
    return {v[0] / n, v[1] / n, v[2] / n};
}

Vec3 cross3(Vec3 const& a, Vec3 const& b)
{
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

double dot3(Vec3 const& a, Vec3 const& b)
{
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

struct Frame
{
    Vec3 e1, e2, axis;
};

Frame frame_around(Vec3 const& axis)
{
    Vec3 helper = std::abs(axis[2]) < 0.9 ? Vec3{0, 0, 1} : Vec3{1, 0, 0};
    Vec3 e1 = normalized(cross3(helper, axis));
    return {e1, cross3(axis, e1), axis};
}

struct OverlapSums
{
    std::complex<double> value;
    std::complex<double> aligned;  // same integral with f replaced by r-hat . k-hat
};

// Tensor-product rule with the polar axis along k_ret: composite
// Gauss-Legendre in r, Gauss-Legendre in cos(theta'), trapezoid in phi'.
OverlapSums integrate_overlap(double k,
                              Polarization const& pol,
                              Frame const& frame,
                              QuadratureSpec const& spec,
                              PhysicalConstants const& consts)
{
    double const kb = consts.k_b();
    double const b = consts.normalization;
    auto const radial_rule = gauss_legendre(kPanelOrder);
    int const panels = std::max(1, (spec.radial_nodes + kPanelOrder - 1) / kPanelOrder);
    double const h = spec.radial_cutoff / panels;

    auto const polar = gauss_legendre(spec.polar_nodes);
    int const naz = spec.azimuthal_nodes;
    double const daz = 2 * kPi / naz;

    OverlapSums sums;
    for (std::size_t i = 0; i < polar.nodes.size(); ++i)
    {
        double const u = polar.nodes[i];
        std::complex<double> radial = 0;
        for (int p = 0; p < panels; ++p)
        {
            double const mid = (p + 0.5) * h;
            for (int q = 0; q < kPanelOrder; ++q)
            {
                double r = mid + 0.5 * h * radial_rule.nodes[q];
                double w = 0.5 * h * radial_rule.weights[q];
                radial += w * b * std::exp(-kb * r) * r * r
                          * std::polar(1.0, k * r * u);
            }
        }

        double const s = std::sqrt(std::max(0.0, 1 - u * u));
        double angular = 0;
        for (int j = 0; j < naz; ++j)
        {
            double const phi = j * daz;
            Vec3 dir;
            for (int c = 0; c < 3; ++c)
            {
                dir[c] = s * (std::cos(phi) * frame.e1[c] + std::sin(phi) * frame.e2[c])
                         + u * frame.axis[c];
            }
            double theta = std::acos(std::clamp(dir[2], -1.0, 1.0));
            double az = std::atan2(dir[1], dir[0]);
            angular += angular_factor(theta, az, pol);
        }
        sums.value += polar.weights[i] * radial * angular * daz;
        sums.aligned += polar.weights[i] * radial * u * (2 * kPi);
    }
    return sums;
}
}  // namespace

//---------------------------------------------------------------------------//
GaussLegendreRule gauss_legendre(int n)
{
    if (n < 1)
        fail(ErrorKind::domain, "Gauss-Legendre rule needs at least one node");

    // P_n(x) and P_n'(x) by the three-term recurrence
    auto legendre = [n](double x) {
        double p0 = 1, p1 = x;
        for (int l = 2; l <= n; ++l)
        {
            double p2 = ((2 * l - 1) * x * p1 - (l - 1) * p0) / l;
            p0 = p1;
            p1 = p2;
        }
        return std::pair{p1, n * (x * p1 - p0) / (x * x - 1)};
    };

    GaussLegendreRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i)
    {
        double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
        for (int iter = 0; iter < 100; ++iter)
        {
            auto [p, dp] = legendre(x);
            double dx = p / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16)
                break;
        }
        double dp = legendre(x).second;
        double w = 2 / ((1 - x * x) * dp * dp);
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        rule.weights[i] = rule.weights[n - 1 - i] = w;
    }
    return rule;
}

//---------------------------------------------------------------------------//
QuadratureSpec QuadratureSpec::defaults(PhysicalConstants const& consts)
{
    QuadratureSpec s;
    s.radial_cutoff = 40 / consts.k_b();
    return s;
}

QuadratureSpec QuadratureSpec::scaled(int factor) const
{
    QuadratureSpec s = *this;
    s.radial_nodes *= factor;
    s.polar_nodes *= factor;
    s.azimuthal_nodes *= factor;
    return s;
}

void QuadratureSpec::validate(PhysicalConstants const& consts) const
{
    if (!(radial_cutoff >= 30 / consts.k_b()))
        fail(ErrorKind::domain, "quadrature radial cutoff must be at least 30/k_b");
    if (radial_nodes < 64 || polar_nodes < 64 || azimuthal_nodes < 64)
        fail(ErrorKind::domain, "quadrature needs at least 64 nodes per dimension");
}

OverlapResult overlap_quadrature(double k,
                                 Polarization const& pol,
                                 Vec3 const& k_ret_direction,
                                 QuadratureSpec const& spec,
                                 PhysicalConstants const& consts)
{
    if (!(k > 0))
        fail(ErrorKind::domain, "overlap quadrature needs k > 0");
    consts.validate();
    spec.validate(consts);
    Frame const frame = frame_around(normalized(k_ret_direction));

    QuadratureSpec coarse = spec;
    coarse.radial_nodes /= 2;
    coarse.polar_nodes /= 2;
    coarse.azimuthal_nodes /= 2;

    auto fine = integrate_overlap(k, pol, frame, spec, consts);
    auto rough = integrate_overlap(k, pol, frame, coarse, consts);

    double const kb = consts.k_b();
    double const rc = spec.radial_cutoff;
    double const b = consts.normalization;
    double const tail = 4 * kPi * b * std::exp(-kb * rc)
                        * (rc * rc / kb + 2 * rc / (kb * kb) + 2 / (kb * kb * kb));
    double const roundoff = 1e-13 * 8 * kPi * b / (kb * kb * kb);

    OverlapResult result;
    result.value = fine.value;
    result.scale = std::abs(fine.aligned);
    result.error_estimate = std::abs(fine.value - rough.value) + tail + roundoff;
    if (result.error_estimate > 1e-6 * result.scale)
    {
        std::ostringstream msg;
        msg << "overlap quadrature not converged: error estimate " << result.error_estimate
            << " exceeds 1e-6 of scale " << result.scale << " (radial=" << spec.radial_nodes
            << ", polar=" << spec.polar_nodes << ", azimuthal=" << spec.azimuthal_nodes << ")";
        fail(ErrorKind::convergence, msg.str());
    }
    return result;
}

std::complex<double> overlap_closed_form(double k,
                                         Polarization const& pol,
                                         Vec3 const& k_ret_direction,
                                         PhysicalConstants const& consts)
{
    double const kb2 = 2 * consts.binding_energy;
    double const denom = (kb2 + k * k) * (kb2 + k * k);
    double const proj = dot3(pol.unit_vector(), normalized(k_ret_direction));
    return {0.0, 8 * consts.normalization * k * kPi * proj / denom};
}

namespace
{
using Kronrod = boost::math::quadrature::gauss_kronrod<double, 31>;

template<class F>
double adaptive_kronrod(F const& f, double a, double b, double abs_tol, int depth)
{
    double err = 0, l1 = 0;
    double value = Kronrod::integrate(f, a, b, 0, 0.0, &err, &l1);
    double const roundoff = 50 * std::numeric_limits<double>::epsilon() * l1;
    if (err <= std::max(abs_tol, roundoff) || depth == 0)
        return value;
    double mid = 0.5 * (a + b);
    return adaptive_kronrod(f, a, mid, 0.5 * abs_tol, depth - 1)
           + adaptive_kronrod(f, mid, b, 0.5 * abs_tol, depth - 1);
}
}  // namespace

double radial_integral(double k, PhysicalConstants const& consts)
{
    if (!(k > 0))
        fail(ErrorKind::domain, "radial integral needs k > 0");
    double const kb = consts.k_b();
    auto integrand = [&](double r) {
        return std::exp(-kb * r) * boost::math::sph_bessel(1u, k * r) * r * r;
    };
    // exp(-60) makes the remaining tail negligible at double precision
    double const upper = 60 / kb;
    double const panel = std::min(kPi / k, 2 / kb);
    int const panels = static_cast<int>(std::ceil(upper / panel));
    double const h = upper / panels;

    // First pass sets the absolute tolerance for the adaptive pass
    double rough = 0;
    for (int p = 0; p < panels; ++p)
        rough += Kronrod::integrate(integrand, p * h, (p + 1) * h, 0, 0.0);
    double const abs_tol = 1e-14 * std::abs(rough);

    double sum = 0;
    for (int p = 0; p < panels; ++p)
        sum += adaptive_kronrod(integrand, p * h, (p + 1) * h, abs_tol, 12);
    return sum;
}

double angular_integral_check(Polarization const& pol, Vec3 const& k_ret_direction)
{
    Vec3 const khat = normalized(k_ret_direction);
    auto const polar = gauss_legendre(64);
    int const naz = 64;
    double const daz = 2 * kPi / naz;
    double sum = 0;
    for (std::size_t i = 0; i < polar.nodes.size(); ++i)
    {
        double const ct = polar.nodes[i];
        double const theta = std::acos(ct);
        double const st = std::sin(theta);
        double ring = 0;
        for (int j = 0; j < naz; ++j)
        {
            double const phi = j * daz;
            Vec3 rhat{st * std::cos(phi), st * std::sin(phi), ct};
            ring += angular_factor(theta, phi, pol) * dot3(rhat, khat);
        }
        sum += polar.weights[i] * ring * daz;
    }
    return sum;
}

//---------------------------------------------------------------------------//
namespace
{
std::vector<double> window_weights(Window window, std::size_t n)
{
    std::vector<double> w(n, 1.0);
    double const denom = static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i)
    {
        double x = 2 * kPi * static_cast<double>(i) / denom;
        switch (window)
        {
            case Window::none: break;
            case Window::hann: w[i] = 0.5 - 0.5 * std::cos(x); break;
            case Window::blackman_harris:
                w[i] = 0.35875 - 0.48829 * std::cos(x) + 0.14128 * std::cos(2 * x)
                       - 0.01168 * std::cos(3 * x);
                break;
        }
    }
    return w;
}

struct FftwDeleter
{
    void operator()(void* p) const { fftw_free(p); }
};
}  // namespace

ActionSpectrum action_spectrum(std::span<SpectralSample const> samples,
                               ActionSpectrumOptions const& options)
{
    std::size_t const n = samples.size();
    if (n < 512)
        fail(ErrorKind::domain, "action spectrum needs at least 512 samples, got " + std::to_string(n));
    double const dk = (samples.back().k - samples.front().k) / static_cast<double>(n - 1);
    if (!(dk > 0))
        fail(ErrorKind::domain, "action spectrum needs an increasing k grid");
    for (std::size_t i = 1; i < n; ++i)
    {
        if (std::abs(samples[i].k - samples[i - 1].k - dk) > 1e-6 * dk)
            fail(ErrorKind::domain, "action spectrum needs a uniform k grid");
    }

    auto const w = window_weights(options.window, n);
    double wsum = 0;
    for (double x : w)
        wsum += x;

    std::unique_ptr<double, FftwDeleter> in(static_cast<double*>(fftw_malloc(sizeof(double) * n)));
    std::unique_ptr<fftw_complex, FftwDeleter> out(
        static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * (n / 2 + 1))));
    for (std::size_t i = 0; i < n; ++i)
        in.get()[i] = w[i] * samples[i].value;
    fftw_plan plan = fftw_plan_dft_r2c_1d(static_cast<int>(n), in.get(), out.get(), FFTW_ESTIMATE);
    fftw_execute(plan);
    fftw_destroy_plan(plan);

    ActionSpectrum spec;
    spec.bin_width = 2 * kPi / (static_cast<double>(n) * dk);
    std::size_t const bins = n / 2 + 1;
    spec.lengths.resize(bins);
    spec.magnitudes.resize(bins);
    for (std::size_t q = 0; q < bins; ++q)
    {
        spec.lengths[q] = static_cast<double>(q) * spec.bin_width;
        spec.magnitudes[q] = 2 * std::hypot(out.get()[q][0], out.get()[q][1]) / wsum;
    }

    double top = 0;
    for (std::size_t q = 1; q < bins; ++q)
        top = std::max(top, spec.magnitudes[q]);
    if (!(top > 0))
        return spec;

    std::vector<std::size_t> maxima;
    for (std::size_t q = 1; q + 1 < bins; ++q)
    {
        auto const& m = spec.magnitudes;
        if (m[q] > m[q - 1] && m[q] >= m[q + 1] && m[q] >= options.noise_floor * top)
            maxima.push_back(q);
    }
    std::stable_sort(maxima.begin(), maxima.end(), [&](std::size_t a, std::size_t b) {
        return spec.magnitudes[a] > spec.magnitudes[b];
    });
    std::vector<std::size_t> kept;
    for (auto q : maxima)
    {
        bool leakage = std::any_of(kept.begin(), kept.end(), [&](std::size_t p) {
            return (q > p ? q - p : p - q) <= static_cast<std::size_t>(options.min_separation_bins);
        });
        if (!leakage)
            kept.push_back(q);
    }
    std::sort(kept.begin(), kept.end());
    for (auto q : kept)
        spec.peaks.push_back({spec.lengths[q], spec.magnitudes[q]});
    return spec;
}

double reduced_oscillation(SpectrumPoint const& point)
{
    return point.sigma_osc * point.k / (3 * point.sigma0);
}

}  // namespace wedgecot::oracle
