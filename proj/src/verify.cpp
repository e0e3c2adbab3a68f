#include "wedgecot/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "wedgecot/oracle.hpp"
#include "wedgecot/orbits.hpp"
#include "wedgecot/spectrum.hpp"

namespace wedgecot
{
namespace
{
constexpr double kPi = std::numbers::pi;

double rel_err(double a, double b)
{
    return std::abs(a - b) / std::max(std::abs(b), 1e-300);
}

CheckResult check(std::string name, double achieved, double tol)
{
    return {std::move(name), achieved, tol, achieved <= tol};
}

oracle::Vec3 random_direction(std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> u(-1, 1), a(0, 2 * kPi);
    double z = u(rng), phi = a(rng), s = std::sqrt(1 - z * z);
    return {s * std::cos(phi), s * std::sin(phi), z};
}

Polarization random_polarization(std::mt19937_64& rng)
{
    auto d = random_direction(rng);
    return Polarization::from_angles(std::acos(d[2]), std::atan2(d[1], d[0]));
}
}  // namespace

std::vector<CheckResult> run_oracle_checks(PhysicalConstants const& consts)
{
    std::vector<CheckResult> results;
    std::mt19937_64 rng(20240917);
    double const kb = consts.k_b();

    {
        double worst = 0;
        for (double k : {0.01, 0.1, 0.3, kb, 1.0, 3.0, 10.0})
        {
            double closed = 2 * k / std::pow(kb * kb + k * k, 2);
            worst = std::max(worst, rel_err(oracle::radial_integral(k, consts), closed));
        }
        results.push_back(check("radial integral vs 2k/(kb^2+k^2)^2", worst, 1e-10));
    }
    {
        double worst = 0;
        for (int i = 0; i < 20; ++i)
        {
            auto pol = random_polarization(rng);
            auto dir = random_direction(rng);
            auto e = pol.unit_vector();
            double closed = 4 * kPi / 3 * (e[0] * dir[0] + e[1] * dir[1] + e[2] * dir[2]);
            worst = std::max(worst, std::abs(oracle::angular_integral_check(pol, dir) - closed));
        }
        results.push_back(check("angular integral vs (4pi/3) eps.k", worst, 1e-10));
    }
    {
        double worst = 0, worst_comp = 0;
        std::uniform_real_distribution<double> kdist(0.01, 1.0);
        auto spec = oracle::QuadratureSpec::defaults(consts);
        for (int i = 0; i < 10; ++i)
        {
            double k = kdist(rng);
            auto pol = random_polarization(rng);
            auto dir = random_direction(rng);
            auto num = oracle::overlap_quadrature(k, pol, dir, spec, consts);
            auto closed = oracle::overlap_closed_form(k, pol, dir, consts);
            worst = std::max(worst, std::abs(num.value - closed) / std::abs(closed));
            std::complex<double> composed = std::complex<double>(0, 3 * consts.normalization)
                                            * oracle::radial_integral(k, consts)
                                            * oracle::angular_integral_check(pol, dir);
            worst_comp = std::max(worst_comp, std::abs(num.value - composed) / std::abs(composed));
        }
        results.push_back(check("overlap quadrature vs closed form", worst, 1e-6));
        results.push_back(check("overlap = 3iB x radial x angular", worst_comp, 1e-6));
    }
    {
        double worst = 0;
        for (int n : {1, 2, 3, 5, 8})
        {
            IonPosition ion{200.0, kPi / n / 3};
            auto orbits = enumerate_analytic(n, ion);
            for (double e : {0.8, 1.0, 1.2, 1.4})
            {
                auto x = evaluate_spectrum(e, orbits, Polarization::x(), ReflectionModel::hard(), consts);
                auto y = evaluate_spectrum(e, orbits, Polarization::y(), ReflectionModel::hard(), consts);
                worst = std::max(worst, rel_err(x.sigma, sigma_x_closed_form(e, n, ion, consts).sigma));
                worst = std::max(worst, rel_err(y.sigma, sigma_y_closed_form(e, n, ion, consts).sigma));
            }
        }
        results.push_back(check("orbit sum vs x/y closed forms", worst, 1e-12));
    }
    {
        double worst = 0;
        bool counts_match = true;
        for (int n = 1; n <= 5; ++n)
        {
            auto wedge = WedgeGeometry::from_n(n);
            IonPosition ion{200.0, wedge.opening_angle() / 3};
            auto analytic = enumerate_analytic(n, ion);
            auto numeric = find_numeric(wedge, ion, OrbitSearchConfig::with_max_reflections(2 * n - 1));
            if (numeric.orbits.size() != analytic.size())
            {
                counts_match = false;
                continue;
            }
            for (std::size_t j = 0; j < analytic.size(); ++j)
            {
                worst = std::max(worst, std::abs(angle_difference(numeric.orbits[j].phi_out, analytic[j].phi_out)));
                worst = std::max(worst, rel_err(numeric.orbits[j].length, analytic[j].length));
                if (numeric.orbits[j].m != analytic[j].m)
                    counts_match = false;
            }
        }
        results.push_back(check("numeric vs analytic orbits (N=1..5)", counts_match ? worst : INFINITY, 1e-9));
    }
    return results;
}

}  // namespace wedgecot
