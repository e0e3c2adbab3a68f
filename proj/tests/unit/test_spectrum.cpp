#include "doctest.h"

#include <boost/math/tools/minima.hpp>
#include <cmath>
#include <random>

#include "wedgecot/errors.hpp"
#include "wedgecot/spectrum.hpp"

using namespace wedgecot;

namespace
{
// tests/oracles/sigma0_reference.py, 40-digit mpmath
double const kEbHartree = 0.027708988920443862486;
double const kKb = 0.23541023308447686292;
double const kSigma0AtEb = 1.4628012464193513816;
double const kSigma0AtHalfEb = 1.2259042143659345574;
double const kSigma0AtOneEv = 0.93483505222815192252;

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

IonPosition const kIon{200, M_PI / 15};
}  // namespace

TEST_CASE("constants")
{
    PhysicalConstants c;
    CHECK(rel(c.binding_energy, kEbHartree) <= 1e-15);
    CHECK(rel(c.k_b(), kKb) <= 1e-15);
    CHECK(c.binding_energy_ev() == doctest::Approx(0.754).epsilon(1e-15));
    auto d = PhysicalConstants::from_ev(0.3, 0.8, 137.0);
    CHECK(d.speed_of_light == 137.0);
    CHECK(d.binding_energy_ev() == doctest::Approx(0.8));
    CHECK_THROWS_AS(PhysicalConstants::from_ev(0.3, -1, 137).validate(), Error);
    PhysicalConstants e;
    e.speed_of_light = 0;
    CHECK_THROWS_AS(e.validate(), Error);
}

TEST_CASE("background cross section against the high-precision oracle")
{
    PhysicalConstants c;
    CHECK(rel(sigma_background(c.binding_energy, c), kSigma0AtEb) <= 1e-12);
    CHECK(rel(sigma_background(c.binding_energy / 2, c), kSigma0AtHalfEb) <= 1e-12);
    CHECK(rel(evaluate_spectrum(1.0, {}, Polarization::x(), ReflectionModel::hard(), c).sigma0, kSigma0AtOneEv)
          <= 1e-12);
    CHECK_THROWS_AS(sigma_background(0.0, c), Error);
    CHECK_THROWS_AS(sigma_background(-1e-3, c), Error);
}

TEST_CASE("background threshold law and maximum")
{
    PhysicalConstants c;
    double e1 = 1e-8, e2 = 4e-8;
    CHECK(sigma_background(e2, c) / sigma_background(e1, c) == doctest::Approx(8.0).epsilon(1e-5));

    auto f = [&](double e) { return -sigma_background(e, c); };
    auto [emax, fmin] = boost::math::tools::brent_find_minima(f, 1e-4, 0.2, 40);
    (void)fmin;
    CHECK(rel(emax, c.binding_energy) <= 1e-7);
}

TEST_CASE("energy conversion")
{
    PhysicalConstants c;
    auto e = energy_conversion(2 * 0.754, c);
    CHECK(rel(e.energy, 0.754 / 27.211386245988) <= 1e-15);
    CHECK(std::abs(e.k * e.k / 2 - e.energy) <= 1e-15 * e.energy);
    CHECK_THROWS_AS(energy_conversion(0.754, c), Error);
    CHECK_THROWS_AS(energy_conversion(0.5, c), Error);
    try
    {
        energy_conversion(0.5, c);
    }
    catch (Error const& err)
    {
        CHECK(err.kind() == ErrorKind::below_threshold);
    }
}

TEST_CASE("angular factor")
{
    CHECK(angular_factor(M_PI / 2, 0.7, Polarization::from_angles(M_PI / 2, 0.7)) == doctest::Approx(1.0));
    for (double t : {0.0, 0.4, 1.3, 2.9})
        CHECK(angular_factor(t, 1.1, Polarization::z()) == doctest::Approx(std::cos(t)));
    for (double p : {0.0, 0.4, 2.0, 4.5})
    {
        CHECK(angular_factor(M_PI / 2, p, Polarization::x()) == doctest::Approx(std::cos(p)));
        CHECK(angular_factor(M_PI / 2, p, Polarization::y()) == doctest::Approx(std::sin(p)));
    }
    CHECK_THROWS_AS(Polarization::from_angles(-0.1, 0), Error);
    CHECK_THROWS_AS(Polarization::from_angles(M_PI + 0.1, 0), Error);
}

TEST_CASE("phase sine with large arguments")
{
    CHECK(phase_sine(1.0, 0, 0) == doctest::Approx(std::sin(1.0)));
    CHECK(phase_sine(1.0, 1, M_PI) == doctest::Approx(-std::sin(1.0)));
    // 1e10 reduced modulo 2 pi with mpmath: sin(1e10) = -0.48750602508751069153
    CHECK(std::abs(phase_sine(1e10, 0, 0) - (-0.48750602508751069153)) <= 1e-12);
    CHECK(std::abs(phase_sine(std::ldexp(1.0, 40) + 0.5, 0, 0) - (-0.79423653789372998642)) <= 1e-12);
}

TEST_CASE("orbit terms")
{
    PhysicalConstants c;
    auto cat = enumerate_analytic(5, kIon);
    auto e = energy_conversion(1.0, c);
    double s0 = sigma_background(e.energy, c);

    for (auto const& o : cat)
        CHECK(orbit_term(o, e.k, Polarization::z(), ReflectionModel::hard(), c) == 0.0);

    auto const& o9 = cat[8];
    double expect = 3 * s0 / e.k * std::sin(e.k * o9.length) / o9.length;
    CHECK(orbit_term(o9, e.k, Polarization::x(), ReflectionModel::hard(), c)
          == doctest::Approx(expect).epsilon(1e-13));

    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0, 1);
    for (int i = 0; i < 20; ++i)
    {
        auto pol = Polarization::from_angles(M_PI * u(rng), 2 * M_PI * u(rng));
        ReflectionModel refl{2 * M_PI * u(rng)};
        CHECK(orbit_term(cat[1], e.k, pol, refl, c)
              == doctest::Approx(orbit_term(cat[7], e.k, pol, refl, c)).epsilon(1e-12));
    }

    ClosedOrbit zero{1, 0.0, M_PI, 1, 0.0};
    CHECK_THROWS_AS(orbit_term(zero, e.k, Polarization::x(), ReflectionModel::hard(), c), Error);
}

TEST_CASE("sigma_total and the closed forms")
{
    PhysicalConstants c;
    auto w = WedgeGeometry::from_n(5);
    for (double ep : {0.76, 0.9, 1.0, 1.2, 1.4})
    {
        auto x = sigma_total(ep, w, kIon, Polarization::x(), ReflectionModel::hard(), OrbitSource::analytic);
        auto xc = sigma_x_closed_form(ep, 5, kIon);
        CHECK(rel(x.sigma, xc.sigma) <= 1e-12);
        CHECK(x.sigma == x.sigma0 + x.sigma_osc);

        auto y = sigma_total(ep, w, kIon, Polarization::y(), ReflectionModel::hard(), OrbitSource::analytic);
        CHECK(rel(y.sigma, sigma_y_closed_form(ep, 5, kIon).sigma) <= 1e-12);

        auto z = sigma_total(ep, w, kIon, Polarization::z(), ReflectionModel::hard(), OrbitSource::analytic);
        CHECK(std::abs(z.sigma_osc) <= 1e-15);
        CHECK(z.sigma == z.sigma0);
        CHECK(std::abs(z.sigma_osc - sigma_z_closed_form(ep).sigma_osc) <= 1e-15);
    }
}

TEST_CASE("single mirror closed forms")
{
    IonPosition ion{150, 0.4};
    for (double ep : {0.8, 1.1})
    {
        auto x = sigma_x_closed_form(ep, 1, ion);
        double k = x.k;
        double a = 2 * k * ion.rho * std::sin(ion.beta);
        CHECK(x.sigma_osc == doctest::Approx(3 * x.sigma0 / a * std::sin(a)).epsilon(1e-13));
        auto y = sigma_y_closed_form(ep, 1, ion);
        CHECK(y.sigma == y.sigma0);
    }
    auto z = sigma_z_closed_form(2 * 0.754);
    PhysicalConstants c;
    CHECK(rel(z.sigma, kSigma0AtEb) <= 1e-12);
    CHECK(z.sigma_osc == 0.0);
}

TEST_CASE("closed forms reject soft walls")
{
    CHECK_THROWS_AS(sigma_x_closed_form(1.0, 5, kIon, {}, ReflectionModel::soft()), Error);
    CHECK_THROWS_AS(sigma_y_closed_form(1.0, 5, kIon, {}, ReflectionModel::soft()), Error);
}

TEST_CASE("free ion limit")
{
    PhysicalConstants c;
    auto p = evaluate_spectrum(1.0, {}, Polarization::x(), ReflectionModel::hard(), c);
    CHECK(p.sigma_osc == 0.0);
    CHECK(p.sigma == p.sigma0);
}

TEST_CASE("polarization sum identity and bound")
{
    PhysicalConstants c;
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> u(0, 1);
    for (int i = 0; i < 40; ++i)
    {
        int n = 1 + static_cast<int>(u(rng) * 8);
        IonPosition ion{50 + 500 * u(rng), M_PI / n * (0.05 + 0.9 * u(rng))};
        auto cat = enumerate_analytic(n, ion);
        double ep = 0.76 + 0.64 * u(rng);
        auto e = energy_conversion(ep, c);
        double s0 = sigma_background(e.energy, c);
        for (auto refl : {ReflectionModel::hard(), ReflectionModel::soft()})
        {
            double sum = 0, expect = 0, bound = 0;
            for (auto pol : {Polarization::x(), Polarization::y(), Polarization::z()})
                sum += oscillatory_sum(cat, e.k, pol, refl, c);
            for (auto const& o : cat)
            {
                expect += std::cos(o.phi_out - o.phi_ret) * std::sin(e.k * o.length - o.m * refl.delta) / o.length;
                bound += 1 / o.length;
            }
            expect *= 3 * s0 / e.k;
            bound *= 3 * s0 / e.k;
            double scale = std::max(std::abs(expect), 1e-3 * bound);
            CHECK(std::abs(sum - expect) <= 1e-12 * scale);

            auto pol = Polarization::from_angles(M_PI * u(rng), 2 * M_PI * u(rng));
            CHECK(std::abs(oscillatory_sum(cat, e.k, pol, refl, c)) <= bound);
        }
    }
}

TEST_CASE("beta guard")
{
    auto w = WedgeGeometry::from_n(5);
    try
    {
        sigma_total(1.0, w, {200, 1e-4}, Polarization::x(), ReflectionModel::hard(), OrbitSource::analytic);
        FAIL("guard not enforced");
    }
    catch (Error const& e)
    {
        CHECK(e.kind() == ErrorKind::ion_too_close);
        CHECK(std::string(e.what()).find("beta_min") != std::string::npos);
    }
    CHECK_THROWS_AS(
        sigma_total(1.0, w, {200, M_PI / 5 - 1e-4}, Polarization::x(), ReflectionModel::hard(), OrbitSource::analytic),
        Error);
    CHECK_NOTHROW(sigma_total(
        1.0, w, {200, 1e-4}, Polarization::x(), ReflectionModel::hard(), OrbitSource::analytic, {}, 1e-5));
}

TEST_CASE("numeric and analytic orbit sources agree")
{
    auto w = WedgeGeometry::from_n(5);
    for (double ep : {0.8, 1.0, 1.3})
    {
        auto a = sigma_total(ep, w, kIon, Polarization::x(), ReflectionModel::hard(), OrbitSource::analytic);
        auto n = sigma_total(ep, w, kIon, Polarization::x(), ReflectionModel::hard(), OrbitSource::numeric);
        CHECK(rel(n.sigma, a.sigma) <= 1e-8);
    }
}
