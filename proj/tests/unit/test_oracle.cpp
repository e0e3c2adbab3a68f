#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <random>

#include "wedgecot/errors.hpp"
#include "wedgecot/oracle.hpp"

using namespace wedgecot;
using namespace wedgecot::oracle;

namespace
{
double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

double radial_exact(double k, double kb) { return 2 * k / std::pow(kb * kb + k * k, 2); }

Vec3 random_direction(std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> u(0, 1);
    double ct = 2 * u(rng) - 1, st = std::sqrt(1 - ct * ct), p = 2 * M_PI * u(rng);
    return {st * std::cos(p), st * std::sin(p), ct};
}

Polarization polarization_along(Vec3 d)
{
    return Polarization::from_angles(std::acos(d[2]), std::atan2(d[1], d[0]));
}

std::vector<SpectralSample> generate(std::vector<ClosedOrbit> const& cat, Polarization pol)
{
    PhysicalConstants c;
    std::vector<SpectralSample> s;
    int const n = 4096;
    double const k0 = 0.02, dk = 0.001;
    for (int i = 0; i < n; ++i)
    {
        double k = k0 + i * dk;
        double ep = (k * k / 2 + c.binding_energy) * c.ev_per_hartree;
        auto p = evaluate_spectrum(ep, cat, pol, ReflectionModel::hard(), c);
        s.push_back({k, reduced_oscillation(p)});
    }
    return s;
}
}  // namespace

TEST_CASE("gauss-legendre rule")
{
    auto r = gauss_legendre(16);
    double sum = 0, x4 = 0;
    for (std::size_t i = 0; i < r.nodes.size(); ++i)
    {
        sum += r.weights[i];
        x4 += r.weights[i] * std::pow(r.nodes[i], 30);
    }
    CHECK(sum == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(x4 == doctest::Approx(2.0 / 31).epsilon(1e-13));
}

TEST_CASE("radial integral")
{
    PhysicalConstants c;
    double kb = c.k_b();
    CHECK(rel(radial_integral(kb), 1 / (2 * kb * kb * kb)) <= 1e-10);
    CHECK(rel(radial_integral(0.3), radial_exact(0.3, kb)) <= 1e-10);
    double small = 1e-4;
    CHECK(rel(radial_integral(small), 2 * small / std::pow(kb, 4)) <= 1e-5);
    for (double k : {0.01, 0.1, 0.5, 1.0, 3.0, 10.0})
        CHECK(rel(radial_integral(k), radial_exact(k, kb)) <= 1e-10);
    CHECK_THROWS_AS(radial_integral(0.0), Error);
}

TEST_CASE("angular integral")
{
    CHECK(angular_integral_check(Polarization::z(), {0, 0, 1}) == doctest::Approx(4 * M_PI / 3).epsilon(1e-12));
    CHECK(std::abs(angular_integral_check(Polarization::x(), {0, 0, 1})) <= 1e-12);
    std::mt19937_64 rng(17);
    for (int i = 0; i < 20; ++i)
    {
        Vec3 e = random_direction(rng), d = random_direction(rng);
        auto pol = polarization_along(e);
        auto u = pol.unit_vector();
        double expect = 4 * M_PI / 3 * (u[0] * d[0] + u[1] * d[1] + u[2] * d[2]);
        CHECK(std::abs(angular_integral_check(pol, d) - expect) <= 1e-10);
    }
}

TEST_CASE("overlap quadrature")
{
    PhysicalConstants c;
    auto spec = QuadratureSpec::defaults(c);
    double kb = c.k_b();

    auto par = overlap_quadrature(kb, Polarization::z(), {0, 0, 1}, spec);
    double expect = 2 * M_PI * c.normalization / (kb * kb * kb);
    CHECK(rel(par.value.imag(), expect) <= 1e-6);
    CHECK(std::abs(par.value.real()) <= 1e-6 * expect);

    auto perp = overlap_quadrature(0.4, Polarization::x(), {0, 1, 0}, spec);
    CHECK(std::abs(perp.value) <= 1e-6 * perp.scale);

    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> uk(0.01, 1.0);
    for (int i = 0; i < 6; ++i)
    {
        double k = uk(rng);
        Vec3 d = random_direction(rng);
        auto pol = polarization_along(random_direction(rng));
        auto q = overlap_quadrature(k, pol, d, spec);
        auto exact = overlap_closed_form(k, pol, d);
        CHECK(std::abs(q.value - exact) <= 1e-6 * q.scale);

        auto fine = overlap_quadrature(k, pol, d, spec.scaled(2));
        CHECK(std::abs(fine.value - q.value) <= q.error_estimate);

        double angular = angular_integral_check(pol, d);
        std::complex<double> composed(0, 3 * c.normalization * radial_integral(k) * angular);
        CHECK(std::abs(q.value - composed) <= 1e-6 * q.scale);
    }
}

TEST_CASE("quadrature spec validation")
{
    PhysicalConstants c;
    auto spec = QuadratureSpec::defaults(c);
    CHECK(spec.radial_cutoff == doctest::Approx(40 / c.k_b()));
    auto bad = spec;
    bad.polar_nodes = 32;
    CHECK_THROWS_AS(bad.validate(c), Error);
    bad = spec;
    bad.radial_cutoff = 10 / c.k_b();
    CHECK_THROWS_AS(bad.validate(c), Error);
    CHECK_THROWS_AS(overlap_quadrature(0.0, Polarization::x(), {1, 0, 0}, spec), Error);
}

TEST_CASE("coarse quadrature is either accurate or reports a convergence error")
{
    PhysicalConstants c;
    QuadratureSpec spec{40 / c.k_b(), 64, 64, 64};
    try
    {
        auto q = overlap_quadrature(1.0, Polarization::x(), {1, 0, 0}, spec);
        CHECK(std::abs(q.value - overlap_closed_form(1.0, Polarization::x(), {1, 0, 0})) <= 1e-6 * q.scale);
    }
    catch (Error const& e)
    {
        CHECK(e.kind() == ErrorKind::convergence);
    }
}

TEST_CASE("action spectrum recovers a single mirror length")
{
    IonPosition ion{200, M_PI / 15};
    auto cat = enumerate_analytic(1, ion);
    auto spec = action_spectrum(generate(cat, Polarization::x()));
    REQUIRE(spec.peaks.size() == 1);
    CHECK(std::abs(spec.peaks[0].length - cat[0].length) <= spec.bin_width);
}

TEST_CASE("action spectrum recovers the N=5 lengths")
{
    IonPosition ion{200, M_PI / 15};
    auto cat = enumerate_analytic(5, ion);
    auto spec = action_spectrum(generate(cat, Polarization::x()));
    std::vector<double> distinct;
    for (auto const& o : cat)
    {
        bool seen = false;
        for (double d : distinct)
            seen |= std::abs(d - o.length) < 1e-9;
        if (!seen)
            distinct.push_back(o.length);
    }
    CHECK(spec.peaks.size() <= distinct.size());
    REQUIRE(spec.peaks.size() == distinct.size());
    std::sort(distinct.begin(), distinct.end());
    for (std::size_t i = 0; i < distinct.size(); ++i)
        CHECK(std::abs(spec.peaks[i].length - distinct[i]) <= spec.bin_width);
}

TEST_CASE("action spectrum edge cases")
{
    std::vector<SpectralSample> zeros;
    for (int i = 0; i < 1024; ++i)
        zeros.push_back({0.1 + 0.01 * i, 0.0});
    CHECK(action_spectrum(zeros).peaks.empty());

    auto uneven = zeros;
    uneven[100].k += 1e-4;
    CHECK_THROWS_AS(action_spectrum(uneven), Error);

    std::vector<SpectralSample> few(zeros.begin(), zeros.begin() + 100);
    CHECK_THROWS_AS(action_spectrum(few), Error);
}
