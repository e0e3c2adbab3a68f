#include "doctest.h"

#include <cmath>

#include "wedgecot/errors.hpp"
#include "wedgecot/orbits.hpp"

using namespace wedgecot;

namespace
{
struct Row
{
    PiFraction out, ret;
    int m;
    PiFraction arg;
};

// alpha = pi/5, beta = pi/15
Row const kTable[] = {
    {{1, 5}, {6, 5}, 1, {2, 15}},
    {{4, 15}, {28, 15}, 2, {1, 5}},
    {{2, 5}, {7, 5}, 3, {1, 3}},
    {{7, 15}, {5, 3}, 4, {2, 5}},
    {{3, 5}, {8, 5}, 5, {8, 15}},
    {{2, 3}, {22, 15}, 4, {3, 5}},
    {{4, 5}, {9, 5}, 3, {11, 15}},
    {{13, 15}, {19, 15}, 2, {4, 5}},
    {{1, 1}, {0, 1}, 1, {14, 15}},
};

double const kBetaFractions[] = {0.1, 1.0 / 3, 0.5, 2.0 / 3, 0.9};
}  // namespace

TEST_CASE("symbolic catalog reproduces the N=5 table")
{
    auto cat = enumerate_symbolic(5, PiFraction(1, 15));
    REQUIRE(cat.size() == 9);
    for (int j = 0; j < 9; ++j)
    {
        CAPTURE(j + 1);
        CHECK(cat[j].index == j + 1);
        CHECK(cat[j].phi_out == kTable[j].out);
        CHECK(cat[j].phi_ret == kTable[j].ret);
        CHECK(cat[j].m == kTable[j].m);
        CHECK(cat[j].length_arg == kTable[j].arg);
    }
}

TEST_CASE("numeric catalog lengths")
{
    double const rho = 200;
    auto cat = enumerate_analytic(5, {rho, M_PI / 15});
    REQUIRE(cat.size() == 9);
    for (int j = 0; j < 9; ++j)
    {
        double expect = 2 * rho * std::abs(std::sin(kTable[j].arg.radians()));
        CHECK(std::abs(cat[j].length - expect) <= 1e-14 * expect);
        CHECK(std::abs(cat[j].phi_out - kTable[j].out.radians()) <= 1e-15);
    }
}

TEST_CASE("single mirror and corner catalogs")
{
    auto one = enumerate_analytic(1, {200, 0.3});
    REQUIRE(one.size() == 1);
    CHECK(one[0].phi_out == doctest::Approx(M_PI));
    CHECK(one[0].phi_ret == doctest::Approx(0.0));
    CHECK(one[0].m == 1);
    CHECK(one[0].length == doctest::Approx(400 * std::sin(0.3)));

    auto two = enumerate_analytic(2, {5, 0.4});
    REQUIRE(two.size() == 3);
    CHECK(two[1].m == 2);
    CHECK(two[1].length == doctest::Approx(10.0).epsilon(1e-15));
    CHECK(std::abs(angle_difference(two[1].phi_ret, two[1].phi_out + M_PI)) <= 1e-14);
}

TEST_CASE("catalog invariants for N = 1..12")
{
    for (int n = 1; n <= 12; ++n)
    {
        double alpha = M_PI / n;
        for (double frac : kBetaFractions)
        {
            IonPosition ion{200, frac * alpha};
            auto cat = enumerate_analytic(n, ion);
            REQUIRE(cat.size() == static_cast<std::size_t>(2 * n - 1));
            for (std::size_t i = 0; i < cat.size(); ++i)
            {
                auto const& o = cat[i];
                int j = o.index;
                CHECK(j == static_cast<int>(i) + 1);
                CHECK(o.m >= 1);
                CHECK(o.m <= 2 * n - 1);
                CHECK(o.length == doctest::Approx(2 * ion.rho * std::abs(std::sin(o.phi_out - ion.beta))));
                if (i > 0)
                    CHECK(cat[i - 1].phi_out < o.phi_out);
                if (j % 2 == 1)
                {
                    CHECK(std::abs(angle_difference(o.phi_ret, o.phi_out + M_PI)) <= 1e-14);
                }
                else
                {
                    auto const& partner = cat[2 * n - j - 1];
                    CHECK(o.length == doctest::Approx(partner.length).epsilon(1e-14));
                    CHECK(o.m == partner.m);
                    CHECK(std::abs(angle_difference(o.phi_ret, partner.phi_out + M_PI)) <= 1e-14);
                }
            }
        }
    }
}

TEST_CASE("analytic orbits close under ray tracing")
{
    for (int n = 1; n <= 8; ++n)
    {
        auto w = WedgeGeometry::from_n(n);
        for (double frac : kBetaFractions)
        {
            IonPosition ion{200, frac * w.opening_angle()};
            Vec2 p = ion_cartesian(w, ion);
            for (auto const& o : enumerate_analytic(n, ion))
            {
                // orbits launched radially inward run straight into the apex
                // (j = N for even N, and for odd N when beta = alpha/2)
                if (std::abs(angle_difference(o.phi_out, ion.beta + M_PI / 2)) < 1e-12)
                    continue;
                CAPTURE(n);
                CAPTURE(o.index);
                auto path = trace(w, p, Vec2::from_azimuth(o.phi_out), o.m);
                CHECK(path.reflections == o.m);
                CHECK((path.segments.back().end - p).norm() <= 1e-9 * ion.rho);
                CHECK(std::abs(angle_difference(path.final_direction.azimuth(), o.phi_ret)) <= 1e-9);
                CHECK(path.total_length == doctest::Approx(o.length).epsilon(1e-9));
            }
        }
    }
}

TEST_CASE("analytic catalog rejects beta outside the wedge")
{
    CHECK_THROWS_AS(enumerate_analytic(5, {200, 0}), Error);
    CHECK_THROWS_AS(enumerate_analytic(5, {200, M_PI / 5}), Error);
    CHECK_THROWS_AS(enumerate_analytic(0, {200, 0.1}), Error);
    CHECK_THROWS_AS(enumerate_symbolic(5, PiFraction(1, 5)), Error);
}

TEST_CASE("search config")
{
    auto cfg = OrbitSearchConfig::with_max_reflections(9);
    CHECK(cfg.max_reflections == 9);
    CHECK(cfg.scan_samples == 720 * 9);
    CHECK(OrbitSearchConfig::defaults_for(WedgeGeometry::from_n(5)).max_reflections == 5);
    CHECK(OrbitSearchConfig::defaults_for(WedgeGeometry::from_angle(0.9 * M_PI)).max_reflections == 2);
    OrbitSearchConfig bad = cfg;
    bad.scan_samples = 3;
    CHECK_THROWS_AS(bad.validate(), Error);
    bad = cfg;
    bad.return_radius = 0;
    CHECK_THROWS_AS(bad.validate(), Error);
    bad = cfg;
    bad.max_reflections = 0;
    CHECK_THROWS_AS(bad.validate(), Error);
}

TEST_CASE("numeric search reproduces the N=5 catalog")
{
    IonPosition ion{200, M_PI / 15};
    auto res = find_numeric(WedgeGeometry::from_n(5), ion, OrbitSearchConfig::with_max_reflections(9));
    auto ref = enumerate_analytic(5, ion);
    REQUIRE(res.orbits.size() == ref.size());
    for (std::size_t i = 0; i < ref.size(); ++i)
    {
        CHECK(std::abs(angle_difference(res.orbits[i].phi_out, ref[i].phi_out)) <= 1e-9);
        CHECK(std::abs(angle_difference(res.orbits[i].phi_ret, ref[i].phi_ret)) <= 1e-9);
        CHECK(std::abs(res.orbits[i].length - ref[i].length) <= 1e-9 * ref[i].length);
        CHECK(res.orbits[i].m == ref[i].m);
    }
}

TEST_CASE("numeric search on a single mirror")
{
    IonPosition ion{200, 0.7};
    auto res = find_numeric(WedgeGeometry::from_angle(M_PI), ion, OrbitSearchConfig::with_max_reflections(3));
    REQUIRE(res.orbits.size() == 1);
    CHECK(res.orbits[0].phi_out == doctest::Approx(M_PI));
    CHECK(res.orbits[0].m == 1);
    CHECK(res.orbits[0].length == doctest::Approx(400 * std::sin(0.7)).epsilon(1e-9));
}

TEST_CASE("numeric search in a non-integer wedge finds both perpendiculars")
{
    // both feet of the perpendiculars lie on the surfaces only for beta in (alpha - pi/2, pi/2)
    double alpha = 0.9 * M_PI;
    for (double beta : {1.3, 1.4, 1.5})
    {
        IonPosition ion{100, beta};
        auto res = find_numeric(WedgeGeometry::from_angle(alpha), ion, OrbitSearchConfig::with_max_reflections(3));
        bool left = false, right = false;
        for (auto const& o : res.orbits)
        {
            if (o.m != 1)
                continue;
            left |= std::abs(o.length - 2 * ion.rho * std::sin(beta)) <= 1e-9 * ion.rho;
            right |= std::abs(o.length - 2 * ion.rho * std::sin(alpha - beta)) <= 1e-9 * ion.rho;
        }
        CHECK(left);
        CHECK(right);
    }
}

TEST_CASE("numeric search in an obtuse wedge keeps only real perpendiculars")
{
    double alpha = 0.9 * M_PI;
    IonPosition ion{100, 0.3};
    auto res = find_numeric(WedgeGeometry::from_angle(alpha), ion, OrbitSearchConfig::with_max_reflections(3));
    REQUIRE(res.orbits.size() == 1);
    CHECK(res.orbits[0].length == doctest::Approx(2 * ion.rho * std::sin(ion.beta)).epsilon(1e-9));
}

TEST_CASE("numeric search handles the even-N apex orbit")
{
    IonPosition ion{200, M_PI / 12};
    auto res = find_numeric(WedgeGeometry::from_n(4), ion, OrbitSearchConfig::with_max_reflections(7));
    auto ref = enumerate_analytic(4, ion);
    REQUIRE(res.orbits.size() == ref.size());
    CHECK(res.orbits[3].length == doctest::Approx(400.0).epsilon(1e-9));
    CHECK(res.orbits[3].m == 4);
    CHECK_FALSE(res.diagnostics.empty());
}

TEST_CASE("numeric search is deterministic")
{
    IonPosition ion{150, 0.2};
    auto w = WedgeGeometry::from_n(3);
    auto cfg = OrbitSearchConfig::defaults_for(w);
    auto a = find_numeric(w, ion, cfg);
    auto b = find_numeric(w, ion, cfg);
    REQUIRE(a.orbits.size() == b.orbits.size());
    for (std::size_t i = 0; i < a.orbits.size(); ++i)
    {
        CHECK(a.orbits[i].phi_out == b.orbits[i].phi_out);
        CHECK(a.orbits[i].length == b.orbits[i].length);
    }
}
