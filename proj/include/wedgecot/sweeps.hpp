#pragma once

#include "dataset.hpp"
#include "spectrum.hpp"

namespace wedgecot
{
//! Inclusive uniform grid.
struct SweepRange
{
    double start{0};
    double stop{1};
    int steps{2};

    double at(int i) const;
    void validate() const;
};

//! Everything held fixed while one variable is swept.
struct SweepContext
{
    WedgeGeometry wedge = WedgeGeometry::from_n(5);
    IonPosition ion{200.0, 3.141592653589793 / 15};
    Polarization pol = Polarization::x();
    ReflectionModel refl = ReflectionModel::hard();
    OrbitSource source = OrbitSource::analytic;
    PhysicalConstants consts{};
    double beta_min{kDefaultBetaMin};
};

enum class PositionVariable
{
    rho,
    beta
};

//! Columns E_photon, sigma0, sigma_osc, sigma.
Dataset energy_sweep(SweepRange const& photon_energy, SweepContext const& ctx);

//! Columns E_photon, sigma_osc_total, term_1 .. term_n.
Dataset orbit_decomposition(SweepRange const& photon_energy, SweepContext const& ctx);

//! Columns rho|beta, sigma0, sigma_osc, sigma at a fixed photon energy.
Dataset position_sweep(PositionVariable variable,
                       SweepRange const& range,
                       double photon_energy_ev,
                       SweepContext const& ctx);

//! Rows (theta_L, phi_L, sigma_osc), theta-major.
Dataset polarization_map(SweepRange const& theta,
                         SweepRange const& phi,
                         double photon_energy_ev,
                         SweepContext const& ctx);

//! Provenance entries describing a context (wedge, ion, polarization, ...).
std::vector<std::pair<std::string, std::string>> describe(SweepContext const& ctx);

}  // namespace wedgecot
