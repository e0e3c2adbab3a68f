#pragma once

namespace wedgecot
{
//---------------------------------------------------------------------------//
/*!
 * Physical inputs of the H- photodetachment model, in atomic units.
 *
 * The binding energy is carried in hartree; k_b is derived on demand.
 */
struct PhysicalConstants
{
    static constexpr double default_ev_per_hartree = 27.211386245988;
    static constexpr double default_binding_energy_ev = 0.754;

    double normalization{0.31522};  //!< B of the bound-state wavefunction
    double binding_energy{default_binding_energy_ev / default_ev_per_hartree};
    double speed_of_light{137.036};
    double ev_per_hartree{default_ev_per_hartree};

    //! Build from a binding energy in eV.
    static PhysicalConstants from_ev(double normalization,
                                     double binding_energy_ev,
                                     double speed_of_light,
                                     double ev_per_hartree = default_ev_per_hartree);

    double binding_energy_ev() const { return binding_energy * ev_per_hartree; }
    double k_b() const;

    void validate() const;
};

}  // namespace wedgecot
