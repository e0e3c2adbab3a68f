#include "wedgecot/constants.hpp"

#include <cmath>

#include "wedgecot/errors.hpp"

namespace wedgecot
{
PhysicalConstants PhysicalConstants::from_ev(double normalization,
                                             double binding_energy_ev,
                                             double speed_of_light,
                                             double ev_per_hartree)
{
    PhysicalConstants c;
    c.normalization = normalization;
    c.binding_energy = binding_energy_ev / ev_per_hartree;
    c.speed_of_light = speed_of_light;
    c.ev_per_hartree = ev_per_hartree;
    c.validate();
    return c;
}

double PhysicalConstants::k_b() const
{
    return std::sqrt(2 * binding_energy);
}

void PhysicalConstants::validate() const
{
    if (!(normalization > 0 && binding_energy > 0 && speed_of_light > 0 && ev_per_hartree > 0))
        fail(ErrorKind::domain, "physical constants (B, E_b, c, eV/hartree) must be positive");
}

}  // namespace wedgecot
