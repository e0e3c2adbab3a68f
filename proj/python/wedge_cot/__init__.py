"""Closed-orbit photodetachment cross sections of H- inside a wedge."""

from ._core import (
    ClosedOrbit,
    Dataset,
    ErrorKind,
    IonPosition,
    OrbitSource,
    PhysicalConstants,
    Polarization,
    ReflectionModel,
    SpectrumPoint,
    WedgeCotError,
    WedgeGeometry,
    __version__,
    action_spectrum,
    angular_factor,
    angular_integral_check,
    energy_conversion,
    energy_sweep,
    enumerate_analytic,
    find_numeric,
    orbit_decomposition,
    orbit_term,
    overlap_closed_form,
    overlap_quadrature,
    polarization_map,
    position_sweep,
    radial_integral,
    reduced_oscillation,
    run_cli,
    run_oracle_checks,
    sigma_background,
    sigma_total,
    sigma_x_closed_form,
    sigma_y_closed_form,
    sigma_z_closed_form,
)

__all__ = [name for name in dir() if not name.startswith("_")] + ["__version__"]
