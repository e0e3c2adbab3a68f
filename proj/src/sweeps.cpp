#include "wedgecot/sweeps.hpp"

#include <cmath>
#include <sstream>

#include "wedgecot/errors.hpp"

namespace wedgecot
{
namespace
{
std::string source_name(OrbitSource s)
{
    return s == OrbitSource::analytic ? "analytic" : "numeric";
}

Dataset make_dataset(std::vector<std::string> columns,
                     std::vector<std::string> units,
                     SweepContext const& ctx)
{
    Dataset d;
    d.columns = std::move(columns);
    d.units = std::move(units);
    d.provenance = describe(ctx);
    return d;
}

void add_range(Dataset& d, std::string const& name, SweepRange const& r)
{
    d.provenance.emplace_back(name + "_start", format_double(r.start));
    d.provenance.emplace_back(name + "_stop", format_double(r.stop));
    d.provenance.emplace_back(name + "_steps", std::to_string(r.steps));
}

void check_energy_range(SweepRange const& r, PhysicalConstants const& consts)
{
    r.validate();
    if (!(r.start > consts.binding_energy_ev()))
    {
        std::ostringstream msg;
        msg << "energy grid starts at " << r.start << " eV, at or below the binding energy "
            << consts.binding_energy_ev() << " eV";
        fail(ErrorKind::below_threshold, msg.str());
    }
}

void check_context(SweepContext const& ctx)
{
    ctx.consts.validate();
    check_beta_guard(ctx.wedge, ctx.ion, ctx.beta_min);
    validate(ctx.wedge, ctx.ion);
}
}  // namespace

//---------------------------------------------------------------------------//
double SweepRange::at(int i) const
{
    if (i == steps - 1)
        return stop;
    return start + (stop - start) * static_cast<double>(i) / static_cast<double>(steps - 1);
}

void SweepRange::validate() const
{
    if (steps < 2)
        fail(ErrorKind::domain, "sweep needs at least 2 steps");
    if (!(start < stop) || !std::isfinite(start) || !std::isfinite(stop))
        fail(ErrorKind::domain, "sweep needs finite start < stop");
}

std::vector<std::pair<std::string, std::string>> describe(SweepContext const& ctx)
{
    std::vector<std::pair<std::string, std::string>> p;
    p.emplace_back("alpha", format_double(ctx.wedge.opening_angle()));
    p.emplace_back("n", ctx.wedge.n_integer() ? std::to_string(*ctx.wedge.n_integer()) : "none");
    p.emplace_back("rho", format_double(ctx.ion.rho));
    p.emplace_back("beta", format_double(ctx.ion.beta));
    p.emplace_back("theta_L", format_double(ctx.pol.theta()));
    p.emplace_back("phi_L", format_double(ctx.pol.phi()));
    p.emplace_back("delta", format_double(ctx.refl.delta));
    p.emplace_back("orbit_source", source_name(ctx.source));
    p.emplace_back("B", format_double(ctx.consts.normalization));
    p.emplace_back("E_b_eV", format_double(ctx.consts.binding_energy_ev()));
    p.emplace_back("c", format_double(ctx.consts.speed_of_light));
    p.emplace_back("eV_per_hartree", format_double(ctx.consts.ev_per_hartree));
    p.emplace_back("beta_min", format_double(ctx.beta_min));
    return p;
}

Dataset energy_sweep(SweepRange const& photon_energy, SweepContext const& ctx)
{
    check_context(ctx);
    check_energy_range(photon_energy, ctx.consts);
    auto const orbits = orbit_catalog(ctx.wedge, ctx.ion, ctx.source);

    auto d = make_dataset({"E_photon", "sigma0", "sigma_osc", "sigma"}, {"eV", "au", "au", "au"}, ctx);
    add_range(d, "E_photon", photon_energy);
    for (int i = 0; i < photon_energy.steps; ++i)
    {
        auto p = evaluate_spectrum(photon_energy.at(i), orbits, ctx.pol, ctx.refl, ctx.consts);
        d.rows.push_back({p.photon_energy, p.sigma0, p.sigma_osc, p.sigma});
    }
    return d;
}

Dataset orbit_decomposition(SweepRange const& photon_energy, SweepContext const& ctx)
{
    check_context(ctx);
    check_energy_range(photon_energy, ctx.consts);
    auto const orbits = orbit_catalog(ctx.wedge, ctx.ion, ctx.source);

    std::vector<std::string> cols{"E_photon", "sigma_osc_total"};
    std::vector<std::string> units{"eV", "au"};
    for (auto const& o : orbits)
    {
        cols.push_back("term_" + std::to_string(o.index));
        units.push_back("au");
    }
    auto d = make_dataset(std::move(cols), std::move(units), ctx);
    add_range(d, "E_photon", photon_energy);

    for (int i = 0; i < photon_energy.steps; ++i)
    {
        double const e = photon_energy.at(i);
        double const k = energy_conversion(e, ctx.consts).k;
        std::vector<double> row{e, 0.0};
        double total = 0;
        for (auto const& o : orbits)
        {
            double t = orbit_term(o, k, ctx.pol, ctx.refl, ctx.consts);
            total += t;
            row.push_back(t);
        }
        row[1] = total;
        d.rows.push_back(std::move(row));
    }
    return d;
}

Dataset position_sweep(PositionVariable variable,
                       SweepRange const& range,
                       double photon_energy_ev,
                       SweepContext const& ctx)
{
    range.validate();
    energy_conversion(photon_energy_ev, ctx.consts);
    ctx.consts.validate();

    bool const by_rho = variable == PositionVariable::rho;
    if (by_rho && !(range.start > 0))
        fail(ErrorKind::domain, "rho sweep must stay at positive rho");
    if (!by_rho)
    {
        double const alpha = ctx.wedge.opening_angle();
        if (!(range.start >= ctx.beta_min && range.stop <= alpha - ctx.beta_min))
        {
            std::ostringstream msg;
            msg << "beta sweep [" << range.start << ", " << range.stop
                << "] leaves the guard [beta_min, alpha - beta_min] = [" << ctx.beta_min << ", "
                << alpha - ctx.beta_min << "]";
            fail(ErrorKind::ion_too_close, msg.str());
        }
    }

    auto d = make_dataset({by_rho ? "rho" : "beta", "sigma0", "sigma_osc", "sigma"},
                          {by_rho ? "a0" : "rad", "au", "au", "au"},
                          ctx);
    d.provenance.emplace_back("E_photon_eV", format_double(photon_energy_ev));
    add_range(d, by_rho ? "rho" : "beta", range);

    for (int i = 0; i < range.steps; ++i)
    {
        double const x = range.at(i);
        IonPosition ion = ctx.ion;
        (by_rho ? ion.rho : ion.beta) = x;
        check_beta_guard(ctx.wedge, ion, ctx.beta_min);
        validate(ctx.wedge, ion);
        auto const orbits = orbit_catalog(ctx.wedge, ion, ctx.source);
        auto p = evaluate_spectrum(photon_energy_ev, orbits, ctx.pol, ctx.refl, ctx.consts);
        d.rows.push_back({x, p.sigma0, p.sigma_osc, p.sigma});
    }
    return d;
}

Dataset polarization_map(SweepRange const& theta,
                         SweepRange const& phi,
                         double photon_energy_ev,
                         SweepContext const& ctx)
{
    check_context(ctx);
    theta.validate();
    phi.validate();
    if (theta.start < 0 || theta.stop > 3.141592653589793)
        fail(ErrorKind::domain, "theta_L grid must stay inside [0, pi]");
    double const k = energy_conversion(photon_energy_ev, ctx.consts).k;
    auto const orbits = orbit_catalog(ctx.wedge, ctx.ion, ctx.source);

    auto d = make_dataset({"theta_L", "phi_L", "sigma_osc"}, {"rad", "rad", "au"}, ctx);
    d.provenance.emplace_back("E_photon_eV", format_double(photon_energy_ev));
    add_range(d, "theta_L", theta);
    add_range(d, "phi_L", phi);
    for (int i = 0; i < theta.steps; ++i)
    {
        for (int j = 0; j < phi.steps; ++j)
        {
            double const t = theta.at(i);
            double const f = phi.at(j);
            auto pol = Polarization::from_angles(t, f);
            d.rows.push_back({t, f, oscillatory_sum(orbits, k, pol, ctx.refl, ctx.consts)});
        }
    }
    return d;
}

}  // namespace wedgecot
