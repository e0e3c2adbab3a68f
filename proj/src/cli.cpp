#include "wedgecot/cli.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "wedgecot/angle.hpp"
#include "wedgecot/dataset.hpp"
#include "wedgecot/errors.hpp"
#include "wedgecot/orbits.hpp"
#include "wedgecot/spectrum.hpp"
#include "wedgecot/sweeps.hpp"
#include "wedgecot/verify.hpp"

namespace wedgecot::cli
{
namespace
{
constexpr double kPi = std::numbers::pi;

//! Raw command-line values, kept as text where exact parsing matters.
struct RunConfig
{
    std::string subcommand;
    std::optional<int> n;
    std::optional<std::string> alpha;
    double rho{200.0};
    std::string beta{"pi/15"};
    std::string pol{"x"};
    std::string delta{"hard"};
    double emin{0.76};
    double emax{1.4};
    int steps{0};  // 0: per-subcommand default
    std::string orbit_source;  // empty: analytic when alpha = pi/N
    std::string output{"-"};
    std::string format;        // empty: per-subcommand default
    double c{137.036};
    double eb_ev{PhysicalConstants::default_binding_energy_ev};
    double b{0.31522};
    double beta_min{kDefaultBetaMin};
    double energy{1.0};
    double rho_start{50.0};
    double rho_stop{800.0};
    std::optional<std::string> beta_start;
    std::optional<std::string> beta_stop;

    std::vector<std::pair<std::string, std::string>> fields() const
    {
        std::vector<std::pair<std::string, std::string>> f;
        f.emplace_back("cli.subcommand", subcommand);
        f.emplace_back("cli.n", n ? std::to_string(*n) : "");
        f.emplace_back("cli.alpha", alpha.value_or(""));
        f.emplace_back("cli.rho", format_double(rho));
        f.emplace_back("cli.beta", beta);
        f.emplace_back("cli.pol", pol);
        f.emplace_back("cli.delta", delta);
        f.emplace_back("cli.emin", format_double(emin));
        f.emplace_back("cli.emax", format_double(emax));
        f.emplace_back("cli.steps", std::to_string(steps));
        f.emplace_back("cli.orbit_source", orbit_source);
        f.emplace_back("cli.output", output);
        f.emplace_back("cli.format", format);
        f.emplace_back("cli.c", format_double(c));
        f.emplace_back("cli.E_b_eV", format_double(eb_ev));
        f.emplace_back("cli.B", format_double(b));
        f.emplace_back("cli.beta_min", format_double(beta_min));
        f.emplace_back("cli.energy", format_double(energy));
        f.emplace_back("cli.rho_start", format_double(rho_start));
        f.emplace_back("cli.rho_stop", format_double(rho_stop));
        f.emplace_back("cli.beta_start", beta_start.value_or(""));
        f.emplace_back("cli.beta_stop", beta_stop.value_or(""));
        return f;
    }
};

struct Resolved
{
    SweepContext ctx;
    std::optional<PiFraction> alpha_exact;
    std::optional<PiFraction> beta_exact;
};

Polarization parse_polarization(std::string const& text)
{
    if (text == "x")
        return Polarization::x();
    if (text == "y")
        return Polarization::y();
    if (text == "z")
        return Polarization::z();
    auto comma = text.find(',');
    if (comma == std::string::npos)
        fail(ErrorKind::domain, "--pol must be x, y, z or 'theta,phi', got '" + text + "'");
    return Polarization::from_angles(parse_angle(text.substr(0, comma)).radians,
                                     parse_angle(text.substr(comma + 1)).radians);
}

ReflectionModel parse_delta(std::string const& text)
{
    if (text == "hard")
        return ReflectionModel::hard();
    if (text == "soft")
        return ReflectionModel::soft();
    return ReflectionModel{parse_angle(text).radians};
}

Resolved resolve(RunConfig const& cfg)
{
    Resolved r;
    if (cfg.alpha)
    {
        auto a = parse_angle(*cfg.alpha);
        r.alpha_exact = a.exact;
        if (a.exact && a.exact->num() == 1)
            r.ctx.wedge = WedgeGeometry::from_n(static_cast<int>(a.exact->den()));
        else
            r.ctx.wedge = WedgeGeometry::from_angle(a.radians);
    }
    else
    {
        r.ctx.wedge = WedgeGeometry::from_n(cfg.n.value_or(5));
        r.alpha_exact = PiFraction(1, cfg.n.value_or(5));
    }

    auto beta = parse_angle(cfg.beta);
    r.beta_exact = beta.exact;
    r.ctx.ion = {cfg.rho, beta.radians};
    r.ctx.pol = parse_polarization(cfg.pol);
    r.ctx.refl = parse_delta(cfg.delta);
    r.ctx.consts = PhysicalConstants::from_ev(cfg.b, cfg.eb_ev, cfg.c);
    r.ctx.beta_min = cfg.beta_min;

    if (cfg.orbit_source.empty())
        r.ctx.source = r.ctx.wedge.n_integer() ? OrbitSource::analytic : OrbitSource::numeric;
    else if (cfg.orbit_source == "analytic")
        r.ctx.source = OrbitSource::analytic;
    else if (cfg.orbit_source == "numeric")
        r.ctx.source = OrbitSource::numeric;
    else
        fail(ErrorKind::domain, "--orbit-source must be analytic or numeric");
    return r;
}

Format parse_format(std::string const& text)
{
    if (text.empty() || text == "csv")
        return Format::csv;
    if (text == "json")
        return Format::json;
    fail(ErrorKind::domain, "--format must be csv or json, got '" + text + "'");
}

void emit(Dataset data, RunConfig const& cfg)
{
    auto fields = cfg.fields();
    data.provenance.insert(data.provenance.begin(), fields.begin(), fields.end());
    serialize(data, parse_format(cfg.format), cfg.output);
}

//---------------------------------------------------------------------------//
// orbits
//---------------------------------------------------------------------------//
std::string fixed(double v, int digits = 12)
{
    std::ostringstream os;
    os << std::setprecision(digits) << v;
    return os.str();
}

int cmd_orbits(RunConfig const& cfg, Resolved const& r, std::ostream& out)
{
    auto const& ctx = r.ctx;
    validate(ctx.wedge, ctx.ion);

    struct Row
    {
        ClosedOrbit orbit;
        std::string phi_out, phi_ret, length;
    };
    std::vector<Row> rows;
    std::vector<std::string> diagnostics;

    if (ctx.source == OrbitSource::analytic)
    {
        if (!ctx.wedge.n_integer())
            fail(ErrorKind::domain, "analytic orbits need an opening angle pi/N; use --orbit-source numeric");
        int n = *ctx.wedge.n_integer();
        if (r.beta_exact)
        {
            for (auto const& s : enumerate_symbolic(n, *r.beta_exact))
            {
                rows.push_back({to_numeric(s, ctx.ion.rho),
                                s.phi_out.str(),
                                s.phi_ret.str(),
                                "2rho|sin(" + s.length_arg.str() + ")|"});
            }
        }
        else
        {
            for (auto const& o : enumerate_analytic(n, ctx.ion))
                rows.push_back({o, fixed(o.phi_out), fixed(o.phi_ret), ""});
        }
    }
    else
    {
        auto found = find_numeric(ctx.wedge, ctx.ion, OrbitSearchConfig::defaults_for(ctx.wedge));
        for (auto const& o : found.orbits)
            rows.push_back({o, fixed(o.phi_out), fixed(o.phi_ret), ""});
        diagnostics = found.diagnostics;
    }

    std::ostringstream os;
    auto fmt = cfg.format.empty() ? std::string("table") : cfg.format;
    if (fmt == "table")
    {
        os << "# wedge-cot v" << kVersion << " closed orbits\n";
        os << "# alpha=" << (r.alpha_exact ? r.alpha_exact->str() : fixed(ctx.wedge.opening_angle()))
           << " rho=" << format_double(ctx.ion.rho)
           << " beta=" << (r.beta_exact ? r.beta_exact->str() : fixed(ctx.ion.beta))
           << " source=" << (ctx.source == OrbitSource::analytic ? "analytic" : "numeric") << '\n';
        for (auto const& d : diagnostics)
            os << "# " << d << '\n';
        os << std::left << std::setw(7) << "label" << std::setw(18) << "phi_out" << std::setw(18)
           << "phi_ret" << std::setw(4) << "m" << std::setw(24) << "L" << "L_a0\n";
        for (auto const& row : rows)
        {
            os << std::left << std::setw(7) << row.orbit.index << std::setw(18) << row.phi_out
               << std::setw(18) << row.phi_ret << std::setw(4) << row.orbit.m << std::setw(24)
               << (row.length.empty() ? "-" : row.length) << format_double(row.orbit.length) << '\n';
        }
    }
    else
    {
        Dataset d;
        d.columns = {"label", "phi_out", "phi_ret", "m", "L"};
        d.units = {"", "rad", "rad", "", "a0"};
        d.provenance = cfg.fields();
        auto ctx_fields = describe(ctx);
        d.provenance.insert(d.provenance.end(), ctx_fields.begin(), ctx_fields.end());
        for (auto const& row : rows)
        {
            d.rows.push_back({static_cast<double>(row.orbit.index),
                              row.orbit.phi_out,
                              row.orbit.phi_ret,
                              static_cast<double>(row.orbit.m),
                              row.orbit.length});
        }
        serialize(d, parse_format(fmt), cfg.output);
        return exit_ok;
    }

    if (cfg.output == "-")
    {
        out << os.str();
    }
    else
    {
        std::ofstream file(cfg.output, std::ios::binary | std::ios::trunc);
        if (!file || !(file << os.str()))
            fail(ErrorKind::io, "cannot write '" + cfg.output + "'");
    }
    return exit_ok;
}

//---------------------------------------------------------------------------//
int cmd_verify(Resolved const& r, std::ostream& out)
{
    auto results = run_oracle_checks(r.ctx.consts);
    bool ok = true;
    out << std::left << std::setw(44) << "check" << std::setw(14) << "achieved" << std::setw(12)
        << "tolerance" << "result\n";
    for (auto const& c : results)
    {
        out << std::left << std::setw(44) << c.name << std::setw(14) << std::setprecision(3)
            << std::scientific << c.achieved << std::setw(12) << c.tolerance << std::defaultfloat
            << (c.passed ? "PASS" : "FAIL") << '\n';
        ok = ok && c.passed;
    }
    return ok ? exit_ok : exit_numeric;
}

void add_common(CLI::App* sub, RunConfig& cfg)
{
    auto* n = sub->add_option("--n", cfg.n, "wedge opening angle pi/N (default N=5)");
    auto* a = sub->add_option("--alpha", cfg.alpha, "wedge opening angle (radians or pi/N form)");
    n->excludes(a);
    a->excludes(n);
    sub->add_option("--rho", cfg.rho, "ion distance from the wedge axis [a0]");
    sub->add_option("--beta", cfg.beta, "ion angle from the left surface (radians or pi/15 form)");
    sub->add_option("--orbit-source", cfg.orbit_source, "analytic | numeric");
    sub->add_option("--output,-o", cfg.output, "output path ('-' for stdout)");
    sub->add_option("--format", cfg.format, "csv | json (orbits also: table)");
    sub->add_option("--c", cfg.c, "speed of light [a.u.]");
    sub->add_option("--eb-ev", cfg.eb_ev, "binding energy [eV]");
    sub->add_option("--B", cfg.b, "bound-state normalization");
    sub->add_option("--beta-min", cfg.beta_min, "guard distance of beta from either surface");
}

void add_physics(CLI::App* sub, RunConfig& cfg)
{
    sub->add_option("--pol", cfg.pol, "x | y | z | 'theta,phi'");
    sub->add_option("--delta", cfg.delta, "hard | soft | phase loss in radians");
}
}  // namespace

//---------------------------------------------------------------------------//
int run(std::vector<std::string> const& args, std::ostream& out, std::ostream& err)
{
    RunConfig cfg;
    CLI::App app{"Closed-orbit photodetachment cross sections of H- inside a wedge", "wedge-cot"};
    app.require_subcommand(1);

    auto* orbits = app.add_subcommand("orbits", "print the closed-orbit catalog");
    add_common(orbits, cfg);

    auto* spectrum = app.add_subcommand("spectrum", "cross section vs photon energy");
    auto* decompose = app.add_subcommand("decompose", "per-orbit oscillatory terms vs photon energy");
    for (auto* sub : {spectrum, decompose})
    {
        add_common(sub, cfg);
        add_physics(sub, cfg);
        sub->add_option("--emin", cfg.emin, "lowest photon energy [eV]");
        sub->add_option("--emax", cfg.emax, "highest photon energy [eV]");
        sub->add_option("--steps", cfg.steps, "grid points (default 2048)");
    }

    auto* sweep_rho = app.add_subcommand("sweep-rho", "cross section vs rho at fixed photon energy");
    add_common(sweep_rho, cfg);
    add_physics(sweep_rho, cfg);
    sweep_rho->add_option("--energy", cfg.energy, "photon energy [eV]");
    sweep_rho->add_option("--rho-start", cfg.rho_start, "first rho [a0]");
    sweep_rho->add_option("--rho-stop", cfg.rho_stop, "last rho [a0]");
    sweep_rho->add_option("--steps", cfg.steps, "grid points (default 1024)");

    auto* sweep_beta = app.add_subcommand("sweep-beta", "cross section vs beta at fixed photon energy");
    add_common(sweep_beta, cfg);
    add_physics(sweep_beta, cfg);
    sweep_beta->add_option("--energy", cfg.energy, "photon energy [eV]");
    sweep_beta->add_option("--beta-start", cfg.beta_start, "first beta (default beta_min)");
    sweep_beta->add_option("--beta-stop", cfg.beta_stop, "last beta (default alpha - beta_min)");
    sweep_beta->add_option("--steps", cfg.steps, "grid points (default 1024)");

    auto* polmap = app.add_subcommand("polmap", "oscillating part vs polarization direction");
    add_common(polmap, cfg);
    polmap->add_option("--delta", cfg.delta, "hard | soft | phase loss in radians");
    polmap->add_option("--energy", cfg.energy, "photon energy [eV]");
    polmap->add_option("--steps", cfg.steps, "grid points per angle (default 61)");

    auto* verify = app.add_subcommand("verify", "run the numeric oracle checks");
    verify->add_option("--c", cfg.c, "speed of light [a.u.]");
    verify->add_option("--eb-ev", cfg.eb_ev, "binding energy [eV]");
    verify->add_option("--B", cfg.b, "bound-state normalization");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    if (!reversed.empty())
        reversed.pop_back();  // program name
    try
    {
        app.parse(reversed);
    }
    catch (CLI::CallForHelp const&)
    {
        out << app.help();
        return exit_ok;
    }
    catch (CLI::CallForAllHelp const&)
    {
        out << app.help("", CLI::AppFormatMode::All);
        return exit_ok;
    }
    catch (CLI::ParseError const& e)
    {
        err << "error[usage]: " << e.what() << '\n' << app.help();
        return exit_usage;
    }

    try
    {
        auto* sub = app.get_subcommands().front();
        cfg.subcommand = sub->get_name();
        auto r = resolve(cfg);
        auto& ctx = r.ctx;
        auto steps_or = [&](int fallback) { return cfg.steps > 0 ? cfg.steps : fallback; };

        if (sub == orbits)
            return cmd_orbits(cfg, r, out);
        if (sub == verify)
            return cmd_verify(r, out);
        if (sub == spectrum)
            emit(energy_sweep({cfg.emin, cfg.emax, steps_or(2048)}, ctx), cfg);
        else if (sub == decompose)
            emit(orbit_decomposition({cfg.emin, cfg.emax, steps_or(2048)}, ctx), cfg);
        else if (sub == sweep_rho)
        {
            ctx.ion.rho = cfg.rho_start;
            emit(position_sweep(PositionVariable::rho, {cfg.rho_start, cfg.rho_stop, steps_or(1024)},
                                cfg.energy, ctx),
                 cfg);
        }
        else if (sub == sweep_beta)
        {
            double alpha = ctx.wedge.opening_angle();
            double lo = cfg.beta_start ? parse_angle(*cfg.beta_start).radians : ctx.beta_min;
            double hi = cfg.beta_stop ? parse_angle(*cfg.beta_stop).radians : alpha - ctx.beta_min;
            ctx.ion.beta = lo;
            emit(position_sweep(PositionVariable::beta, {lo, hi, steps_or(1024)}, cfg.energy, ctx), cfg);
        }
        else if (sub == polmap)
        {
            int s = steps_or(61);
            emit(polarization_map({0.0, kPi, s}, {0.0, 2 * kPi, s}, cfg.energy, ctx), cfg);
        }
        return exit_ok;
    }
    catch (Error const& e)
    {
        err << "error[" << to_string(e.kind()) << "]: " << e.what() << '\n';
        return is_validation_error(e.kind()) ? exit_usage : exit_numeric;
    }
    catch (std::exception const& e)
    {
        err << "error[internal]: " << e.what() << '\n';
        return exit_numeric;
    }
}

}  // namespace wedgecot::cli
