#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "wedgecot/cli.hpp"
#include "wedgecot/dataset.hpp"
#include "wedgecot/errors.hpp"
#include "wedgecot/oracle.hpp"
#include "wedgecot/orbits.hpp"
#include "wedgecot/spectrum.hpp"
#include "wedgecot/sweeps.hpp"
#include "wedgecot/verify.hpp"

namespace py = pybind11;
using namespace wedgecot;

namespace
{
py::array_t<double> rows_array(Dataset const& d)
{
    py::ssize_t const n = static_cast<py::ssize_t>(d.rows.size());
    py::ssize_t const m = static_cast<py::ssize_t>(d.columns.size());
    py::array_t<double> out({n, m});
    auto v = out.mutable_unchecked<2>();
    for (py::ssize_t i = 0; i < n; ++i)
        for (py::ssize_t j = 0; j < m; ++j)
            v(i, j) = d.rows[i][j];
    return out;
}

template<class Writer>
std::string render(Dataset const& d, Writer write)
{
    std::ostringstream os;
    write(d, os);
    return os.str();
}

SweepContext make_context(WedgeGeometry const& wedge,
                          IonPosition const& ion,
                          Polarization const& pol,
                          ReflectionModel const& refl,
                          OrbitSource source,
                          PhysicalConstants const& consts,
                          double beta_min)
{
    SweepContext ctx;
    ctx.wedge = wedge;
    ctx.ion = ion;
    ctx.pol = pol;
    ctx.refl = refl;
    ctx.source = source;
    ctx.consts = consts;
    ctx.beta_min = beta_min;
    return ctx;
}

void bind_types(py::module_& m)
{
    py::enum_<ErrorKind>(m, "ErrorKind")
        .value("domain", ErrorKind::domain)
        .value("below_threshold", ErrorKind::below_threshold)
        .value("ion_too_close", ErrorKind::ion_too_close)
        .value("degenerate_incidence", ErrorKind::degenerate_incidence)
        .value("apex_singularity", ErrorKind::apex_singularity)
        .value("zero_length_orbit", ErrorKind::zero_length_orbit)
        .value("convergence", ErrorKind::convergence)
        .value("io", ErrorKind::io);

    py::class_<WedgeGeometry>(m, "WedgeGeometry")
        .def_static("from_n", &WedgeGeometry::from_n, py::arg("n"))
        .def_static("from_angle", &WedgeGeometry::from_angle, py::arg("alpha"))
        .def_property_readonly("opening_angle", &WedgeGeometry::opening_angle)
        .def_property_readonly("n_integer", &WedgeGeometry::n_integer)
        .def("__repr__", [](WedgeGeometry const& w) {
            std::ostringstream os;
            os << "WedgeGeometry(alpha=" << w.opening_angle() << ")";
            return os.str();
        });

    py::class_<IonPosition>(m, "IonPosition")
        .def(py::init([](double rho, double beta) { return IonPosition{rho, beta}; }), py::arg("rho"), py::arg("beta"))
        .def_readwrite("rho", &IonPosition::rho)
        .def_readwrite("beta", &IonPosition::beta);

    py::class_<ClosedOrbit>(m, "ClosedOrbit")
        .def_readonly("index", &ClosedOrbit::index)
        .def_readonly("phi_out", &ClosedOrbit::phi_out)
        .def_readonly("phi_ret", &ClosedOrbit::phi_ret)
        .def_readonly("m", &ClosedOrbit::m)
        .def_readonly("length", &ClosedOrbit::length)
        .def("__repr__", [](ClosedOrbit const& o) {
            std::ostringstream os;
            os << "ClosedOrbit(index=" << o.index << ", phi_out=" << o.phi_out << ", phi_ret=" << o.phi_ret
               << ", m=" << o.m << ", length=" << o.length << ")";
            return os.str();
        });

    py::class_<Polarization>(m, "Polarization")
        .def_static("x", &Polarization::x)
        .def_static("y", &Polarization::y)
        .def_static("z", &Polarization::z)
        .def_static("from_angles", &Polarization::from_angles, py::arg("theta"), py::arg("phi"))
        .def_property_readonly("theta", &Polarization::theta)
        .def_property_readonly("phi", &Polarization::phi)
        .def("unit_vector", &Polarization::unit_vector);

    py::class_<ReflectionModel>(m, "ReflectionModel")
        .def(py::init([](double delta) { return ReflectionModel{delta}; }), py::arg("delta"))
        .def_static("hard", &ReflectionModel::hard)
        .def_static("soft", &ReflectionModel::soft)
        .def_readwrite("delta", &ReflectionModel::delta);

    py::enum_<OrbitSource>(m, "OrbitSource")
        .value("analytic", OrbitSource::analytic)
        .value("numeric", OrbitSource::numeric);

    py::class_<PhysicalConstants>(m, "PhysicalConstants")
        .def(py::init<>())
        .def_static("from_ev",
                    &PhysicalConstants::from_ev,
                    py::arg("normalization"),
                    py::arg("binding_energy_ev"),
                    py::arg("speed_of_light"),
                    py::arg("ev_per_hartree") = PhysicalConstants::default_ev_per_hartree)
        .def_readwrite("normalization", &PhysicalConstants::normalization)
        .def_readwrite("binding_energy", &PhysicalConstants::binding_energy)
        .def_readwrite("speed_of_light", &PhysicalConstants::speed_of_light)
        .def_readwrite("ev_per_hartree", &PhysicalConstants::ev_per_hartree)
        .def_property_readonly("binding_energy_ev", &PhysicalConstants::binding_energy_ev)
        .def_property_readonly("k_b", &PhysicalConstants::k_b);

    py::class_<SpectrumPoint>(m, "SpectrumPoint")
        .def_readonly("photon_energy", &SpectrumPoint::photon_energy)
        .def_readonly("energy", &SpectrumPoint::energy)
        .def_readonly("k", &SpectrumPoint::k)
        .def_readonly("sigma0", &SpectrumPoint::sigma0)
        .def_readonly("sigma_osc", &SpectrumPoint::sigma_osc)
        .def_readonly("sigma", &SpectrumPoint::sigma);

    py::class_<Dataset>(m, "Dataset")
        .def_readonly("columns", &Dataset::columns)
        .def_readonly("units", &Dataset::units)
        .def_readonly("provenance", &Dataset::provenance)
        .def_property_readonly("header", &Dataset::header)
        .def_property_readonly("rows", &rows_array)
        .def("to_csv", [](Dataset const& d) { return render(d, write_csv); })
        .def("to_json", [](Dataset const& d) { return render(d, write_json); });

    py::class_<CheckResult>(m, "CheckResult")
        .def_readonly("name", &CheckResult::name)
        .def_readonly("achieved", &CheckResult::achieved)
        .def_readonly("tolerance", &CheckResult::tolerance)
        .def_readonly("passed", &CheckResult::passed);
}

void bind_operations(py::module_& m)
{
    auto const pc = PhysicalConstants{};

    m.def("enumerate_analytic", &enumerate_analytic, py::arg("n"), py::arg("ion"));
    m.def(
        "find_numeric",
        [](WedgeGeometry const& wedge, IonPosition const& ion, std::optional<int> max_reflections) {
            auto cfg = max_reflections ? OrbitSearchConfig::with_max_reflections(*max_reflections)
                                       : OrbitSearchConfig::defaults_for(wedge);
            auto res = find_numeric(wedge, ion, cfg);
            return py::make_tuple(res.orbits, res.diagnostics);
        },
        py::arg("wedge"),
        py::arg("ion"),
        py::arg("max_reflections") = py::none(),
        "Shooting search; returns (orbits, diagnostics).");

    m.def("energy_conversion",
          [](double e, PhysicalConstants const& c) {
              auto r = energy_conversion(e, c);
              return py::make_tuple(r.energy, r.k);
          },
          py::arg("photon_energy_ev"),
          py::arg("consts") = pc);
    m.def("sigma_background", &sigma_background, py::arg("energy"), py::arg("consts") = pc);
    m.def("angular_factor", &angular_factor, py::arg("theta"), py::arg("phi"), py::arg("pol"));
    m.def("orbit_term",
          &orbit_term,
          py::arg("orbit"),
          py::arg("k"),
          py::arg("pol"),
          py::arg("refl") = ReflectionModel::hard(),
          py::arg("consts") = pc);
    m.def("sigma_total",
          &sigma_total,
          py::arg("photon_energy_ev"),
          py::arg("wedge"),
          py::arg("ion"),
          py::arg("pol"),
          py::arg("refl") = ReflectionModel::hard(),
          py::arg("source") = OrbitSource::analytic,
          py::arg("consts") = pc,
          py::arg("beta_min") = kDefaultBetaMin);
    m.def("sigma_x_closed_form",
          &sigma_x_closed_form,
          py::arg("photon_energy_ev"),
          py::arg("n"),
          py::arg("ion"),
          py::arg("consts") = pc,
          py::arg("refl") = ReflectionModel::hard());
    m.def("sigma_y_closed_form",
          &sigma_y_closed_form,
          py::arg("photon_energy_ev"),
          py::arg("n"),
          py::arg("ion"),
          py::arg("consts") = pc,
          py::arg("refl") = ReflectionModel::hard());
    m.def("sigma_z_closed_form", &sigma_z_closed_form, py::arg("photon_energy_ev"), py::arg("consts") = pc);

    m.def("radial_integral", &oracle::radial_integral, py::arg("k"), py::arg("consts") = pc);
    m.def("angular_integral_check", &oracle::angular_integral_check, py::arg("pol"), py::arg("direction"));
    m.def("overlap_closed_form",
          &oracle::overlap_closed_form,
          py::arg("k"),
          py::arg("pol"),
          py::arg("direction"),
          py::arg("consts") = pc);
    m.def(
        "overlap_quadrature",
        [](double k, Polarization const& pol, oracle::Vec3 const& dir, PhysicalConstants const& c) {
            auto r = oracle::overlap_quadrature(k, pol, dir, oracle::QuadratureSpec::defaults(c), c);
            return py::make_tuple(r.value, r.error_estimate, r.scale);
        },
        py::arg("k"),
        py::arg("pol"),
        py::arg("direction"),
        py::arg("consts") = pc,
        "Returns (value, error_estimate, scale).");
    m.def(
        "action_spectrum",
        [](std::vector<double> const& k, std::vector<double> const& values, std::string const& window) {
            if (k.size() != values.size())
                fail(ErrorKind::domain, "k and values must have the same length");
            oracle::ActionSpectrumOptions opts;
            if (window == "none")
                opts.window = oracle::Window::none;
            else if (window == "blackman_harris")
                opts.window = oracle::Window::blackman_harris;
            else if (window != "hann")
                fail(ErrorKind::domain, "window must be none, hann or blackman_harris");
            std::vector<oracle::SpectralSample> samples;
            for (std::size_t i = 0; i < k.size(); ++i)
                samples.push_back({k[i], values[i]});
            auto s = oracle::action_spectrum(samples, opts);
            py::list peaks;
            for (auto const& p : s.peaks)
                peaks.append(py::make_tuple(p.length, p.magnitude));
            py::dict out;
            out["lengths"] = py::array_t<double>(s.lengths.size(), s.lengths.data());
            out["magnitudes"] = py::array_t<double>(s.magnitudes.size(), s.magnitudes.data());
            out["peaks"] = peaks;
            out["bin_width"] = s.bin_width;
            return out;
        },
        py::arg("k"),
        py::arg("values"),
        py::arg("window") = "hann");
    m.def("reduced_oscillation", &oracle::reduced_oscillation, py::arg("point"));

    m.def(
        "energy_sweep",
        [](double emin, double emax, int steps, WedgeGeometry const& w, IonPosition const& ion, Polarization const& pol,
           ReflectionModel const& refl, OrbitSource src, PhysicalConstants const& c, double bmin) {
            return energy_sweep({emin, emax, steps}, make_context(w, ion, pol, refl, src, c, bmin));
        },
        py::arg("emin") = 0.76, py::arg("emax") = 1.4, py::arg("steps") = 2048,
        py::arg("wedge") = WedgeGeometry::from_n(5), py::arg("ion") = IonPosition{200.0, 3.141592653589793 / 15},
        py::arg("pol") = Polarization::x(), py::arg("refl") = ReflectionModel::hard(),
        py::arg("source") = OrbitSource::analytic, py::arg("consts") = pc, py::arg("beta_min") = kDefaultBetaMin);
    m.def(
        "orbit_decomposition",
        [](double emin, double emax, int steps, WedgeGeometry const& w, IonPosition const& ion, Polarization const& pol,
           ReflectionModel const& refl, OrbitSource src, PhysicalConstants const& c, double bmin) {
            return orbit_decomposition({emin, emax, steps}, make_context(w, ion, pol, refl, src, c, bmin));
        },
        py::arg("emin") = 0.76, py::arg("emax") = 1.4, py::arg("steps") = 2048,
        py::arg("wedge") = WedgeGeometry::from_n(5), py::arg("ion") = IonPosition{200.0, 3.141592653589793 / 15},
        py::arg("pol") = Polarization::x(), py::arg("refl") = ReflectionModel::hard(),
        py::arg("source") = OrbitSource::analytic, py::arg("consts") = pc, py::arg("beta_min") = kDefaultBetaMin);
    m.def(
        "position_sweep",
        [](std::string const& variable, double start, double stop, int steps, double energy, WedgeGeometry const& w,
           IonPosition const& ion, Polarization const& pol, ReflectionModel const& refl, OrbitSource src,
           PhysicalConstants const& c, double bmin) {
            PositionVariable v;
            if (variable == "rho")
                v = PositionVariable::rho;
            else if (variable == "beta")
                v = PositionVariable::beta;
            else
                fail(ErrorKind::domain, "variable must be 'rho' or 'beta'");
            return position_sweep(v, {start, stop, steps}, energy, make_context(w, ion, pol, refl, src, c, bmin));
        },
        py::arg("variable"), py::arg("start"), py::arg("stop"), py::arg("steps"), py::arg("photon_energy_ev") = 1.0,
        py::arg("wedge") = WedgeGeometry::from_n(5), py::arg("ion") = IonPosition{200.0, 3.141592653589793 / 15},
        py::arg("pol") = Polarization::x(), py::arg("refl") = ReflectionModel::hard(),
        py::arg("source") = OrbitSource::analytic, py::arg("consts") = pc, py::arg("beta_min") = kDefaultBetaMin);
    m.def(
        "polarization_map",
        [](int steps, double energy, WedgeGeometry const& w, IonPosition const& ion, ReflectionModel const& refl,
           OrbitSource src, PhysicalConstants const& c, double bmin) {
            return polarization_map({0.0, 3.141592653589793, steps}, {0.0, 2 * 3.141592653589793, steps}, energy,
                                    make_context(w, ion, Polarization::x(), refl, src, c, bmin));
        },
        py::arg("steps") = 61, py::arg("photon_energy_ev") = 1.0, py::arg("wedge") = WedgeGeometry::from_n(5),
        py::arg("ion") = IonPosition{200.0, 3.141592653589793 / 15}, py::arg("refl") = ReflectionModel::hard(),
        py::arg("source") = OrbitSource::analytic, py::arg("consts") = pc, py::arg("beta_min") = kDefaultBetaMin);

    m.def("run_oracle_checks", &run_oracle_checks, py::arg("consts") = pc);
    m.def(
        "run_cli",
        [](std::vector<std::string> args) {
            args.insert(args.begin(), "wedge-cot");
            std::ostringstream out, err;
            int code = cli::run(args, out, err);
            return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"),
        "Run the command-line front end in process; returns (exit_code, stdout, stderr).");
}
}  // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Closed-orbit photodetachment cross sections of H- in a wedge";
    m.attr("__version__") = kVersion;

    bind_types(m);

    py::exception<Error>(m, "WedgeCotError");
    py::register_exception_translator([](std::exception_ptr p) {
        try
        {
            if (p)
                std::rethrow_exception(p);
        }
        catch (Error const& e)
        {
            py::object type = py::module_::import("wedge_cot._core").attr("WedgeCotError");
            py::object exc = type(py::str(e.what()));
            exc.attr("kind") = py::cast(e.kind());
            PyErr_SetObject(type.ptr(), exc.ptr());
        }
    });

    bind_operations(m);
}
