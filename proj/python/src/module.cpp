// Copyright 2026 The alpharing Authors
// SPDX-License-Identifier: Apache-2.0
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "alpharing/cli.hpp"
#include "alpharing/config.hpp"
#include "alpharing/evolve.hpp"
#include "alpharing/kernel.hpp"
#include "alpharing/parallel.hpp"
#include "alpharing/state.hpp"
#include "alpharing/velocity.hpp"

namespace py = pybind11;
using namespace alpharing;

namespace
{
using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

std::vector<Vec3> to_points(const Array& a)
{
    if (a.ndim() != 2 || a.shape(1) != 3)
        throw std::invalid_argument("points must have shape (n, 3)");
    const auto v = a.unchecked<2>();
    std::vector<Vec3> out(std::size_t(a.shape(0)));
    for (py::ssize_t i = 0; i < a.shape(0); ++i)
        out[std::size_t(i)] = {v(i, 0), v(i, 1), v(i, 2)};
    return out;
}

Array from_points(const std::vector<Vec3>& p)
{
    Array out({py::ssize_t(p.size()), py::ssize_t(3)});
    auto v = out.mutable_unchecked<2>();
    for (std::size_t i = 0; i < p.size(); ++i)
    {
        v(i, 0) = p[i].x;
        v(i, 1) = p[i].y;
        v(i, 2) = p[i].z;
    }
    return out;
}

Array from_matrix(const Mat3& m)
{
    Array out({py::ssize_t(3), py::ssize_t(3)});
    auto v = out.mutable_unchecked<2>();
    for (int i = 0; i < 3; ++i)
        for (int k = 0; k < 3; ++k)
            v(i, k) = m[i][k];
    return out;
}

Vec3 to_point(const Array& a)
{
    if (a.ndim() != 1 || a.shape(0) != 3)
        throw std::invalid_argument("point must have shape (3,)");
    return {a.at(0), a.at(1), a.at(2)};
}
} // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Lagrangian vortex-ring solver for the axisymmetric Euler-alpha equations.";

    auto k = m.def_submodule("kernel", "Regularized kernel and its constants.");
    k.def("f", &kernel::f, py::arg("z"));
    k.def("f_prime", &kernel::f_prime, py::arg("z"));
    k.def(
        "f_alpha", [](double s, double a) { return kernel::f_alpha(s, Alpha(a)); }, py::arg("s"),
        py::arg("alpha"));
    k.def(
        "green_alpha", [](double s, double a) { return kernel::green_alpha(s, Alpha(a)); },
        py::arg("s"), py::arg("alpha"));
    k.def(
        "bound_scan",
        [](int points_per_decade) {
            const auto c = kernel::bound_scan(points_per_decade);
            py::dict d;
            d["m0"] = c.m0;
            d["m1"] = c.m1;
            d["mf1"] = c.mf1;
            d["argmax_m0"] = c.argmax_m0;
            d["argmax_m1"] = c.argmax_m1;
            d["argmax_mf1"] = c.argmax_mf1;
            d["refinement_delta"] = c.refinement_delta;
            return d;
        },
        py::arg("points_per_decade") = 2000);

    py::class_<VortexRing>(m, "VortexRing")
        .def(py::init([](double r, double z, double g, double vol, int n_theta) {
                 VortexRing ring{r, z, g, vol, n_theta};
                 validate(ring);
                 return ring;
             }),
             py::arg("r"), py::arg("z"), py::arg("g"), py::arg("vol"), py::arg("n_theta") = 16)
        .def_readonly("r", &VortexRing::r)
        .def_readonly("z", &VortexRing::z)
        .def_readonly("g", &VortexRing::g)
        .def_readonly("vol", &VortexRing::vol)
        .def_readonly("n_theta", &VortexRing::n_theta)
        .def_property_readonly("weight", &VortexRing::weight)
        .def("__repr__", [](const VortexRing& r) {
            std::ostringstream s;
            s << "VortexRing(r=" << r.r << ", z=" << r.z << ", g=" << r.g << ", vol=" << r.vol
              << ", n_theta=" << r.n_theta << ")";
            return s.str();
        });

    py::class_<ParticleCloud>(m, "ParticleCloud")
        .def(py::init([](std::vector<VortexRing> rings, double alpha, double t) {
                 return ParticleCloud(std::move(rings), Alpha(alpha), t);
             }),
             py::arg("rings"), py::arg("alpha"), py::arg("t") = 0.0)
        .def_property_readonly("rings", &ParticleCloud::rings)
        .def_property_readonly("alpha", [](const ParticleCloud& c) { return c.alpha().value(); })
        .def_property_readonly("time", &ParticleCloud::time)
        .def("__len__", &ParticleCloud::size)
        .def("positions",
             [](const ParticleCloud& c) {
                 const auto p = c.positions();
                 Array out({py::ssize_t(p.size()), py::ssize_t(2)});
                 auto v = out.mutable_unchecked<2>();
                 for (std::size_t j = 0; j < p.size(); ++j)
                 {
                     v(j, 0) = p[j].r;
                     v(j, 1) = p[j].z;
                 }
                 return out;
             })
        .def("lp_norm", [](const ParticleCloud& c, double p) { return lp_norm(c, p); },
             py::arg("p"));

    m.def(
        "velocity",
        [](const ParticleCloud& c, const Array& points) {
            const auto p = to_points(points);
            std::vector<Vec3> u;
            {
                py::gil_scoped_release release;
                u = eval_velocity_batch(p, c);
            }
            return from_points(u);
        },
        py::arg("cloud"), py::arg("points"), "Velocity at an (n, 3) array of points.");
    m.def(
        "gradient",
        [](const ParticleCloud& c, const Array& x) { return from_matrix(eval_grad(to_point(x), c)); },
        py::arg("cloud"), py::arg("point"), "Velocity gradient d u_i / d x_k at a point.");
    m.def(
        "swirl",
        [](const ParticleCloud& c, const Array& x) { return swirl_component(to_point(x), c); },
        py::arg("cloud"), py::arg("point"));

    m.def(
        "advance",
        [](const ParticleCloud& c, double T, double dt, const std::string& evolver) {
            AdvanceControls ctl;
            ctl.dt = dt;
            if (evolver == "picard")
                ctl.evolver = EvolverKind::picard;
            else if (evolver != "rk4")
                throw std::invalid_argument("evolver must be 'rk4' or 'picard'");
            py::gil_scoped_release release;
            return advance(c, T, ctl).cloud;
        },
        py::arg("cloud"), py::arg("T"), py::arg("dt"), py::arg("evolver") = "rk4");

    m.def(
        "initial_cloud",
        [](const std::string& path) { return build_initial_cloud(load_config(path)); },
        py::arg("config_path"), "Initial cloud described by a configuration file.");

    m.def("worker_count", &worker_count);
    m.def("set_worker_count", &set_worker_count, py::arg("n"));

    m.def(
        "cli",
        [](const std::vector<std::string>& args) {
            std::ostringstream out, err;
            int code;
            {
                py::gil_scoped_release release;
                code = cli_main(args, out, err);
            }
            return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"), "Run a command-line invocation; returns (exit code, stdout, stderr).");
}
