#include <sstream>

#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "radbound/bounds.hpp"
#include "radbound/cli.hpp"
#include "radbound/error.hpp"
#include "radbound/estimator.hpp"
#include "radbound/io.hpp"
#include "radbound/network.hpp"
#include "radbound/norms.hpp"
#include "radbound/subsequence.hpp"
#include "radbound/sweep.hpp"

namespace py = pybind11;
using namespace radbound;

namespace {

using Breakpoints = std::vector<std::size_t>;

py::dict diagnostic_dict(const LayerDiagnostic& d) {
    py::dict out;
    out["frobenius"] = d.frobenius;
    out["operator_norm"] = d.operator_norm;
    out["frobenius_cap"] = d.frobenius_cap;
    out["operator_cap"] = d.operator_cap;
    out["frobenius_ok"] = d.frobenius_ok;
    out["operator_ok"] = d.operator_ok;
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Norm-based Rademacher complexity bounds for ReLU networks";

    auto error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<ShapeError>(m, "ShapeError", error.ptr());
    py::register_exception<StructuralError>(m, "StructuralError", error.ptr());
    py::register_exception<NumericError>(m, "NumericError", error.ptr());
    py::register_exception<DegenerateBudgetError>(m, "DegenerateBudgetError", error.ptr());
    py::register_exception<ModeError>(m, "ModeError", error.ptr());
    py::register_exception<ConvergenceError>(m, "ConvergenceError", error.ptr());
    py::register_exception<FormatError>(m, "FormatError", error.ptr());

    py::class_<NetworkSpec>(m, "NetworkSpec")
        .def(py::init<std::vector<Matrix>>(), py::arg("layers"))
        .def_property_readonly("depth", &NetworkSpec::depth)
        .def_property_readonly("input_dim", &NetworkSpec::input_dim)
        .def_property_readonly("layers", &NetworkSpec::layers)
        .def_property_readonly("widths", &NetworkSpec::widths)
        .def("to_json", &network_to_text)
        .def_static("from_json", [](const std::string& text) {
            return network_from_json(nlohmann::json::parse(text));
        });

    // Python callers pass one point per row.
    py::class_<InputSet>(m, "InputSet")
        .def(py::init([](const Matrix& rows, double radius) { return InputSet(rows.transpose(), radius); }),
             py::arg("points"), py::arg("B"))
        .def_property_readonly("n", &InputSet::size)
        .def_property_readonly("dim", &InputSet::dim)
        .def_property_readonly("B", &InputSet::radius)
        .def_property_readonly("points", [](const InputSet& s) { return Matrix(s.points().transpose()); });

    py::class_<NormBudget>(m, "NormBudget")
        .def(py::init<std::vector<double>, std::vector<double>, double>(), py::arg("M_F"), py::arg("M_op"),
             py::arg("B"))
        .def_property_readonly("depth", &NormBudget::depth)
        .def_property_readonly("M_F", &NormBudget::frobenius_caps)
        .def_property_readonly("M_op", &NormBudget::operator_caps)
        .def_property_readonly("B", &NormBudget::radius);

    py::class_<NormProfile>(m, "NormProfile")
        .def(py::init<const NormBudget&>(), py::arg("budget"))
        .def_property_readonly("depth", &NormProfile::depth)
        .def_property_readonly("R", &NormProfile::ratios)
        .def_property_readonly("P_F", [](const NormProfile& p) {
            std::vector<double> out;
            for (std::size_t d = 0; d <= p.depth(); ++d) out.push_back(p.frobenius_product(d));
            return out;
        })
        .def_property_readonly("P_op", [](const NormProfile& p) {
            std::vector<double> out;
            for (std::size_t d = 0; d <= p.depth(); ++d) out.push_back(p.operator_product(d));
            return out;
        })
        .def("ratio_sum", &NormProfile::ratio_sum);

    m.def("forward", &forward, py::arg("net"), py::arg("x"));
    m.def("forward_batch", [](const NetworkSpec& net, const Matrix& rows) {
        return Eigen::VectorXd(forward_batch(net, rows.transpose()).transpose());
    }, py::arg("net"), py::arg("points"));
    m.def("validate_membership", [](const NetworkSpec& net, const NormBudget& budget) {
        const MembershipReport report = validate_membership(net, budget);
        py::list layers;
        for (const auto& d : report.layers) layers.append(diagnostic_dict(d));
        return py::make_tuple(report.member, layers);
    }, py::arg("net"), py::arg("budget"));

    m.def("frobenius_norm", [](const Matrix& w) { return frobenius_norm(w); });
    m.def("operator_norm", [](const Matrix& w, double tol) { return operator_norm(w, tol); }, py::arg("m"),
          py::arg("rel_tol") = kDefaultOperatorTolerance);
    m.def("budget_from_network", &budget_from_network, py::arg("net"), py::arg("slack") = 0.0, py::arg("B") = 1.0);
    m.def("norm_profile", &norm_profile, py::arg("budget"));

    m.def("subsequence_cost", [](const NormProfile& p, const Breakpoints& seq) {
        return subsequence_cost(p, Subsequence(seq));
    }, py::arg("profile"), py::arg("seq"));
    m.def("dyadic_subsequence", [](const NormProfile& p) { return dyadic_subsequence(p).breakpoints(); });
    m.def("optimal_subsequence", [](const NormProfile& p) { return optimal_subsequence(p).breakpoints(); });
    m.def("brute_force_subsequence", [](const NormProfile& p) { return brute_force_subsequence(p).breakpoints(); });

    m.def("composite_bound", [](const NormProfile& p, const Breakpoints& seq, std::size_t n, double radius) {
        return composite_bound(p, Subsequence(seq), n, radius);
    }, py::arg("profile"), py::arg("seq"), py::arg("n"), py::arg("B"));
    m.def("main_bound", &main_bound, py::arg("profile"), py::arg("n"), py::arg("B"));
    m.def("baseline_bound", &baseline_bound, py::arg("profile"), py::arg("n"), py::arg("B"));

    py::class_<EstimatorConfig>(m, "EstimatorConfig")
        .def(py::init<>())
        .def_readwrite("restarts", &EstimatorConfig::restarts)
        .def_readwrite("steps", &EstimatorConfig::steps)
        .def_readwrite("step_size", &EstimatorConfig::step_size)
        .def_readwrite("widths", &EstimatorConfig::widths)
        .def_readwrite("seed", &EstimatorConfig::seed)
        .def_readwrite("mc_samples", &EstimatorConfig::mc_samples)
        .def_readwrite("threads", &EstimatorConfig::threads)
        .def_property("mode", [](const EstimatorConfig& c) { return std::string(to_string(c.mode)); },
                      [](EstimatorConfig& c, const std::string& name) { c.mode = parse_estimator_mode(name); });

    m.def("correlation", [](const NetworkSpec& net, const InputSet& inputs, const std::vector<int>& eps) {
        return correlation(net, inputs, SignVector(eps));
    }, py::arg("net"), py::arg("inputs"), py::arg("eps"));
    m.def("project_to_budget", &project_to_budget, py::arg("net"), py::arg("budget"));
    m.def("estimate_sup", [](const InputSet& inputs, const std::vector<int>& eps, const NormBudget& budget,
                             const EstimatorConfig& cfg) {
        SupEstimate est = [&] {
            py::gil_scoped_release release;
            return estimate_sup(inputs, SignVector(eps), budget, cfg);
        }();
        return py::make_tuple(est.value, est.witness);
    }, py::arg("inputs"), py::arg("eps"), py::arg("budget"), py::arg("cfg"));
    m.def("empirical_rademacher", [](const InputSet& inputs, const NormBudget& budget, const EstimatorConfig& cfg) {
        RademacherEstimate est = [&] {
            py::gil_scoped_release release;
            return empirical_rademacher(inputs, budget, cfg);
        }();
        py::dict out;
        out["estimate"] = est.mean;
        out["mode"] = std::string(to_string(est.mode));
        out["stderr"] = est.standard_error ? py::cast(*est.standard_error) : py::none();
        out["sign_vectors"] = est.sign_vectors;
        out["witness"] = est.best_witness ? py::cast(*est.best_witness) : py::none();
        return out;
    }, py::arg("inputs"), py::arg("budget"), py::arg("cfg"));

    m.def("make_family_network", [](const std::string& family, std::size_t depth, Eigen::Index width,
                                    double frobenius, std::uint64_t seed) {
        return make_family_network(SweepFamily{parse_family(family), depth, width, frobenius, seed});
    }, py::arg("family"), py::arg("depth"), py::arg("width"), py::arg("per_layer_frobenius") = 1.0,
       py::arg("seed") = 0);
    m.def("run_sweep", [](const std::string& family, std::size_t depth_min, std::size_t depth_max,
                          Eigen::Index width, double frobenius, std::uint64_t seed, std::size_t n, double radius) {
        const auto rows = run_sweep(SweepFamily{parse_family(family), 1, width, frobenius, seed}, depth_min,
                                    depth_max, n, radius);
        py::list out;
        for (const auto& r : rows) {
            py::dict row;
            row["depth"] = r.depth;
            row["P_F"] = r.frobenius_product;
            row["P_op"] = r.operator_product;
            row["sum_R"] = r.ratio_sum;
            row["bound_main"] = r.bound_main;
            row["bound_baseline"] = r.bound_baseline;
            row["bound_optimal"] = r.bound_optimal;
            out.append(row);
        }
        return out;
    }, py::arg("family"), py::arg("depth_min"), py::arg("depth_max"), py::arg("width") = 16,
       py::arg("per_layer_frobenius") = 1.0, py::arg("seed") = 0, py::arg("n") = 1000, py::arg("B") = 1.0);

    m.def("run_cli", [](const std::vector<std::string>& args) {
        std::vector<const char*> argv{"radbound"};
        for (const auto& a : args) argv.push_back(a.c_str());
        std::ostringstream out, err;
        int code = 0;
        {
            py::gil_scoped_release release;
            code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
        }
        return py::make_tuple(code, out.str(), err.str());
    }, py::arg("args"));
}
