#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "lagspec/bianchi.hpp"
#include "lagspec/cli.hpp"
#include "lagspec/contfrac.hpp"
#include "lagspec/heis.hpp"
#include "lagspec/hypgeo.hpp"
#include "lagspec/spectra.hpp"

namespace py = pybind11;
using namespace lagspec;

namespace {

py::list trace_list(const EstimatorTrace& t) {
    py::list out;
    for (const auto& s : t.shells()) out.append(py::make_tuple(s.cutoff, s.value, s.witness, s.certified));
    return out;
}

BianchiContext context(std::int64_t m, const std::string& ideal) {
    if (m == 0) return BianchiContext::modular();
    const auto o = OrderSpec::maximal(m);
    return BianchiContext(o, IdealSpec::parse(o, ideal));
}

SL2 element(std::int64_t m, const std::vector<std::string>& entries) {
    if (entries.size() != 4) throw std::invalid_argument("need four entries a, b, c, d");
    const OrderSpec o = m == 0 ? OrderSpec::integers() : OrderSpec::maximal(m);
    return SL2(QuadInt::parse(o, entries[0]), QuadInt::parse(o, entries[1]), QuadInt::parse(o, entries[2]), QuadInt::parse(o, entries[3]));
}

}  // namespace

PYBIND11_MODULE(_core, mod) {
    mod.doc() = "Approximation constants, spectra and cusp geometry";
    py::register_exception<DomainError>(mod, "DomainError", PyExc_ValueError);

    mod.def("duality", &duality, py::arg("t"));
    mod.def("duality_inverse", &duality_inverse, py::arg("s"));

    mod.def(
        "approx_constant",
        [](const std::string& word) {
            const auto r = approx_constant(CFWord::parse(word));
            py::dict d;
            d["value"] = r.value;
            d["exact"] = r.exact;
            d["exact_value"] = r.exact_value ? py::object(py::str(r.exact_value->to_string())) : py::object(py::none());
            d["trace"] = trace_list(r.trace);
            return d;
        },
        py::arg("word"), "c(x) for a continued fraction word such as \"[1; (2)]\".");

    mod.def(
        "brute_force_constant",
        [](const std::string& word, std::int64_t q_max, std::int64_t q_min) {
            const auto r = brute_force_constant(value_of(CFWord::parse(word)), q_max, q_min);
            return py::make_tuple(r.value, r.p, r.q);
        },
        py::arg("word"), py::arg("q_max"), py::arg("q_min") = 0);

    mod.def("markov_value", &markov_value, py::arg("m"));

    mod.def(
        "spectrum",
        [](std::int64_t m, const std::string& ideal, int word_length, const std::string& mode) {
            if (mode != "free" && mode != "positive") throw std::invalid_argument("mode is free or positive");
            py::list out;
            for (const auto& p : spectrum_sample(context(m, ideal), word_length, mode == "free" ? WordMode::Free : WordMode::Positive)) {
                out.append(py::make_tuple(duality_inverse(p.height), p.height, p.witness, p.certified));
            }
            return out;
        },
        py::arg("m") = 0, py::arg("ideal") = "1", py::arg("word_length") = 8, py::arg("mode") = "free",
        "(value, height, witness, certified) by ascending height; m = 0 is the modular group.");

    mod.def(
        "c_I_estimate",
        [](std::int64_t m, const std::string& ideal, const std::string& x, std::int64_t norm_bound, std::int64_t min_norm) {
            const auto r = c_I_estimate(context(m, ideal), BoundaryPoint::parse(x), norm_bound, min_norm);
            py::dict d;
            d["value"] = r.value;
            d["p"] = r.witness.p.to_string();
            d["q"] = r.witness.q.to_string();
            d["min_norm"] = r.min_norm;
            d["trace"] = trace_list(r.trace);
            return d;
        },
        py::arg("m"), py::arg("ideal"), py::arg("x"), py::arg("norm_bound"), py::arg("min_norm") = 0);

    mod.def(
        "c_prime_estimate",
        [](std::int64_t m, const std::string& ideal, const std::string& x, std::int64_t norm_bound, std::int64_t min_norm) {
            const auto o = OrderSpec::maximal(m);
            const auto r = c_prime_estimate(o, IdealSpec::parse(o, ideal), HeisPoint::parse(x), norm_bound, min_norm);
            py::dict d;
            d["value"] = r.value;
            d["min_norm"] = r.min_norm;
            d["trace"] = trace_list(r.trace);
            return d;
        },
        py::arg("m"), py::arg("ideal"), py::arg("x"), py::arg("norm_bound"), py::arg("min_norm") = 0,
        "x is written z_re,z_im;w_re,w_im.");

    mod.def(
        "horoball_penetration", [](const std::vector<std::string>& entries, std::int64_t m) { return horoball_penetration(element(m, entries)); },
        py::arg("entries"), py::arg("m") = 0);

    mod.def(
        "geodesic_height",
        [](const std::vector<std::string>& entries, std::int64_t m, const std::string& ideal) {
            const auto r = geodesic_height(element(m, entries), context(m, ideal).group());
            return py::make_tuple(r.height, r.certified);
        },
        py::arg("entries"), py::arg("m") = 0, py::arg("ideal") = "1");

    mod.def(
        "excursion_limsup",
        [](const std::string& word, int depth) {
            ExcursionOptions opt;
            opt.depth = depth;
            return excursion_limsup(BoundaryPoint::from_surd(value_of(CFWord::parse(word))), CuspGroup::modular(), opt).estimate;
        },
        py::arg("word"), py::arg("depth") = 40);

    mod.def(
        "run_cli",
        [](const std::vector<std::string>& args) {
            std::ostringstream out, err;
            const int code = run_cli(args, out, err);
            return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"), "Runs the command line front end; returns (exit_code, stdout, stderr).");
}
