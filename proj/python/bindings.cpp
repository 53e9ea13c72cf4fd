#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "goss/drinfeld.hpp"
#include "goss/error.hpp"
#include "goss/log_algebraicity.hpp"
#include "goss/special_values.hpp"
#include "goss/verify.hpp"

namespace py = pybind11;
using namespace goss;

namespace {

const Ring& ring_of(const std::string& name, unsigned q) {
    if (name == "A0") return Ring::a0(q);
    if (name == "A1") return Ring::a1();
    throw Error("InvalidArgument", "ring must be A0 or A1, got " + name);
}

py::dict laurent_dict(const LaurentElem& x, long precision) {
    const LaurentElem y = x.is_zero() ? x : x.truncated(x.valuation() + precision);
    const FiniteField& F = y.field().constants();
    py::list coeffs;
    for (Elem e : y.coeffs()) coeffs.append(F.to_string(e));
    py::dict d;
    d["zero_to_precision"] = y.is_zero();
    d["valuation"] = y.valuation();
    d["precision"] = y.precision();
    d["coefficients"] = coeffs;
    d["text"] = y.to_string();
    if (!y.is_zero()) d["abs"] = y.abs_value().to_string();
    return d;
}

py::dict report_dict(const VerificationReport& r) {
    py::list checks;
    for (const auto& c : r.checks) {
        py::dict d;
        d["check_id"] = c.id;
        d["anchor"] = c.anchor;
        d["residual_valuation"] = c.residual ? py::cast(*c.residual) : py::none();
        d["required"] = c.required;
        d["pass"] = c.pass;
        d["gating"] = c.gating;
        d["note"] = c.note;
        checks.append(d);
    }
    py::dict d;
    d["title"] = r.title;
    d["working_precision"] = r.options.working();
    d["passed"] = r.passed();
    d["checks"] = checks;
    return d;
}

VerifyOptions verify_options(long precision, long guard) {
    VerifyOptions o;
    o.precision = precision;
    o.guard = guard;
    return o;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Special polynomials, Goss L-values and twisted harmonic sums";

    static py::handle goss_error = py::exception<Error>(m, "GossError").release();
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            py::object exc = py::reinterpret_borrow<py::object>(goss_error)(e.what());
            exc.attr("kind") = e.kind();
            PyErr_SetObject(goss_error.ptr(), exc.ptr());
        }
    });

    m.def(
        "special_poly",
        [](std::uint64_t mm, const std::string& ring, unsigned q, std::optional<int> z_bound) {
            SpecialPolyOptions o;
            o.z_bound = z_bound;
            const SpecialPolynomial S = special_poly(DrinfeldModule::get(ring_of(ring, q)), mm, o);
            py::dict entries;
            for (const auto& [n, P] : S.entries) entries[py::int_(n)] = P.to_string();
            py::dict d;
            d["m"] = S.m;
            d["entries"] = entries;
            d["text"] = S.to_string();
            d["z_bound"] = S.z_bound;
            d["stabilized"] = S.stabilized();
            d["partial"] = S.partial;
            return d;
        },
        py::arg("m"), py::arg("ring") = "A0", py::arg("q") = 3, py::arg("z_bound") = py::none());

    m.def(
        "l_value",
        [](const std::string& prime, std::uint64_t j, long s, const std::string& ring, unsigned q, long precision) {
            const Ring& R = ring_of(ring, q);
            const LocalField& L = standard_field(R, precision + 10);
            const DirichletCharacter chi(RingElem::parse(R, prime), j, L.constants());
            return laurent_dict(goss_l_value(DrinfeldModule::get(R), chi, s, L).value, precision);
        },
        py::arg("prime"), py::arg("j"), py::arg("s") = 1, py::arg("ring") = "A0", py::arg("q") = 3,
        py::arg("precision") = 80);

    m.def(
        "period",
        [](const std::string& method, const std::string& ring, unsigned q, long precision) {
            const Ring& R = ring_of(ring, q);
            PeriodMethod pm;
            if (method == "torsion-log")
                pm = PeriodMethod::TorsionLog;
            else if (method == "product")
                pm = PeriodMethod::Product;
            else
                throw Error("InvalidArgument", "method must be torsion-log or product");
            return laurent_dict(DrinfeldModule::get(R).period(pm, standard_field(R, precision + 10)), precision);
        },
        py::arg("method") = "torsion-log", py::arg("ring") = "A0", py::arg("q") = 3, py::arg("precision") = 80);

    m.def(
        "lambda_value",
        [](const std::string& prime, std::uint64_t mm, const std::string& b, const std::string& ring, unsigned q,
           long precision) {
            const Ring& R = ring_of(ring, q);
            const LocalField& L = standard_field(R, precision + 10);
            return laurent_dict(
                lambda_value(DrinfeldModule::get(R), mm, RingElem::parse(R, b), RingElem::parse(R, prime), L).value,
                precision);
        },
        py::arg("prime"), py::arg("m"), py::arg("b") = "1", py::arg("ring") = "A0", py::arg("q") = 3,
        py::arg("precision") = 80);

    m.def(
        "rank_set",
        [](std::uint64_t q, std::uint64_t d) {
            const RankSet r = rank_set(q, d);
            return py::make_tuple(r.members, r.rank);
        },
        py::arg("q"), py::arg("d"));

    m.def(
        "verify_example",
        [](int k, long precision, long guard) {
            const VerificationReport r = [&] {
                py::gil_scoped_release nogil;
                return verify_example(k, verify_options(precision, guard));
            }();
            return report_dict(r);
        },
        py::arg("example"), py::arg("precision") = 80, py::arg("guard") = 10);

    m.def(
        "verify_prime",
        [](const std::string& prime, const std::string& ring, unsigned q, long precision, long guard) {
            const Ring& R = ring_of(ring, q);
            const RingElem p = RingElem::parse(R, prime);
            const VerificationReport r = [&] {
                py::gil_scoped_release nogil;
                return verify_prime(R, p, verify_options(precision, guard));
            }();
            return report_dict(r);
        },
        py::arg("prime"), py::arg("ring") = "A0", py::arg("q") = 3, py::arg("precision") = 80,
        py::arg("guard") = 10);
}
