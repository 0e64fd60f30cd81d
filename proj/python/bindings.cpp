// Python module _gcdphi: thin wrappers over the C++ library. Integers cross
// as Python ints, exact sums come back as int, real sums as float.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <utility>
#include <vector>

#include "gcdphi/arith.hpp"
#include "gcdphi/asymptotics.hpp"
#include "gcdphi/errors.hpp"
#include "gcdphi/multiplicative.hpp"
#include "gcdphi/report.hpp"
#include "gcdphi/scan.hpp"

namespace py = pybind11;
using namespace gcdphi;

namespace {

Factorization factor(u64 n) {
    if (n == 0) throw PreconditionError("n must be >= 1");
    return factorize(n, primes_upto(std::max<u64>(isqrt(n), 2)));
}

py::object scan_value(const ScanResult& r) {
    if (r.exact()) return py::int_(std::get<i64>(r.value));
    return py::float_(std::get<double>(r.value));
}

ScanOptions options(u64 segment, unsigned threads) { return {segment, threads}; }

std::string emit(const Table& t, const RunConfig& c, const std::string& format) {
    if (format == "json") return t.to_json(c);
    if (format != "csv") throw ConfigError("format must be csv or json");
    return t.to_csv();
}

RunConfig make_config(const std::string& spec, std::vector<u64> xs, unsigned threads, int K,
                      double tol, u64 prime_cutoff) {
    RunConfig c;
    c.spec = spec;
    c.x_grid = std::move(xs);
    c.workers = threads;
    c.K = K;
    c.tol = tol;
    c.prime_cutoff = prime_cutoff;
    return c;
}

}  // namespace

PYBIND11_MODULE(_gcdphi, m) {
    m.doc() = "Exact statistics of gcd(n, phi(n)) and their asymptotic predictions";

    auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<CapacityError>(m, "CapacityError", base.ptr());
    py::register_exception<PreconditionError>(m, "PreconditionError", base.ptr());
    py::register_exception<DomainError>(m, "DomainError", base.ptr());
    py::register_exception<ConfigError>(m, "ConfigError", base.ptr());
    py::register_exception<NumericError>(m, "NumericError", base.ptr());

    m.attr("MAX_N") = kMaxN;

    // arithmetic
    m.def("isqrt", &isqrt, py::arg("n"));
    m.def("is_prime", &is_prime, py::arg("n"));
    m.def(
        "primes_upto",
        [](u64 limit) {
            const PrimeTable t = sieve_primes(limit);
            return std::vector<std::uint32_t>(t.begin(), t.end());
        },
        py::arg("limit"), "All primes <= limit.");
    m.def(
        "phi_range",
        [](u64 lo, u64 hi) {
            return phi_block(lo, hi, primes_upto(std::max<u64>(isqrt(hi - 1), 2))).values;
        },
        py::arg("lo"), py::arg("hi"), "phi(n) for lo <= n < hi.");
    m.def(
        "factorize",
        [](u64 n) {
            std::vector<std::pair<u64, int>> out;
            for (const auto& [p, e] : factor(n).factors) out.emplace_back(p, e);
            return out;
        },
        py::arg("n"), "[(p, e), ...] in ascending p.");
    m.def("phi", [](u64 n) { return phi_of(factor(n)); }, py::arg("n"));
    m.def("tau", [](u64 n) { return tau(factor(n)); }, py::arg("n"));
    m.def("gcd", &gcd_pair, py::arg("a"), py::arg("b"));

    // weights
    py::class_<MultiplicativeSpec>(m, "Spec")
        .def(py::init([](const std::string& name) { return builtin_spec(name); }),
             py::arg("name"))
        .def_property_readonly("name", &MultiplicativeSpec::name)
        .def_property_readonly("integer_valued", &MultiplicativeSpec::integer_valued)
        .def("g", &MultiplicativeSpec::g_at, py::arg("p"), py::arg("j"))
        .def("__repr__", [](const MultiplicativeSpec& s) { return "Spec('" + s.name() + "')"; });
    m.def("eval_f", [](const MultiplicativeSpec& s, u64 n) { return eval_f(s, factor(n)); },
          py::arg("spec"), py::arg("n"));
    m.def("eval_g", [](const MultiplicativeSpec& s, u64 n) { return eval_g(s, factor(n)); },
          py::arg("spec"), py::arg("n"));
    m.def(
        "euler_factor",
        [](const MultiplicativeSpec& s, u64 p, double tol) {
            const EulerFactor e = euler_factor(s, p, tol);
            return py::make_tuple(e.value, e.tail_bound);
        },
        py::arg("spec"), py::arg("p"), py::arg("tol") = 1e-15);

    // exact scans
    m.def(
        "s_direct",
        [](const MultiplicativeSpec& s, u64 x, u64 segment, unsigned threads) {
            ScanResult r;
            {
                py::gil_scoped_release release;
                r = s_direct(s, x, options(segment, threads));
            }
            return scan_value(r);
        },
        py::arg("spec"), py::arg("x"), py::arg("segment") = kDefaultSegment,
        py::arg("threads") = 1);
    m.def(
        "s_inversion",
        [](const MultiplicativeSpec& s, u64 x) { return scan_value(s_inversion(s, x)); },
        py::arg("spec"), py::arg("x"));
    m.def("congruence_sum", py::overload_cast<u64, u64>(&congruence_sum), py::arg("d"),
          py::arg("x"));
    m.def(
        "count_phi_divisible",
        [](u64 d, u64 x, unsigned threads) {
            return count_phi_divisible(d, x, options(kDefaultSegment, threads));
        },
        py::arg("d"), py::arg("x"), py::arg("threads") = 1,
        py::call_guard<py::gil_scoped_release>());
    m.def(
        "count_phi_coprime",
        [](u64 d, u64 x, unsigned threads) {
            return count_phi_coprime(d, x, options(kDefaultSegment, threads));
        },
        py::arg("d"), py::arg("x"), py::arg("threads") = 1,
        py::call_guard<py::gil_scoped_release>());
    m.def(
        "count_p_divides_phi",
        [](u64 p, u64 x, unsigned threads) {
            return count_p_divides_phi(p, x, options(kDefaultSegment, threads));
        },
        py::arg("p"), py::arg("x"), py::arg("threads") = 1,
        py::call_guard<py::gil_scoped_release>());
    m.def(
        "gcd_histogram",
        [](u64 x, u64 cap) {
            const GcdHistogram h = gcd_histogram(x, cap);
            return py::make_tuple(h.counts, h.overflow);
        },
        py::arg("x"), py::arg("cap") = kDefaultHistogramCap,
        "({gcd: count}, overflow) for n <= x.");
    m.def("prime_reciprocal_sum", &prime_reciprocal_sum, py::arg("x"), py::arg("a"), py::arg("m"));

    // predictions
    py::class_<PredictionSettings>(m, "Settings")
        .def(py::init([](double tol, u64 prime_cutoff, int K) {
                 PredictionSettings s{tol, prime_cutoff, K};
                 s.validate();
                 return s;
             }),
             py::arg("tol") = 1e-12, py::arg("prime_cutoff") = 10'000'000, py::arg("K") = 4)
        .def_readonly("tol", &PredictionSettings::tol)
        .def_readonly("prime_cutoff", &PredictionSettings::prime_cutoff)
        .def_readonly("K", &PredictionSettings::K);

    const PredictionSettings defaults;
    auto certified = [](const Certified& c) { return py::make_tuple(c.value, c.error_bound); };

    m.def("log_iter", &log_iter, py::arg("x"), py::arg("k"));
    m.def(
        "q_g",
        [certified](const MultiplicativeSpec& s, double x, const PredictionSettings& st) {
            return certified(q_g(s, x, st));
        },
        py::arg("spec"), py::arg("x"), py::arg("settings") = defaults);
    m.def("main_term", &main_term, py::arg("spec"), py::arg("x"), py::arg("settings") = defaults);
    m.def("corollary_product", &corollary_product, py::arg("spec"), py::arg("x"));
    m.def("alpha", [](u64 d) { return alpha(factor(d)); }, py::arg("d"));
    m.def("beta", [](u64 d) { return beta(factor(d)); }, py::arg("d"));
    m.def("alpha1", [](u64 d) { return alpha1(factor(d)); }, py::arg("d"));
    m.def("predict_phi_coprime", &predict_phi_coprime, py::arg("d"), py::arg("x"));
    m.def("predict_phi_divisible", &predict_phi_divisible, py::arg("d"), py::arg("x"));
    m.def(
        "a_coeff",
        [certified](int k, const PredictionSettings& st) { return certified(a_coeff(k, st)); },
        py::arg("k"), py::arg("settings") = defaults);
    m.def(
        "b_coeff",
        [certified](int k, const PredictionSettings& st) { return certified(b_coeff(k, st)); },
        py::arg("k"), py::arg("settings") = defaults);
    m.def("laurent_F", &laurent_F, py::arg("s"));
    m.def(
        "gamma_laurent_F",
        [certified](int k, const PredictionSettings& st) {
            return certified(gamma_laurent_F(k, st));
        },
        py::arg("k"), py::arg("settings") = defaults);
    m.def(
        "series_exp",
        [](const std::vector<double>& coeffs) {
            if (coeffs.empty()) throw PreconditionError("series_exp: need at least c_0");
            SeriesExpansion in{static_cast<int>(coeffs.size()) - 1, coeffs};
            return series_exp(in).coeffs;
        },
        py::arg("coeffs"), "exp of sum_k coeffs[k] u^k, truncated at the same degree.");
    m.def("euler_gamma", &euler_gamma);
    m.def(
        "mertens_constant",
        [certified](const PredictionSettings& st) { return certified(mertens_constant(st)); },
        py::arg("settings") = defaults);
    m.def(
        "zeta",
        [certified](int r, const PredictionSettings& st) { return certified(zeta(r, st)); },
        py::arg("r"), py::arg("settings") = defaults);
    m.def(
        "landau_ramanujan",
        [certified](const PredictionSettings& st) { return certified(landau_ramanujan(st)); },
        py::arg("settings") = defaults);
    m.def(
        "prediction",
        [](const std::string& family, double x, const PredictionSettings& st) {
            const Prediction p = prediction(family, x, st);
            py::dict d;
            d["family"] = p.family;
            d["x"] = p.x;
            d["value"] = p.value;
            d["leading"] = p.leading;
            d["u"] = p.u;
            d["expansion"] = p.expansion.coeffs;
            d["expansion_value"] = p.expansion_value;
            return d;
        },
        py::arg("family"), py::arg("x"), py::arg("settings") = defaults);

    // reports
    m.def(
        "compare",
        [](const std::string& spec, std::vector<u64> xs, unsigned threads,
           const std::string& format) {
            const RunConfig c = make_config(spec, std::move(xs), threads, 4, 1e-12, 10'000'000);
            Table t;
            {
                py::gil_scoped_release release;
                t = run_compare(c).table();
            }
            return emit(t, c, format);
        },
        py::arg("spec"), py::arg("xs"), py::arg("threads") = 1, py::arg("format") = "csv",
        "Comparison table as CSV or JSON text.");
    m.def(
        "verify",
        [](const std::string& suite, std::uint64_t seed) {
            RunConfig c;
            c.seed = seed;
            const VerifyReport r = run_verify(suite, c);
            py::list checks;
            for (const auto& ch : r.checks) checks.append(py::make_tuple(ch.name, ch.passed, ch.detail));
            return checks;
        },
        py::arg("suite") = "all", py::arg("seed") = 20240101,
        "[(name, passed, detail), ...]");
    m.def("parse_x", &parse_x, py::arg("text"));
}
