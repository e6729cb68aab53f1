#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <vector>

#include "paretofam/analytic_laws.hpp"
#include "paretofam/recursion_engine.hpp"
#include "paretofam/runner.hpp"
#include "paretofam/sampling.hpp"

namespace py = pybind11;
using namespace paretofam;

namespace {

struct ReplicateRecord {
    double r_n, w1, w2, y2, n_e, u2;
};

struct ChainResult {
    std::vector<double> y, n_e, w_max, w_max2;
};

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Pareto family-weight sampling, recursions, and asymptotic laws";
    m.attr("__version__") = "0.1.0";

    py::register_exception<RegimeError>(m, "RegimeError", PyExc_ValueError);

    py::class_<AlphaParam>(m, "AlphaParam")
        .def(py::init(&AlphaParam::make), py::arg("alpha"), py::arg("n"))
        .def_readonly("alpha", &AlphaParam::alpha)
        .def_readonly("n", &AlphaParam::n)
        .def_readonly("mu", &AlphaParam::mu)
        .def_readonly("c_n", &AlphaParam::c_n)
        .def_readonly("eps_n", &AlphaParam::eps_n)
        .def("__repr__", [](const AlphaParam& p) {
            return "AlphaParam(alpha=" + std::to_string(p.alpha) +
                   ", n=" + std::to_string(p.n) + ")";
        });

    py::class_<ReplicateRecord>(m, "ReplicateRecord")
        .def_readonly("r_n", &ReplicateRecord::r_n)
        .def_readonly("w1", &ReplicateRecord::w1)
        .def_readonly("w2", &ReplicateRecord::w2)
        .def_readonly("y2", &ReplicateRecord::y2)
        .def_readonly("n_e", &ReplicateRecord::n_e)
        .def_readonly("u2", &ReplicateRecord::u2);

    py::class_<ChainResult>(m, "ChainResult")
        .def_readonly("y", &ChainResult::y)
        .def_readonly("n_e", &ChainResult::n_e)
        .def_readonly("w_max", &ChainResult::w_max)
        .def_readonly("w_max2", &ChainResult::w_max2);

    py::class_<OrderStatMoments>(m, "OrderStatMoments")
        .def_readonly("e_x1", &OrderStatMoments::e_x1)
        .def_readonly("e_x2", &OrderStatMoments::e_x2)
        .def_readonly("e_x2_sq", &OrderStatMoments::e_x2_sq)
        .def_readonly("e_x1_x2", &OrderStatMoments::e_x1_x2)
        .def_readonly("e_r2", &OrderStatMoments::e_r2);

    m.def("pareto_inverse_cdf", &pareto_inverse_cdf, py::arg("u"), py::arg("alpha"));
    m.def("reconstruct_y2_from_parts", &reconstruct_y2_from_parts,
          py::arg("w1"), py::arg("u2"));

    m.def(
        "simulate",
        [](const AlphaParam& params, std::size_t replicates, std::uint64_t seed,
           std::uint64_t stream_offset, int threads) {
            const auto stats =
                simulate_replicates(params, replicates, seed, stream_offset, threads);
            std::vector<ReplicateRecord> out;
            out.reserve(stats.size());
            for (const ReplicateStats& s : stats) {
                out.push_back({s.r_n, s.w1(), s.w2(), s.y2(), s.n_e(), s.u2()});
            }
            return out;
        },
        py::arg("params"), py::arg("replicates"), py::arg("seed") = 20260808,
        py::arg("stream_offset") = 0, py::arg("threads") = 1,
        "Per-replicate records (r_n, w1, w2, y2, n_e, u2); deterministic in "
        "(seed, stream_offset)");

    m.def(
        "run_chain",
        [](const AlphaParam& params, std::uint64_t iterations, std::uint64_t burn_in,
           std::uint64_t thinning, std::uint64_t seed, std::uint64_t stream) {
            ChainResult out;
            RngStream rng(seed, stream);
            run_chain(params, iterations, burn_in, thinning, rng,
                      [&](const ChainSample& s) {
                          out.y.push_back(s.y);
                          out.n_e.push_back(s.n_e);
                          out.w_max.push_back(s.w_max);
                          out.w_max2.push_back(s.w_max2);
                      });
            return out;
        },
        py::arg("params"), py::arg("iterations"), py::arg("burn_in") = 10000,
        py::arg("thinning") = 1, py::arg("seed") = 20260808, py::arg("stream") = 0);

    m.def("expected_yk",
          [](const AlphaParam& params, int k) {
              const MomentReport r = expected_yk(params, k);
              return py::make_tuple(r.value, regime_name(r.regime));
          },
          py::arg("params"), py::arg("k"), "(value, regime) for E[Y_k]");
    m.def("pair_moment", &pair_moment, py::arg("params"), py::arg("k"), py::arg("l"));
    m.def("cv_y2", &cv_y2, py::arg("params"));
    m.def("rho", &rho, py::arg("params"), py::arg("w"));
    m.def("rho_star", &rho_star, py::arg("params"), py::arg("w"), py::arg("w_prime"));
    m.def("pi_w1", &pi_w1, py::arg("params"), py::arg("w"));
    m.def("pi_w2", &pi_w2, py::arg("params"), py::arg("w"));
    m.def("pi_y2", &pi_y2, py::arg("params"), py::arg("y"));
    m.def("pi_ne", &pi_ne, py::arg("params"), py::arg("y"));
    m.def("sweepstakes_curve", &sweepstakes_curve, py::arg("params"), py::arg("r_n"));
    m.def("order_stat_moments", &order_stat_moments, py::arg("params"));
    m.def(
        "law_domain",
        [](const std::string& law, const AlphaParam& params) {
            LawId id;
            if (law == "rho") id = LawId::rho;
            else if (law == "pi_w1") id = LawId::pi_w1;
            else if (law == "pi_w2") id = LawId::pi_w2;
            else if (law == "pi_y2") id = LawId::pi_y2;
            else if (law == "pi_ne") id = LawId::pi_ne;
            else throw std::invalid_argument("unknown law: " + law);
            const LawDomain d = law_domain(id, params);
            return py::make_tuple(d.lo, d.hi, d.trust_lo, d.trust_hi);
        },
        py::arg("law"), py::arg("params"),
        "(lo, hi, trust_lo, trust_hi) for one of rho/pi_w1/pi_w2/pi_y2/pi_ne");
}
