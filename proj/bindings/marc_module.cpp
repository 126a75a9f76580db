#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "marc/config.hpp"
#include "marc/oracle.hpp"
#include "marc/runner.hpp"

namespace py = pybind11;
using namespace marc;

PYBIND11_MODULE(_marc, m) {
  m.doc() =
      "Dual-band two-user MARC: rate regions and sum-rate-optimal mm-wave "
      "power allocation";

  py::enum_<Fading>(m, "Fading")
      .value("Phase", Fading::Phase)
      .value("Rayleigh", Fading::Rayleigh);

  py::enum_<LgrId>(m, "LgrId")
      .value("L1", LgrId::L1)
      .value("A_d_d", LgrId::A_d_d)
      .value("A_d_r", LgrId::A_d_r)
      .value("A_r_d", LgrId::A_r_d)
      .value("A_r_r", LgrId::A_r_r)
      .value("A_rd_d", LgrId::A_rd_d)
      .value("A_d_rd", LgrId::A_d_rd)
      .value("A_r_rd", LgrId::A_r_rd)
      .value("A_rd_r", LgrId::A_rd_r)
      .value("A_rd_rd", LgrId::A_rd_rd)
      .value("S_r_rd", LgrId::S_r_rd)
      .value("S_rd_r", LgrId::S_rd_r)
      .value("S_rd_d", LgrId::S_rd_d)
      .value("S_d_rd", LgrId::S_d_rd)
      .value("S_rd_rd", LgrId::S_rd_rd);

  py::enum_<RelayRegime>(m, "RelayRegime")
      .value("RS1", RelayRegime::RS1)
      .value("R1", RelayRegime::R1)
      .value("R2", RelayRegime::R2)
      .value("RS2", RelayRegime::RS2);

  py::class_<MmWaveGains>(m, "MmWaveGains")
      .def(py::init([](double r1, double r2, double d1, double d2, double gamma) {
             return MmWaveGains{r1, r2, d1, d2, gamma};
           }),
           py::arg("r1"), py::arg("r2"), py::arg("d1"), py::arg("d2"),
           py::arg("gamma"))
      .def_readwrite("r1", &MmWaveGains::r1)
      .def_readwrite("r2", &MmWaveGains::r2)
      .def_readwrite("d1", &MmWaveGains::d1)
      .def_readwrite("d2", &MmWaveGains::d2)
      .def_readwrite("gamma", &MmWaveGains::gamma);

  py::class_<Allocation>(m, "Allocation")
      .def_readonly("p1", &Allocation::p1)
      .def_readonly("q1", &Allocation::q1)
      .def_readonly("p2", &Allocation::p2)
      .def_readonly("q2", &Allocation::q2)
      .def("__repr__", [](const Allocation& a) {
        return "Allocation(p1=" + std::to_string(a.p1) +
               ", q1=" + std::to_string(a.q1) + ", p2=" + std::to_string(a.p2) +
               ", q2=" + std::to_string(a.q2) + ")";
      });

  py::class_<AllocationResult>(m, "AllocationResult")
      .def_readonly("alloc", &AllocationResult::alloc)
      .def_readonly("lgr", &AllocationResult::lgr);

  py::class_<ThresholdPowers>(m, "ThresholdPowers")
      .def_readonly("p_d_d", &ThresholdPowers::p_d_d)
      .def_readonly("p_d_d_prime", &ThresholdPowers::p_d_d_prime)
      .def_readonly("p_hat_d_d", &ThresholdPowers::p_hat_d_d)
      .def_readonly("p_hat_d_d_prime", &ThresholdPowers::p_hat_d_d_prime)
      .def_readonly("p_r_d", &ThresholdPowers::p_r_d)
      .def_readonly("p_d_r", &ThresholdPowers::p_d_r)
      .def_readonly("p_r_r", &ThresholdPowers::p_r_r)
      .def_readonly("p_rd_d", &ThresholdPowers::p_rd_d)
      .def_readonly("p_d_rd", &ThresholdPowers::p_d_rd)
      .def_readonly("p_r_rd", &ThresholdPowers::p_r_rd)
      .def_readonly("p_rd_r", &ThresholdPowers::p_rd_r)
      .def_readonly("p_rd_rd", &ThresholdPowers::p_rd_rd)
      .def_readonly("pbar_r_rd", &ThresholdPowers::pbar_r_rd)
      .def_readonly("pbar_rd_r", &ThresholdPowers::pbar_rd_r)
      .def_readonly("pbar_rd_d", &ThresholdPowers::pbar_rd_d)
      .def_readonly("pbar_d_rd", &ThresholdPowers::pbar_d_rd)
      .def_readonly("regime_boundary", &ThresholdPowers::regime_boundary)
      .def_readonly("multiple_roots", &ThresholdPowers::multiple_roots);

  py::class_<LgrSegment>(m, "LgrSegment")
      .def_readonly("lgr", &LgrSegment::lgr)
      .def_readonly("p_lo", &LgrSegment::p_lo)
      .def_readonly("p_hi", &LgrSegment::p_hi);

  py::class_<LgrPath>(m, "LgrPath")
      .def_readonly("segments", &LgrPath::segments)
      .def_readonly("label", &LgrPath::label);

  py::class_<SaturationInfo>(m, "SaturationInfo")
      .def_readonly("p_sat", &SaturationInfo::p_sat)
      .def_readonly("p_fin", &SaturationInfo::p_fin)
      .def_readonly("saturation_lgr", &SaturationInfo::saturation_lgr)
      .def_readonly("final_lgr", &SaturationInfo::final_lgr)
      .def_readonly("q_bar_1", &SaturationInfo::q_bar_1)
      .def_readonly("q_bar_2", &SaturationInfo::q_bar_2);

  py::class_<MicrowaveSummary>(m, "MicrowaveSummary")
      .def_readonly("sigma_r", &MicrowaveSummary::sigma_r)
      .def_readonly("sigma_d", &MicrowaveSummary::sigma_d)
      .def_readonly("gamma", &MicrowaveSummary::gamma);

  py::class_<SumRates>(m, "SumRates")
      .def_readonly("sigma_big_r", &SumRates::sigma_big_r)
      .def_readonly("sigma_big_d", &SumRates::sigma_big_d)
      .def_readonly("rate", &SumRates::rate);

  py::class_<RateContext>(m, "RateContext")
      .def(py::init([](double sr, double sd, double a) {
             return RateContext{sr, sd, a};
           }),
           py::arg("sigma_r"), py::arg("sigma_d"), py::arg("alpha"))
      .def_readwrite("sigma_r", &RateContext::sigma_r)
      .def_readwrite("sigma_d", &RateContext::sigma_d)
      .def_readwrite("alpha", &RateContext::alpha);

  py::class_<P1Result>(m, "P1Result")
      .def_readonly("alloc", &P1Result::alloc)
      .def_readonly("rate", &P1Result::rate)
      .def_readonly("iterations", &P1Result::iterations)
      .def_readonly("converged", &P1Result::converged);

  py::class_<P2Result>(m, "P2Result")
      .def_readonly("alloc", &P2Result::alloc)
      .def_readonly("micro_p1", &P2Result::micro_p1)
      .def_readonly("micro_p2", &P2Result::micro_p2)
      .def_readonly("micro_pr", &P2Result::micro_pr)
      .def_readonly("mm_pr_bar", &P2Result::mm_pr_bar)
      .def_readonly("rate", &P2Result::rate)
      .def_readonly("iterations", &P2Result::iterations)
      .def_readonly("converged", &P2Result::converged);

  py::class_<KktReport>(m, "KktReport")
      .def_readonly("lambda1", &KktReport::lambda1)
      .def_readonly("lambda2", &KktReport::lambda2)
      .def_readonly("mu1", &KktReport::mu1)
      .def_readonly("mu2", &KktReport::mu2)
      .def_readonly("rho1", &KktReport::rho1)
      .def_readonly("rho2", &KktReport::rho2)
      .def_readonly("rho3", &KktReport::rho3)
      .def_readonly("rho4", &KktReport::rho4)
      .def_readonly("stationarity_residual", &KktReport::stationarity_residual)
      .def_readonly("complementarity_residual", &KktReport::complementarity_residual)
      .def_readonly("feasibility_residual", &KktReport::feasibility_residual)
      .def_readonly("strict_complementarity", &KktReport::strict_complementarity);

  py::class_<VerifyReport>(m, "VerifyReport")
      .def_readonly("trials", &VerifyReport::trials)
      .def_readonly("unclassified", &VerifyReport::unclassified)
      .def_readonly("ties", &VerifyReport::ties)
      .def_readonly("max_rate_gap", &VerifyReport::max_rate_gap)
      .def_readonly("max_component_gap", &VerifyReport::max_component_gap)
      .def_readonly("max_kkt_residual", &VerifyReport::max_kkt_residual)
      .def_readonly("max_budget_violation", &VerifyReport::max_budget_violation)
      .def_readonly("pass_", &VerifyReport::pass);

  m.def("pathloss_gain", &pathloss_gain, py::arg("dist"), py::arg("beta"));
  m.def(
      "ergodic_rate",
      [](Fading fading, const std::vector<double>& gains,
         const std::vector<double>& powers, std::uint64_t seed, int samples) {
        return ergodic_rate(fading, gains, powers, EvalOptions{seed, samples});
      },
      py::arg("fading"), py::arg("mean_gains"), py::arg("powers"),
      py::arg("seed") = 0, py::arg("qmc_samples") = 1 << 16);
  m.def("relay_regime", &relay_regime, py::arg("r1"), py::arg("r2"),
        py::arg("gamma"));
  m.def("threshold_powers", &threshold_powers, py::arg("gains"));
  m.def("allocate", &allocate, py::arg("gains"), py::arg("budget"));
  m.def("lgr_path", &lgr_path, py::arg("gains"), py::arg("p_max") = 0.0);
  m.def("saturation_info", &saturation_info, py::arg("gains"));
  m.def("symmetric_allocate", &symmetric_allocate, py::arg("r"), py::arg("d"),
        py::arg("gamma"), py::arg("budget"));
  m.def(
      "sum_rates",
      [](double sigma_r, double sigma_d, const MmWaveGains& g,
         const Allocation& a, double alpha) {
        return sum_rates(MicrowaveSummary{sigma_r, sigma_d, g.gamma}, g, a, alpha);
      },
      py::arg("sigma_r"), py::arg("sigma_d"), py::arg("gains"), py::arg("alloc"),
      py::arg("alpha"));
  m.def(
      "solve_p1",
      [](const MmWaveGains& g, double P, double tol) {
        return solve_p1(g, P, tol);
      },
      py::arg("gains"), py::arg("budget"), py::arg("tol") = 1e-9);
  m.def(
      "kkt_residuals",
      [](const MmWaveGains& g, double P, const Allocation& a) {
        return kkt_residuals(g, P, a);
      },
      py::arg("gains"), py::arg("budget"), py::arg("alloc"));
  m.def(
      "run_verify",
      [](int trials, std::uint64_t seed, int threads) {
        VerifyOptions o;
        o.trials = trials;
        o.seed = seed;
        o.threads = threads;
        return run_verify(o);
      },
      py::arg("trials") = 1000, py::arg("seed") = 0, py::arg("threads") = 0);
  m.def("lgr_name", [](LgrId id) { return std::string(to_string(id)); });
}
