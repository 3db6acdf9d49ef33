// Python bindings for the contribution-game engine.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "vcg/config.hpp"
#include "vcg/errors.hpp"
#include "vcg/game.hpp"
#include "vcg/harness.hpp"
#include "vcg/metrics.hpp"
#include "vcg/solver.hpp"
#include "vcg/strategies.hpp"

namespace py = pybind11;
using namespace vcg;

namespace {

std::vector<Decision> to_decisions(const std::vector<bool>& contribute) {
  std::vector<Decision> d;
  d.reserve(contribute.size());
  for (bool c : contribute) d.push_back(c ? Decision::Contribute : Decision::Defect);
  return d;
}

RoundInput to_round(std::vector<double> values, std::vector<double> costs, double threshold) {
  RoundInput r;
  r.privacy_costs = costs;
  r.values = std::move(values);
  r.costs = std::move(costs);
  r.threshold = threshold;
  r.validate();
  return r;
}

py::dict trace_to_dict(const RunTrace& t) {
  py::dict d;
  d["population"] = t.population;
  d["repetition"] = t.repetition;
  d["seed"] = t.seed;
  d["successes"] = t.successes;
  d["cumulative_quality"] = t.cumulative_quality;
  py::dict series;
  for (Measure m : kAllMeasures) series[py::str(std::string(measure_name(m)))] = t.at(m);
  d["series"] = series;
  return d;
}

}  // namespace

PYBIND11_MODULE(_vcg, m) {
  m.doc() = "Threshold public-goods contribution game engine";

  py::register_exception<ContractError>(m, "ContractError", PyExc_ValueError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<DataError>(m, "DataError", PyExc_ValueError);
  py::register_exception<CapacityError>(m, "CapacityError", PyExc_ValueError);

  py::class_<PayoffParams>(m, "PayoffParams")
      .def(py::init([](double reward, double penalty, bool charge_privacy) {
             return PayoffParams{reward, penalty, charge_privacy};
           }),
           py::arg("reward") = 1.0, py::arg("penalty") = 5.0, py::arg("charge_privacy") = false)
      .def_readwrite("reward", &PayoffParams::reward)
      .def_readwrite("penalty", &PayoffParams::penalty)
      .def_readwrite("charge_privacy", &PayoffParams::charge_privacy);

  py::class_<RoundOutcome>(m, "RoundOutcome")
      .def_readonly("quality", &RoundOutcome::quality)
      .def_readonly("success", &RoundOutcome::success)
      .def_readonly("utilities", &RoundOutcome::utilities)
      .def_readonly("contributor_count", &RoundOutcome::contributor_count)
      .def_readonly("contributed_values", &RoundOutcome::contributed_values);

  m.def(
      "evaluate_round",
      [](std::vector<double> values, std::vector<double> costs, double threshold,
         const std::vector<bool>& contribute, const PayoffParams& payoffs) {
        return evaluate_round(to_round(std::move(values), std::move(costs), threshold),
                              to_decisions(contribute), payoffs);
      },
      py::arg("values"), py::arg("costs"), py::arg("threshold"), py::arg("contribute"),
      py::arg("payoffs") = PayoffParams{});

  py::class_<CoverSolution>(m, "CoverSolution")
      .def_readonly("selected", &CoverSolution::selected)
      .def_readonly("total_cost", &CoverSolution::total_cost)
      .def_readonly("total_value", &CoverSolution::total_value)
      .def_readonly("feasible", &CoverSolution::feasible);

  m.def(
      "solve_exact",
      [](std::vector<double> values, std::vector<double> costs, double threshold) {
        return solve_exact({std::move(values), std::move(costs), threshold});
      },
      py::arg("values"), py::arg("costs"), py::arg("threshold"));
  m.def(
      "solve_fptas",
      [](std::vector<double> values, std::vector<double> costs, double threshold, double eps) {
        return solve_fptas({std::move(values), std::move(costs), threshold}, eps);
      },
      py::arg("values"), py::arg("costs"), py::arg("threshold"), py::arg("epsilon") = 0.1);

  m.def("success_measure", &success_measure, py::arg("quality"), py::arg("threshold"));
  m.def("efficiency_measure", &efficiency_measure, py::arg("quality"), py::arg("threshold"));
  m.def(
      "welfare_measure", [](const std::vector<double>& u) { return welfare_measure(u); },
      py::arg("utilities"));
  m.def(
      "privacy_measure",
      [](const std::vector<bool>& contribute) { return privacy_measure(to_decisions(contribute)); },
      py::arg("contribute"));
  m.def(
      "gini", [](const std::vector<double>& y) { return gini(y); }, py::arg("y"));
  m.def(
      "aggregate",
      [](const std::vector<std::vector<double>>& reps) {
        std::vector<std::pair<double, double>> out;
        for (const MeasurePoint& p : aggregate(reps).per_timestep) {
          out.emplace_back(p.mean, p.ci_half_width);
        }
        return out;
      },
      py::arg("series_per_repetition"),
      "Per-timestep (mean, 95% CI half-width) across repetitions.");

  m.def(
      "load_config",
      [](const std::filesystem::path& path, const std::map<std::string, std::string>& overrides) {
        ExperimentConfig cfg = load_config(path);
        for (const auto& [k, v] : overrides) {
          const auto dot = k.find('.');
          if (dot == std::string::npos) throw ConfigError("override key must be section.key");
          apply_setting(cfg, k.substr(0, dot), k.substr(dot + 1), v);
        }
        return cfg;
      },
      py::arg("path"), py::arg("overrides") = std::map<std::string, std::string>{});

  py::class_<ExperimentConfig>(m, "ExperimentConfig")
      .def(py::init([](const std::map<std::string, std::string>& settings) {
             ExperimentConfig cfg;
             for (const auto& [k, v] : settings) {
               const auto dot = k.find('.');
               if (dot == std::string::npos) throw ConfigError("setting key must be section.key");
               apply_setting(cfg, k.substr(0, dot), k.substr(dot + 1), v);
             }
             return cfg;
           }),
           py::arg("settings") = std::map<std::string, std::string>{},
           "Settings use the config file's section.key names, e.g. "
           "{'experiment.strategy': 'knapsack'}.")
      .def("set",
           [](ExperimentConfig& cfg, const std::string& section, const std::string& key,
              const std::string& value) { apply_setting(cfg, section, key, value); })
      .def("validate", &ExperimentConfig::validate)
      .def_property_readonly("scenario",
                             [](const ExperimentConfig& c) { return scenario_name(c.scenario); })
      .def_property_readonly(
          "strategy", [](const ExperimentConfig& c) { return strategy_name(c.strategy.kind); })
      .def_readwrite("population_sizes", &ExperimentConfig::population_sizes)
      .def_readwrite("steps", &ExperimentConfig::steps)
      .def_readwrite("repetitions", &ExperimentConfig::repetitions)
      .def_readwrite("seed", &ExperimentConfig::seed)
      .def_readwrite("threads", &ExperimentConfig::threads)
      .def_readwrite("output", &ExperimentConfig::output);

  m.def(
      "run_simulation",
      [](const ExperimentConfig& cfg, std::size_t population, std::size_t repetition) {
        RunTrace t;
        {
          py::gil_scoped_release release;
          t = run_simulation(cfg, population, repetition);
        }
        return trace_to_dict(t);
      },
      py::arg("config"), py::arg("population"), py::arg("repetition") = 0);

  m.def(
      "sweep",
      [](const ExperimentConfig& cfg) {
        std::vector<ResultRow> rows;
        {
          py::gil_scoped_release release;
          rows = sweep(cfg);
        }
        py::list out;
        for (const ResultRow& r : rows) {
          out.append(py::make_tuple(r.scenario, r.strategy, r.population,
                                    r.repetition ? py::cast(*r.repetition) : py::str("agg"),
                                    r.timestep, std::string(measure_name(r.measure)), r.value,
                                    r.ci ? py::cast(*r.ci) : py::none()));
        }
        return out;
      },
      py::arg("config"),
      "Rows as (scenario, strategy, population, repetition, timestep, measure, value, ci).");

  m.def(
      "run_to_csv",
      [](const ExperimentConfig& cfg, const std::filesystem::path& path) {
        py::gil_scoped_release release;
        write_results(sweep(cfg), path);
      },
      py::arg("config"), py::arg("path"));

  m.attr("RESULTS_HEADER") = kResultsHeader;
}
