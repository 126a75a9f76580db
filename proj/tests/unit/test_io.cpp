#include <stdexcept>

#include "doctest.h"
#include "marc/config.hpp"
#include "marc/runner.hpp"
#include "marc/table.hpp"

using namespace marc;

TEST_CASE("csv emission round-trips byte-identically") {
  ResultTable t;
  t.columns = {"P", "value", "label"};
  t.add_row({0.5, 1.34, std::string("A_d_r")});
  t.add_row({1.0 / 3.0, 1e-17, std::string("S_rd_rd")});
  t.add_row({1e300, -2.5, std::string("x")});
  const std::string csv = t.to_csv();
  const ResultTable back = ResultTable::from_csv(csv);
  CHECK(back.to_csv() == csv);
  CHECK(back.columns == t.columns);
  REQUIRE(back.rows.size() == 3);
  CHECK(std::get<double>(back.rows[1][0]) == 1.0 / 3.0);
  CHECK(std::get<std::string>(back.rows[0][2]) == "A_d_r");
}

TEST_CASE("csv uses LF endings and a header row") {
  ResultTable t;
  t.columns = {"a", "b"};
  t.add_row({1.0, 2.0});
  CHECK(t.to_csv() == "a,b\n1,2\n");
}

TEST_CASE("command output is deterministic for a fixed config and seed") {
  const MmWaveGains g{1.0, 4.0, 1.52, 1.52, 3.0};
  const RateContext ctx = normalized_context(3.0);
  CHECK(cmd_allocate(g, 2.0, ctx).to_csv() == cmd_allocate(g, 2.0, ctx).to_csv());
  VerifyOptions opts;
  opts.trials = 200;
  opts.threads = 4;
  const VerifyReport a = run_verify(opts);
  opts.threads = 1;
  const VerifyReport b = run_verify(opts);
  CHECK(a.max_rate_gap == b.max_rate_gap);
  CHECK(a.max_component_gap == b.max_component_gap);
}

namespace {

const char* kConfig = R"({
  "alpha": 2.0,
  "microwave": {
    "pathloss_exp": 2.0,
    "fading": "phase",
    "powers": {"p1": 10.0, "p2": 10.0, "pr": 10.0}
  },
  "mmwave": {
    "pathloss_exp": 4.0,
    "fading": "phase",
    "powers": {"pr_bar": 10.0, "p1_hat": 10.0, "p2_hat": 10.0}
  },
  "geometry": {"d_rd": 1.0, "d_sr": 1.0, "phi": 0.7853981633974483},
  "run": {"seed": 7, "qmc_samples": 4096, "tol": 1e-9}
})";

}  // namespace

TEST_CASE("config parsing") {
  const RunConfig cfg = parse_config(kConfig);
  CHECK(cfg.channel.alpha == 2.0);
  CHECK(cfg.channel.microwave.p1 == 10.0);
  CHECK(cfg.mm_powers.p1_hat == 10.0);
  CHECK(cfg.run.seed == 7);
  CHECK(cfg.run.qmc_samples == 4096);
  const MmWaveGains g = mm_gains_from_config(cfg);
  CHECK(g.r1 == doctest::Approx(1.0));  // d_sr = 1, beta2 = 4
  CHECK(g.gamma > 0.0);
}

TEST_CASE("config rejects unknown keys and bad values") {
  CHECK_THROWS_AS(parse_config(R"({"alpha": 1.0, "bogus": 3})"),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      parse_config(R"({"microwave": {"powers": {"p1": 1, "px": 2}}})"),
      std::invalid_argument);
  CHECK_THROWS_AS(parse_config(R"({"microwave": {"fading": "nakagami"}})"),
                  std::invalid_argument);
  CHECK_THROWS_AS(parse_config(R"(not json)"), std::invalid_argument);
  CHECK_THROWS_AS(
      parse_config(R"({"microwave": {"powers": {"p1": -1}}})"),
      std::domain_error);
  CHECK_THROWS_AS(parse_config(R"({"run": {"seed": 1.5}})"),
                  std::invalid_argument);
}

TEST_CASE("fig presets produce tables with the documented columns") {
  RunOptions run;
  const ResultTable t6 = cmd_fig("6b", run);
  CHECK(t6.columns == std::vector<std::string>{"P", "p1", "q1", "p2", "q2", "lgr", "label"});
  CHECK(std::get<std::string>(t6.rows.back()[6]) == "[T5]");
  CHECK_THROWS_AS(cmd_fig("9z", run), std::invalid_argument);
}
