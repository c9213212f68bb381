#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <limits>

#include "aegdm/config.hpp"
#include "aegdm/csv.hpp"
#include "aegdm/error.hpp"
#include "aegdm/report_io.hpp"
#include "test_helpers.hpp"

using namespace aegdm;
using aegdm::test::vec;

namespace {

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "aegdm_unit";
  std::filesystem::create_directories(dir);
  return dir / name;
}

TrajectoryTrace three_steps() {
  TrajectoryTrace tr;
  for (std::size_t t = 0; t < 3; ++t) {
    TraceStep s;
    s.t = t;
    s.value = 1.0 / (3.0 + static_cast<double>(t));
    s.grad_norm = 0.1 * static_cast<double>(t);
    s.min_r = std::sqrt(2.0) - 1e-3 * static_cast<double>(t);
    s.step_norm = 1e-300 * static_cast<double>(t + 1);
    tr.steps.push_back(s);
  }
  return tr;
}

}  // namespace

TEST_CASE("real formatting round-trips") {
  for (double x : {0.0, -0.0, 1.0, 0.1, 1.0 / 3.0, 1e-300, 5e-324, 1.7976931348623157e308, -2.5e-7, 16916.0}) {
    CHECK(parse_real(format_real(x)) == x);
  }
  CHECK(format_real(3.0) == "3");
  CHECK(format_real(0.1) == "0.10000000000000001");
  CHECK(std::isnan(parse_real(format_real(std::numeric_limits<double>::quiet_NaN()))));
  CHECK(std::isinf(parse_real(format_real(std::numeric_limits<double>::infinity()))));
  CHECK_THROWS_AS(parse_real("1.5x"), ParseError);
  CHECK_THROWS_AS(parse_real(""), ParseError);
}

TEST_CASE("trace csv") {
  const TrajectoryTrace empty;
  const std::string header_only = format_csv(trace_table(empty));
  CHECK(header_only == "iter,f,grad_norm,min_r,step_norm\n");

  const std::string text = format_csv(trace_table(three_steps()));
  CHECK(std::count(text.begin(), text.end(), '\n') == 4);

  const auto path = scratch("trace.csv");
  emit_csv(three_steps(), path);
  const CsvTable back = read_csv(path);
  const auto again = scratch("trace_again.csv");
  emit_csv(back, again);
  CHECK(read_text(path) == read_text(again));

  TrajectoryTrace online = three_steps();
  online.regret = {0.5, 0.25, 1.0};
  CHECK(trace_table(online).header.back() == "regret");

  CHECK_THROWS_AS(emit_csv(empty, "/nonexistent_dir/x.csv"), IoError);
  CHECK_THROWS_AS(parse_csv("a,b\n1\n"), ParseError);
}

TEST_CASE("dataset csv") {
  const Dataset data = synthetic_dataset(LossKind::logistic, 7, 3, 0.1, 4);
  const auto path = scratch("data.csv");
  save_dataset(data, path);
  const Dataset back = load_dataset(path);
  CHECK(back.x == data.x);
  CHECK(back.y == data.y);
  CHECK(read_text(path).substr(0, 15) == "x0,x1,x2,label\n");
}

TEST_CASE("report lines") {
  BoundReport r;
  r.bound_id = "step_sum";
  r.lhs = 0.1;
  r.rhs = 2.0;
  r.margin = 1.9;
  r.satisfied = true;
  r.constants = {{"eta", 0.01}, {"n", 2.0}};
  const std::string line = format_report(r);
  CHECK(line == "bound_id=step_sum lhs=0.10000000000000001 rhs=2 margin=1.8999999999999999 satisfied=true eta=0.01 n=2");
  const BoundReport back = parse_report(line);
  CHECK(back.bound_id == r.bound_id);
  CHECK(back.lhs == r.lhs);
  CHECK(back.satisfied);
  CHECK(back.constants == r.constants);
  CHECK(format_reports(parse_reports("# c\n" + line + "\n\n" + line + "\n")) == line + "\n" + line + "\n");
  CHECK_THROWS_AS(parse_report("bound_id=x lhs=1"), ParseError);
  try {
    parse_reports(line + "\nbound_id=x lhs=oops rhs=1 margin=0 satisfied=true\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
}

TEST_CASE("config defaults") {
  const ExperimentConfig aegdm = parse_config("[optimizer]\nid = aegdm\n");
  CHECK(aegdm.hp.eta == 0.01);
  CHECK(aegdm.hp.mu == 0.9);
  CHECK(aegdm.hp.c == 1.0);
  CHECK(parse_config("[optimizer]\nid = aegd\n").hp.eta == 0.1);
  CHECK(parse_config("[optimizer]\nid = adam\n").hp.eta == 0.001);
  CHECK(parse_config("").optimizer == OptimizerKind::aegdm);
  CHECK(parse_config("[optimizer]\nid = gdm\n").optimizer == OptimizerKind::sgdm);
}

TEST_CASE("config parsing") {
  const ExperimentConfig cfg = parse_config(R"(# Rosenbrock from the usual start
[problem]
id = rosenbrock
start = -3, -4

[optimizer]
id = aegdm
lr = 2e-5   # tuned
mu = 0.9
momentum = ema

[run]
iters = 500
seed = 7
schedule = step_decay(10, 150)
projection = -10, 10
granularity = scalar_only

[output]
trace = out.csv
)");
  CHECK(cfg.problem.start == vec({-3.0, -4.0}));
  CHECK(cfg.hp.eta == 2e-5);
  CHECK(cfg.hp.momentum == MomentumVariant::ema);
  CHECK(cfg.iters == 500);
  CHECK(cfg.seed == 7);
  CHECK(cfg.schedule.kind == ScheduleKind::step_decay);
  CHECK(cfg.schedule.rate(0.5, 149) == 0.5);
  CHECK(cfg.schedule.rate(0.5, 150) == 0.05);
  CHECK(cfg.projection->lower == -10.0);
  CHECK(cfg.granularity == TraceGranularity::scalar_only);
  CHECK(cfg.trace_path == "out.csv");
  CHECK(parse_config(format_config(cfg)).hp.eta == cfg.hp.eta);
  CHECK(format_config(parse_config(format_config(cfg))) == format_config(cfg));
}

TEST_CASE("config errors") {
  CHECK_THROWS_AS(parse_config("[optimizer]\nmu = 1.0\n"), RangeError);
  CHECK_THROWS_AS(parse_config("[optimizer]\nlr = 0\n"), RangeError);
  CHECK_THROWS_AS(parse_config("[run]\niters = 0\n"), RangeError);
  CHECK_THROWS_AS(parse_config("[run]\nschedule = step_decay(0, 5)\n"), RangeError);
  CHECK_THROWS_AS(parse_config("[optimizer]\nspeed = 3\n"), UnknownKey);
  CHECK_THROWS_AS(parse_config("[engine]\n"), UnknownKey);
  try {
    parse_config("[run]\n\niters = many\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
  try {
    parse_config("lr = 1\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 1);
  }
  CHECK_THROWS_AS(parse_config("[problem]\nid = sphere\n"), ParseError);
}

TEST_CASE("later entries override earlier ones") {
  ConfigBuilder b;
  b.load("[optimizer]\nid = aegd\nlr = 0.3\n");
  b.set("optimizer", "lr", "0.05");
  CHECK(b.build().hp.eta == 0.05);
  CHECK_THROWS_AS(b.set("run", "speed", "1"), UnknownKey);
}
