#include "aegdm/config.hpp"

#include <charconv>
#include <cmath>
#include <set>
#include <vector>

#include "aegdm/csv.hpp"
#include "aegdm/error.hpp"

namespace aegdm {

namespace {

const std::map<std::string, std::set<std::string>>& schema() {
  static const std::map<std::string, std::set<std::string>> keys = {
      {"problem",
       {"id", "start", "start_jitter", "dimension", "condition", "rows", "noise", "weight_decay", "data_seed", "data"}},
      {"optimizer", {"id", "lr", "mu", "c", "momentum", "beta1", "beta2", "eps", "adam_table_form"}},
      {"run", {"iters", "seed", "batch_size", "schedule", "projection", "granularity", "vector_stride"}},
      {"output", {"trace", "report"}},
  };
  return keys;
}

const std::set<std::string>& problem_ids() {
  static const std::set<std::string> ids = {"rosenbrock", "quadratic", "logistic", "least_squares",
                                            "online_quadratic"};
  return ids;
}

std::string_view trim(std::string_view s) {
  const auto space = [](char ch) { return ch == ' ' || ch == '\t' || ch == '\r'; };
  while (!s.empty() && space(s.front())) s.remove_prefix(1);
  while (!s.empty() && space(s.back())) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_list(std::string_view s) {
  std::vector<std::string_view> parts;
  while (true) {
    const std::size_t comma = s.find(',');
    parts.push_back(trim(s.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    s.remove_prefix(comma + 1);
  }
  return parts;
}

double to_real(std::string_view text, std::size_t line) {
  try {
    return parse_real(trim(text));
  } catch (const ParseError&) {
    throw ParseError(line, "expected a number, got '" + std::string(text) + "'");
  }
}

std::uint64_t to_unsigned(std::string_view text, std::size_t line) {
  text = trim(text);
  std::uint64_t x = 0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), x);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
    throw ParseError(line, "expected a nonnegative integer, got '" + std::string(text) + "'");
  }
  return x;
}

bool to_bool(std::string_view text, std::size_t line) {
  if (text == "true" || text == "1") return true;
  if (text == "false" || text == "0") return false;
  throw ParseError(line, "expected true or false, got '" + std::string(text) + "'");
}

Vector to_vector(std::string_view text, std::size_t line) {
  const auto parts = split_list(text);
  Vector v(static_cast<Index>(parts.size()));
  for (std::size_t i = 0; i < parts.size(); ++i) v[static_cast<Index>(i)] = to_real(parts[i], line);
  return v;
}

Box to_box(std::string_view text, std::size_t line) {
  const auto parts = split_list(text);
  if (parts.size() != 2) throw ParseError(line, "a box is written lower,upper");
  Box box{to_real(parts[0], line), to_real(parts[1], line)};
  if (!(box.lower < box.upper)) throw RangeError("box needs lower < upper");
  return box;
}

std::string join(const Vector& v) {
  std::string out;
  for (Index i = 0; i < v.size(); ++i) {
    if (i > 0) out += ',';
    out += format_real(v[i]);
  }
  return out;
}

}  // namespace

double LrSchedule::rate(double eta, std::size_t t) const {
  if (kind == ScheduleKind::step_decay && t >= at_step) return eta / factor;
  return eta;
}

std::string LrSchedule::to_string() const {
  if (kind == ScheduleKind::constant) return "constant";
  return "step_decay(" + format_real(factor) + "," + std::to_string(at_step) + ")";
}

LrSchedule LrSchedule::parse(std::string_view text) {
  text = trim(text);
  LrSchedule s;
  if (text == "constant") return s;
  constexpr std::string_view prefix = "step_decay(";
  if (text.substr(0, prefix.size()) != prefix || text.back() != ')') {
    throw ParseError(0, "schedule must be constant or step_decay(factor,at_step)");
  }
  const auto args = split_list(text.substr(prefix.size(), text.size() - prefix.size() - 1));
  if (args.size() != 2) throw ParseError(0, "step_decay takes (factor,at_step)");
  s.kind = ScheduleKind::step_decay;
  s.factor = to_real(args[0], 0);
  s.at_step = static_cast<std::size_t>(to_unsigned(args[1], 0));
  if (!(s.factor > 0.0) || !std::isfinite(s.factor)) throw RangeError("step_decay factor must be positive");
  return s;
}

bool same_problem(const ProblemConfig& a, const ProblemConfig& b) {
  const bool starts = a.start.has_value() == b.start.has_value() && (!a.start || *a.start == *b.start);
  return a.id == b.id && starts && a.start_jitter == b.start_jitter && a.dimension == b.dimension &&
         a.condition == b.condition && a.rows == b.rows && a.noise == b.noise && a.weight_decay == b.weight_decay &&
         a.data_seed == b.data_seed && a.data_path == b.data_path;
}

void ExperimentConfig::validate() const {
  hp.validate();
  if (!std::isfinite(hp.c)) throw RangeError("c must be finite");
  if (iters < 1) throw RangeError("iters must be at least 1");
  if (schedule.kind == ScheduleKind::step_decay && !(schedule.factor > 0.0)) {
    throw RangeError("step_decay factor must be positive");
  }
  if (vector_stride < 1) throw RangeError("vector_stride must be at least 1");
  if (problem.start_jitter < 0.0) throw RangeError("start_jitter must be nonnegative");
  if (problem.dimension < 0) throw RangeError("dimension must be nonnegative");
  if (problem.id == "quadratic" && !(problem.condition >= 1.0)) throw RangeError("condition must be >= 1");
  if (!problem_ids().count(problem.id)) throw RangeError("unknown problem id '" + problem.id + "'");
}

OptimizerKind parse_optimizer_kind(std::string_view text) {
  if (text == "sgd" || text == "gd") return OptimizerKind::sgd;
  if (text == "sgdm" || text == "gdm") return OptimizerKind::sgdm;
  if (text == "adam") return OptimizerKind::adam;
  if (text == "aegd") return OptimizerKind::aegd;
  if (text == "aegdm") return OptimizerKind::aegdm;
  throw RangeError("unknown optimizer id '" + std::string(text) + "'");
}

void ConfigBuilder::load(std::string_view text) {
  std::string section;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const std::size_t nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    const std::size_t hash = line.find('#');
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ParseError(line_no, "unterminated section header");
      section = std::string(trim(line.substr(1, line.size() - 2)));
      if (!schema().count(section)) throw UnknownKey(line_no, "unknown section [" + section + "]");
      continue;
    }
    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError(line_no, "expected key = value");
    if (section.empty()) throw ParseError(line_no, "key outside of any [section]");
    const std::string key(trim(line.substr(0, eq)));
    if (key.empty()) throw ParseError(line_no, "empty key");
    set(section, key, std::string(trim(line.substr(eq + 1))), line_no);
  }
}

void ConfigBuilder::set(const std::string& section, const std::string& key, const std::string& value,
                        std::size_t line) {
  const auto it = schema().find(section);
  if (it == schema().end()) throw UnknownKey(line, "unknown section [" + section + "]");
  if (!it->second.count(key)) throw UnknownKey(line, "unknown key '" + key + "' in [" + section + "]");
  values_[{section, key}] = {value, line};
}

ExperimentConfig ConfigBuilder::build() const {
  ExperimentConfig cfg;
  const auto get = [this](const char* section, const char* key) -> const std::pair<std::string, std::size_t>* {
    const auto it = values_.find({section, key});
    return it == values_.end() ? nullptr : &it->second;
  };

  if (auto v = get("problem", "id")) {
    if (!problem_ids().count(v->first)) throw ParseError(v->second, "unknown problem id '" + v->first + "'");
    cfg.problem.id = v->first;
  }
  if (auto v = get("problem", "start")) cfg.problem.start = to_vector(v->first, v->second);
  if (auto v = get("problem", "start_jitter")) cfg.problem.start_jitter = to_real(v->first, v->second);
  if (auto v = get("problem", "dimension")) cfg.problem.dimension = static_cast<Index>(to_unsigned(v->first, v->second));
  if (auto v = get("problem", "condition")) cfg.problem.condition = to_real(v->first, v->second);
  if (auto v = get("problem", "rows")) cfg.problem.rows = static_cast<Index>(to_unsigned(v->first, v->second));
  if (auto v = get("problem", "noise")) cfg.problem.noise = to_real(v->first, v->second);
  if (auto v = get("problem", "weight_decay")) cfg.problem.weight_decay = to_real(v->first, v->second);
  if (auto v = get("problem", "data_seed")) cfg.problem.data_seed = to_unsigned(v->first, v->second);
  if (auto v = get("problem", "data")) cfg.problem.data_path = v->first;

  if (auto v = get("optimizer", "id")) {
    try {
      cfg.optimizer = parse_optimizer_kind(v->first);
    } catch (const RangeError& e) {
      throw ParseError(v->second, e.what());
    }
  }
  cfg.hp.eta = default_learning_rate(cfg.optimizer);
  if (auto v = get("optimizer", "lr")) cfg.hp.eta = to_real(v->first, v->second);
  if (auto v = get("optimizer", "mu")) cfg.hp.mu = to_real(v->first, v->second);
  if (auto v = get("optimizer", "c")) cfg.hp.c = to_real(v->first, v->second);
  if (auto v = get("optimizer", "momentum")) {
    if (v->first == "running_sum") {
      cfg.hp.momentum = MomentumVariant::running_sum;
    } else if (v->first == "ema") {
      cfg.hp.momentum = MomentumVariant::ema;
    } else {
      throw ParseError(v->second, "momentum must be running_sum or ema");
    }
  }
  if (auto v = get("optimizer", "beta1")) cfg.hp.beta1 = to_real(v->first, v->second);
  if (auto v = get("optimizer", "beta2")) cfg.hp.beta2 = to_real(v->first, v->second);
  if (auto v = get("optimizer", "eps")) cfg.hp.eps = to_real(v->first, v->second);
  if (auto v = get("optimizer", "adam_table_form")) cfg.hp.adam_table_form = to_bool(v->first, v->second);

  if (auto v = get("run", "iters")) cfg.iters = static_cast<std::size_t>(to_unsigned(v->first, v->second));
  if (auto v = get("run", "seed")) cfg.seed = to_unsigned(v->first, v->second);
  if (auto v = get("run", "batch_size")) cfg.batch_size = static_cast<std::size_t>(to_unsigned(v->first, v->second));
  if (auto v = get("run", "schedule")) {
    try {
      cfg.schedule = LrSchedule::parse(v->first);
    } catch (const ParseError& e) {
      throw ParseError(v->second, e.detail());
    }
  }
  if (auto v = get("run", "projection")) {
    if (v->first != "none") cfg.projection = to_box(v->first, v->second);
  }
  if (auto v = get("run", "granularity")) {
    if (v->first == "full") {
      cfg.granularity = TraceGranularity::full;
    } else if (v->first == "scalar_only") {
      cfg.granularity = TraceGranularity::scalar_only;
    } else {
      throw ParseError(v->second, "granularity must be full or scalar_only");
    }
  }
  if (auto v = get("run", "vector_stride")) cfg.vector_stride = static_cast<std::size_t>(to_unsigned(v->first, v->second));

  if (auto v = get("output", "trace")) cfg.trace_path = v->first;
  if (auto v = get("output", "report")) cfg.report_path = v->first;

  cfg.validate();
  return cfg;
}

ExperimentConfig parse_config(std::string_view text) {
  ConfigBuilder builder;
  builder.load(text);
  return builder.build();
}

std::string format_config(const ExperimentConfig& cfg) {
  const ProblemConfig& p = cfg.problem;
  std::string out = "[problem]\n";
  out += "id = " + p.id + "\n";
  if (p.start) out += "start = " + join(*p.start) + "\n";
  out += "start_jitter = " + format_real(p.start_jitter) + "\n";
  out += "dimension = " + std::to_string(p.dimension) + "\n";
  out += "condition = " + format_real(p.condition) + "\n";
  out += "rows = " + std::to_string(p.rows) + "\n";
  out += "noise = " + format_real(p.noise) + "\n";
  out += "weight_decay = " + format_real(p.weight_decay) + "\n";
  out += "data_seed = " + std::to_string(p.data_seed) + "\n";
  if (p.data_path) out += "data = " + *p.data_path + "\n";

  out += "\n[optimizer]\n";
  out += "id = " + std::string(to_string(cfg.optimizer)) + "\n";
  out += "lr = " + format_real(cfg.hp.eta) + "\n";
  out += "mu = " + format_real(cfg.hp.mu) + "\n";
  out += "c = " + format_real(cfg.hp.c) + "\n";
  out += "momentum = " + std::string(to_string(cfg.hp.momentum)) + "\n";
  out += "beta1 = " + format_real(cfg.hp.beta1) + "\n";
  out += "beta2 = " + format_real(cfg.hp.beta2) + "\n";
  out += "eps = " + format_real(cfg.hp.eps) + "\n";
  out += std::string("adam_table_form = ") + (cfg.hp.adam_table_form ? "true" : "false") + "\n";

  out += "\n[run]\n";
  out += "iters = " + std::to_string(cfg.iters) + "\n";
  out += "seed = " + std::to_string(cfg.seed) + "\n";
  out += "batch_size = " + std::to_string(cfg.batch_size) + "\n";
  out += "schedule = " + cfg.schedule.to_string() + "\n";
  out += "projection = " +
         (cfg.projection ? format_real(cfg.projection->lower) + "," + format_real(cfg.projection->upper)
                         : std::string("none")) +
         "\n";
  out += std::string("granularity = ") + (cfg.granularity == TraceGranularity::full ? "full" : "scalar_only") + "\n";
  out += "vector_stride = " + std::to_string(cfg.vector_stride) + "\n";

  if (cfg.trace_path || cfg.report_path) {
    out += "\n[output]\n";
    if (cfg.trace_path) out += "trace = " + *cfg.trace_path + "\n";
    if (cfg.report_path) out += "report = " + *cfg.report_path + "\n";
  }
  return out;
}

}  // namespace aegdm
