#include "gmdkp/bench.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <tuple>

#include "gmdkp/error.hpp"
#include "gmdkp/mpgs.hpp"
#include "gmdkp/oracle.hpp"
#include "gmdkp/random.hpp"
#include "gmdkp/replica.hpp"
#include "gmdkp/svg.hpp"

namespace gmdkp::bench {

Solver parse_solver(std::string_view name) {
  if (name == "bp") return Solver::bp;
  if (name == "gamp") return Solver::gamp;
  if (name == "greedy") return Solver::greedy;
  if (name == "exact") return Solver::exact;
  throw std::invalid_argument("unknown engine '" + std::string(name) + "'");
}

std::string_view solver_name(Solver solver) {
  switch (solver) {
    case Solver::bp: return "bp";
    case Solver::gamp: return "gamp";
    case Solver::greedy: return "greedy";
    case Solver::exact: return "exact";
  }
  return "?";
}

namespace {

std::size_t constraints_for(const BenchConfig& config, std::size_t n, double alpha) {
  if (config.fixed_k) return *config.fixed_k;
  EnsembleParams p;
  p.n_items = n;
  p.alpha = alpha;
  return p.constraints();
}

// Cells are (N, alpha, x_max); with a fixed K the alpha list is ignored.
std::vector<std::tuple<std::size_t, double, int>> cells(const BenchConfig& config) {
  std::vector<std::tuple<std::size_t, double, int>> out;
  for (std::size_t n : config.n_items) {
    std::vector<double> alphas = config.alphas;
    if (config.fixed_k) alphas = {static_cast<double>(*config.fixed_k) / static_cast<double>(n)};
    for (double alpha : alphas)
      for (int x_max : config.x_maxes) out.emplace_back(n, alpha, x_max);
  }
  return out;
}

}  // namespace

void BenchConfig::validate() const {
  if (n_items.empty() || x_maxes.empty() || engines.empty()) throw std::invalid_argument("empty list in bench config");
  if (!fixed_k && alphas.empty()) throw std::invalid_argument("bench config needs alpha values or a fixed k");
  if (n_trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (fixed_k && *fixed_k < 1) throw std::invalid_argument("k must be >= 1");
  iter.validate();
  for (std::size_t n : n_items)
    if (n < 1) throw std::invalid_argument("n_items must be >= 1");
  for (double a : alphas)
    if (!(a > 0.0)) throw std::invalid_argument("alpha must be > 0");
  for (int x : x_maxes)
    if (x < 1) throw std::invalid_argument("x_max must be >= 1");
  if (!(mean_weight > 0.0 && weight_variance > 0.0 && capacity_ratio > 0.0))
    throw std::invalid_argument("mean_weight, weight_variance and capacity_ratio must be > 0");
  if (std::find(engines.begin(), engines.end(), Solver::exact) != engines.end()) {
    for (std::size_t n : n_items)
      for (int x : x_maxes) {
        const double log_states = static_cast<double>(n) * std::log(static_cast<double>(x) + 1.0);
        if (log_states > std::log(static_cast<double>(exact_budget)) + 1e-9)
          throw std::invalid_argument("exact engine requested for N=" + std::to_string(n) + ", x_max=" +
                                      std::to_string(x) + " beyond the oracle budget");
      }
  }
}

// ---------------------------------------------------------------------------
// Config file

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

template <typename T>
T parse_number(const std::string& s, std::size_t line) {
  T v{};
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) throw ParseError(line, "bad number '" + s + "'");
  return v;
}

bool parse_bool(const std::string& s, std::size_t line) {
  if (s == "1" || s == "true" || s == "yes" || s == "on") return true;
  if (s == "0" || s == "false" || s == "no" || s == "off") return false;
  throw ParseError(line, "bad boolean '" + s + "'");
}

}  // namespace

BenchConfig parse_config(const std::string& text) {
  BenchConfig c;
  std::istringstream in(text);
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string body = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) throw ParseError(line, "expected 'key = value'");
    const std::string key = trim(body.substr(0, eq));
    const std::string value = trim(body.substr(eq + 1));
    const auto items = split_list(value);
    if (items.empty()) throw ParseError(line, "empty value for '" + key + "'");
    auto single = [&]() -> const std::string& {
      if (items.size() != 1) throw ParseError(line, "'" + key + "' takes a single value");
      return items.front();
    };

    if (key == "n_items") {
      c.n_items.clear();
      for (const auto& s : items) c.n_items.push_back(parse_number<std::size_t>(s, line));
    } else if (key == "alpha") {
      c.alphas.clear();
      for (const auto& s : items) c.alphas.push_back(parse_number<double>(s, line));
    } else if (key == "k") {
      c.fixed_k = parse_number<std::size_t>(single(), line);
    } else if (key == "x_max") {
      c.x_maxes.clear();
      for (const auto& s : items) c.x_maxes.push_back(parse_number<int>(s, line));
    } else if (key == "trials") {
      c.n_trials = parse_number<std::size_t>(single(), line);
    } else if (key == "engines") {
      c.engines.clear();
      try {
        for (const auto& s : items) c.engines.push_back(parse_solver(s));
      } catch (const std::invalid_argument& e) {
        throw ParseError(line, e.what());
      }
    } else if (key == "seed_base") {
      c.seed_base = parse_number<std::uint64_t>(single(), line);
    } else if (key == "output_dir") {
      c.output_dir = single();
    } else if (key == "mean_weight") {
      c.mean_weight = parse_number<double>(single(), line);
    } else if (key == "weight_variance") {
      c.weight_variance = parse_number<double>(single(), line);
    } else if (key == "capacity_ratio") {
      c.capacity_ratio = parse_number<double>(single(), line);
    } else if (key == "tol") {
      c.iter.tol = parse_number<double>(single(), line);
    } else if (key == "damping") {
      c.iter.damping = parse_number<double>(single(), line);
    } else if (key == "max_sweeps") {
      c.iter.max_sweeps = parse_number<int>(single(), line);
    } else if (key == "warm_start") {
      c.warm_start = parse_bool(single(), line);
    } else if (key == "exact_budget") {
      c.exact_budget = parse_number<std::uint64_t>(single(), line);
    } else if (key == "theory") {
      c.theory = parse_bool(single(), line);
    } else if (key == "deterministic") {
      c.deterministic = parse_bool(single(), line);
    } else if (key == "threads") {
      c.threads = parse_number<unsigned>(single(), line);
    } else {
      throw ParseError(line, "unknown key '" + key + "'");
    }
  }
  return c;
}

BenchConfig read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

// ---------------------------------------------------------------------------
// Trials

std::uint64_t cell_seed(std::uint64_t seed_base, std::size_t n, std::size_t k, int x_max, std::size_t trial) {
  return mix_seed({seed_base, n, k, static_cast<std::uint64_t>(x_max), trial});
}

EnsembleParams cell_params(const BenchConfig& config, std::size_t n, double alpha, int x_max, std::size_t trial) {
  EnsembleParams p;
  p.n_items = n;
  p.alpha = alpha;
  p.mean_weight = config.mean_weight;
  p.weight_variance = config.weight_variance;
  p.capacity_ratio = config.capacity_ratio;
  p.x_max = x_max;
  const std::size_t k = constraints_for(config, n, alpha);
  p.n_constraints = k;
  p.seed = cell_seed(config.seed_base, n, k, x_max, trial);
  return p;
}

namespace {

std::string sanitize(std::string s) {
  for (char& c : s)
    if (c == ',' || c == '\n' || c == '\r') c = ';';
  return s;
}

}  // namespace

BenchRecord run_trial(const BenchConfig& config, std::size_t n, double alpha, int x_max, Solver engine,
                      std::size_t trial) {
  const EnsembleParams params = cell_params(config, n, alpha, x_max, trial);
  BenchRecord r;
  r.n_items = n;
  r.n_constraints = *params.n_constraints;
  r.alpha = alpha;
  r.x_max = x_max;
  r.engine = engine;
  r.trial = trial;
  r.seed = params.seed;

  const Instance instance = generate_instance(params);
  const auto start = std::chrono::steady_clock::now();
  try {
    Selection selection;
    switch (engine) {
      case Solver::bp:
      case Solver::gamp: {
        const auto trace = mpgs::mpgs_solve(instance, engine == Solver::bp ? mpgs::Engine::bp : mpgs::Engine::gamp,
                                            config.iter, config.warm_start);
        selection = trace.final_selection;
        r.sweeps_total = trace.sweeps_total();
        break;
      }
      case Solver::greedy:
        selection = mpgs::density_greedy_solve(instance).final_selection;
        break;
      case Solver::exact: {
        oracle::OracleOptions opts;
        opts.node_budget = config.exact_budget;
        selection = oracle::exact_optimum(instance, opts).best_selection;
        break;
      }
    }
    const auto eval = evaluate(instance, selection, params);
    r.profit = eval.profit;
    r.scaled_m = *eval.scaled_m;
    r.feasible = eval.feasible;
  } catch (const BudgetExceeded&) {
    r.error = "budget";
  } catch (const NoFeasibleAssignment&) {
    r.error = "infeasible";
  } catch (const NumericError& e) {
    r.error = sanitize(std::string("numeric: ") + e.what());
  } catch (const std::exception& e) {
    r.error = sanitize(std::string("error: ") + e.what());
  }
  const auto stop = std::chrono::steady_clock::now();
  r.wall_time_ms = config.deterministic ? 0.0 : std::chrono::duration<double, std::milli>(stop - start).count();
  return r;
}

namespace {

unsigned worker_count(const BenchConfig& config, std::size_t tasks) {
  unsigned n = config.threads;
  if (n == 0) {
    if (const char* env = std::getenv("GMDKP_THREADS")) {
      const std::string s(env);
      unsigned v = 0;
      const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
      if (ec == std::errc() && ptr == s.data() + s.size() && v > 0) n = v;
    }
  }
  if (n == 0) n = std::max(1u, std::thread::hardware_concurrency());
  return static_cast<unsigned>(std::min<std::size_t>(n, std::max<std::size_t>(tasks, 1)));
}

auto record_key(const BenchRecord& r) {
  return std::make_tuple(r.n_items, r.n_constraints, r.x_max, static_cast<int>(r.engine), r.trial);
}

}  // namespace

std::vector<BenchRecord> run_bench(const BenchConfig& config) {
  config.validate();
  struct Task {
    std::size_t n;
    double alpha;
    int x_max;
    Solver engine;
    std::size_t trial;
  };
  std::vector<Task> tasks;
  for (const auto& [n, alpha, x_max] : cells(config))
    for (Solver engine : config.engines)
      for (std::size_t t = 0; t < config.n_trials; ++t) tasks.push_back({n, alpha, x_max, engine, t});

  std::vector<BenchRecord> records(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t j = next++; j < tasks.size(); j = next++) {
      const Task& t = tasks[j];
      records[j] = run_trial(config, t.n, t.alpha, t.x_max, t.engine, t.trial);
    }
  };
  const unsigned n_workers = worker_count(config, tasks.size());
  if (n_workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < n_workers; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  std::stable_sort(records.begin(), records.end(),
                   [](const BenchRecord& a, const BenchRecord& b) { return record_key(a) < record_key(b); });
  return records;
}

// ---------------------------------------------------------------------------
// Aggregation and output

namespace {

std::pair<double, double> mean_se(const std::vector<double>& v) {
  if (v.empty()) return {std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::quiet_NaN()};
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= static_cast<double>(v.size());
  if (v.size() < 2) return {mean, 0.0};
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  const double sd = std::sqrt(ss / static_cast<double>(v.size() - 1));
  return {mean, sd / std::sqrt(static_cast<double>(v.size()))};
}

std::string timestamp_line() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[64];
  std::strftime(buf, sizeof buf, "# generated %Y-%m-%dT%H:%M:%SZ\n", &tm);
  return buf;
}

std::string fmt(const char* pattern, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, v);
  return buf;
}

}  // namespace

std::vector<CellSummary> summarize(const std::vector<BenchRecord>& records) {
  std::map<std::tuple<std::size_t, std::size_t, int, int>, std::vector<const BenchRecord*>> groups;
  for (const auto& r : records)
    groups[{r.n_items, r.n_constraints, r.x_max, static_cast<int>(r.engine)}].push_back(&r);

  std::vector<CellSummary> out;
  for (const auto& [key, rows] : groups) {
    CellSummary s;
    s.n_items = rows.front()->n_items;
    s.n_constraints = rows.front()->n_constraints;
    s.alpha = rows.front()->alpha;
    s.x_max = rows.front()->x_max;
    s.engine = rows.front()->engine;
    std::vector<double> profit, m, time, sweeps;
    for (const auto* r : rows) {
      if (!r->error.empty()) {
        ++s.n_errors;
        continue;
      }
      profit.push_back(r->profit);
      m.push_back(r->scaled_m);
      time.push_back(r->wall_time_ms);
      sweeps.push_back(static_cast<double>(r->sweeps_total));
    }
    s.n_ok = profit.size();
    std::tie(s.mean_profit, s.se_profit) = mean_se(profit);
    std::tie(s.mean_m, s.se_m) = mean_se(m);
    std::tie(s.mean_time_ms, s.se_time_ms) = mean_se(time);
    s.mean_sweeps = mean_se(sweeps).first;
    out.push_back(s);
  }
  return out;
}

std::vector<TheoryPoint> theory_points(const BenchConfig& config) {
  std::set<std::pair<double, int>> keys;
  for (const auto& [n, alpha, x_max] : cells(config)) keys.emplace(alpha, x_max);
  std::vector<TheoryPoint> out;
  for (const auto& [alpha, x_max] : keys) {
    EnsembleParams p;
    p.mean_weight = config.mean_weight;
    p.weight_variance = config.weight_variance;
    p.capacity_ratio = config.capacity_ratio;
    p.x_max = x_max;
    TheoryPoint t{alpha, x_max, std::numeric_limits<double>::quiet_NaN()};
    try {
      t.m_opt = replica::find_m_opt(alpha, p).m_opt;
    } catch (const std::exception&) {
    }
    out.push_back(t);
  }
  return out;
}

std::string records_csv(const std::vector<BenchRecord>& records, bool with_timestamp) {
  std::string out = with_timestamp ? timestamp_line() : std::string();
  out += "n_items,n_constraints,alpha,x_max,engine,trial,seed,profit,scaled_m,sweeps_total,wall_time_ms,feasible,error\n";
  for (const auto& r : records) {
    out += std::to_string(r.n_items) + "," + std::to_string(r.n_constraints) + "," + fmt("%.10g", r.alpha) + "," +
           std::to_string(r.x_max) + "," + std::string(solver_name(r.engine)) + "," + std::to_string(r.trial) + "," +
           std::to_string(r.seed) + "," + fmt("%.17g", r.profit) + "," + fmt("%.17g", r.scaled_m) + "," +
           std::to_string(r.sweeps_total) + "," + fmt("%.3f", r.wall_time_ms) + "," + (r.feasible ? "1" : "0") + "," +
           r.error + "\n";
  }
  return out;
}

std::string summary_csv(const std::vector<CellSummary>& summaries, bool with_timestamp) {
  std::string out = with_timestamp ? timestamp_line() : std::string();
  out +=
      "n_items,n_constraints,alpha,x_max,engine,n_ok,n_errors,mean_profit,se_profit,mean_scaled_m,se_scaled_m,"
      "mean_wall_time_ms,se_wall_time_ms,mean_sweeps\n";
  for (const auto& s : summaries) {
    out += std::to_string(s.n_items) + "," + std::to_string(s.n_constraints) + "," + fmt("%.10g", s.alpha) + "," +
           std::to_string(s.x_max) + "," + std::string(solver_name(s.engine)) + "," + std::to_string(s.n_ok) + "," +
           std::to_string(s.n_errors) + "," + fmt("%.10g", s.mean_profit) + "," + fmt("%.10g", s.se_profit) + "," +
           fmt("%.10g", s.mean_m) + "," + fmt("%.10g", s.se_m) + "," + fmt("%.6g", s.mean_time_ms) + "," +
           fmt("%.6g", s.se_time_ms) + "," + fmt("%.6g", s.mean_sweeps) + "\n";
  }
  return out;
}

std::string theory_csv(const std::vector<TheoryPoint>& points) {
  std::string out = "alpha,x_max,m_opt\n";
  for (const auto& t : points)
    out += fmt("%.10g", t.alpha) + "," + std::to_string(t.x_max) + "," + fmt("%.10g", t.m_opt) + "\n";
  return out;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t n = 0;
  for (std::size_t j = 0; j < x.size() && j < y.size(); ++j) {
    if (!(x[j] > 0.0 && y[j] > 0.0)) continue;
    const double lx = std::log(x[j]), ly = std::log(y[j]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++n;
  }
  if (n < 2) return std::numeric_limits<double>::quiet_NaN();
  const double nd = static_cast<double>(n);
  const double den = nd * sxx - sx * sx;
  if (den == 0.0) return std::numeric_limits<double>::quiet_NaN();
  return (nd * sxy - sx * sy) / den;
}

namespace {

void write_file(const std::filesystem::path& path, const std::string& text, std::vector<std::string>& written) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << text;
  written.push_back(path.string());
}

std::string label_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

}  // namespace

std::vector<std::string> run_and_write(const BenchConfig& config) {
  const auto records = run_bench(config);
  const auto summaries = summarize(records);
  const auto theory = config.theory ? theory_points(config) : std::vector<TheoryPoint>{};
  const bool stamp = !config.deterministic;

  const std::filesystem::path dir(config.output_dir);
  std::filesystem::create_directories(dir);
  std::vector<std::string> written;
  write_file(dir / "records.csv", records_csv(records, stamp), written);
  write_file(dir / "summary.csv", summary_csv(summaries, stamp), written);
  if (config.theory) write_file(dir / "theory.csv", theory_csv(theory), written);

  auto theory_at = [&](double alpha, int x_max) {
    for (const auto& t : theory)
      if (t.alpha == alpha && t.x_max == x_max) return t.m_opt;
    return std::numeric_limits<double>::quiet_NaN();
  };

  // M against alpha, one plot per (N, x_max) with at least two alpha values.
  std::set<std::pair<std::size_t, int>> nx;
  for (const auto& s : summaries) nx.emplace(s.n_items, s.x_max);
  for (const auto& [n, x_max] : nx) {
    svg::Plot plot;
    plot.title = "N = " + std::to_string(n) + ", x_max = " + std::to_string(x_max);
    plot.x_label = "alpha = K / N";
    plot.y_label = "scaled profit M";
    std::set<double> alphas;
    for (Solver e : config.engines) {
      svg::Series series;
      series.label = std::string(solver_name(e));
      for (const auto& s : summaries)
        if (s.n_items == n && s.x_max == x_max && s.engine == e) {
          series.x.push_back(s.alpha);
          series.y.push_back(s.mean_m);
          series.err.push_back(s.se_m);
          alphas.insert(s.alpha);
        }
      plot.series.push_back(series);
    }
    if (alphas.size() < 2) continue;
    if (config.theory) {
      svg::Series line;
      line.label = "replica M_opt";
      line.line_only = true;
      for (double a : alphas) {
        line.x.push_back(a);
        line.y.push_back(theory_at(a, x_max));
      }
      plot.series.push_back(line);
    }
    write_file(dir / ("m_vs_alpha_n" + std::to_string(n) + "_x" + std::to_string(x_max) + ".svg"), svg::render(plot),
               written);
  }

  // M and wall time against N, one plot per (alpha or fixed K, x_max) with
  // at least two N values.
  std::map<std::pair<std::string, int>, std::vector<const CellSummary*>> by_size;
  for (const auto& s : summaries) {
    const std::string group = config.fixed_k ? "k" + std::to_string(*config.fixed_k) : "a" + label_number(s.alpha);
    by_size[{group, s.x_max}].push_back(&s);
  }
  for (const auto& [key, rows] : by_size) {
    std::set<std::size_t> ns;
    for (const auto* s : rows) ns.insert(s->n_items);
    if (ns.size() < 2) continue;
    const auto& [group, x_max] = key;
    const std::string tag = group + "_x" + std::to_string(x_max);
    const std::string what = config.fixed_k ? "K = " + std::to_string(*config.fixed_k)
                                            : "alpha = " + label_number(rows.front()->alpha);

    svg::Plot m_plot;
    m_plot.title = what + ", x_max = " + std::to_string(x_max);
    m_plot.x_label = "N";
    m_plot.y_label = "scaled profit M";
    svg::Plot t_plot = m_plot;
    t_plot.y_label = "wall time per instance [ms]";
    t_plot.log_x = t_plot.log_y = true;

    for (Solver e : config.engines) {
      svg::Series ms, ts;
      ms.label = ts.label = std::string(solver_name(e));
      for (const auto* s : rows)
        if (s->engine == e) {
          ms.x.push_back(static_cast<double>(s->n_items));
          ms.y.push_back(s->mean_m);
          ms.err.push_back(s->se_m);
          ts.x.push_back(static_cast<double>(s->n_items));
          ts.y.push_back(s->mean_time_ms);
        }
      const double slope = loglog_slope(ts.x, ts.y);
      if (std::isfinite(slope)) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%s slope %.2f", ts.label.c_str(), slope);
        t_plot.notes.push_back(buf);
      }
      m_plot.series.push_back(std::move(ms));
      t_plot.series.push_back(std::move(ts));
    }
    if (config.theory) {
      svg::Series line;
      line.label = "replica M_opt";
      line.line_only = true;
      for (std::size_t n : ns) {
        double alpha = rows.front()->alpha;
        for (const auto* s : rows)
          if (s->n_items == n) alpha = s->alpha;
        line.x.push_back(static_cast<double>(n));
        line.y.push_back(theory_at(alpha, x_max));
      }
      m_plot.series.push_back(line);
    }
    write_file(dir / ("m_vs_n_" + tag + ".svg"), svg::render(m_plot), written);
    if (!config.deterministic) write_file(dir / ("time_vs_n_" + tag + ".svg"), svg::render(t_plot), written);
  }
  return written;
}

}  // namespace gmdkp::bench
