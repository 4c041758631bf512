#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "gmdkp/bench.hpp"
#include "gmdkp/error.hpp"
#include "gmdkp/random.hpp"

using namespace gmdkp;
using namespace gmdkp::bench;

namespace {

BenchConfig small_config() {
  BenchConfig c;
  c.n_items = {10, 14};
  c.alphas = {0.2, 0.5};
  c.x_maxes = {1};
  c.n_trials = 4;
  c.engines = {Solver::bp, Solver::gamp, Solver::greedy, Solver::exact};
  c.deterministic = true;
  c.theory = false;
  c.threads = 1;
  return c;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_SUITE("bench") {
  TEST_CASE("config parsing") {
    const auto c = parse_config(
        "# experiment\n"
        "n_items = 50, 100\n"
        "alpha = 0.5,1 ,2\n"
        "x_max = 1, 2\n"
        "trials = 7   # per cell\n"
        "engines = bp, greedy, gamp\n"
        "seed_base = 99\n"
        "output_dir = out dir\n"
        "mean_weight = 0.4\n"
        "weight_variance = 0.01\n"
        "capacity_ratio = 0.3\n"
        "tol = 1e-6\n"
        "damping = 0.7\n"
        "max_sweeps = 50\n"
        "warm_start = false\n"
        "exact_budget = 1000\n"
        "theory = no\n"
        "deterministic = yes\n"
        "threads = 3\n"
        "k = 20\n");
    CHECK(c.n_items == std::vector<std::size_t>{50, 100});
    CHECK(c.alphas == std::vector<double>{0.5, 1.0, 2.0});
    CHECK(c.x_maxes == std::vector<int>{1, 2});
    CHECK(c.n_trials == 7);
    CHECK(c.engines == std::vector<Solver>{Solver::bp, Solver::greedy, Solver::gamp});
    CHECK(c.seed_base == 99);
    CHECK(c.output_dir == "out dir");
    CHECK(c.mean_weight == 0.4);
    CHECK(c.weight_variance == 0.01);
    CHECK(c.capacity_ratio == 0.3);
    CHECK(c.iter.tol == 1e-6);
    CHECK(c.iter.damping == 0.7);
    CHECK(c.iter.max_sweeps == 50);
    CHECK_FALSE(c.warm_start);
    CHECK(c.exact_budget == 1000);
    CHECK_FALSE(c.theory);
    CHECK(c.deterministic);
    CHECK(c.threads == 3);
    CHECK(c.fixed_k == 20u);
  }

  TEST_CASE("config errors carry the line") {
    try {
      parse_config("trials = 3\nbogus = 1\n");
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(e.line() == 2);
    }
    CHECK_THROWS_AS(parse_config("trials = three\n"), ParseError);
    CHECK_THROWS_AS(parse_config("trials = 1, 2\n"), ParseError);
    CHECK_THROWS_AS(parse_config("engines = bp, annealing\n"), ParseError);
    CHECK_THROWS_AS(parse_config("warm_start = maybe\n"), ParseError);
    CHECK_THROWS_AS(parse_config("alpha\n"), ParseError);
    CHECK_THROWS_AS(parse_config("alpha = \n"), ParseError);
    CHECK_THROWS(read_config_file("/nonexistent/bench.cfg"));
  }

  TEST_CASE("config validation") {
    auto c = small_config();
    CHECK_NOTHROW(c.validate());
    c.n_trials = 0;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c = small_config();
    c.n_items = {40};
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);  // exact beyond the oracle budget
    c.engines = {Solver::bp};
    CHECK_NOTHROW(c.validate());
    c.alphas = {0.0};
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c = small_config();
    c.engines.clear();
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  }

  TEST_CASE("solver names round trip") {
    for (Solver s : {Solver::bp, Solver::gamp, Solver::greedy, Solver::exact}) CHECK(parse_solver(solver_name(s)) == s);
    CHECK_THROWS_AS(parse_solver("pech"), std::invalid_argument);
  }

  TEST_CASE("cell seeds follow the documented hash and are shared by engines") {
    CHECK(cell_seed(1, 50, 50, 1, 3) == mix_seed({1, 50, 50, 1, 3}));
    const auto c = small_config();
    const auto a = run_trial(c, 10, 0.5, 1, Solver::bp, 2);
    const auto b = run_trial(c, 10, 0.5, 1, Solver::greedy, 2);
    CHECK(a.seed == b.seed);
    CHECK(a.n_constraints == 5);
    CHECK(cell_params(c, 10, 0.5, 1, 2).seed == a.seed);
  }

  TEST_CASE("rows are sorted, feasible and bounded by the exact optimum") {
    const auto rows = run_bench(small_config());
    CHECK(rows.size() == 2 * 2 * 4 * 4);
    std::map<std::tuple<std::size_t, std::size_t, std::size_t>, double> best;
    for (const auto& r : rows) {
      CHECK(r.error.empty());
      CHECK(r.feasible);
      CHECK(r.wall_time_ms == 0.0);
      if (r.engine == Solver::exact) best[{r.n_items, r.n_constraints, r.trial}] = r.profit;
    }
    for (const auto& r : rows) CHECK(r.profit <= best[{r.n_items, r.n_constraints, r.trial}]);
    for (std::size_t j = 1; j < rows.size(); ++j) {
      const auto& a = rows[j - 1];
      const auto& b = rows[j];
      CHECK(std::make_tuple(a.n_items, a.n_constraints, a.x_max, static_cast<int>(a.engine), a.trial) <
            std::make_tuple(b.n_items, b.n_constraints, b.x_max, static_cast<int>(b.engine), b.trial));
    }
  }

  TEST_CASE("summary standard error is recomputable from the rows") {
    const auto rows = run_bench(small_config());
    for (const auto& s : summarize(rows)) {
      std::vector<double> m;
      for (const auto& r : rows)
        if (r.n_items == s.n_items && r.n_constraints == s.n_constraints && r.engine == s.engine) m.push_back(r.scaled_m);
      REQUIRE(m.size() == s.n_ok);
      double mean = 0, ss = 0;
      for (double v : m) mean += v;
      mean /= m.size();
      for (double v : m) ss += (v - mean) * (v - mean);
      CHECK(s.mean_m == doctest::Approx(mean).epsilon(1e-12));
      CHECK(s.se_m == doctest::Approx(std::sqrt(ss / (m.size() - 1)) / std::sqrt(m.size())).epsilon(1e-12));
    }
  }

  TEST_CASE("per-trial failures become error rows") {
    auto c = small_config();
    c.engines = {Solver::exact};
    c.exact_budget = 1u << 12;  // validate checks N = 10 (1024) and 14 (16384)
    c.n_items = {10};
    const auto ok = run_bench(c);
    for (const auto& r : ok) CHECK(r.error.empty());
    c.exact_budget = 100;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    // a failing row does not abort the run: call the trial directly
    const auto row = run_trial(c, 10, 0.5, 1, Solver::exact, 0);
    CHECK(row.error == "budget");
    const auto summary = summarize({row});
    REQUIRE(summary.size() == 1);
    CHECK(summary[0].n_errors == 1);
    CHECK(summary[0].n_ok == 0);
  }

  TEST_CASE("CSV output is byte-identical across reruns and thread counts") {
    auto c = small_config();
    const std::string a = records_csv(run_bench(c), false);
    c.threads = 3;
    const std::string b = records_csv(run_bench(c), false);
    CHECK(a == b);
    CHECK(a.rfind("n_items,n_constraints,alpha,x_max,engine,trial,seed,profit,scaled_m,sweeps_total,wall_time_ms,feasible,error\n", 0) == 0);
    CHECK(records_csv({}, true).rfind("# generated ", 0) == 0);
  }

  TEST_CASE("log-log slope") {
    CHECK(loglog_slope({1, 2, 4, 8}, {3, 12, 48, 192}) == doctest::Approx(2.0));
    CHECK(loglog_slope({1, 10}, {5, 0.5}) == doctest::Approx(-1.0));
    CHECK(std::isnan(loglog_slope({1}, {1})));
    CHECK(loglog_slope({0, 1, 2}, {1, 1, 4}) == doctest::Approx(2.0));  // x = 0 skipped
  }

  TEST_CASE("run_and_write produces files and reproduces them") {
    const auto dir = std::filesystem::temp_directory_path() / "gmdkp_bench_test";
    std::filesystem::remove_all(dir);
    auto c = small_config();
    c.theory = true;
    c.engines = {Solver::bp, Solver::greedy};
    c.n_trials = 2;
    c.output_dir = (dir / "a").string();
    const auto written = run_and_write(c);
    CHECK(std::filesystem::exists(dir / "a" / "records.csv"));
    CHECK(std::filesystem::exists(dir / "a" / "summary.csv"));
    CHECK(std::filesystem::exists(dir / "a" / "theory.csv"));
    CHECK(std::filesystem::exists(dir / "a" / "m_vs_alpha_n10_x1.svg"));
    CHECK(slurp(dir / "a" / "m_vs_alpha_n10_x1.svg").rfind("<svg", 0) == 0);
    c.output_dir = (dir / "b").string();
    run_and_write(c);
    for (const char* f : {"records.csv", "summary.csv", "theory.csv"}) CHECK(slurp(dir / "a" / f) == slurp(dir / "b" / f));
    std::filesystem::remove_all(dir);
  }
}
