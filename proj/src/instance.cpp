#include "gmdkp/instance.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "gmdkp/error.hpp"
#include "gmdkp/random.hpp"

namespace gmdkp {

Instance::Instance(std::vector<double> profits, std::vector<double> weights, std::vector<double> capacities,
                   std::vector<int> max_counts)
    : Instance(std::move(profits), std::make_shared<const std::vector<double>>(std::move(weights)),
               std::move(capacities), std::move(max_counts)) {}

Instance::Instance(std::vector<double> profits, std::shared_ptr<const std::vector<double>> weights,
                   std::vector<double> capacities, std::vector<int> max_counts)
    : profits_(std::move(profits)),
      weights_(std::move(weights)),
      capacities_(std::move(capacities)),
      max_counts_(std::move(max_counts)) {
  validate();
}

void Instance::validate() const {
  const auto n = profits_.size();
  const auto k = capacities_.size();
  if (n == 0) throw std::invalid_argument("instance needs at least one item");
  if (k == 0) throw std::invalid_argument("instance needs at least one constraint");
  if (max_counts_.size() != n) throw std::invalid_argument("max_counts length differs from N");
  if (weights_->size() != n * k) throw std::invalid_argument("weight matrix is not K x N");
  for (double v : profits_)
    if (!(v >= 0.0) || !std::isfinite(v)) throw std::invalid_argument("profits must be finite and >= 0");
  for (int c : max_counts_)
    if (c < 0) throw std::invalid_argument("max_counts must be >= 0");
  for (double c : capacities_)
    if (!std::isfinite(c)) throw std::invalid_argument("capacities must be finite");
  for (double w : *weights_)
    if (!std::isfinite(w)) throw std::invalid_argument("weights must be finite");
}

Instance Instance::residual(std::vector<double> capacities, std::vector<int> max_counts) const {
  return Instance(profits_, weights_, std::move(capacities), std::move(max_counts));
}

std::uint64_t Instance::state_space_size() const noexcept {
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t total = 1;
  for (int c : max_counts_) {
    const auto levels = static_cast<std::uint64_t>(c) + 1;
    if (total > kMax / levels) return kMax;
    total *= levels;
  }
  return total;
}

bool operator==(const Instance& a, const Instance& b) {
  return a.profits_ == b.profits_ && *a.weights_ == *b.weights_ && a.capacities_ == b.capacities_ &&
         a.max_counts_ == b.max_counts_;
}

std::size_t EnsembleParams::constraints() const {
  if (n_constraints) return *n_constraints;
  return static_cast<std::size_t>(std::floor(alpha * static_cast<double>(n_items) + 0.5));
}

void EnsembleParams::validate() const {
  if (n_items == 0) throw std::invalid_argument("N must be positive");
  if (!n_constraints && !(alpha > 0.0)) throw std::invalid_argument("alpha must be positive");
  if (!(mean_weight > 0.0)) throw std::invalid_argument("mean weight must be positive");
  if (!(weight_variance > 0.0)) throw std::invalid_argument("weight variance must be positive");
  if (!(capacity_ratio > 0.0)) throw std::invalid_argument("capacity ratio must be positive");
  if (x_max < 1) throw std::invalid_argument("x_max must be positive");
  if (constraints() < 1) throw std::invalid_argument("derived K = round(alpha N) must be >= 1");
}

Instance generate_instance(const EnsembleParams& params) {
  params.validate();
  const std::size_t n = params.n_items;
  const std::size_t k = params.constraints();
  const double sigma = std::sqrt(params.weight_variance);

  Rng rng(params.seed);
  std::vector<double> weights(n * k);
  for (auto& w : weights) w = params.mean_weight + sigma * rng.normal();

  return Instance(std::vector<double>(n, 1.0), std::move(weights),
                  std::vector<double>(k, params.capacity_ratio * static_cast<double>(n)),
                  std::vector<int>(n, params.x_max));
}

double row_load(const Instance& instance, std::span<const int> counts, std::size_t mu) {
  const auto row = instance.row(mu);
  double load = 0.0;
  for (std::size_t i = 0; i < row.size(); ++i)
    if (counts[i] != 0) load += row[i] * counts[i];
  return load;
}

bool fits_one_more(const Instance& instance, std::span<const int> counts, std::size_t item) {
  std::vector<int> trial(counts.begin(), counts.end());
  ++trial[item];
  for (std::size_t mu = 0; mu < instance.n_constraints(); ++mu)
    if (row_load(instance, trial, mu) > instance.capacities()[mu]) return false;
  return true;
}

Evaluation evaluate(const Instance& instance, const Selection& selection,
                    const std::optional<EnsembleParams>& params) {
  const auto n = instance.n_items();
  if (selection.counts.size() != n) throw std::invalid_argument("selection length differs from N");
  const auto caps = instance.max_counts();
  for (std::size_t i = 0; i < n; ++i) {
    if (selection.counts[i] < 0 || selection.counts[i] > caps[i])
      throw std::invalid_argument("count of item " + std::to_string(i) + " outside [0, max_count]");
  }

  Evaluation ev;
  for (std::size_t i = 0; i < n; ++i) ev.profit += instance.profits()[i] * selection.counts[i];
  ev.loads.resize(instance.n_constraints());
  ev.slacks.resize(instance.n_constraints());
  for (std::size_t mu = 0; mu < instance.n_constraints(); ++mu) {
    ev.loads[mu] = row_load(instance, selection.counts, mu);
    ev.slacks[mu] = instance.capacities()[mu] - ev.loads[mu];
    // load <= C is the test, not slack >= 0; the two agree for finite values.
    if (ev.loads[mu] > instance.capacities()[mu]) ev.feasible = false;
  }
  if (params) ev.scaled_m = scaled_profit(ev.profit, n, params->capacity_ratio, params->mean_weight);
  return ev;
}

double scaled_profit(double profit, std::size_t n_items, double capacity_ratio, double mean_weight) {
  const double n = static_cast<double>(n_items);
  return (profit - capacity_ratio / mean_weight * n) / std::sqrt(n);
}

namespace {

std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

template <typename T>
void write_row(std::ostringstream& out, std::span<const T> values) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out << ' ';
    if constexpr (std::is_floating_point_v<T>)
      out << format_real(values[i]);
    else
      out << values[i];
  }
  out << '\n';
}

struct Line {
  std::size_t number;
  std::string text;
};

std::vector<Line> content_lines(const std::string& text) {
  std::vector<Line> lines;
  std::istringstream in(text);
  std::string raw;
  std::size_t number = 0;
  while (std::getline(in, raw)) {
    ++number;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    const auto first = raw.find_first_not_of(" \t");
    if (first == std::string::npos || raw[first] == '#') continue;
    lines.push_back({number, raw});
  }
  return lines;
}

template <typename T>
std::vector<T> parse_row(const Line& line, std::size_t expected, const char* what) {
  std::istringstream in(line.text);
  std::vector<T> values;
  std::string token;
  while (in >> token) {
    std::size_t used = 0;
    T v{};
    try {
      if constexpr (std::is_floating_point_v<T>)
        v = std::stod(token, &used);
      else
        v = static_cast<T>(std::stoll(token, &used));
    } catch (const std::exception&) {
      throw ParseError(line.number, std::string("bad number '") + token + "' in " + what);
    }
    if (used != token.size()) throw ParseError(line.number, std::string("bad number '") + token + "' in " + what);
    values.push_back(v);
  }
  if (values.size() != expected)
    throw ParseError(line.number, std::string(what) + ": expected " + std::to_string(expected) + " values, got " +
                                      std::to_string(values.size()));
  return values;
}

}  // namespace

std::string save_instance(const Instance& instance) {
  std::ostringstream out;
  out << "gmdkp 1\n";
  out << instance.n_items() << ' ' << instance.n_constraints() << '\n';
  write_row(out, instance.profits());
  write_row(out, instance.max_counts());
  write_row(out, instance.capacities());
  for (std::size_t mu = 0; mu < instance.n_constraints(); ++mu) write_row(out, instance.row(mu));
  return out.str();
}

Instance load_instance(const std::string& text) {
  const auto lines = content_lines(text);
  if (lines.empty()) throw ParseError(0, "empty instance text");
  {
    std::istringstream header(lines[0].text);
    std::string magic;
    int version = 0;
    std::string extra;
    if (!(header >> magic >> version) || magic != "gmdkp" || (header >> extra))
      throw ParseError(lines[0].number, "expected header 'gmdkp 1'");
    if (version != 1) throw ParseError(lines[0].number, "unsupported format version " + std::to_string(version));
  }
  if (lines.size() < 2) throw ParseError(lines[0].number, "missing 'N K' line");
  const auto dims = parse_row<long long>(lines[1], 2, "dimensions");
  if (dims[0] <= 0 || dims[1] <= 0) throw ParseError(lines[1].number, "N and K must be positive");
  const auto n = static_cast<std::size_t>(dims[0]);
  const auto k = static_cast<std::size_t>(dims[1]);

  const std::size_t expected_lines = 5 + k;
  if (lines.size() != expected_lines) {
    const auto at = lines.size() < expected_lines ? lines.back().number : lines[expected_lines].number;
    throw ParseError(at, "expected " + std::to_string(k) + " weight rows after the capacity line, found " +
                             std::to_string(lines.size() < 5 ? 0 : lines.size() - 5));
  }

  auto profits = parse_row<double>(lines[2], n, "profits");
  auto max_counts = parse_row<int>(lines[3], n, "max_counts");
  auto capacities = parse_row<double>(lines[4], k, "capacities");
  std::vector<double> weights;
  weights.reserve(n * k);
  for (std::size_t mu = 0; mu < k; ++mu) {
    auto row = parse_row<double>(lines[5 + mu], n, "weight row");
    weights.insert(weights.end(), row.begin(), row.end());
  }
  try {
    return Instance(std::move(profits), std::move(weights), std::move(capacities), std::move(max_counts));
  } catch (const std::invalid_argument& e) {
    throw ParseError(lines[1].number, e.what());
  }
}

Instance read_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open instance file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_instance(buf.str());
}

void write_instance_file(const Instance& instance, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write instance file '" + path + "'");
  out << save_instance(instance);
}

}  // namespace gmdkp
