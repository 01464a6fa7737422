#include "rigclust/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <regex>
#include <set>
#include <sstream>

#include "rigclust/error.hpp"
#include "rigclust/format.hpp"

namespace rigclust {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

double to_double(std::string_view text, std::string_view what) {
  const std::string t = trim(text);
  double v = 0.0;
  std::size_t used = 0;
  try {
    v = std::stod(t, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != t.size() || !std::isfinite(v))
    throw DataError(std::string(what) + ": expected a number, got '" + t + "'");
  return v;
}

template <class Int>
Int to_int(std::string_view text, std::string_view what) {
  const std::string t = trim(text);
  Int v{};
  const auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc{} || p != t.data() + t.size() || t.empty())
    throw DataError(std::string(what) + ": expected an integer, got '" + t + "'");
  return v;
}

bool to_bool(std::string_view text, std::string_view what) {
  const std::string t = trim(text);
  if (t == "true" || t == "1" || t == "yes") return true;
  if (t == "false" || t == "0" || t == "no") return false;
  throw DataError(std::string(what) + ": expected true/false, got '" + t + "'");
}

const char* generator_name(Generator g) { return g == Generator::reference ? "reference" : "fast"; }

}  // namespace

WeightLaw parse_weight_law(std::string_view text) {
  std::string t;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) t.push_back(ch);
  static const std::regex number(R"([-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?)");
  static const std::regex pareto_re(R"(pareto\(([^,()]+),([^,()]+)\))");
  static const std::regex degenerate_re(R"(degenerate\(([^,()]+)\))");
  static const std::regex finite_re(R"(finite\(\[(.*)\]\))");
  static const std::regex atom_re(R"(\(([^,()]+),([^,()]+)\))");
  std::smatch mt;
  try {
    if (std::regex_match(t, mt, pareto_re)) {
      return Pareto{to_double(mt[1].str(), "pareto x_min"), to_double(mt[2].str(), "pareto alpha")};
    }
    if (std::regex_match(t, mt, degenerate_re)) {
      return Degenerate{to_double(mt[1].str(), "degenerate value")};
    }
    if (std::regex_match(t, mt, finite_re)) {
      Finite f;
      std::string body = mt[1].str();
      std::size_t pos = 0;
      while (pos < body.size()) {
        std::smatch am;
        const std::string rest = body.substr(pos);
        if (!std::regex_search(rest, am, atom_re) || am.position(0) != 0)
          throw DataError("finite: malformed atom list");
        f.atoms.push_back({to_double(am[1].str(), "atom value"), to_double(am[2].str(), "atom prob")});
        pos += static_cast<std::size_t>(am.length(0));
        if (pos < body.size()) {
          if (body[pos] != ',') throw DataError("finite: expected ',' between atoms");
          ++pos;
        }
      }
      return f;
    }
  } catch (const std::invalid_argument& e) {
    throw DataError(std::string("weight law '") + std::string(text) + "': " + e.what());
  }
  throw DataError("unrecognised weight law '" + std::string(text) + "'");
}

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys{
      "beta",      "count_tol", "crossover", "edge_budget", "fit_k_hi", "fit_k_lo",
      "generator", "k_max",     "k_min",     "m",           "n",        "output_dir",
      "pmf_k_max", "replicates", "save_replicates", "seed", "threads", "tol",
      "x_law",     "y_law"};
  return keys;
}

void apply_setting(ExperimentConfig& c, std::string_view key_in, std::string_view value) {
  std::string key = trim(key_in);
  std::replace(key.begin(), key.end(), '-', '_');
  const std::string v = trim(value);
  if (key == "n") c.n = to_int<std::int64_t>(v, key);
  else if (key == "m") c.m = to_int<std::int64_t>(v, key);
  else if (key == "beta") c.beta = to_double(v, key);
  else if (key == "x_law") c.x_law = parse_weight_law(v);
  else if (key == "y_law") c.y_law = parse_weight_law(v);
  else if (key == "replicates") c.replicates = to_int<int>(v, key);
  else if (key == "seed" || key == "master_seed") c.seed = to_int<std::uint64_t>(v, key);
  else if (key == "k_min") c.k_min = to_int<int>(v, key);
  else if (key == "k_max") c.k_max = to_int<int>(v, key);
  else if (key == "pmf_k_max") c.pmf_k_max = to_int<std::size_t>(v, key);
  else if (key == "tol") c.tol = to_double(v, key);
  else if (key == "count_tol") c.count_tol = to_double(v, key);
  else if (key == "crossover") c.crossover = to_double(v, key);
  else if (key == "fit_k_lo") c.fit_k_lo = to_int<int>(v, key);
  else if (key == "fit_k_hi") c.fit_k_hi = to_int<int>(v, key);
  else if (key == "generator") {
    if (v == "reference") c.generator = Generator::reference;
    else if (v == "fast") c.generator = Generator::fast;
    else throw DataError("generator: expected reference or fast, got '" + v + "'");
  } else if (key == "edge_budget") c.edge_budget = to_int<std::uint64_t>(v, key);
  else if (key == "save_replicates") c.save_replicates = to_bool(v, key);
  else if (key == "output_dir") c.output_dir = v;
  else if (key == "threads") c.threads = to_int<unsigned>(v, key);
  else throw DataError("unknown config key '" + key + "'");
}

ExperimentConfig parse_config(std::istream& is) {
  ExperimentConfig c;
  std::set<std::string> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw DataError("config line " + std::to_string(line_no) + ": expected key = value");
    std::string key = trim(std::string_view(line).substr(0, eq));
    if (!seen.insert(key).second)
      throw DataError("config line " + std::to_string(line_no) + ": duplicate key '" + key + "'");
    try {
      apply_setting(c, key, std::string_view(line).substr(eq + 1));
    } catch (const DataError& e) {
      throw DataError("config line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open config '" + path + "'");
  return parse_config(in);
}

ModelParams ExperimentConfig::params() const {
  const double b = beta.value_or(static_cast<double>(m) / static_cast<double>(n));
  return ModelParams(n, m, b, x_law, y_law);
}

void ExperimentConfig::validate() const {
  if (n < 3 || m < 3) throw DataError("config: n and m must be at least 3");
  if (replicates < 1) throw DataError("config: replicates must be at least 1");
  if (k_min < 2) throw DataError("config: k_min must be at least 2");
  if (k_max < k_min) throw DataError("config: k_max must be >= k_min");
  if (!(tol > 0.0) || !(count_tol > 0.0)) throw DataError("config: tolerances must be positive");
  if (pmf_k_max < 16) throw DataError("config: pmf_k_max must be at least 16");
  if (beta && !(*beta > 0.0)) throw DataError("config: beta must be positive");
  if (fit_k_lo && fit_k_hi && *fit_k_hi < *fit_k_lo) throw DataError("config: empty fit window");
}

std::string ExperimentConfig::canonical() const {
  std::ostringstream os;
  os << "beta = " << format_double(beta.value_or(static_cast<double>(m) / static_cast<double>(n)))
     << '\n'
     << "count_tol = " << format_double(count_tol) << '\n'
     << "crossover = " << format_double(crossover) << '\n'
     << "edge_budget = " << edge_budget << '\n';
  if (fit_k_hi) os << "fit_k_hi = " << *fit_k_hi << '\n';
  if (fit_k_lo) os << "fit_k_lo = " << *fit_k_lo << '\n';
  os << "generator = " << generator_name(generator) << '\n'
     << "k_max = " << k_max << '\n'
     << "k_min = " << k_min << '\n'
     << "m = " << m << '\n'
     << "n = " << n << '\n'
     << "pmf_k_max = " << pmf_k_max << '\n'
     << "replicates = " << replicates << '\n'
     << "save_replicates = " << (save_replicates ? "true" : "false") << '\n'
     << "seed = " << seed << '\n'
     << "tol = " << format_double(tol) << '\n'
     << "x_law = " << x_law.to_string() << '\n'
     << "y_law = " << y_law.to_string() << '\n';
  return os.str();
}

std::string ExperimentConfig::hash() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : canonical()) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace rigclust
