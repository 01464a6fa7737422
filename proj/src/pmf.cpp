#include "rigclust/pmf.hpp"

#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "rigclust/error.hpp"
#include "rigclust/format.hpp"

namespace rigclust {

double Pmf::total() const noexcept {
  double s = 0.0;
  for (double v : mass) s += v;
  return s;
}

double Pmf::mean_lower() const noexcept {
  double s = 0.0;
  for (std::size_t i = 0; i < mass.size(); ++i) s += static_cast<double>(i) * mass[i];
  return s;
}

Pmf point_mass(std::size_t at, std::size_t k_max) {
  Pmf p;
  p.mass.assign(std::max(at, k_max) + 1, 0.0);
  p.mass[at] = 1.0;
  return p;
}

Pmf poisson_pmf(double mean, std::size_t k_max) {
  Pmf p;
  p.mass.resize(k_max + 1);
  if (mean == 0.0) {
    p.mass.assign(k_max + 1, 0.0);
    p.mass[0] = 1.0;
    return p;
  }
  const double log_mean = std::log(mean);
  for (std::size_t s = 0; s <= k_max; ++s)
    p.mass[s] = std::exp(-mean + static_cast<double>(s) * log_mean -
                         std::lgamma(static_cast<double>(s) + 1.0));
  p.tail_mass = boost::math::gamma_p(static_cast<double>(k_max) + 1.0, mean);
  return p;
}

Pmf truncated(const Pmf& p, std::size_t k_max) {
  if (p.mass.size() <= k_max + 1) return p;
  Pmf out;
  out.mass.assign(p.mass.begin(), p.mass.begin() + static_cast<std::ptrdiff_t>(k_max + 1));
  double cut = 0.0;
  for (std::size_t s = p.mass.size(); s-- > k_max + 1;) cut += p.mass[s];
  out.tail_mass = p.tail_mass + cut;
  return out;
}

void check_normalized(const Pmf& p, double slack) {
  for (double v : p.mass)
    if (!(v >= 0.0)) throw std::invalid_argument("pmf: negative or NaN entry");
  if (!(p.tail_mass >= 0.0)) throw std::invalid_argument("pmf: negative tail mass");
  const double err = std::abs(p.total() + p.tail_mass - 1.0);
  if (err > slack)
    throw std::invalid_argument("pmf: not normalized (|sum - 1| = " + std::to_string(err) + ")");
}

void write_pmf_csv(std::ostream& os, const Pmf& p) {
  os << "s,mass\n";
  for (std::size_t s = 0; s < p.mass.size(); ++s) os << s << ',' << format_double(p.mass[s]) << '\n';
  os << "tail_mass," << format_double(p.tail_mass) << '\n';
}

Pmf read_pmf_csv(std::istream& is) {
  Pmf p;
  std::string line;
  std::size_t line_no = 0;
  bool saw_tail = false;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty() || line == "s,mass") continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos)
      throw DataError("pmf csv: missing comma at line " + std::to_string(line_no));
    const std::string key = line.substr(0, comma);
    double value = 0.0;
    try {
      value = std::stod(line.substr(comma + 1));
    } catch (const std::exception&) {
      throw DataError("pmf csv: bad number at line " + std::to_string(line_no));
    }
    if (key == "tail_mass") {
      p.tail_mass = value;
      saw_tail = true;
      continue;
    }
    std::size_t s = 0;
    try {
      s = std::stoull(key);
    } catch (const std::exception&) {
      throw DataError("pmf csv: bad index at line " + std::to_string(line_no));
    }
    if (s != p.mass.size())
      throw DataError("pmf csv: indices must be consecutive from 0 (line " +
                      std::to_string(line_no) + ")");
    p.mass.push_back(value);
  }
  if (!saw_tail) throw DataError("pmf csv: missing tail_mass record");
  return p;
}

}  // namespace rigclust
