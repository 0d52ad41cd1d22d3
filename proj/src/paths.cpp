#include "roughmild/paths.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace roughmild {

SampledPath::SampledPath(double horizon, Mat values)
    : horizon_(horizon), values_(std::move(values)) {
  if (!(horizon_ > 0.0) || !std::isfinite(horizon_))
    throw std::invalid_argument("SampledPath: horizon must be positive");
  if (values_.cols() < 2) throw std::invalid_argument("SampledPath: need at least one cell");
  if (values_.rows() < 1) throw std::invalid_argument("SampledPath: need at least one component");
  if (!values_.allFinite()) throw std::invalid_argument("SampledPath: values must be finite");
}

static void check_window(const SampledPath& p, int j0, int j1) {
  if (j0 < 0 || j1 > p.cells() || j0 >= j1)
    throw std::invalid_argument("paths: empty or out-of-range window");
}

HolderProfile holder_norm(const SampledPath& p, double alpha, int j0, int j1) {
  if (alpha <= 0.0 || alpha > 1.0) throw std::invalid_argument("holder_norm: alpha must be in (0,1]");
  check_window(p, j0, j1);
  const int m = j1 - j0;
  const double dt = p.dt();
  const Mat& v = p.values();

  std::vector<double> wgt(m + 1, 0.0);
  for (int g = 1; g <= m; ++g) wgt[g] = std::pow(g * dt, -alpha);

  HolderProfile prof;
  prof.exponent = alpha;
  prof.j_witness = j0;
  prof.k_witness = j0;
  for (int g = 1; g <= m; ++g) {
    for (int j = j0; j + g <= j1; ++j) {
      const double q = (v.col(j + g) - v.col(j)).norm() * wgt[g];
      if (q > prof.value) {
        prof.value = q;
        prof.j_witness = j;
        prof.k_witness = j + g;
      }
    }
  }
  return prof;
}

HolderProfile holder_norm(const SampledPath& p, double alpha) {
  return holder_norm(p, alpha, 0, p.cells());
}

double p_variation(const SampledPath& p, double p_exp, int j0, int j1) {
  if (p_exp < 1.0) throw std::invalid_argument("p_variation: exponent must be >= 1");
  check_window(p, j0, j1);
  const int m = j1 - j0;
  if (m > 4096) throw std::invalid_argument("p_variation: window exceeds 4096 cells");
  const Mat& v = p.values();

  // best[j] = max over subsequences j0=i_0<...<i_r=j0+j of sum ||increment||^p
  std::vector<double> best(m + 1, 0.0);
  for (int j = 1; j <= m; ++j) {
    double b = 0.0;
    for (int i = 0; i < j; ++i) {
      const double step = (v.col(j0 + j) - v.col(j0 + i)).norm();
      const double cand = best[i] + std::pow(step, p_exp);
      if (cand > b) b = cand;
    }
    best[j] = b;
  }
  return std::pow(best[m], 1.0 / p_exp);
}

double p_variation(const SampledPath& p, double p_exp) {
  return p_variation(p, p_exp, 0, p.cells());
}

SampledPath subsample(const SampledPath& p, int stride) {
  if (stride < 1 || p.cells() % stride != 0)
    throw std::invalid_argument("subsample: stride must divide the cell count");
  const int m = p.cells() / stride;
  Mat v(p.dimension(), m + 1);
  for (int j = 0; j <= m; ++j) v.col(j) = p.values().col(j * stride);
  return SampledPath(p.horizon(), std::move(v));
}

SampledPath slice(const SampledPath& p, int j0, int j1, bool rebase) {
  check_window(p, j0, j1);
  Mat v(p.dimension(), j1 - j0 + 1);
  for (int j = j0; j <= j1; ++j) v.col(j - j0) = p.values().col(j);
  if (rebase) {
    const Vec base = v.col(0);
    v.colwise() -= base;
  }
  return SampledPath((j1 - j0) * p.dt(), std::move(v));
}

void write_csv(const SampledPath& p, const std::string& file) {
  std::ofstream out(file);
  if (!out) throw std::runtime_error("write_csv: cannot open " + file);
  out << "t";
  for (int i = 1; i <= p.dimension(); ++i) out << ",x" << i;
  out << "\n";
  char buf[64];
  for (int j = 0; j <= p.cells(); ++j) {
    std::snprintf(buf, sizeof(buf), "%.17g", p.time(j));
    out << buf;
    for (int i = 0; i < p.dimension(); ++i) {
      std::snprintf(buf, sizeof(buf), "%.17g", p.values()(i, j));
      out << "," << buf;
    }
    out << "\n";
  }
}

SampledPath read_csv(const std::string& file) {
  std::ifstream in(file);
  if (!in) throw std::runtime_error("read_csv: cannot open " + file);
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("read_csv: empty file " + file);
  int d = 0;
  for (char c : line)
    if (c == ',') ++d;
  if (d < 1) throw std::runtime_error("read_csv: malformed header in " + file);

  std::vector<std::vector<double>> rows;
  std::vector<double> times;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string tok;
    std::vector<double> row;
    while (std::getline(ss, tok, ',')) {
      try {
        row.push_back(std::stod(tok));
      } catch (const std::exception&) {
        throw std::runtime_error("read_csv: parse error at line " + std::to_string(lineno) +
                                 " of " + file);
      }
    }
    if (static_cast<int>(row.size()) != d + 1)
      throw std::runtime_error("read_csv: wrong column count at line " + std::to_string(lineno) +
                               " of " + file);
    times.push_back(row[0]);
    row.erase(row.begin());
    rows.push_back(std::move(row));
  }
  if (rows.size() < 2) throw std::runtime_error("read_csv: need at least two rows in " + file);

  const int n = static_cast<int>(rows.size()) - 1;
  const double T = times.back();
  if (!(T > 0)) throw std::runtime_error("read_csv: horizon must be positive in " + file);
  for (int j = 0; j <= n; ++j) {
    if (std::abs(times[j] - T * j / n) > 1e-9 * T)
      throw std::runtime_error("read_csv: non-uniform grid at line " + std::to_string(j + 2) +
                               " of " + file);
  }
  Mat v(d, n + 1);
  for (int j = 0; j <= n; ++j)
    for (int i = 0; i < d; ++i) v(i, j) = rows[j][i];
  return SampledPath(T, std::move(v));
}

}  // namespace roughmild
