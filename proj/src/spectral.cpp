#include "pautom/spectral.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace pautom {

namespace {

std::vector<std::uint64_t> domain_of(const std::vector<std::uint32_t>& rows) {
  std::vector<std::uint64_t> d;
  for (std::size_t i = 0; i < rows.size(); ++i)
    if (rows[i] != 0) d.push_back(i + 1);
  return d;
}

// rows of (f then g).
std::vector<std::uint32_t> compose_rows(const std::vector<std::uint32_t>& f,
                                        const std::vector<std::uint32_t>& g) {
  std::vector<std::uint32_t> r(f.size(), 0);
  for (std::size_t i = 0; i < f.size(); ++i)
    if (f[i] != 0) r[i] = g[f[i] - 1];
  return r;
}

}  // namespace

std::vector<std::uint64_t> surviving_set(const ActionMatrix& a) {
  const std::vector<std::uint32_t>& step = a.rows();
  std::vector<std::uint32_t> power = step;
  std::vector<std::uint64_t> dom = domain_of(power);
  for (std::uint64_t m = 2; m <= a.dim(); ++m) {
    power = compose_rows(power, step);
    std::vector<std::uint64_t> next_dom = domain_of(power);
    if (next_dom == dom) break;  // domains are nested; a repeat is final
    dom = std::move(next_dom);
  }
  return dom;
}

std::vector<std::uint64_t> surviving_set(const WreathElement& x) {
  return surviving_set(action_matrix(x));
}

CycleDecomposition cycle_decomposition(const ActionMatrix& a) {
  const std::vector<std::uint32_t>& rows = a.rows();
  const std::size_t dim = rows.size();

  // Preimage table; injectivity makes it single-valued.
  std::vector<std::uint32_t> pre(dim + 1, 0);
  for (std::size_t i = 0; i < dim; ++i)
    if (rows[i] != 0) pre[rows[i]] = static_cast<std::uint32_t>(i + 1);

  // A leaf dies iff its forward orbit reaches a leaf with no image, so the
  // transient set is the backward closure of those leaves.
  std::vector<char> transient(dim + 1, 0);
  std::vector<std::uint32_t> stack;
  for (std::size_t i = 0; i < dim; ++i)
    if (rows[i] == 0) {
      transient[i + 1] = 1;
      stack.push_back(static_cast<std::uint32_t>(i + 1));
    }
  while (!stack.empty()) {
    const std::uint32_t v = stack.back();
    stack.pop_back();
    const std::uint32_t u = pre[v];
    if (u != 0 && !transient[u]) {
      transient[u] = 1;
      stack.push_back(u);
    }
  }

  CycleDecomposition out;
  std::vector<char> seen(dim + 1, 0);
  for (std::size_t i = 1; i <= dim; ++i) {
    if (transient[i]) {
      ++out.transient_count;
      continue;
    }
    if (seen[i]) continue;
    std::uint64_t len = 0;
    std::uint32_t j = static_cast<std::uint32_t>(i);
    do {
      seen[j] = 1;
      ++len;
      j = rows[j - 1];
    } while (j != i);
    out.cycle_lengths.push_back(len);
  }
  std::sort(out.cycle_lengths.begin(), out.cycle_lengths.end());
  return out;
}

CycleDecomposition cycle_decomposition(const WreathElement& x) {
  return cycle_decomposition(action_matrix(x));
}

std::uint64_t ultimate_rank(const ActionMatrix& a) {
  const CycleDecomposition c = cycle_decomposition(a);
  return a.dim() - c.transient_count;
}

std::uint64_t ultimate_rank(const WreathElement& x) {
  return ultimate_rank(action_matrix(x));
}

SpectralMeasure spectral_measure(const ActionMatrix& a) {
  CycleDecomposition c = cycle_decomposition(a);
  SpectralMeasure m;
  m.depth = a.depth();
  m.zero_multiplicity = c.transient_count;
  m.cycle_lengths = std::move(c.cycle_lengths);
  return m;
}

SpectralMeasure spectral_measure(const WreathElement& x) {
  return spectral_measure(action_matrix(x));
}

BigRational moment(const SpectralMeasure& m, std::uint64_t k) {
  if (k < 1) throw std::invalid_argument("moment: k must be >= 1");
  BigCount on_dividing_cycles = 0;
  for (std::uint64_t len : m.cycle_lengths)
    if (k % len == 0) on_dividing_cycles += static_cast<unsigned long>(len);
  BigRational r(on_dividing_cycles, pow2(m.depth));
  r.canonicalize();
  return r;
}

std::uint64_t trace_of_power(const ActionMatrix& a, std::uint64_t k) {
  if (k < 1) throw std::invalid_argument("trace_of_power: k must be >= 1");
  std::vector<std::uint32_t> power = a.rows();
  for (std::uint64_t m = 2; m <= k; ++m) power = compose_rows(power, a.rows());
  std::uint64_t tr = 0;
  for (std::size_t i = 0; i < power.size(); ++i) tr += power[i] == i + 1;
  return tr;
}

std::vector<std::uint64_t> traces_of_powers(const ActionMatrix& a, std::uint64_t k_max) {
  std::vector<std::uint64_t> out;
  out.reserve(k_max);
  std::vector<std::uint32_t> power = a.rows();
  for (std::uint64_t k = 1; k <= k_max; ++k) {
    if (k > 1) power = compose_rows(power, a.rows());
    std::uint64_t tr = 0;
    for (std::size_t i = 0; i < power.size(); ++i) tr += power[i] == i + 1;
    out.push_back(tr);
  }
  return out;
}

std::complex<double> integrate(
    const SpectralMeasure& m,
    const std::function<std::complex<double>(std::complex<double>)>& f) {
  std::complex<double> acc = static_cast<double>(m.zero_multiplicity) * f(0.0);
  for (std::uint64_t len : m.cycle_lengths)
    for (std::uint64_t j = 0; j < len; ++j) {
      const double theta = 2.0 * std::numbers::pi * static_cast<double>(j) /
                           static_cast<double>(len);
      acc += f(std::polar(1.0, theta));
    }
  return acc / static_cast<double>(m.dim());
}

namespace {

double folded_arg(const std::complex<double>& z) {
  double a = std::arg(z);
  if (a < -1e-12) a += 2.0 * std::numbers::pi;
  return a;
}

void sort_by_modulus_argument(std::vector<std::complex<double>>& v) {
  std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) {
    const double ma = std::abs(a), mb = std::abs(b);
    if (ma != mb) return ma < mb;
    return folded_arg(a) < folded_arg(b);
  });
}

}  // namespace

std::vector<std::complex<double>> exact_eigenvalues(const SpectralMeasure& m) {
  std::vector<std::complex<double>> v;
  v.reserve(m.dim());
  v.assign(m.zero_multiplicity, {0.0, 0.0});
  for (std::uint64_t len : m.cycle_lengths)
    for (std::uint64_t j = 0; j < len; ++j)
      v.push_back(std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(j) /
                                      static_cast<double>(len)));
  sort_by_modulus_argument(v);
  return v;
}

std::vector<std::complex<double>> eigenvalues_dense_oracle(const ActionMatrix& a) {
  if (a.depth() > kDenseOracleMaxDepth)
    throw std::invalid_argument("dense oracle refused: depth > " +
                                std::to_string(kDenseOracleMaxDepth));
  const std::size_t dim = a.dim();
  Eigen::MatrixXd mat = Eigen::MatrixXd::Zero(dim, dim);
  for (std::uint64_t i = 1; i <= dim; ++i)
    if (a.row_image(i) != 0) mat(i - 1, a.row_image(i) - 1) = 1.0;
  Eigen::EigenSolver<Eigen::MatrixXd> solver(mat, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("dense eigensolver failed to converge");
  std::vector<std::complex<double>> v(dim);
  for (std::size_t i = 0; i < dim; ++i) v[i] = solver.eigenvalues()(i);
  sort_by_modulus_argument(v);
  return v;
}

std::vector<std::complex<double>> eigenvalues_dense_oracle(const WreathElement& x) {
  return eigenvalues_dense_oracle(action_matrix(x));
}

bool eigenvalues_match(const std::vector<std::complex<double>>& exact,
                       const std::vector<std::complex<double>>& numeric,
                       double tolerance) {
  if (exact.size() != numeric.size()) return false;
  std::vector<char> used(numeric.size(), 0);
  for (const auto& e : exact) {
    double best = -1.0;
    std::size_t best_i = 0;
    for (std::size_t i = 0; i < numeric.size(); ++i) {
      if (used[i]) continue;
      const double d = std::abs(numeric[i] - e);
      if (best < 0 || d < best) {
        best = d;
        best_i = i;
      }
    }
    if (best < 0 || best > tolerance) return false;
    used[best_i] = 1;
  }
  return true;
}

}  // namespace pautom
