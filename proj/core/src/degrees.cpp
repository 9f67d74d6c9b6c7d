#include "coopaloha/degrees.hpp"

#include <cmath>
#include <numeric>

#include "coopaloha/error.hpp"

namespace coopaloha {

degree_polynomial::degree_polynomial(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
  for (double c : coeffs_)
    if (!(c >= 0.0)) throw config_error("degree polynomial coefficients must be non-negative");
}

double degree_polynomial::sum() const noexcept { return std::accumulate(coeffs_.begin(), coeffs_.end(), 0.0); }

double degree_polynomial::mean() const noexcept {
  double m = 0.0;
  for (std::size_t k = 1; k < coeffs_.size(); ++k) m += static_cast<double>(k) * coeffs_[k];
  return m;
}

degree_polynomial binomial_distribution(std::uint64_t n, double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw config_error("transmission probability outside [0, 1]");
  if (n == 0) return degree_polynomial({1.0});
  std::vector<double> mass(n + 1, 0.0);
  if (p == 0.0) {
    mass[0] = 1.0;
  } else if (p == 1.0) {
    mass[n] = 1.0;
  } else {
    const double nn = static_cast<double>(n);
    const double lp = std::log(p);
    const double lq = std::log1p(-p);
    const double lgn = std::lgamma(nn + 1.0);
    for (std::uint64_t k = 0; k <= n; ++k) {
      const double kk = static_cast<double>(k);
      mass[k] = std::exp(lgn - std::lgamma(kk + 1.0) - std::lgamma(nn - kk + 1.0) + kk * lp + (nn - kk) * lq);
    }
  }

  // Drop the upper tail past the mode once it carries < 1e-12.
  const auto mode = static_cast<std::size_t>(std::floor(static_cast<double>(n + 1) * p));
  std::size_t len = mass.size();
  double tail = 0.0;
  while (len > mode + 1 && tail + mass[len - 1] < 1e-12) tail += mass[--len];
  mass.resize(len);
  const double total = std::accumulate(mass.begin(), mass.end(), 0.0);
  for (double& m : mass) m /= total;
  return degree_polynomial(std::move(mass));
}

degree_polynomial variable_node_dist(std::uint64_t slots, double p) { return binomial_distribution(slots, p); }

degree_polynomial observation_node_dist(std::uint64_t group_size, double p) {
  if (group_size == 0) return degree_polynomial({1.0});
  return binomial_distribution(group_size, p);
}

degree_polynomial edge_perspective(const degree_polynomial& d) {
  const double m = d.mean();
  if (!(m > 0.0)) throw config_error("edge perspective of a distribution with zero mean degree");
  std::vector<double> out(d.size() - 1, 0.0);
  for (std::size_t k = 1; k < d.size(); ++k) out[k - 1] = static_cast<double>(k) * d[k] / m;
  return degree_polynomial(std::move(out));
}

double eval(const degree_polynomial& d, double x) {
  double acc = 0.0;
  const auto c = d.coeffs();
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
  return acc;
}

double binomial_law::operator()(double x) const noexcept {
  if (n == 0) return 1.0;
  // (1 - p(1 - x))^n through log1p to keep precision for tiny p.
  const double t = p * (1.0 - x);
  if (t >= 1.0) return 0.0;
  return std::exp(static_cast<double>(n) * std::log1p(-t));
}

}  // namespace coopaloha
