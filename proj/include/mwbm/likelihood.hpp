#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#include "mwbm/math.hpp"
#include "mwbm/types.hpp"

namespace mwbm {

/// pi' B p: the mean interaction between an object with row memberships
/// pi and one with column memberships p.
inline double expected_value(const Vector& pi, const Blockmodel& bm,
                             const Vector& p) {
  if (pi.size() != bm.b.rows() || p.size() != bm.b.cols())
    throw std::invalid_argument("expected_value: dimension mismatch");
  return pi.dot(bm.b * p);
}

inline double log_dirichlet_pdf(const Eigen::Ref<const Vector>& x,
                                const Eigen::Ref<const Vector>& alpha) {
  if (x.size() != alpha.size())
    throw std::invalid_argument("log_dirichlet_pdf: dimension mismatch");
  if (x.size() == 1) return 0.0;  // degenerate simplex, point mass
  double lg = std::lgamma(alpha.sum());
  for (Eigen::Index g = 0; g < alpha.size(); ++g) {
    lg -= std::lgamma(alpha[g]);
    lg += (alpha[g] - 1.0) * std::log(x[g]);
  }
  return lg;
}

inline double log_cell_density(double y, double block_value, Kind kind,
                               double sigma2) {
  return kind == Kind::Gaussian ? log_normal_pdf(y, block_value, sigma2)
                                : log_bernoulli_pmf(y, block_value);
}

/// Complete-data log likelihood: Dirichlet densities of every membership
/// vector, the indicator probabilities under them, and the per-cell
/// Gaussian / Bernoulli terms. Masked cells are skipped entirely. A
/// zero-probability indicator yields -inf rather than an error.
inline double complete_log_likelihood(const InteractionTable& y,
                                      const MembershipMatrix& pi,
                                      const MembershipMatrix& p,
                                      const AssignmentTable& assign,
                                      const Hyperparams& hp,
                                      const Blockmodel& bm) {
  const Eigen::Index n1 = y.rows(), n2 = y.cols();
  if (pi.m.rows() != n1 || p.m.rows() != n2 ||
      pi.m.cols() != bm.b.rows() || p.m.cols() != bm.b.cols() ||
      assign.row_group.rows() != n1 || assign.row_group.cols() != n2)
    throw std::invalid_argument("complete_log_likelihood: shape mismatch");
  if (hp.alpha.size() != bm.b.rows() || hp.beta.size() != bm.b.cols())
    throw std::invalid_argument("complete_log_likelihood: hyperparam mismatch");

  // Indicator terms first: a zero-probability indicator dominates any
  // boundary behaviour of the Dirichlet densities.
  KahanSum cells;
  for (Eigen::Index j = 0; j < n1; ++j) {
    for (Eigen::Index k = 0; k < n2; ++k) {
      if (!y.observed(j, k)) continue;
      const AssignmentPair a = assign.at(j, k);
      if (a.row_group < 0 || a.row_group >= bm.b.rows() || a.col_group < 0 ||
          a.col_group >= bm.b.cols())
        throw std::invalid_argument(
            "complete_log_likelihood: missing or out-of-range assignment");
      const double pj = pi.m(j, a.row_group);
      const double pk = p.m(k, a.col_group);
      if (pj <= 0.0 || pk <= 0.0)
        return -std::numeric_limits<double>::infinity();
      cells.add(std::log(pj));
      cells.add(std::log(pk));
      cells.add(log_cell_density(y.values(j, k), bm.b(a.row_group, a.col_group),
                                 y.kind, hp.sigma2));
    }
  }

  KahanSum prior;
  for (Eigen::Index j = 0; j < n1; ++j)
    prior.add(log_dirichlet_pdf(pi.m.row(j).transpose(), hp.alpha));
  for (Eigen::Index k = 0; k < n2; ++k)
    prior.add(log_dirichlet_pdf(p.m.row(k).transpose(), hp.beta));

  return prior.value() + cells.value();
}

namespace detail {

/// Dirichlet-multinomial mass of per-object count rows under a shared
/// concentration vector: prod_j Gamma(sum a)/Gamma(sum a + n_j) *
/// prod_g Gamma(a_g + n_jg)/Gamma(a_g).
inline double log_dirichlet_multinomial(const IntMatrix& counts,
                                        const Vector& alpha) {
  const double a0 = alpha.sum();
  double out = 0.0;
  for (Eigen::Index j = 0; j < counts.rows(); ++j) {
    int total = 0;
    for (Eigen::Index g = 0; g < counts.cols(); ++g) {
      const int c = counts(j, g);
      total += c;
      if (c > 0) out += std::lgamma(alpha[g] + c) - std::lgamma(alpha[g]);
    }
    out += std::lgamma(a0) - std::lgamma(a0 + total);
  }
  return out;
}

}  // namespace detail

/// Exact log p(Y | alpha, beta, B, sigma2) for tiny tables, by summing
/// over every joint indicator configuration with the memberships
/// integrated out analytically. Enumeration only: refuses instances
/// whose configuration count exceeds max_configs.
inline double marginal_log_likelihood_exact(const InteractionTable& y,
                                            const Hyperparams& hp,
                                            const Blockmodel& bm,
                                            std::uint64_t max_configs =
                                                (1ULL << 24)) {
  y.validate();
  const Eigen::Index n1 = y.rows(), n2 = y.cols();
  const Eigen::Index k1 = bm.b.rows(), k2 = bm.b.cols();
  if (hp.alpha.size() != k1 || hp.beta.size() != k2)
    throw std::invalid_argument("marginal_log_likelihood_exact: shape mismatch");
  if (n1 * n2 > 16)
    throw std::length_error("marginal_log_likelihood_exact: table too large");

  std::vector<std::pair<int, int>> cells;
  for (Eigen::Index j = 0; j < n1; ++j)
    for (Eigen::Index k = 0; k < n2; ++k)
      if (y.observed(j, k)) cells.emplace_back(static_cast<int>(j),
                                               static_cast<int>(k));
  const int pairs = static_cast<int>(k1 * k2);
  std::uint64_t n_configs = 1;
  for (std::size_t c = 0; c < cells.size(); ++c) {
    if (n_configs > max_configs / static_cast<std::uint64_t>(pairs))
      throw std::length_error(
          "marginal_log_likelihood_exact: too many configurations");
    n_configs *= static_cast<std::uint64_t>(pairs);
  }

  // Per-cell log density for each (g,h) choice.
  std::vector<Matrix> logf(cells.size(), Matrix(k1, k2));
  for (std::size_t c = 0; c < cells.size(); ++c) {
    const auto [j, k] = cells[c];
    for (Eigen::Index g = 0; g < k1; ++g)
      for (Eigen::Index h = 0; h < k2; ++h)
        logf[c](g, h) =
            log_cell_density(y.values(j, k), bm.b(g, h), y.kind, hp.sigma2);
  }

  std::vector<int> config(cells.size(), 0);  // pair index per cell
  IntMatrix row_counts = IntMatrix::Zero(n1, k1);
  IntMatrix col_counts = IntMatrix::Zero(n2, k2);
  for (const auto& [j, k] : cells) {
    row_counts(j, 0) += 1;
    col_counts(k, 0) += 1;
  }

  double max_term = -std::numeric_limits<double>::infinity();
  std::vector<double> terms;
  terms.reserve(static_cast<std::size_t>(n_configs));
  for (;;) {
    double t = detail::log_dirichlet_multinomial(row_counts, hp.alpha) +
               detail::log_dirichlet_multinomial(col_counts, hp.beta);
    for (std::size_t c = 0; c < cells.size(); ++c) {
      const int g = config[c] / static_cast<int>(k2);
      const int h = config[c] % static_cast<int>(k2);
      t += logf[c](g, h);
    }
    terms.push_back(t);
    if (t > max_term) max_term = t;

    // odometer increment, keeping the count matrices in sync
    std::size_t pos = 0;
    for (; pos < cells.size(); ++pos) {
      const auto& [j, k] = cells[pos];
      const int old_g = config[pos] / static_cast<int>(k2);
      const int old_h = config[pos] % static_cast<int>(k2);
      row_counts(j, old_g) -= 1;
      col_counts(k, old_h) -= 1;
      config[pos] = (config[pos] + 1) % pairs;
      const int new_g = config[pos] / static_cast<int>(k2);
      const int new_h = config[pos] % static_cast<int>(k2);
      row_counts(j, new_g) += 1;
      col_counts(k, new_h) += 1;
      if (config[pos] != 0) break;
    }
    if (pos == cells.size()) break;
  }

  KahanSum s;
  for (const double t : terms) s.add(std::exp(t - max_term));
  return max_term + std::log(s.value());
}

}  // namespace mwbm
