#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Core>

namespace mwbm {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using IntMatrix = Eigen::MatrixXi;
using BoolArray = Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic>;

enum class Kind { Gaussian, Bernoulli };

inline const char* kind_name(Kind k) {
  return k == Kind::Gaussian ? "gaussian" : "bernoulli";
}

/// Observed interaction table Y. mask(j,k) == true means the cell is
/// observed; likelihoods and update sums skip unobserved cells.
struct InteractionTable {
  Matrix values;
  BoolArray mask;
  Kind kind = Kind::Gaussian;

  InteractionTable() = default;
  InteractionTable(Matrix v, Kind k)
      : values(std::move(v)),
        mask(BoolArray::Constant(values.rows(), values.cols(), true)),
        kind(k) {}
  InteractionTable(Matrix v, BoolArray m, Kind k)
      : values(std::move(v)), mask(std::move(m)), kind(k) {}

  [[nodiscard]] Eigen::Index rows() const { return values.rows(); }
  [[nodiscard]] Eigen::Index cols() const { return values.cols(); }
  [[nodiscard]] bool observed(Eigen::Index j, Eigen::Index k) const {
    return mask(j, k);
  }
  [[nodiscard]] long observed_count() const {
    return static_cast<long>(mask.count());
  }
  [[nodiscard]] bool fully_observed() const {
    return observed_count() == rows() * cols();
  }

  void validate() const {
    if (values.rows() == 0 || values.cols() == 0)
      throw std::invalid_argument("InteractionTable: empty table");
    if (mask.rows() != values.rows() || mask.cols() != values.cols())
      throw std::invalid_argument("InteractionTable: mask shape mismatch");
    for (Eigen::Index j = 0; j < rows(); ++j) {
      bool any = false;
      for (Eigen::Index k = 0; k < cols(); ++k) any = any || mask(j, k);
      if (!any)
        throw std::invalid_argument("InteractionTable: row " +
                                    std::to_string(j) + " fully missing");
    }
    for (Eigen::Index k = 0; k < cols(); ++k) {
      bool any = false;
      for (Eigen::Index j = 0; j < rows(); ++j) any = any || mask(j, k);
      if (!any)
        throw std::invalid_argument("InteractionTable: column " +
                                    std::to_string(k) + " fully missing");
    }
    for (Eigen::Index j = 0; j < rows(); ++j) {
      for (Eigen::Index k = 0; k < cols(); ++k) {
        if (!mask(j, k)) continue;
        const double y = values(j, k);
        if (!std::isfinite(y))
          throw std::invalid_argument("InteractionTable: non-finite value");
        if (kind == Kind::Bernoulli && y != 0.0 && y != 1.0)
          throw std::invalid_argument(
              "InteractionTable: Bernoulli values must be 0 or 1");
      }
    }
  }
};

/// Row-stochastic N x K matrix of latent group proportions.
struct MembershipMatrix {
  Matrix m;

  MembershipMatrix() = default;
  explicit MembershipMatrix(Matrix v) : m(std::move(v)) {}

  [[nodiscard]] Eigen::Index objects() const { return m.rows(); }
  [[nodiscard]] Eigen::Index groups() const { return m.cols(); }

  void validate(double tol = 1e-9) const {
    if (m.rows() == 0 || m.cols() == 0)
      throw std::invalid_argument("MembershipMatrix: empty");
    for (Eigen::Index j = 0; j < m.rows(); ++j) {
      double s = 0.0;
      for (Eigen::Index g = 0; g < m.cols(); ++g) {
        const double x = m(j, g);
        if (!(x >= 0.0) || !std::isfinite(x))
          throw std::invalid_argument("MembershipMatrix: negative entry");
        s += x;
      }
      if (std::abs(s - 1.0) > tol)
        throw std::invalid_argument("MembershipMatrix: row " +
                                    std::to_string(j) + " does not sum to 1");
    }
  }
};

/// K1 x K2 block interaction means (Gaussian) or probabilities (Bernoulli).
struct Blockmodel {
  Matrix b;

  Blockmodel() = default;
  explicit Blockmodel(Matrix v) : b(std::move(v)) {}

  [[nodiscard]] Eigen::Index row_groups() const { return b.rows(); }
  [[nodiscard]] Eigen::Index col_groups() const { return b.cols(); }

  void validate(Kind kind) const {
    if (b.rows() == 0 || b.cols() == 0)
      throw std::invalid_argument("Blockmodel: empty");
    for (Eigen::Index g = 0; g < b.rows(); ++g) {
      for (Eigen::Index h = 0; h < b.cols(); ++h) {
        const double x = b(g, h);
        if (!std::isfinite(x))
          throw std::invalid_argument("Blockmodel: non-finite entry");
        if (kind == Kind::Bernoulli && (x < 0.0 || x > 1.0))
          throw std::invalid_argument("Blockmodel: probability out of [0,1]");
      }
    }
  }
};

/// Dirichlet concentrations for both sides plus the Gaussian noise
/// variance. Scalars broadcast to symmetric vectors via symmetric().
struct Hyperparams {
  Vector alpha;  // length K1
  Vector beta;   // length K2
  double sigma2 = 1.0;

  static Hyperparams symmetric(Eigen::Index k1, Eigen::Index k2, double a,
                               double b, double s2) {
    Hyperparams hp;
    hp.alpha = Vector::Constant(k1, a);
    hp.beta = Vector::Constant(k2, b);
    hp.sigma2 = s2;
    hp.validate();
    return hp;
  }

  void validate() const {
    if (alpha.size() == 0 || beta.size() == 0)
      throw std::invalid_argument("Hyperparams: empty concentration vector");
    if ((alpha.array() <= 0.0).any() || (beta.array() <= 0.0).any())
      throw std::invalid_argument("Hyperparams: concentrations must be > 0");
    if (!(sigma2 > 0.0) || !std::isfinite(sigma2))
      throw std::invalid_argument("Hyperparams: sigma2 must be > 0");
  }
};

/// Single-cell latent assignment (row group, column group), 0-based.
struct AssignmentPair {
  int row_group = 0;
  int col_group = 0;
};

/// Per-cell assignments for observed cells; -1 marks unobserved cells.
struct AssignmentTable {
  IntMatrix row_group;
  IntMatrix col_group;

  AssignmentTable() = default;
  AssignmentTable(Eigen::Index n1, Eigen::Index n2)
      : row_group(IntMatrix::Constant(n1, n2, -1)),
        col_group(IntMatrix::Constant(n1, n2, -1)) {}

  [[nodiscard]] AssignmentPair at(Eigen::Index j, Eigen::Index k) const {
    return {row_group(j, k), col_group(j, k)};
  }
  void set(Eigen::Index j, Eigen::Index k, AssignmentPair a) {
    row_group(j, k) = a.row_group;
    col_group(j, k) = a.col_group;
  }
};

}  // namespace mwbm
