#include "hopper/simplex_lp.hpp"

#include <limits>
#include <vector>

namespace hopper {
namespace {

// Tableau simplex on maximize c.x, A x <= b, x >= 0.
class Tableau {
 public:
  Tableau(const Eigen::MatrixXd& a, const Eigen::VectorXd& b, const Eigen::VectorXd& c, double eps)
      : m_(a.rows()), n_(a.cols()), eps_(eps), t_(m_ + 2, n_ + 2), basic_(m_), nonbasic_(n_ + 1) {
    t_.setZero();
    for (int i = 0; i < m_; ++i) {
      for (int j = 0; j < n_; ++j) t_(i, j) = a(i, j);
      t_(i, n_) = -1;
      t_(i, n_ + 1) = b(i);
      basic_[i] = n_ + i;
    }
    for (int j = 0; j < n_; ++j) {
      nonbasic_[j] = j;
      t_(m_, j) = -c(j);
    }
    nonbasic_[n_] = -1;
    t_(m_ + 1, n_) = 1;
  }

  LpSolution solve() {
    LpSolution out;
    int r = 0;
    for (int i = 1; i < m_; ++i) {
      if (t_(i, n_ + 1) < t_(r, n_ + 1)) r = i;
    }
    if (m_ > 0 && t_(r, n_ + 1) < -eps_) {
      pivot(r, n_);
      if (!run(1) || t_(m_ + 1, n_ + 1) < -eps_) {
        out.status = LpStatus::Infeasible;
        return out;
      }
      for (int i = 0; i < m_; ++i) {
        if (basic_[i] == -1) {
          int s = -1;
          for (int j = 0; j <= n_; ++j) {
            if (s == -1 || t_(i, j) < t_(i, s) || (t_(i, j) == t_(i, s) && nonbasic_[j] < nonbasic_[s])) s = j;
          }
          pivot(i, s);
        }
      }
    }
    if (!run(2)) {
      out.status = LpStatus::Unbounded;
      return out;
    }
    out.status = LpStatus::Optimal;
    out.x = Eigen::VectorXd::Zero(n_);
    for (int i = 0; i < m_; ++i) {
      if (basic_[i] >= 0 && basic_[i] < n_) out.x(basic_[i]) = t_(i, n_ + 1);
    }
    out.value = t_(m_, n_ + 1);
    return out;
  }

 private:
  void pivot(int r, int s) {
    const double inv = 1.0 / t_(r, s);
    for (int i = 0; i < m_ + 2; ++i) {
      if (i == r) continue;
      const double f = t_(i, s) * inv;
      if (f == 0) continue;
      for (int j = 0; j < n_ + 2; ++j) {
        if (j != s) t_(i, j) -= t_(r, j) * f;
      }
      t_(i, s) = -f;
    }
    for (int j = 0; j < n_ + 2; ++j) {
      if (j != s) t_(r, j) *= inv;
    }
    t_(r, s) = inv;
    std::swap(basic_[r], nonbasic_[s]);
  }

  bool run(int phase) {
    const int x = phase == 1 ? m_ + 1 : m_;
    for (int guard = 0; guard < 50000; ++guard) {
      int s = -1;
      for (int j = 0; j <= n_; ++j) {
        if (phase == 2 && nonbasic_[j] == -1) continue;
        if (s == -1 || t_(x, j) < t_(x, s) || (t_(x, j) == t_(x, s) && nonbasic_[j] < nonbasic_[s])) s = j;
      }
      if (t_(x, s) > -eps_) return true;
      int r = -1;
      for (int i = 0; i < m_; ++i) {
        if (t_(i, s) < eps_) continue;
        if (r == -1) {
          r = i;
          continue;
        }
        const double lhs = t_(i, n_ + 1) / t_(i, s);
        const double rhs = t_(r, n_ + 1) / t_(r, s);
        if (lhs < rhs || (lhs == rhs && basic_[i] < basic_[r])) r = i;
      }
      if (r == -1) return false;
      pivot(r, s);
    }
    return false;
  }

  int m_;
  int n_;
  double eps_;
  Eigen::MatrixXd t_;
  std::vector<int> basic_;
  std::vector<int> nonbasic_;
};

}  // namespace

LpSolution solve_lp(const Eigen::MatrixXd& a, const Eigen::VectorXd& b, const Eigen::VectorXd& c, double epsilon) {
  const Eigen::Index n = a.cols();
  Eigen::MatrixXd split(a.rows(), 2 * n);
  split << a, -a;
  Eigen::VectorXd cost(2 * n);
  cost << c, -c;
  Tableau tableau(split, b, cost, epsilon);
  LpSolution raw = tableau.solve();
  LpSolution out;
  out.status = raw.status;
  if (raw.status == LpStatus::Optimal) {
    out.x = raw.x.head(n) - raw.x.tail(n);
    out.value = raw.value;
  }
  return out;
}

}  // namespace hopper
