#pragma once

// Exact dense linear algebra over integral domains (Bareiss, cofactors, Smith
// form) and over fields (Gauss-Jordan, LDL^T). Everything is templated on the
// scalar so the same routines run on machine integers in tests and on GMP
// numbers in the library.

#include "plumb/scalar.hpp"

#include <stdexcept>
#include <utility>
#include <vector>

namespace plumb {

/// Fraction-free Gaussian elimination. Exact for any integral domain scalar.
template <typename Derived>
typename Derived::Scalar bareiss_determinant(const Eigen::MatrixBase<Derived>& input) {
  using Scalar = typename Derived::Scalar;
  if (input.rows() != input.cols()) throw std::invalid_argument("determinant of non-square matrix");
  const Eigen::Index n = input.rows();
  if (n == 0) return Scalar(1);
  Matrix<Scalar> a = input;
  Scalar sign(1);
  Scalar previous(1);
  for (Eigen::Index k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      Eigen::Index pivot = k + 1;
      while (pivot < n && a(pivot, k) == 0) ++pivot;
      if (pivot == n) return Scalar(0);
      a.row(k).swap(a.row(pivot));
      sign = -sign;
    }
    for (Eigen::Index i = k + 1; i < n; ++i) {
      for (Eigen::Index j = k + 1; j < n; ++j) {
        a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / previous;
      }
    }
    previous = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

/// det of the top-left k x k blocks, k = 1..n.
template <typename Derived>
std::vector<typename Derived::Scalar> leading_principal_minors(const Eigen::MatrixBase<Derived>& a) {
  std::vector<typename Derived::Scalar> minors;
  minors.reserve(static_cast<std::size_t>(a.rows()));
  for (Eigen::Index k = 1; k <= a.rows(); ++k)
    minors.push_back(bareiss_determinant(a.topLeftCorner(k, k)));
  return minors;
}

/// Classical adjoint: adj(A)_{ij} = (-1)^{i+j} det(A with row j and column i removed).
template <typename Derived>
Matrix<typename Derived::Scalar> adjugate(const Eigen::MatrixBase<Derived>& a) {
  using Scalar = typename Derived::Scalar;
  const Eigen::Index n = a.rows();
  if (n != a.cols()) throw std::invalid_argument("adjugate of non-square matrix");
  Matrix<Scalar> adj(n, n);
  if (n == 1) {
    adj(0, 0) = Scalar(1);
    return adj;
  }
  Matrix<Scalar> minor(n - 1, n - 1);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      // minor of entry (j, i)
      for (Eigen::Index r = 0, rr = 0; r < n; ++r) {
        if (r == j) continue;
        for (Eigen::Index c = 0, cc = 0; c < n; ++c) {
          if (c == i) continue;
          minor(rr, cc++) = a(r, c);
        }
        ++rr;
      }
      Scalar cofactor = bareiss_determinant(minor);
      adj(i, j) = ((i + j) % 2 == 0) ? cofactor : Scalar(-cofactor);
    }
  }
  return adj;
}

/// Gauss-Jordan inverse over a field. Throws on singular input.
template <typename Derived>
Matrix<typename Derived::Scalar> exact_inverse(const Eigen::MatrixBase<Derived>& input) {
  using Scalar = typename Derived::Scalar;
  const Eigen::Index n = input.rows();
  if (n != input.cols()) throw std::invalid_argument("inverse of non-square matrix");
  Matrix<Scalar> a = input;
  Matrix<Scalar> inv = Matrix<Scalar>::Identity(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    Eigen::Index pivot = k;
    while (pivot < n && a(pivot, k) == 0) ++pivot;
    if (pivot == n) throw std::domain_error("singular matrix");
    if (pivot != k) {
      a.row(k).swap(a.row(pivot));
      inv.row(k).swap(inv.row(pivot));
    }
    const Scalar p = a(k, k);
    for (Eigen::Index j = 0; j < n; ++j) {
      a(k, j) /= p;
      inv(k, j) /= p;
    }
    for (Eigen::Index i = 0; i < n; ++i) {
      if (i == k || a(i, k) == 0) continue;
      const Scalar f = a(i, k);
      for (Eigen::Index j = 0; j < n; ++j) {
        a(i, j) -= f * a(k, j);
        inv(i, j) -= f * inv(k, j);
      }
    }
  }
  return inv;
}

/// Solves A x = b over a field.
template <typename DerivedA, typename DerivedB>
Vector<typename DerivedA::Scalar> exact_solve(const Eigen::MatrixBase<DerivedA>& a,
                                              const Eigen::MatrixBase<DerivedB>& b) {
  return exact_inverse(a) * b;
}

/// Q = U^T diag(d) U with U unit upper triangular, so that
/// x^T Q x = sum_i d_i (x_i + sum_{j>i} U_ij x_j)^2.
template <typename Scalar>
struct UpperLdl {
  Vector<Scalar> d;
  Matrix<Scalar> u;
};

template <typename Derived>
UpperLdl<typename Derived::Scalar> upper_ldl(const Eigen::MatrixBase<Derived>& q) {
  using Scalar = typename Derived::Scalar;
  const Eigen::Index n = q.rows();
  Matrix<Scalar> r = q;
  UpperLdl<Scalar> out{Vector<Scalar>(n), Matrix<Scalar>::Identity(n, n)};
  for (Eigen::Index i = 0; i < n; ++i) {
    const Scalar di = r(i, i);
    if (di <= 0) throw std::domain_error("form is not positive definite");
    out.d(i) = di;
    for (Eigen::Index j = i + 1; j < n; ++j) out.u(i, j) = r(i, j) / di;
    for (Eigen::Index k = i + 1; k < n; ++k)
      for (Eigen::Index l = i + 1; l < n; ++l) r(k, l) -= out.u(i, k) * di * out.u(i, l);
  }
  return out;
}

/// U * A * V = D with U, V unimodular and D diagonal, d_1 | d_2 | ... , d_i >= 0.
template <typename Scalar>
struct SmithDecomposition {
  Matrix<Scalar> u;
  Matrix<Scalar> v;
  Matrix<Scalar> d;

  std::vector<Scalar> invariant_factors() const {
    std::vector<Scalar> f;
    for (Eigen::Index i = 0; i < std::min(d.rows(), d.cols()); ++i) f.push_back(d(i, i));
    return f;
  }
};

template <typename Derived>
SmithDecomposition<typename Derived::Scalar> smith_normal_form(const Eigen::MatrixBase<Derived>& input) {
  using Scalar = typename Derived::Scalar;
  const Eigen::Index rows = input.rows();
  const Eigen::Index cols = input.cols();
  Matrix<Scalar> a = input;
  Matrix<Scalar> u = Matrix<Scalar>::Identity(rows, rows);
  Matrix<Scalar> v = Matrix<Scalar>::Identity(cols, cols);
  auto abs_value = [](const Scalar& x) { return x < 0 ? Scalar(-x) : x; };

  const Eigen::Index steps = std::min(rows, cols);
  for (Eigen::Index t = 0; t < steps; ++t) {
    while (true) {
      // smallest nonzero entry of the trailing block becomes the pivot
      Eigen::Index pr = -1, pc = -1;
      for (Eigen::Index i = t; i < rows; ++i)
        for (Eigen::Index j = t; j < cols; ++j)
          if (a(i, j) != 0 && (pr < 0 || abs_value(a(i, j)) < abs_value(a(pr, pc)))) {
            pr = i;
            pc = j;
          }
      if (pr < 0) return {u, v, a};
      if (pr != t) {
        a.row(t).swap(a.row(pr));
        u.row(t).swap(u.row(pr));
      }
      if (pc != t) {
        a.col(t).swap(a.col(pc));
        v.col(t).swap(v.col(pc));
      }
      bool clean = true;
      for (Eigen::Index i = t + 1; i < rows; ++i) {
        if (a(i, t) == 0) continue;
        const Scalar f = a(i, t) / a(t, t);
        a.row(i) -= f * a.row(t);
        u.row(i) -= f * u.row(t);
        if (a(i, t) != 0) clean = false;
      }
      for (Eigen::Index j = t + 1; j < cols; ++j) {
        if (a(t, j) == 0) continue;
        const Scalar f = a(t, j) / a(t, t);
        a.col(j) -= f * a.col(t);
        v.col(j) -= f * v.col(t);
        if (a(t, j) != 0) clean = false;
      }
      if (!clean) continue;
      // divisibility: fold any offending row into the pivot row and retry
      Eigen::Index bad = -1;
      for (Eigen::Index i = t + 1; i < rows && bad < 0; ++i)
        for (Eigen::Index j = t + 1; j < cols; ++j)
          if (a(i, j) % a(t, t) != 0) {
            bad = i;
            break;
          }
      if (bad < 0) break;
      a.row(t) += a.row(bad);
      u.row(t) += u.row(bad);
    }
    if (a(t, t) < 0) {
      a.row(t) *= Scalar(-1);
      u.row(t) *= Scalar(-1);
    }
  }
  return {u, v, a};
}

}  // namespace plumb
