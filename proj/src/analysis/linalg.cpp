#include "ancsim/analysis/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "ancsim/errors.hpp"

namespace ancsim::analysis {

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows) {
  rows_ = rows.size();
  cols_ = rows_ ? rows.begin()->size() : 0;
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw DataError("Matrix: ragged initializer");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::diagonal(std::span<const double> d) {
  Matrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

Matrix Matrix::toeplitz(std::span<const double> lags) {
  const std::size_t n = lags.size();
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = lags[i > j ? i - j : j - i];
  return m;
}

std::vector<double> Matrix::operator*(std::span<const double> v) const {
  if (v.size() != cols_) throw DataError("Matrix*vector: size mismatch");
  std::vector<double> out(rows_, 0.0);
  for (std::size_t i = 0; i < rows_; ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < cols_; ++j) acc += (*this)(i, j) * v[j];
    out[i] = acc;
  }
  return out;
}

Matrix Matrix::operator*(const Matrix& other) const {
  if (cols_ != other.rows_) throw DataError("Matrix*Matrix: size mismatch");
  Matrix out(rows_, other.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const double a = (*this)(i, k);
      for (std::size_t j = 0; j < other.cols_; ++j) out(i, j) += a * other(k, j);
    }
  return out;
}

Matrix Matrix::operator+(const Matrix& other) const {
  if (rows_ != other.rows_ || cols_ != other.cols_) throw DataError("Matrix+Matrix: size mismatch");
  Matrix out = *this;
  for (std::size_t k = 0; k < data_.size(); ++k) out.data_[k] += other.data_[k];
  return out;
}

Matrix Matrix::operator*(double s) const {
  Matrix out = *this;
  for (double& v : out.data_) v *= s;
  return out;
}

Matrix Matrix::transposed() const {
  Matrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
  return out;
}

double Matrix::frobenius_norm() const noexcept {
  return std::sqrt(std::inner_product(data_.begin(), data_.end(), data_.begin(), 0.0));
}

bool Matrix::symmetric(double rel_tol) const noexcept {
  if (!square()) return false;
  const double scale = std::max(frobenius_norm(), std::numeric_limits<double>::min());
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = i + 1; j < cols_; ++j)
      if (std::abs((*this)(i, j) - (*this)(j, i)) > rel_tol * scale) return false;
  return true;
}

bool Matrix::all_finite() const noexcept {
  return std::all_of(data_.begin(), data_.end(), [](double v) { return std::isfinite(v); });
}

double quadratic_form(const Matrix& m, std::span<const double> w) {
  const auto mw = m * w;
  return std::inner_product(w.begin(), w.end(), mw.begin(), 0.0);
}

SymmetricEigen eigen_symmetric(const Matrix& m) {
  if (!m.square()) throw DataError("eigen_symmetric: matrix is not square");
  if (!m.all_finite()) throw DataError("eigen_symmetric: non-finite entry");
  if (!m.symmetric(1e-10)) throw DataError("eigen_symmetric: matrix is not symmetric");
  const std::size_t n = m.rows();
  Matrix a = m;
  Matrix v = Matrix::identity(n);
  const double norm = m.frobenius_norm();
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
    if (std::sqrt(off) <= 1e-15 * norm || off == 0.0) break;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v(k, p);
          const double vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](auto i, auto j) { return a(i, i) < a(j, j); });
  SymmetricEigen out{std::vector<double>(n), Matrix(n, n)};
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = a(order[k], order[k]);
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
  }
  return out;
}

double condition_number(const Matrix& m) {
  const auto eig = eigen_symmetric(m);
  const double lo = eig.values.front();
  const double hi = eig.values.back();
  if (!(lo > 0.0)) return std::numeric_limits<double>::infinity();
  return hi / lo;
}

namespace {

bool cholesky(const Matrix& a, Matrix& l) {
  const std::size_t n = a.rows();
  l = Matrix(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    double diag = a(j, j);
    for (std::size_t k = 0; k < j; ++k) diag -= l(j, k) * l(j, k);
    if (!(diag > 0.0)) return false;
    l(j, j) = std::sqrt(diag);
    for (std::size_t i = j + 1; i < n; ++i) {
      double acc = a(i, j);
      for (std::size_t k = 0; k < j; ++k) acc -= l(i, k) * l(j, k);
      l(i, j) = acc / l(j, j);
    }
  }
  return true;
}

std::vector<double> substitute(const Matrix& l, std::span<const double> b) {
  const std::size_t n = l.rows();
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    double acc = b[i];
    for (std::size_t k = 0; k < i; ++k) acc -= l(i, k) * y[k];
    y[i] = acc / l(i, i);
  }
  std::vector<double> x(n);
  for (std::size_t i = n; i-- > 0;) {
    double acc = y[i];
    for (std::size_t k = i + 1; k < n; ++k) acc -= l(k, i) * x[k];
    x[i] = acc / l(i, i);
  }
  return x;
}

}  // namespace

LinearSolution solve_spd(const Matrix& a, std::span<const double> b, double max_condition) {
  if (!a.square() || a.rows() != b.size()) throw DataError("solve_spd: size mismatch");
  if (a.rows() == 0) return {};
  const double cond = condition_number(a);
  if (std::isfinite(max_condition) && !(cond < max_condition)) {
    throw SingularMatrixError("matrix is singular or ill-conditioned (condition estimate " +
                                  std::to_string(cond) + ")",
                              cond);
  }
  LinearSolution out;
  out.condition_estimate = cond;
  Matrix l;
  if (cholesky(a, l)) {
    out.x = substitute(l, b);
    return out;
  }
  double trace = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) trace += a(i, i);
  const double unit = trace / static_cast<double>(a.rows());
  for (double jitter = 1e-12 * unit; jitter <= 1e-6 * unit; jitter *= 2.0) {
    Matrix shifted = a;
    for (std::size_t i = 0; i < a.rows(); ++i) shifted(i, i) += jitter;
    if (cholesky(shifted, l)) {
      out.x = substitute(l, b);
      out.jitter_applied = true;
      out.jitter = jitter;
      return out;
    }
  }
  throw SingularMatrixError("Cholesky factorisation failed even with diagonal jitter", cond);
}

}  // namespace ancsim::analysis
