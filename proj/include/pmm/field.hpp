#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "pmm/error.hpp"

namespace pmm {

struct Shape {
  std::size_t rows = 0;
  std::size_t cols = 0;

  std::size_t size() const { return rows * cols; }
  friend bool operator==(const Shape&, const Shape&) = default;
};

std::string to_string(Shape s);

/// Real row-major m x n array. Vectors are n x 1 (or 1 x n) fields.
///
/// Carries primal images, dual variables and stacked gradient pairs. The
/// arithmetic helpers below all go through the parallel kernels.
class DenseField {
 public:
  DenseField() = default;
  DenseField(std::size_t rows, std::size_t cols, double fill = 0.0);
  explicit DenseField(Shape shape, double fill = 0.0);
  DenseField(std::size_t rows, std::size_t cols, std::vector<double> data);

  static DenseField column(std::vector<double> data);

  Shape shape() const { return shape_; }
  std::size_t rows() const { return shape_.rows; }
  std::size_t cols() const { return shape_.cols; }
  std::size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * shape_.cols + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * shape_.cols + j]; }
  double& operator[](std::size_t k) { return data_[k]; }
  double operator[](std::size_t k) const { return data_[k]; }

  std::span<double> span() { return data_; }
  std::span<const double> span() const { return data_; }
  const std::vector<double>& values() const { return data_; }

  bool all_finite() const;
  void fill(double value);

  DenseField& operator+=(const DenseField& other);
  DenseField& operator-=(const DenseField& other);
  DenseField& operator*=(double s);

  friend bool operator==(const DenseField&, const DenseField&) = default;

 private:
  Shape shape_{};
  std::vector<double> data_;
};

DenseField operator+(DenseField a, const DenseField& b);
DenseField operator-(DenseField a, const DenseField& b);
DenseField operator*(double s, DenseField a);

double dot(const DenseField& a, const DenseField& b);
double norm(const DenseField& a);
double norm_sq(const DenseField& a);
// y += alpha * x
void axpy(double alpha, const DenseField& x, DenseField& y);
// Returns alpha*x + beta*y.
DenseField lincomb(double alpha, const DenseField& x, double beta, const DenseField& y);

void require_same_shape(const DenseField& a, const DenseField& b, const char* what);

/// Complex row-major array for Fourier-domain quantities.
class ComplexField {
 public:
  using value_type = std::complex<double>;

  ComplexField() = default;
  ComplexField(std::size_t rows, std::size_t cols, value_type fill = {});
  explicit ComplexField(const DenseField& real);

  Shape shape() const { return shape_; }
  std::size_t rows() const { return shape_.rows; }
  std::size_t cols() const { return shape_.cols; }
  std::size_t size() const { return data_.size(); }

  value_type& operator()(std::size_t i, std::size_t j) { return data_[i * shape_.cols + j]; }
  value_type operator()(std::size_t i, std::size_t j) const { return data_[i * shape_.cols + j]; }
  value_type& operator[](std::size_t k) { return data_[k]; }
  value_type operator[](std::size_t k) const { return data_[k]; }

  std::span<value_type> span() { return data_; }
  std::span<const value_type> span() const { return data_; }

  DenseField real() const;
  DenseField imag() const;

 private:
  Shape shape_{};
  std::vector<value_type> data_;
};

double norm(const ComplexField& a);

}  // namespace pmm
