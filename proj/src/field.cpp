#include "pmm/field.hpp"

#include <cmath>
#include <utility>

#include "pmm/kernels.hpp"

namespace pmm {

std::string to_string(Shape s) {
  return std::to_string(s.rows) + "x" + std::to_string(s.cols);
}

DenseField::DenseField(std::size_t rows, std::size_t cols, double fill)
    : shape_{rows, cols}, data_(rows * cols, fill) {}

DenseField::DenseField(Shape shape, double fill) : DenseField(shape.rows, shape.cols, fill) {}

DenseField::DenseField(std::size_t rows, std::size_t cols, std::vector<double> data)
    : shape_{rows, cols}, data_(std::move(data)) {
  if (data_.size() != rows * cols) {
    throw InvalidArgument("DenseField: " + std::to_string(data_.size()) +
                          " values for shape " + to_string(shape_));
  }
}

DenseField DenseField::column(std::vector<double> data) {
  const std::size_t n = data.size();
  return DenseField(n, 1, std::move(data));
}

bool DenseField::all_finite() const {
  for (double v : data_) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

void DenseField::fill(double value) {
  for (double& v : data_) v = value;
}

DenseField& DenseField::operator+=(const DenseField& other) {
  require_same_shape(*this, other, "operator+=");
  kernels::axpy(1.0, other.span(), span());
  return *this;
}

DenseField& DenseField::operator-=(const DenseField& other) {
  require_same_shape(*this, other, "operator-=");
  kernels::axpy(-1.0, other.span(), span());
  return *this;
}

DenseField& DenseField::operator*=(double s) {
  kernels::scale(s, span());
  return *this;
}

DenseField operator+(DenseField a, const DenseField& b) { return a += b; }
DenseField operator-(DenseField a, const DenseField& b) { return a -= b; }
DenseField operator*(double s, DenseField a) { return a *= s; }

void require_same_shape(const DenseField& a, const DenseField& b, const char* what) {
  if (a.shape() != b.shape()) {
    throw InvalidArgument(std::string(what) + ": shape mismatch " + to_string(a.shape()) +
                          " vs " + to_string(b.shape()));
  }
}

double dot(const DenseField& a, const DenseField& b) {
  require_same_shape(a, b, "dot");
  return kernels::dot(a.span(), b.span());
}

double norm_sq(const DenseField& a) { return kernels::dot(a.span(), a.span()); }

double norm(const DenseField& a) { return std::sqrt(norm_sq(a)); }

void axpy(double alpha, const DenseField& x, DenseField& y) {
  require_same_shape(x, y, "axpy");
  kernels::axpy(alpha, x.span(), y.span());
}

DenseField lincomb(double alpha, const DenseField& x, double beta, const DenseField& y) {
  require_same_shape(x, y, "lincomb");
  DenseField out(x.shape());
  kernels::lincomb(alpha, x.span(), beta, y.span(), out.span());
  return out;
}

ComplexField::ComplexField(std::size_t rows, std::size_t cols, value_type fill)
    : shape_{rows, cols}, data_(rows * cols, fill) {}

ComplexField::ComplexField(const DenseField& real)
    : shape_(real.shape()), data_(real.size()) {
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] = real[k];
}

DenseField ComplexField::real() const {
  DenseField out(shape_);
  for (std::size_t k = 0; k < data_.size(); ++k) out[k] = data_[k].real();
  return out;
}

DenseField ComplexField::imag() const {
  DenseField out(shape_);
  for (std::size_t k = 0; k < data_.size(); ++k) out[k] = data_[k].imag();
  return out;
}

double norm(const ComplexField& a) {
  double s = 0.0;
  for (const auto& v : a.span()) s += std::norm(v);
  return std::sqrt(s);
}

}  // namespace pmm
