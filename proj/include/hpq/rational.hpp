#pragma once

// Exact-rational side channel. The float pipeline is Eigen end to end; the
// handful of identities that must hold *exactly* (reflection involutivity,
// form preservation, commutation) run on arbitrary-precision rationals
// instead. Matrices here are tiny (n <= 64), so a plain dense loop is all the
// linear algebra we need.

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace hpq {

using Rat = boost::multiprecision::cpp_rational;

inline double rat_to_double(const Rat& r) { return static_cast<double>(r); }

// Accepts "3", "-7/4", "1.05", "+.5". Returns nullopt on anything else
// (callers fall back to strtod for floats like 1e-3).
inline std::optional<Rat> parse_rational(const std::string& s) {
  using Int = boost::multiprecision::cpp_int;
  size_t i = 0;
  bool neg = false;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) neg = (s[i++] == '-');
  Int num = 0, den = 1;
  bool any_digit = false, seen_dot = false, seen_slash = false;
  for (; i < s.size(); ++i) {
    const char c = s[i];
    if (c >= '0' && c <= '9') {
      num = num * 10 + (c - '0');
      if (seen_dot) den *= 10;
      any_digit = true;
    } else if (c == '.' && !seen_dot && !seen_slash) {
      seen_dot = true;
    } else if (c == '/' && !seen_slash && !seen_dot && any_digit) {
      seen_slash = true;
      Int d = 0;
      bool dd = false;
      for (++i; i < s.size(); ++i) {
        if (s[i] < '0' || s[i] > '9') return std::nullopt;
        d = d * 10 + (s[i] - '0');
        dd = true;
      }
      if (!dd || d == 0) return std::nullopt;
      den = d;
      break;
    } else {
      return std::nullopt;
    }
  }
  if (!any_digit) return std::nullopt;
  if (neg) num = -num;
  return Rat(num, den);
}

class RatMat {
 public:
  RatMat() = default;
  RatMat(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols) {}

  static RatMat identity(int n) {
    RatMat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Rat& operator()(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
  const Rat& operator()(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

  RatMat operator*(const RatMat& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("RatMat: dimension mismatch");
    RatMat out(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
      for (int k = 0; k < cols_; ++k) {
        const Rat& lik = (*this)(i, k);
        if (lik == 0) continue;
        for (int j = 0; j < o.cols_; ++j) out(i, j) += lik * o(k, j);
      }
    return out;
  }

  RatMat transpose() const {
    RatMat out(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
    return out;
  }

  bool operator==(const RatMat& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
  }
  bool operator!=(const RatMat& o) const { return !(*this == o); }

  Eigen::MatrixXd to_double() const {
    Eigen::MatrixXd out(rows_, cols_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) out(i, j) = rat_to_double((*this)(i, j));
    return out;
  }

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<Rat> a_;
};

}  // namespace hpq
