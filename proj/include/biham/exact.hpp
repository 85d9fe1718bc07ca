#pragma once

#include <complex>
#include <string>

#include <gmpxx.h>

namespace biham {

/// Exact a + b i with a, b rational.
class GaussRational {
 public:
  GaussRational() = default;
  GaussRational(long value) : re_(value) {}
  GaussRational(mpq_class re, mpq_class im = 0) : re_(std::move(re)), im_(std::move(im)) {
    re_.canonicalize();
    im_.canonicalize();
  }
  static GaussRational fraction(long num, long den) { return GaussRational(mpq_class(num, den)); }
  static GaussRational i() { return GaussRational(0, 1); }

  const mpq_class& re() const { return re_; }
  const mpq_class& im() const { return im_; }
  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }

  GaussRational& operator+=(const GaussRational& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
  }
  GaussRational& operator-=(const GaussRational& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
  }
  GaussRational& operator*=(const GaussRational& o) {
    mpq_class r = re_ * o.re_ - im_ * o.im_;
    mpq_class m = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(r);
    im_ = std::move(m);
    return *this;
  }
  friend GaussRational operator+(GaussRational a, const GaussRational& b) { return a += b; }
  friend GaussRational operator-(GaussRational a, const GaussRational& b) { return a -= b; }
  friend GaussRational operator*(GaussRational a, const GaussRational& b) { return a *= b; }
  GaussRational operator-() const { return GaussRational(-re_, -im_); }
  friend bool operator==(const GaussRational& a, const GaussRational& b) { return a.re_ == b.re_ && a.im_ == b.im_; }

  std::complex<double> to_complex() const { return {re_.get_d(), im_.get_d()}; }
  std::string to_string() const;

 private:
  mpq_class re_ = 0;
  mpq_class im_ = 0;
};

inline std::string GaussRational::to_string() const {
  if (sgn(im_) == 0) return re_.get_str();
  if (sgn(re_) == 0) return "(" + im_.get_str() + ")i";
  return "(" + re_.get_str() + "+" + im_.get_str() + "i)";
}

}  // namespace biham
