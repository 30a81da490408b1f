#include "folia/gaussian.hpp"

#include <ostream>

#include "folia/error.hpp"

namespace folia {

GaussianRational::GaussianRational(mpq_class re, mpq_class im)
    : re_(std::move(re)), im_(std::move(im)) {
  re_.canonicalize();
  im_.canonicalize();
}

GaussianRational GaussianRational::from_strings(const std::string& re, const std::string& im) {
  try {
    return {mpq_class(re), mpq_class(im)};
  } catch (const std::invalid_argument&) {
    throw Error(ErrorCode::kParse, "malformed rational '" + re + "' / '" + im + "'");
  }
}

GaussianRational GaussianRational::inverse() const {
  if (is_zero()) throw Error(ErrorCode::kDivisionByZero, "inverse of zero");
  mpq_class n = norm();
  return {re_ / n, -im_ / n};
}

GaussianRational& GaussianRational::operator+=(const GaussianRational& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

GaussianRational& GaussianRational::operator-=(const GaussianRational& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& o) {
  if (o.is_real()) {
    re_ *= o.re_;
    im_ *= o.re_;
    return *this;
  }
  mpq_class re = re_ * o.re_ - im_ * o.im_;
  im_ = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  return *this;
}

GaussianRational& GaussianRational::operator/=(const GaussianRational& o) {
  return *this *= o.inverse();
}

namespace {

std::string imag_part(const mpq_class& im) {
  if (im == 1) return "i";
  if (im == -1) return "-i";
  return im.get_str() + "*i";
}

}  // namespace

std::string to_string(const GaussianRational& value) {
  const mpq_class& re = value.re();
  const mpq_class& im = value.im();
  if (sgn(im) == 0) return re.get_str();
  if (sgn(re) == 0) return imag_part(im);
  std::string out = "(" + re.get_str();
  if (sgn(im) > 0) {
    out += " + " + imag_part(im);
  } else {
    out += " - " + imag_part(mpq_class(-im));
  }
  return out + ")";
}

std::ostream& operator<<(std::ostream& os, const GaussianRational& value) {
  return os << to_string(value);
}

}  // namespace folia
