#include "ttquant/gauss_rational.hpp"

#include "ttquant/errors.hpp"

namespace ttq {

GaussRational::GaussRational(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {
  re_.canonicalize();
  im_.canonicalize();
}

GaussRational& GaussRational::operator+=(const GaussRational& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

GaussRational& GaussRational::operator-=(const GaussRational& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

GaussRational& GaussRational::operator*=(const GaussRational& o) {
  if (sgn(im_) == 0 && sgn(o.im_) == 0) {
    re_ *= o.re_;
    return *this;
  }
  mpq_class re = re_ * o.re_ - im_ * o.im_;
  mpq_class im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

GaussRational& GaussRational::operator/=(const GaussRational& o) {
  if (o.is_zero()) throw DivisionByZeroError("division by zero");
  if (sgn(o.im_) == 0) {
    re_ /= o.re_;
    im_ /= o.re_;
    return *this;
  }
  const mpq_class d = o.norm();
  mpq_class re = (re_ * o.re_ + im_ * o.im_) / d;
  mpq_class im = (im_ * o.re_ - re_ * o.im_) / d;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

std::string GaussRational::to_string() const {
  if (is_real()) return re_.get_str();
  std::string im_part;
  if (im_ == 1) {
    im_part = "i";
  } else if (im_ == -1) {
    im_part = "-i";
  } else {
    im_part = im_.get_str() + "*i";
  }
  if (sgn(re_) == 0) return im_part;
  if (sgn(im_) < 0) {
    const mpq_class a = -im_;
    return "(" + re_.get_str() + " - " + (a == 1 ? std::string("i") : a.get_str() + "*i") + ")";
  }
  return "(" + re_.get_str() + " + " + im_part + ")";
}

mpq_class parse_rational(const std::string& text) {
  const auto slash = text.find('/');
  if (slash != std::string::npos) {
    mpq_class q(parse_rational(text.substr(0, slash)) / parse_rational(text.substr(slash + 1)));
    return q;
  }
  std::string digits;
  long scale = 0;
  bool seen_point = false;
  bool negative = false;
  for (std::size_t k = 0; k < text.size(); ++k) {
    const char c = text[k];
    if (k == 0 && (c == '-' || c == '+')) {
      negative = c == '-';
    } else if (c == '.' && !seen_point) {
      seen_point = true;
    } else if (c >= '0' && c <= '9') {
      digits.push_back(c);
      if (seen_point) ++scale;
    } else {
      throw Error("malformed number '" + text + "'");
    }
  }
  if (digits.empty()) throw Error("malformed number '" + text + "'");
  mpz_class num(digits, 10);
  mpz_class den = 1;
  for (long k = 0; k < scale; ++k) den *= 10;
  mpq_class q(num, den);
  q.canonicalize();
  return negative ? mpq_class(-q) : q;
}

}  // namespace ttq
