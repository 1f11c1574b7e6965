#pragma once

#include <memory>
#include <string>

#include "asai/padic.hpp"

namespace asai {

// Q_p[X]/(X^2 - aX + c). When the polynomial splits over Q_p the class of X
// is identified with the root alpha and elements are stored in Q_p.
class QuadField {
 public:
  QuadField(const PadicElt& a, const PadicElt& c);
  const Ctx& ctx() const { return ctx_; }
  const PadicElt& a() const { return a_; }
  const PadicElt& c() const { return c_; }
  bool split() const { return split_; }
  const PadicElt& alpha() const { return alpha_; }
  const PadicElt& beta() const { return beta_; }
  Valuation valuation(const PadicElt& x0, const PadicElt& x1) const;
  PadicElt norm(const PadicElt& x0, const PadicElt& x1) const;

 private:
  Ctx ctx_;
  PadicElt a_, c_, alpha_, beta_;
  bool split_ = false;
};

using QField = std::shared_ptr<const QuadField>;

QField make_qfield(const PadicElt& a, const PadicElt& c);

// x0 + x1 * X.
struct QuadElt {
  QField f;
  PadicElt x0, x1;

  QuadElt() = default;
  QuadElt(QField f_, PadicElt a, PadicElt b = PadicElt());
  static QuadElt gen(const QField& f);

  QuadElt operator+(const QuadElt& o) const;
  QuadElt operator-(const QuadElt& o) const;
  QuadElt operator-() const;
  QuadElt operator*(const QuadElt& o) const;
  QuadElt operator*(const PadicElt& s) const;
  QuadElt conj() const;
  PadicElt norm() const { return f->norm(x0, x1); }
  QuadElt inv() const;
  QuadElt pow(long e) const;
  Valuation valuation() const { return f->valuation(x0, x1); }
  bool is_zero() const;
  std::string str() const;
};

// Roots of X^2 - aX + c. Distinct integral slopes are split by Hensel lifting;
// equal slopes give the quadratic marker unless the discriminant is a square.
struct HenselResult {
  bool split;
  PadicElt alpha, beta;  // alpha has the smaller valuation
  QuadElt marker;        // class of X when !split
};

HenselResult hensel_roots(const PadicElt& a, const PadicElt& c);

// Square root in Q_p, if one exists.
bool padic_sqrt(const PadicElt& x, PadicElt& out);

}  // namespace asai
