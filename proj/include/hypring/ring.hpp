#pragma once

#include <complex>
#include <map>
#include <vector>

#include "hypring/group.hpp"

namespace hypring {

using Complex = std::complex<double>;

// Coefficients with magnitude at or below this are dropped after arithmetic.
inline constexpr double kPruneTol = 1e-12;

struct non_radial_argument : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Finite-support element of the group ring. Support keys are canonical; maps
// are ordered shortlex so iteration is deterministic.
class RingElement {
 public:
  using Support = std::map<GroupElement, Complex>;

  RingElement() = default;
  static RingElement basis(const GroupElement& g, Complex c = 1.0) {
    RingElement r;
    r.add(g, c);
    return r;
  }

  const Support& support() const { return support_; }
  bool empty() const { return support_.empty(); }
  std::size_t size() const { return support_.size(); }
  Complex coeff(const GroupElement& g) const {
    auto it = support_.find(g);
    return it == support_.end() ? Complex(0.0) : it->second;
  }

  void add(const GroupElement& g, Complex c);
  RingElement& operator+=(const RingElement& o);
  RingElement& operator*=(Complex c);
  friend RingElement operator+(RingElement a, const RingElement& b) { return a += b; }
  friend RingElement operator*(Complex c, RingElement a) { return a *= c; }
  friend RingElement operator-(RingElement a, const RingElement& b) {
    RingElement nb = b;
    nb *= Complex(-1.0);
    return a += nb;
  }
  friend bool operator==(const RingElement& a, const RingElement& b) {
    return a.support_ == b.support_;
  }

  bool is_radial(double tol = 0.0) const;

 private:
  Support support_;
};

class TensorElement {
 public:
  using Key = std::pair<GroupElement, GroupElement>;
  using Support = std::map<Key, Complex>;

  TensorElement() = default;
  static TensorElement basis(const GroupElement& g, const GroupElement& h, Complex c = 1.0) {
    TensorElement t;
    t.add(g, h, c);
    return t;
  }

  const Support& support() const { return support_; }
  bool empty() const { return support_.empty(); }
  std::size_t size() const { return support_.size(); }
  Complex coeff(const GroupElement& g, const GroupElement& h) const {
    auto it = support_.find({g, h});
    return it == support_.end() ? Complex(0.0) : it->second;
  }

  void add(const GroupElement& g, const GroupElement& h, Complex c);
  TensorElement& operator+=(const TensorElement& o);
  TensorElement& operator*=(Complex c);
  friend TensorElement operator+(TensorElement a, const TensorElement& b) { return a += b; }
  friend bool operator==(const TensorElement& a, const TensorElement& b) {
    return a.support_ == b.support_;
  }

  bool is_radial(double tol = 0.0) const;

 private:
  Support support_;
};

// Degree-n noncommutative form: coefficients on (n+1)-tuples.
class FormElement {
 public:
  using Key = std::vector<GroupElement>;
  using Support = std::map<Key, Complex>;

  explicit FormElement(int degree = 0) : degree_(degree) {}
  static FormElement basis(Key tuple, Complex c = 1.0);

  int degree() const { return degree_; }
  const Support& support() const { return support_; }
  bool empty() const { return support_.empty(); }

  void add(const Key& tuple, Complex c);
  FormElement& operator+=(const FormElement& o);
  FormElement& operator*=(Complex c);
  friend bool operator==(const FormElement& a, const FormElement& b) {
    return a.degree_ == b.degree_ && a.support_ == b.support_;
  }

 private:
  int degree_;
  Support support_;
};

// Coefficientwise modulus.
RingElement absolute(const RingElement& a);
TensorElement absolute(const TensorElement& a);
FormElement absolute(const FormElement& a);

// Partial order on radial elements; throws non_radial_argument otherwise.
bool radial_leq(const RingElement& a, const RingElement& b, double tol = kPruneTol);
bool radial_leq(const TensorElement& a, const TensorElement& b, double tol = kPruneTol);

RingElement convolve(const Group& G, const RingElement& a, const RingElement& b);
RingElement convolve_power(const Group& G, const RingElement& a, int n);

TensorElement tensor(const RingElement& a, const RingElement& b);
TensorElement swap_legs(const TensorElement& t);
TensorElement act_left(const Group& G, const GroupElement& g, const TensorElement& t);
TensorElement act_right(const Group& G, const TensorElement& t, const GroupElement& g);

// Bimodule endomorphism u_g (x) u_h -> u_{g t^{-1}} (x) u_{t h}.
TensorElement inner_shift(const Group& G, const GroupElement& t, const TensorElement& T);

// Module multiplications on the outer legs.
TensorElement tensor_mult_left(const Group& G, const RingElement& a, const TensorElement& T);
TensorElement tensor_mult_right(const Group& G, const TensorElement& T, const RingElement& b);

// u_g (x) u_h -> u_{gh}, extended linearly.
RingElement mult_tensor(const Group& G, const TensorElement& T);

// Product of the tuple entries of a form key.
GroupElement tuple_product(const Group& G, const FormElement::Key& tuple);

// b(a0 (x) ... (x) an) = sum_i (-1)^i a0 (x) .. a_i a_{i+1} .. (x) a_n
//                        + (-1)^n a_n a_0 (x) ... (x) a_{n-1}
FormElement hochschild_boundary(const Group& G, const FormElement& w);

// Form built from ring elements: a0 d a1 ... d an.
FormElement form_from_factors(const std::vector<RingElement>& factors);

}  // namespace hypring
