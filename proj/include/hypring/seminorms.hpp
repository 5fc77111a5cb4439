#pragma once

#include <functional>
#include <map>
#include <string>

#include "hypring/ring.hpp"

namespace hypring {

// Closed-form unconditional seminorms on the group ring. All tags depend on
// coefficients only through their moduli.
class SeminormSpec {
 public:
  enum class Tag { Ell1, Ell1Lambda, EllInf, Sobolev2, WeightedEll1 };

  static SeminormSpec ell1();
  static SeminormSpec ell1_lambda(double lambda);   // lambda > 1
  static SeminormSpec ellinf();
  static SeminormSpec sobolev2(int k);              // k >= 0
  static SeminormSpec weighted_ell1(std::function<double(const GroupElement&)> weight,
                                    std::string label = "weighted_ell1");

  Tag tag() const { return tag_; }
  double lambda() const { return lambda_; }
  int k() const { return k_; }

  // l1-type norms are weighted sums of coefficient moduli.
  bool is_l1_type() const {
    return tag_ == Tag::Ell1 || tag_ == Tag::Ell1Lambda || tag_ == Tag::WeightedEll1;
  }

  double element_weight(const GroupElement& g) const;  // l1-type weight per basis element
  double basis_norm(const GroupElement& g) const;      // norm of u_g, any tag

  std::string label() const;

  // Parses "ell1", "ell1_lambda:L", "ellinf", "sobolev2:K".
  static SeminormSpec parse(const std::string& text);

 private:
  SeminormSpec(Tag t, double lambda, int k) : tag_(t), lambda_(lambda), k_(k) {}
  Tag tag_;
  double lambda_ = 0.0;
  int k_ = 0;
  std::function<double(const GroupElement&)> weight_;
  std::string label_;
};

double eval(const SeminormSpec& spec, const RingElement& a);

// Norm of a nonnegative weight vector indexed by group elements.
using WeightVector = std::map<GroupElement, double>;
double eval_vector(const SeminormSpec& spec, const WeightVector& v);

// Dual norm of a nonnegative functional given as a weight vector.
double dual_norm(const SeminormSpec& spec, const WeightVector& phi);

// Positive functional of dual norm one that norms the given nonnegative
// vector: phi(v) = ||v||.
WeightVector norming_functional(const SeminormSpec& spec, const WeightVector& v);

// Pairing <phi, v> = sum phi_g v_g.
double pair(const WeightVector& phi, const WeightVector& v);

// Upper surrogate for the associated unconditional seminorm: the value of the
// raw norm at |a|. Exact when the raw norm is already unconditional.
double associated_unconditional_upper(const RingElement& a,
                                      const std::function<double(const RingElement&)>& raw_norm);
double associated_unconditional_upper(
    const TensorElement& t, const std::function<double(const TensorElement&)>& raw_norm);

// Exact unconditional cross value for a pair of l1-type specs.
double l1_cross_value(const SeminormSpec& sx, const SeminormSpec& sy, const TensorElement& t);

}  // namespace hypring
