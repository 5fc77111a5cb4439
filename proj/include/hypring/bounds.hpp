#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hypring/seminorms.hpp"

namespace hypring {

inline constexpr double kCertTol = 1e-9;
inline constexpr int kAscentSteps = 200;
inline constexpr double kAscentTol = 1e-12;
inline constexpr int kImproveIters = 100;
inline constexpr double kImproveTol = 1e-10;

// Rank-one nonnegative term of a dominating decomposition.
struct UcTerm {
  WeightVector left, right;
};

// Positive dual functionals of dual norm at most one on each leg.
struct DualPairWitness {
  WeightVector left, right;
};

// One family of a product domination: coeff * |f_1| ... |f_m| with every
// factor in T_n; contributes coeff * m^k to the cost.
struct ProductTerm {
  double coeff = 0.0;
  std::vector<RingElement> factors;
  int arity() const { return static_cast<int>(factors.size()); }
};

// Tensor variant: independent factor lists per leg, cost coeff * (m1+m2)^k.
struct TensorProductTerm {
  double coeff = 0.0;
  std::vector<RingElement> left_factors, right_factors;
};

// Scaled weighted-l1 witness norm scale * ell1_mu, admissible for the
// generator-constrained norm it certifies (sup over the constraint family at
// most one). mu == 1 is plain l1.
struct WitnessNormData {
  double scale = 1.0;
  double mu = 1.0;
  double sup_tn = 0.0;  // closed-form sup of the unscaled norm over T_n
};

enum class CertKind { UcNorm, MinimalRing, SobolevRing, SobolevTensor };

struct BoundCertificate {
  CertKind kind = CertKind::UcNorm;
  double lower = 0.0;
  double upper = 0.0;
  int n = 0;
  int k = 0;
  std::string spec_x, spec_y, ambient;  // labels, for reports
  bool lower_fallback = false;

  std::vector<UcTerm> uc_upper;
  std::optional<DualPairWitness> uc_lower;
  std::vector<ProductTerm> product_upper;
  std::vector<TensorProductTerm> tensor_upper;
  std::optional<WitnessNormData> norm_lower;
};

struct VerifyResult {
  bool ok = true;
  std::string detail;
};

// Trace norm of the coefficient matrix over the finite support grid.
double projective_norm_l2(const TensorElement& t);

// Certified bounds for the largest unconditional cross-seminorm.
BoundCertificate ucnorm_bounds(const TensorElement& t, const SeminormSpec& sx,
                               const SeminormSpec& sy);

// Certified bounds for the largest submultiplicative unconditional seminorm
// with the length-n generator constraint.
BoundCertificate minimal_norm_bounds(const Group& G, const RingElement& a, int n,
                                     const SeminormSpec& ambient);

// Sobolev variant: constraint m-fold products cost m^k.
BoundCertificate sobolev_minimal_bounds(const Group& G, const RingElement& a, int n, int k,
                                        const SeminormSpec& ambient);
BoundCertificate sobolev_minimal_bounds_tensor(const Group& G, const TensorElement& t, int n,
                                               int k, const SeminormSpec& ambient);

// Turns a tensor certificate into a ring certificate for mult_tensor(t) by
// concatenating the factor lists; cost is unchanged.
BoundCertificate push_through_mult(const Group& G, const BoundCertificate& tensor_cert);

// Min-combines a fresh certificate with a pushed-through hint.
BoundCertificate min_combine(const BoundCertificate& a, const BoundCertificate& b);

VerifyResult verify_uc_certificate(const BoundCertificate& c, const TensorElement& t,
                                   const SeminormSpec& sx, const SeminormSpec& sy);
VerifyResult verify_product_certificate(const Group& G, const BoundCertificate& c,
                                        const RingElement& a, const SeminormSpec& ambient);
VerifyResult verify_tensor_product_certificate(const Group& G, const BoundCertificate& c,
                                               const TensorElement& t,
                                               const SeminormSpec& ambient);

}  // namespace hypring
