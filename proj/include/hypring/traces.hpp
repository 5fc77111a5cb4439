#pragma once

#include "hypring/conjugacy.hpp"

namespace hypring {

// Class function: either finitely supported on certified representatives or
// one of the parametric length profiles.
class ClassFunction {
 public:
  enum class Kind { FinitelySupported, Constant, ExpLength, PowerLength };

  static ClassFunction indicator(const GroupElement& rep);
  static ClassFunction finitely_supported(std::map<GroupElement, Complex> values);
  static ClassFunction constant();
  static ClassFunction exp_length();            // exp(-length)
  static ClassFunction power_length(double p);  // (1 + length)^p

  Kind kind() const { return kind_; }
  bool finitely_supported_kind() const { return kind_ == Kind::FinitelySupported; }
  const std::map<GroupElement, Complex>& values() const { return values_; }

  Complex value_at_rep(const GroupElement& rep) const;
  Complex value_at(const Conjugacy& cj, const GroupElement& g) const {
    return value_at_rep(cj.class_representative(g).representative);
  }

 private:
  Kind kind_ = Kind::Constant;
  std::map<GroupElement, Complex> values_;
  double p_ = 0.0;
};

struct TemperedKRow {
  int k = 0;
  std::vector<double> partial_sums;  // cumulative, by representative length
  std::string verdict;               // "convergent-looking" | "divergent-looking"
};

struct TemperedReport {
  bool finitely_supported = false;
  std::string verdict;  // "tempered" for finite support, else trend of the largest k
  std::vector<TemperedKRow> rows;
};

TemperedReport is_tempered(const Conjugacy& cj, const ClassFunction& tau, int k_max,
                           int radius);

// Evaluates the trace through the characteristic map and directly; the two
// paths must agree to 1e-9.
Complex trace_eval(const Conjugacy& cj, const ClassFunction& tau, const RingElement& a);

struct RestrictionSample {
  int radius = 0;
  double ratio = 0.0;
};

struct RestrictionReport {
  std::vector<RestrictionSample> samples;
  double max_ratio = 0.0;
  std::vector<double> max_ratio_by_radius;
  bool bounded_looking = true;
};

RestrictionReport restriction_probe(const Conjugacy& cj, const GroupElement& x, int n,
                                    const SeminormSpec& ambient, int sample_count,
                                    std::uint64_t seed, int max_radius = 6);

struct FormChainReport {
  double lhs = 0.0;  // weighted norm of the projected form
  double rhs = 0.0;  // l1 norm of the projected product of modulus envelopes
  bool holds = true;
};

// Compares the homogeneous part of a0 da1 ... dam in the lambda-weighted
// norm against the projected product of the weighted modulus envelopes.
FormChainReport form_norm_chain_check(const Conjugacy& cj,
                                      const std::vector<RingElement>& factors,
                                      const GroupElement& x, double lambda, int n);

}  // namespace hypring
