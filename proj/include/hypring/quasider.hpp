#pragma once

#include <functional>

#include "hypring/bounds.hpp"

namespace hypring {

// Alternate generating set: letters with images in the base group.
struct AlternateGenerating {
  GeneratorAlphabet alphabet;
  std::vector<GroupElement> images;  // one per letter, image of the letter
};

struct DominationReport {
  bool holds = true;
  double worst_violation = 0.0;  // max positive excess of the left side
  std::string worst_key;
};

struct LeibnizNormReport {
  double lhs = 0.0;          // cross-norm (or upper bound) of the split product
  double rhs = 0.0;          // C0 * (split(a) * |b| + |a| * split(b)) in norms
  double c0 = 0.0;
  bool exact = false;        // both sides evaluated exactly (l1-type specs)
  std::string verdict;       // "verified" | "consistent" | "inconclusive"
};

struct NeumannStep {
  int power = 0;
  double increment_graph_norm = 0.0;
  double partial_sum_graph_norm = 0.0;
  double split_norm = 0.0;   // cross-norm of the split of a^power
};

struct NeumannReport {
  double c0 = 0.0;
  double base_norm = 0.0;
  std::vector<NeumannStep> steps;
  std::vector<double> ratios;  // consecutive increment ratios
  double fitted_c = 0.0;       // max split(a^m) / (split(a) (c0 |a|)^{m-1})
};

struct GensetComparisonReport {
  bool found = false;
  int rho = -1;          // smallest shift radius with coefficientwise domination
  double c_constant = 0; // sum of ||u_t|| ||u_t^-1|| over the ball of that radius
};

// Table of a radial map u_g -> tensor, on a declared domain, with locality
// radius R.
struct SpecialMapTable {
  std::map<GroupElement, TensorElement> entries;
  double radius = 0.0;
};

struct SpecialCheckReport {
  bool ok = true;
  int support_violations = 0;   // pairs that do not multiply back to g
  int bound_violations = 0;     // coefficients above one
  int proximity_violations = 0; // first legs too far from the geodesic
};

struct GrowthReport {
  std::vector<std::pair<int, double>> values;  // (power, measured value)
  double fitted_exponent = 0.0;                // log-log slope
  double fitted_degree = 0.0;                  // exponent minus k
  bool polynomial_looking = true;
};

// Splits each basis element over all prefix/suffix cuts of its canonical
// geodesic word; the split of u_g has exactly length+1 terms.
class Quasiderivation {
 public:
  Quasiderivation(const Group& g, int delta);
  static Quasiderivation with_estimated_delta(const Group& g, int radius);

  const Group& group() const { return *group_; }
  int delta() const { return delta_; }

  TensorElement apply_one(const GroupElement& g) const;
  TensorElement apply(const RingElement& a) const;

  // Coefficientwise comparison of |split(ab)| against the shifted two-sided
  // majorant over shifts of length at most delta.
  DominationReport domination_check(const RingElement& a, const RingElement& b) const;
  bool domination_check_monomial(const GroupElement& g, const GroupElement& h) const;

  // sum of ||u_t|| ||u_t^-1|| over the ball of radius delta
  double leibniz_constant(const SeminormSpec& spec) const;

  LeibnizNormReport norm_check(const RingElement& a, const RingElement& b,
                               const SeminormSpec& spec) const;

  // c0 * ||a|| + cross-norm of split(a); exact for l1-type specs only.
  double graph_norm(const RingElement& a, const SeminormSpec& spec) const;
  std::pair<double, double> graph_norm_bounds(const RingElement& a,
                                              const SeminormSpec& spec) const;
  // The graph norm of an l1-type spec is again l1-type; iterating takes
  // per-level constants along.
  SeminormSpec graph_norm_spec(const SeminormSpec& base) const;
  SeminormSpec iterated_graph_norm_spec(const SeminormSpec& base, int levels) const;

  NeumannReport neumann_probe(const RingElement& a, const SeminormSpec& spec,
                              int terms) const;

  GensetComparisonReport compare_generating_sets(const AlternateGenerating& alt,
                                                 const RingElement& alpha,
                                                 int radius_cap = -1) const;

  SpecialMapTable as_table(int radius, double locality_radius = 0.0) const;

 private:
  const Group* group_;
  int delta_;
};

AlternateGenerating make_alternate_generating(
    const Group& g, const std::vector<std::pair<std::string, std::string>>& letters);

SpecialCheckReport check_special(const Group& g, const SpecialMapTable& table);

GrowthReport special_growth_probe(const Group& g,
                                  const std::function<TensorElement(const GroupElement&)>& psi,
                                  const RingElement& base, int n, int k, int m_max,
                                  bool l1_surrogate = false);

}  // namespace hypring
