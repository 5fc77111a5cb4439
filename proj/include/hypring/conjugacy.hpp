#pragma once

#include <optional>

#include "hypring/quasider.hpp"

namespace hypring {

struct ConjugacyConfig {
  double c10 = 1.0;            // conjugator growth constant, search pruning only
  int plateau_slack = -1;      // extra length allowed while exploring; -1 -> 2*delta
  int iteration_cap = 64;      // reduction iteration limit
  std::size_t state_cap = 2000000;
};

struct ClassRep {
  GroupElement representative;
  int certified_radius = 0;  // conjugator length fully explored
  bool certified = true;
};

// The six reduction cases, reported in traces as "i".."vi".
enum class StepCase { Identity, Rotation, ShortConjugator, ConjugatorPrefix, CrossVertex, SideVertex };
const char* step_case_label(StepCase c);

struct StepChoice {
  GroupElement element;  // the conjugator chosen for this step
  StepCase case_id = StepCase::Identity;
};

struct PhiStep {
  GroupElement input;
  StepCase case_id;
  GroupElement step_element;
  GroupElement output;
};

struct PhiTrace {
  std::vector<PhiStep> steps;
  GroupElement conjugator;  // w with w^{-1} g w = final value
  int iterations = 0;       // steps that changed the element
  bool converged = true;
};

struct MinimalConjugator {
  GroupElement conjugator;  // u, length-minimal with u^{-1} g u = target
  GroupElement target;      // a rotation of the representative
  Word rotation_word;       // the rotated canonical word realizing the target
  bool gromov_bound_ok = true;  // l(u) <= 2 c10 l(g)
};

struct GromovReport {
  double empirical_c10 = 0.0;
  long long pairs = 0;
  GroupElement worst_g, worst_h, worst_conjugator;
};

struct ConvergenceRow {
  int length = 0;
  int iterations = 0;
};

struct ConvergenceReport {
  std::vector<ConvergenceRow> rows;
  int max_iterations = 0;
  bool all_converged = true;
  double fitted_c11 = 0.0;  // slope against log2(1 + length)
  double fitted_c12 = 0.0;  // envelope intercept
};

// Conjugacy reduction: minimal class representatives, minimal conjugators,
// the case-split step map, and its iteration to the representative.
class Conjugacy {
 public:
  Conjugacy(const Group& g, int delta, ConjugacyConfig cfg = {});

  const Group& group() const { return *group_; }
  int delta() const { return delta_; }
  const ConjugacyConfig& config() const { return cfg_; }

  ClassRep class_representative(const GroupElement& g) const;
  // Same, but refuses results whose search hit the depth cap.
  GroupElement certified_representative(const GroupElement& g) const;
  MinimalConjugator minimal_conjugator(const GroupElement& g) const;

  StepChoice step_choice(const GroupElement& g) const;
  GroupElement reduce_once(const GroupElement& g) const;
  RingElement reduce_once_linear(const RingElement& a) const;

  // u_g -> u_{mu(g)} (x) u_{mu(g)^{-1} g}; factors the reduction step through
  // the swap and the multiplication.
  TensorElement step_splitting(const GroupElement& g) const;
  bool factorization_check(const GroupElement& g) const;
  SpecialMapTable step_splitting_table(int radius) const;

  std::pair<ClassRep, PhiTrace> reduce_to_representative(const GroupElement& g) const;
  // u_g -> u_{rep(g)} extended linearly.
  RingElement characteristic_linear(const RingElement& a) const;

  bool conjugate_in_class(const GroupElement& a, const GroupElement& b) const {
    return class_representative(a).representative == class_representative(b).representative;
  }

  // Length-minimal v with v^{-1} g v = h, or nothing within the length cap.
  std::optional<GroupElement> minimal_conjugator_between(const GroupElement& g,
                                                         const GroupElement& h,
                                                         int length_cap) const;

  GromovReport gromov_probe(int radius) const;
  ConvergenceReport convergence_profile(int radius) const;

 private:
  struct LayeredConjugates;
  ClassRep compute_representative(const GroupElement& g) const;
  MinimalConjugator compute_minimal_conjugator(const GroupElement& g) const;

  const Group* group_;
  int delta_;
  ConjugacyConfig cfg_;
  mutable std::mutex mu_;
  mutable std::unordered_map<GroupElement, ClassRep, GroupElementHash> rep_cache_;
  mutable std::unordered_map<GroupElement, MinimalConjugator, GroupElementHash> minconj_cache_;
};

// Keeps exactly the coefficients on the conjugacy class of x.
RingElement project_class(const Conjugacy& cj, const RingElement& a, const GroupElement& x);
// Keeps tuples whose ordered product lies in the class of x.
FormElement form_project(const Conjugacy& cj, const FormElement& w, const GroupElement& x);

}  // namespace hypring
