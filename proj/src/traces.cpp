#include "hypring/traces.hpp"

#include <cmath>
#include <random>

namespace hypring {

ClassFunction ClassFunction::indicator(const GroupElement& rep) {
  ClassFunction f;
  f.kind_ = Kind::FinitelySupported;
  f.values_[rep] = 1.0;
  return f;
}

ClassFunction ClassFunction::finitely_supported(std::map<GroupElement, Complex> values) {
  ClassFunction f;
  f.kind_ = Kind::FinitelySupported;
  f.values_ = std::move(values);
  return f;
}

ClassFunction ClassFunction::constant() {
  ClassFunction f;
  f.kind_ = Kind::Constant;
  return f;
}

ClassFunction ClassFunction::exp_length() {
  ClassFunction f;
  f.kind_ = Kind::ExpLength;
  return f;
}

ClassFunction ClassFunction::power_length(double p) {
  ClassFunction f;
  f.kind_ = Kind::PowerLength;
  f.p_ = p;
  return f;
}

Complex ClassFunction::value_at_rep(const GroupElement& rep) const {
  switch (kind_) {
    case Kind::FinitelySupported: {
      auto it = values_.find(rep);
      return it == values_.end() ? Complex(0.0) : it->second;
    }
    case Kind::Constant:
      return Complex(1.0);
    case Kind::ExpLength:
      return Complex(std::exp(-static_cast<double>(rep.length())));
    case Kind::PowerLength:
      return Complex(std::pow(1.0 + rep.length(), p_));
  }
  return Complex(0.0);
}

TemperedReport is_tempered(const Conjugacy& cj, const ClassFunction& tau, int k_max,
                           int radius) {
  TemperedReport rep;
  if (tau.finitely_supported_kind()) {
    rep.finitely_supported = true;
    rep.verdict = "tempered";
    return rep;
  }
  const Group& G = cj.group();
  BallTable B = G.ball(radius);
  // class representatives met within the ball, keyed by representative length
  std::map<GroupElement, int> reps;
  for (const auto& g : B.elements) {
    GroupElement r = cj.class_representative(g).representative;
    reps.emplace(r, r.length());
  }
  std::vector<double> class_mass(static_cast<std::size_t>(radius) + 1, 0.0);
  for (const auto& [r, len] : reps) {
    double v = std::abs(tau.value_at_rep(r));
    class_mass[static_cast<std::size_t>(len)] += v * v;
  }
  for (int k = 0; k <= k_max; ++k) {
    TemperedKRow row;
    row.k = k;
    double sum = 0.0;
    std::vector<double> increments;
    for (int l = 0; l <= radius; ++l) {
      double inc = std::pow(1.0 + l, -2.0 * k) * class_mass[static_cast<std::size_t>(l)];
      sum += inc;
      row.partial_sums.push_back(sum);
      if (l >= 1) increments.push_back(inc);
    }
    // trend of the last increment step; exponential class growth shows up as
    // an eventually increasing tail
    bool increasing_tail = false;
    if (increments.size() >= 2) {
      std::size_t m = increments.size();
      increasing_tail = increments[m - 1] > increments[m - 2] * (1.0 + 1e-12);
    }
    row.verdict = increasing_tail ? "divergent-looking" : "convergent-looking";
    rep.rows.push_back(std::move(row));
  }
  rep.verdict = rep.rows.empty() ? "divergent-looking" : rep.rows.back().verdict;
  return rep;
}

Complex trace_eval(const Conjugacy& cj, const ClassFunction& tau, const RingElement& a) {
  Complex direct = 0.0;
  for (const auto& [g, c] : a.support())
    direct += tau.value_at_rep(cj.certified_representative(g)) * c;
  RingElement collapsed = cj.characteristic_linear(a);
  Complex through = 0.0;
  for (const auto& [h, c] : collapsed.support()) through += tau.value_at_rep(h) * c;
  if (std::abs(direct - through) > 1e-9)
    throw std::runtime_error("trace evaluation paths disagree");
  return through;
}

RestrictionReport restriction_probe(const Conjugacy& cj, const GroupElement& x, int n,
                                    const SeminormSpec& ambient, int sample_count,
                                    std::uint64_t seed, int max_radius) {
  const Group& G = cj.group();
  RestrictionReport rep;
  std::mt19937_64 rng(seed);
  auto l1 = SeminormSpec::ell1();
  rep.max_ratio_by_radius.assign(static_cast<std::size_t>(max_radius) + 1, 0.0);

  BallTable B = G.ball(max_radius);
  std::uniform_real_distribution<double> coeff(-2.0, 2.0);
  std::uniform_int_distribution<int> radius_d(1, max_radius);
  std::uniform_int_distribution<int> nterms(1, 6);
  // adversarial seeds: powers of the generator sum scaled into the ball
  RingElement gen_sum;
  for (std::size_t l = 0; l < G.alphabet().size(); ++l)
    gen_sum.add(G.normalize(Word(1, static_cast<char>(l))),
                Complex(1.0 / static_cast<double>(G.alphabet().size()), 0.0));

  for (int i = 0; i < sample_count; ++i) {
    int r = radius_d(rng);
    RingElement a;
    if (i % 5 == 4) {
      a = convolve_power(G, gen_sum, r);
    } else {
      std::uniform_int_distribution<std::size_t> idx(
          0, B.layer_start[static_cast<std::size_t>(r)] - 1 +
                 B.sphere_size(r));
      int terms = nterms(rng);
      for (int t = 0; t < terms; ++t)
        a.add(B.elements[idx(rng)], Complex(coeff(rng), coeff(rng)));
    }
    if (a.empty()) continue;
    double restricted = eval(l1, project_class(cj, a, x));
    double denom = minimal_norm_bounds(G, a, n, ambient).upper;
    double ratio = denom > 0.0 ? restricted / denom : 0.0;
    rep.samples.push_back({r, ratio});
    rep.max_ratio = std::max(rep.max_ratio, ratio);
    auto& slot = rep.max_ratio_by_radius[static_cast<std::size_t>(r)];
    slot = std::max(slot, ratio);
  }
  // flag steady growth of the per-radius maxima
  double prev = 0.0;
  int growth_steps = 0, comparisons = 0;
  for (double v : rep.max_ratio_by_radius) {
    if (v <= 0.0) continue;
    if (prev > 0.0) {
      ++comparisons;
      if (v > prev * 1.1) ++growth_steps;
    }
    prev = v;
  }
  rep.bounded_looking = comparisons == 0 || growth_steps < comparisons;
  return rep;
}

FormChainReport form_norm_chain_check(const Conjugacy& cj,
                                      const std::vector<RingElement>& factors,
                                      const GroupElement& x, double lambda, int n) {
  if (!(lambda > 1.0)) throw precondition_violation("chain check needs lambda > 1");
  (void)n;
  const Group& G = cj.group();
  FormChainReport rep;

  FormElement w = form_from_factors(factors);
  FormElement projected = form_project(cj, w, x);
  for (const auto& [tuple, c] : projected.support()) {
    int total_len = 0;
    for (const auto& g : tuple) total_len += g.length();
    rep.lhs += std::abs(c) * std::pow(lambda, total_len);
  }

  RingElement product = RingElement::basis(G.identity());
  for (const auto& f : factors) {
    RingElement envelope;
    for (const auto& [g, c] : f.support())
      envelope.add(g, std::abs(c) * std::pow(lambda, g.length()));
    product = convolve(G, product, envelope);
  }
  rep.rhs = eval(SeminormSpec::ell1(), project_class(cj, product, x));
  rep.holds = rep.lhs <= rep.rhs + 1e-9;
  return rep;
}

}  // namespace hypring
