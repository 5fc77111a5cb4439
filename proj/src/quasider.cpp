#include "hypring/quasider.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <memory>
#include <sstream>

namespace hypring {

Quasiderivation::Quasiderivation(const Group& g, int delta) : group_(&g), delta_(delta) {
  if (delta < 1) throw precondition_violation("quasiderivation needs delta >= 1");
}

Quasiderivation Quasiderivation::with_estimated_delta(const Group& g, int radius) {
  return Quasiderivation(g, g.estimate_delta(radius));
}

TensorElement Quasiderivation::apply_one(const GroupElement& g) const {
  TensorElement t;
  for (int i = 0; i <= g.length(); ++i)
    t.add(group_->geodesic_prefix(g, i), group_->geodesic_suffix(g, i), 1.0);
  return t;
}

TensorElement Quasiderivation::apply(const RingElement& a) const {
  TensorElement t;
  for (const auto& [g, c] : a.support()) {
    for (int i = 0; i <= g.length(); ++i)
      t.add(group_->geodesic_prefix(g, i), group_->geodesic_suffix(g, i), c);
  }
  return t;
}

DominationReport Quasiderivation::domination_check(const RingElement& a,
                                                   const RingElement& b) const {
  const Group& G = *group_;
  RingElement ab = convolve(G, a, b);
  TensorElement lhs = absolute(apply(ab));

  RingElement aa = absolute(a), ba = absolute(b);
  TensorElement rhs;
  BallTable shifts = G.ball(delta_);
  TensorElement da = absolute(apply(a)), db = absolute(apply(b));
  for (const auto& t : shifts.elements) {
    rhs += tensor_mult_right(G, inner_shift(G, t, da), ba);
    rhs += tensor_mult_left(G, aa, inner_shift(G, t, db));
  }

  DominationReport rep;
  for (const auto& [key, c] : lhs.support()) {
    double excess = c.real() - rhs.coeff(key.first, key.second).real();
    if (excess > 1e-12 && excess > rep.worst_violation) {
      rep.holds = false;
      rep.worst_violation = excess;
      rep.worst_key = G.alphabet().format_word(key.first.word()) + " (x) " +
                      G.alphabet().format_word(key.second.word());
    }
  }
  return rep;
}

bool Quasiderivation::domination_check_monomial(const GroupElement& g,
                                                const GroupElement& h) const {
  const Group& G = *group_;
  GroupElement gh = G.multiply(g, h);
  // Every split (p, q) of gh must be covered by a shifted split of g times h
  // or g times a shifted split of h.
  for (int i = 0; i <= gh.length(); ++i) {
    GroupElement p = G.geodesic_prefix(gh, i);
    GroupElement q = G.geodesic_suffix(gh, i);
    bool covered = false;
    for (int j = 0; j <= g.length() && !covered; ++j) {
      GroupElement a = G.geodesic_prefix(g, j);
      GroupElement t = G.multiply(G.invert(p), a);
      if (t.length() > delta_) continue;
      // term u_{a t^-1} (x) u_{t suffix h}; left leg equals p by construction
      GroupElement rightleg = G.multiply(t, G.multiply(G.geodesic_suffix(g, j), h));
      if (rightleg == q) covered = true;
    }
    for (int j = 0; j <= h.length() && !covered; ++j) {
      GroupElement a = G.multiply(g, G.geodesic_prefix(h, j));
      GroupElement t = G.multiply(G.invert(p), a);
      if (t.length() > delta_) continue;
      GroupElement rightleg = G.multiply(t, G.geodesic_suffix(h, j));
      if (rightleg == q) covered = true;
    }
    if (!covered) return false;
  }
  return true;
}

double Quasiderivation::leibniz_constant(const SeminormSpec& spec) const {
  BallTable B = group_->ball(delta_);
  double c0 = 0.0;
  for (const auto& t : B.elements)
    c0 += spec.basis_norm(t) * spec.basis_norm(group_->invert(t));
  return c0;
}

LeibnizNormReport Quasiderivation::norm_check(const RingElement& a, const RingElement& b,
                                              const SeminormSpec& spec) const {
  const Group& G = *group_;
  LeibnizNormReport rep;
  rep.c0 = leibniz_constant(spec);
  RingElement ab = convolve(G, a, b);
  TensorElement dab = apply(ab);
  TensorElement da = apply(a), db = apply(b);
  if (spec.is_l1_type()) {
    rep.exact = true;
    rep.lhs = l1_cross_value(spec, spec, dab);
    rep.rhs = rep.c0 * (l1_cross_value(spec, spec, da) * eval(spec, b) +
                        eval(spec, a) * l1_cross_value(spec, spec, db));
    rep.verdict = (rep.lhs <= rep.rhs + kCertTol) ? "verified" : "violated";
  } else {
    BoundCertificate cab = ucnorm_bounds(dab, spec, spec);
    BoundCertificate ca = ucnorm_bounds(da, spec, spec);
    BoundCertificate cb = ucnorm_bounds(db, spec, spec);
    rep.lhs = cab.upper;
    rep.rhs = rep.c0 * (ca.upper * eval(spec, b) + eval(spec, a) * cb.upper);
    rep.verdict = (rep.lhs <= rep.rhs + kCertTol) ? "consistent" : "inconclusive";
  }
  return rep;
}

double Quasiderivation::graph_norm(const RingElement& a, const SeminormSpec& spec) const {
  if (!spec.is_l1_type())
    throw invalid_spec("graph_norm needs an l1-type spec; use graph_norm_bounds");
  return leibniz_constant(spec) * eval(spec, a) + l1_cross_value(spec, spec, apply(a));
}

std::pair<double, double> Quasiderivation::graph_norm_bounds(const RingElement& a,
                                                             const SeminormSpec& spec) const {
  double c0 = leibniz_constant(spec);
  BoundCertificate c = ucnorm_bounds(apply(a), spec, spec);
  double base = c0 * eval(spec, a);
  return {base + c.lower, base + c.upper};
}

SeminormSpec Quasiderivation::graph_norm_spec(const SeminormSpec& base) const {
  if (!base.is_l1_type()) throw invalid_spec("graph norm iteration needs an l1-type spec");
  double c0 = leibniz_constant(base);
  const Group* G = group_;
  auto cache = std::make_shared<std::map<GroupElement, double>>();
  auto weight = [base, c0, G, cache](const GroupElement& g) {
    auto it = cache->find(g);
    if (it != cache->end()) return it->second;
    double w = c0 * base.element_weight(g);
    for (int i = 0; i <= g.length(); ++i)
      w += base.element_weight(G->geodesic_prefix(g, i)) *
           base.element_weight(G->geodesic_suffix(g, i));
    cache->emplace(g, w);
    return w;
  };
  return SeminormSpec::weighted_ell1(weight, "graph(" + base.label() + ")");
}

SeminormSpec Quasiderivation::iterated_graph_norm_spec(const SeminormSpec& base,
                                                       int levels) const {
  SeminormSpec s = base;
  for (int i = 0; i < levels; ++i) s = graph_norm_spec(s);
  return s;
}

NeumannReport Quasiderivation::neumann_probe(const RingElement& a, const SeminormSpec& spec,
                                             int terms) const {
  NeumannReport rep;
  rep.c0 = leibniz_constant(spec);
  rep.base_norm = eval(spec, a);
  if (!(rep.base_norm < 1.0 / rep.c0))
    throw precondition_violation("neumann probe needs ||a|| < 1/c0");
  const Group& G = *group_;
  RingElement power = RingElement::basis(G.identity());
  RingElement partial;
  double split_a = l1_cross_value(spec, spec, apply(a));
  for (int m = 0; m <= terms; ++m) {
    NeumannStep step;
    step.power = m;
    step.increment_graph_norm = graph_norm(power, spec);
    step.split_norm = l1_cross_value(spec, spec, apply(power));
    partial += power;
    step.partial_sum_graph_norm = graph_norm(partial, spec);
    rep.steps.push_back(step);
    if (m >= 1 && split_a > 0.0) {
      double denom = split_a * std::pow(rep.c0 * rep.base_norm, m - 1);
      if (denom > 0.0) rep.fitted_c = std::max(rep.fitted_c, step.split_norm / denom);
    }
    power = convolve(G, power, a);
  }
  for (std::size_t i = 0; i + 1 < rep.steps.size(); ++i) {
    double prev = rep.steps[i].increment_graph_norm;
    double next = rep.steps[i + 1].increment_graph_norm;
    if (prev > 0.0) rep.ratios.push_back(next / prev);
  }
  return rep;
}

namespace {

// Canonical words over the alternate alphabet by breadth-first search, in
// shortlex order of the alternate letters.
struct AlternateWords {
  std::map<GroupElement, Word> words;

  AlternateWords(const Group& G, const AlternateGenerating& alt,
                 const std::vector<GroupElement>& targets, std::size_t cap) {
    std::map<GroupElement, Word> seen;
    seen.emplace(G.identity(), Word());
    std::deque<GroupElement> frontier{G.identity()};
    auto need = [&](const GroupElement& g) {
      return std::find(targets.begin(), targets.end(), g) != targets.end();
    };
    std::size_t missing = 0;
    for (const auto& t : targets)
      if (seen.find(t) == seen.end()) ++missing;
    while (missing > 0 && !frontier.empty()) {
      std::deque<GroupElement> next;
      // collect one layer, then sort candidates for shortlex determinism
      std::map<GroupElement, Word> layer;
      for (const auto& v : frontier) {
        const Word& wv = seen[v];
        for (std::size_t l = 0; l < alt.alphabet.size(); ++l) {
          GroupElement u = G.multiply(v, alt.images[l]);
          Word wu = wv + static_cast<char>(l);
          if (seen.count(u)) continue;
          auto it = layer.find(u);
          if (it == layer.end() || shortlex_less(wu, it->second)) layer[u] = wu;
        }
      }
      for (auto& [u, wu] : layer) {
        seen.emplace(u, wu);
        next.push_back(u);
        if (need(u)) --missing;
        if (seen.size() > cap) throw cap_exceeded("alternate-generating search cap");
      }
      if (layer.empty()) break;
      frontier = std::move(next);
    }
    words = std::move(seen);
  }
};

}  // namespace

AlternateGenerating make_alternate_generating(
    const Group& g, const std::vector<std::pair<std::string, std::string>>& letters) {
  std::vector<std::string> names;
  std::vector<GroupElement> images;
  for (const auto& [name, text] : letters) {
    names.push_back(name);
    images.push_back(g.parse(text));
  }
  // involution by matching inverse images
  std::vector<Letter> inv(names.size(), 0);
  for (std::size_t i = 0; i < images.size(); ++i) {
    GroupElement needed = g.invert(images[i]);
    bool found = false;
    for (std::size_t j = 0; j < images.size(); ++j)
      if (images[j] == needed) {
        inv[i] = static_cast<Letter>(j);
        found = true;
        break;
      }
    if (!found)
      throw invalid_spec("alternate alphabet is not symmetric: missing inverse of " + names[i]);
  }
  AlternateGenerating alt;
  alt.alphabet = GeneratorAlphabet(names, inv);
  alt.images = std::move(images);
  return alt;
}

GensetComparisonReport Quasiderivation::compare_generating_sets(const AlternateGenerating& alt,
                                                                const RingElement& alpha,
                                                                int radius_cap) const {
  const Group& G = *group_;
  if (radius_cap < 0) radius_cap = 2 * delta_ + 4;

  std::vector<GroupElement> targets;
  for (const auto& [g, c] : alpha.support()) targets.push_back(g);
  AlternateWords aw(G, alt, targets, G.element_cap());

  // split over the alternate presentation
  TensorElement alt_split;
  for (const auto& [g, c] : alpha.support()) {
    auto it = aw.words.find(g);
    if (it == aw.words.end()) throw cap_exceeded("alternate word not found within cap");
    const Word& w = it->second;
    GroupElement prefix = G.identity();
    std::vector<GroupElement> prefixes{prefix};
    for (char l : w) {
      prefix = G.multiply(prefix, alt.images[static_cast<std::size_t>(static_cast<Letter>(l))]);
      prefixes.push_back(prefix);
    }
    for (const auto& p : prefixes)
      alt_split.add(p, G.multiply(G.invert(p), g), c);
  }
  TensorElement lhs = absolute(alt_split);

  TensorElement base_split = absolute(apply(alpha));
  GensetComparisonReport rep;
  TensorElement rhs;
  BallTable shifts = G.ball(radius_cap);
  for (int rho = 0; rho <= radius_cap; ++rho) {
    // extend the majorant with the new shell
    for (const auto& t : shifts.elements)
      if (t.length() == rho) rhs += inner_shift(G, t, base_split);
    if (radial_leq(lhs, rhs, 1e-12)) {
      rep.found = true;
      rep.rho = rho;
      auto l1 = SeminormSpec::ell1();
      rep.c_constant = 0.0;
      for (const auto& t : shifts.elements)
        if (t.length() <= rho)
          rep.c_constant += l1.basis_norm(t) * l1.basis_norm(G.invert(t));
      return rep;
    }
  }
  return rep;
}

SpecialMapTable Quasiderivation::as_table(int radius, double locality_radius) const {
  SpecialMapTable table;
  table.radius = locality_radius;
  BallTable B = group_->ball(radius);
  for (const auto& g : B.elements) table.entries.emplace(g, apply_one(g));
  return table;
}

SpecialCheckReport check_special(const Group& g, const SpecialMapTable& table) {
  SpecialCheckReport rep;
  for (const auto& [elem, img] : table.entries) {
    for (const auto& [key, c] : img.support()) {
      if (g.multiply(key.first, key.second) != elem) {
        ++rep.support_violations;
        continue;
      }
      if (std::abs(c) > 1.0 + kCertTol) ++rep.bound_violations;
      int dmin = std::numeric_limits<int>::max();
      for (int i = 0; i <= elem.length(); ++i)
        dmin = std::min(dmin, g.distance(key.first, g.geodesic_prefix(elem, i)));
      if (dmin > table.radius + kCertTol) ++rep.proximity_violations;
    }
  }
  rep.ok = rep.support_violations == 0 && rep.bound_violations == 0 &&
           rep.proximity_violations == 0;
  return rep;
}

GrowthReport special_growth_probe(const Group& g,
                                  const std::function<TensorElement(const GroupElement&)>& psi,
                                  const RingElement& base, int n, int k, int m_max,
                                  bool l1_surrogate) {
  GrowthReport rep;
  RingElement power = base;
  auto l1 = SeminormSpec::ell1();
  for (int m = 1; m <= m_max; ++m) {
    TensorElement img;
    for (const auto& [e, c] : power.support()) {
      TensorElement term = psi(e);
      term *= c;
      img += term;
    }
    double value;
    if (l1_surrogate) {
      value = l1_cross_value(l1, l1, img);
    } else {
      value = sobolev_minimal_bounds_tensor(g, img, n, k, l1).upper;
    }
    rep.values.emplace_back(m, value);
    power = convolve(g, power, base);
  }
  // log-log slope, and a crude poly-vs-exponential comparison
  double sx = 0, sy = 0, sxx = 0, sxy = 0, n_pts = 0;
  double ex = 0, ey = 0, exx = 0, exy = 0;
  for (const auto& [m, v] : rep.values) {
    if (v <= 0.0) continue;
    double lx = std::log(static_cast<double>(m)), ly = std::log(v);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ex += m;
    ey += ly;
    exx += static_cast<double>(m) * m;
    exy += m * ly;
    n_pts += 1;
  }
  (void)ex;
  (void)ey;
  (void)exx;
  (void)exy;
  if (n_pts >= 2) {
    double denom = n_pts * sxx - sx * sx;
    rep.fitted_exponent = denom != 0.0 ? (n_pts * sxy - sx * sy) / denom : 0.0;
    rep.fitted_degree = rep.fitted_exponent - k;
  }
  // Polynomial growth shows consecutive ratios decreasing towards one;
  // exponential growth keeps them at a constant factor above one.
  std::vector<double> ratios;
  for (std::size_t i = 0; i + 1 < rep.values.size(); ++i)
    if (rep.values[i].second > 0.0 && rep.values[i + 1].second > 0.0)
      ratios.push_back(rep.values[i + 1].second / rep.values[i].second);
  if (ratios.size() >= 2) {
    bool all_bounded = std::all_of(ratios.begin(), ratios.end(),
                                   [](double r) { return r <= 1.0 + 1e-9; });
    double head = 0.0, tail = 0.0;
    std::size_t half = ratios.size() / 2;
    for (std::size_t i = 0; i < ratios.size(); ++i)
      (i < half ? head : tail) += ratios[i] / (i < half ? half : ratios.size() - half);
    rep.polynomial_looking = all_bounded || tail < head - 1e-9;
  }
  return rep;
}

}  // namespace hypring
