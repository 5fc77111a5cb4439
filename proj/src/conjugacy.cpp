#include "hypring/conjugacy.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <memory>
#include <set>

namespace hypring {

const char* step_case_label(StepCase c) {
  switch (c) {
    case StepCase::Identity:
      return "i";
    case StepCase::Rotation:
      return "ii";
    case StepCase::ShortConjugator:
      return "iii";
    case StepCase::ConjugatorPrefix:
      return "iv";
    case StepCase::CrossVertex:
      return "v";
    case StepCase::SideVertex:
      return "vi";
  }
  return "?";
}

Conjugacy::Conjugacy(const Group& g, int delta, ConjugacyConfig cfg)
    : group_(&g), delta_(delta), cfg_(cfg) {
  if (delta < 1) throw precondition_violation("conjugacy machinery needs delta >= 1");
  if (cfg_.plateau_slack < 0) cfg_.plateau_slack = 2 * delta;
  if (cfg_.c10 < 1.0) cfg_.c10 = 1.0;
}

// Conjugates of a base element by words of increasing length, deduplicated at
// their first depth, shortlex-least conjugating word per element.
struct Conjugacy::LayeredConjugates {
  const Group& G;
  std::vector<std::map<GroupElement, Word>> layers;
  std::unordered_map<GroupElement, int, GroupElementHash> depth_of;
  std::size_t state_cap;

  LayeredConjugates(const Group& g, const GroupElement& base, std::size_t cap)
      : G(g), state_cap(cap) {
    layers.push_back({{base, Word()}});
    depth_of.emplace(base, 0);
  }

  bool expand_to(int depth) {
    while (static_cast<int>(layers.size()) - 1 < depth) {
      const auto& prev = layers.back();
      std::map<GroupElement, Word> next;
      for (const auto& [x, t] : prev) {
        for (std::size_t l = 0; l < G.alphabet().size(); ++l) {
          GroupElement s = G.normalize(Word(1, static_cast<char>(l)));
          GroupElement y = G.conjugate(s, x);
          if (depth_of.count(y)) continue;
          Word tw = t + static_cast<char>(l);
          auto it = next.find(y);
          if (it == next.end() || shortlex_less(tw, it->second)) next[y] = tw;
        }
      }
      for (const auto& [y, t] : next) depth_of.emplace(y, static_cast<int>(layers.size()));
      if (depth_of.size() > state_cap) throw cap_exceeded("conjugate search state cap");
      layers.push_back(std::move(next));
      if (layers.back().empty()) return false;  // class exhausted
    }
    return true;
  }
};

ClassRep Conjugacy::class_representative(const GroupElement& g) const {
  {
    std::lock_guard<std::mutex> lk(mu_);
    auto it = rep_cache_.find(g);
    if (it != rep_cache_.end()) return it->second;
  }
  ClassRep rep = compute_representative(g);
  std::lock_guard<std::mutex> lk(mu_);
  rep_cache_.emplace(g, rep);
  return rep;
}

ClassRep Conjugacy::compute_representative(const GroupElement& g) const {
  const Group& G = *group_;
  // Breadth-first over generator conjugations, pruned to states no longer
  // than the start plus the plateau slack, conjugator depth capped by the
  // linear-growth bound.
  const int depth_cap = std::max(2, static_cast<int>(std::ceil(2.0 * cfg_.c10 * g.length())) +
                                        cfg_.plateau_slack);
  const int length_cap = g.length() + cfg_.plateau_slack;

  std::unordered_set<GroupElement, GroupElementHash> visited{g};
  std::deque<GroupElement> frontier{g};
  GroupElement best = g;
  int depth = 0;
  bool certified = true;
  while (!frontier.empty() && depth < depth_cap) {
    std::deque<GroupElement> next;
    for (const auto& x : frontier) {
      for (std::size_t l = 0; l < G.alphabet().size(); ++l) {
        GroupElement s = G.normalize(Word(1, static_cast<char>(l)));
        GroupElement y = G.conjugate(s, x);
        if (y.length() > length_cap) continue;
        if (!visited.insert(y).second) continue;
        if (visited.size() > cfg_.state_cap) throw cap_exceeded("representative search cap");
        if (y.length() < best.length() || (y.length() == best.length() && y < best)) best = y;
        next.push_back(y);
      }
    }
    frontier = std::move(next);
    ++depth;
  }
  if (!frontier.empty()) certified = false;  // stopped by the depth cap
  return ClassRep{best, depth, certified};
}

GroupElement Conjugacy::certified_representative(const GroupElement& g) const {
  ClassRep rep = class_representative(g);
  if (!rep.certified)
    throw cap_exceeded("uncertified conjugacy class for " +
                       group_->alphabet().format_word(g.word()));
  return rep.representative;
}

MinimalConjugator Conjugacy::minimal_conjugator(const GroupElement& g) const {
  {
    std::lock_guard<std::mutex> lk(mu_);
    auto it = minconj_cache_.find(g);
    if (it != minconj_cache_.end()) return it->second;
  }
  MinimalConjugator mc = compute_minimal_conjugator(g);
  std::lock_guard<std::mutex> lk(mu_);
  minconj_cache_.emplace(g, mc);
  return mc;
}

MinimalConjugator Conjugacy::compute_minimal_conjugator(const GroupElement& g) const {
  const Group& G = *group_;
  ClassRep rep = class_representative(g);
  const Word& hw = rep.representative.word();
  const int n = static_cast<int>(hw.size());

  // distinct rotations of the representative word, with a fixed rotation word
  std::vector<std::pair<GroupElement, Word>> rotations;
  {
    std::set<GroupElement> seen;
    for (int m = 0; m < std::max(1, n); ++m) {
      Word w = hw.substr(static_cast<std::size_t>(m)) + hw.substr(0, static_cast<std::size_t>(m));
      GroupElement e = G.normalize(w);
      if (seen.insert(e).second) rotations.emplace_back(e, w);
    }
  }

  int cap = std::max(2, static_cast<int>(std::ceil(2.0 * cfg_.c10 * g.length())));
  LayeredConjugates fwd(G, g, cfg_.state_cap);
  std::vector<std::unique_ptr<LayeredConjugates>> bwd;
  for (const auto& [h, w] : rotations)
    bwd.push_back(std::make_unique<LayeredConjugates>(G, h, cfg_.state_cap));

  for (int attempt = 0; attempt < 2; ++attempt) {
    for (int L = 0; L <= cap; ++L) {
      GroupElement best_v;
      Word best_rotation;
      GroupElement best_target;
      bool found = false;
      for (int a = (L + 1) / 2; a <= L; ++a) {
        int b = L - a;
        fwd.expand_to(a);
        if (a >= static_cast<int>(fwd.layers.size())) continue;
        for (std::size_t ri = 0; ri < rotations.size(); ++ri) {
          bwd[ri]->expand_to(b);
          if (b >= static_cast<int>(bwd[ri]->layers.size())) continue;
          const auto& fl = fwd.layers[static_cast<std::size_t>(a)];
          const auto& blm = bwd[ri]->layers[static_cast<std::size_t>(b)];
          for (const auto& [x, t] : fl) {
            auto it = blm.find(x);
            if (it == blm.end()) continue;
            // v = t * w^{-1} conjugates g onto this rotation
            Word vw = t + G.alphabet().invert_word(it->second);
            GroupElement v = G.normalize(vw);
            if (!found || v.length() < best_v.length() ||
                (v.length() == best_v.length() && v < best_v)) {
              found = true;
              best_v = v;
              best_rotation = rotations[ri].second;
              best_target = rotations[ri].first;
            }
          }
        }
      }
      if (found) {
        MinimalConjugator mc;
        mc.conjugator = best_v;
        mc.target = best_target;
        mc.rotation_word = best_rotation;
        mc.gromov_bound_ok =
            best_v.length() <= static_cast<int>(std::ceil(2.0 * cfg_.c10 * g.length()));
        return mc;
      }
    }
    cap *= 4;  // retry once with a wider cap before giving up
  }
  throw cap_exceeded("minimal conjugator not found within the length cap");
}

std::optional<GroupElement> Conjugacy::minimal_conjugator_between(const GroupElement& g,
                                                                  const GroupElement& h,
                                                                  int length_cap) const {
  const Group& G = *group_;
  LayeredConjugates fwd(G, g, cfg_.state_cap);
  LayeredConjugates bwd(G, h, cfg_.state_cap);
  for (int L = 0; L <= length_cap; ++L) {
    GroupElement best_v;
    bool found = false;
    for (int a = (L + 1) / 2; a <= L; ++a) {
      int b = L - a;
      fwd.expand_to(a);
      bwd.expand_to(b);
      if (a >= static_cast<int>(fwd.layers.size()) ||
          b >= static_cast<int>(bwd.layers.size()))
        continue;
      const auto& fl = fwd.layers[static_cast<std::size_t>(a)];
      const auto& bl = bwd.layers[static_cast<std::size_t>(b)];
      for (const auto& [x, t] : fl) {
        auto it = bl.find(x);
        if (it == bl.end()) continue;
        GroupElement v = G.normalize(t + G.alphabet().invert_word(it->second));
        if (!found || v.length() < best_v.length() ||
            (v.length() == best_v.length() && v < best_v)) {
          found = true;
          best_v = v;
        }
      }
    }
    if (found) return best_v;
  }
  return std::nullopt;
}

StepChoice Conjugacy::step_choice(const GroupElement& g) const {
  const Group& G = *group_;
  if (g.is_identity()) return {G.identity(), StepCase::Identity};

  MinimalConjugator mc = minimal_conjugator(g);
  const GroupElement& u = mc.conjugator;

  if (u.is_identity()) {
    // g is itself carried by a rotation of the representative word; take the
    // suffix for the largest split position that reproduces g.
    ClassRep rep = class_representative(g);
    const Word& hw = rep.representative.word();
    const int n = static_cast<int>(hw.size());
    for (int m = n; m >= 0; --m) {
      Word rot = hw.substr(static_cast<std::size_t>(m)) + hw.substr(0, static_cast<std::size_t>(m));
      if (G.normalize(rot) == g) {
        GroupElement mu = G.normalize(hw.substr(static_cast<std::size_t>(m)));
        return {mu, StepCase::Rotation};
      }
    }
    throw std::runtime_error("rotation case reached without a matching rotation");
  }

  if (u.length() <= 2 * delta_) return {u, StepCase::ShortConjugator};

  if (u.length() <= 24.0 * cfg_.c10 * delta_)
    return {G.geodesic_prefix(u, 2 * delta_), StepCase::ConjugatorPrefix};

  // geodesic rectangle corners e, u, u h', g; vertex search near the midpoint
  // of the bottom edge. The half-integer offset in the distance threshold is
  // realized by accepting vertex distance <= 2 delta.
  GroupElement midpoint = G.geodesic_prefix(g, g.length() / 2);
  auto qualifies = [&](const GroupElement& v) { return G.distance(v, midpoint) <= 2 * delta_; };

  std::optional<GroupElement> best;
  auto consider = [&](const GroupElement& v) {
    if (!qualifies(v)) return;
    if (!best || v < *best) best = v;
  };

  // edge b: from u along the rotation word
  {
    GroupElement p = u;
    consider(p);
    for (char l : mc.rotation_word) {
      p = G.multiply(p, G.normalize(Word(1, l)));
      consider(p);
    }
  }
  if (best) return {*best, StepCase::CrossVertex};

  // edge a: prefixes of the conjugator
  for (int i = 0; i <= u.length(); ++i) consider(G.geodesic_prefix(u, i));
  if (best) return {*best, StepCase::SideVertex};
  // edge c: from u h' along the inverse conjugator
  {
    GroupElement p = G.multiply(u, mc.target);
    consider(p);
    Word back = G.alphabet().invert_word(u.word());
    for (char l : back) {
      p = G.multiply(p, G.normalize(Word(1, l)));
      consider(p);
    }
  }
  if (best) return {*best, StepCase::SideVertex};
  throw std::runtime_error("no reduction vertex within 2*delta of the midpoint; "
                           "the slimness estimate is too small for this element");
}

GroupElement Conjugacy::reduce_once(const GroupElement& g) const {
  StepChoice s = step_choice(g);
  return group_->conjugate(s.element, g);
}

RingElement Conjugacy::reduce_once_linear(const RingElement& a) const {
  RingElement out;
  for (const auto& [g, c] : a.support()) out.add(reduce_once(g), c);
  return out;
}

TensorElement Conjugacy::step_splitting(const GroupElement& g) const {
  StepChoice s = step_choice(g);
  const Group& G = *group_;
  return TensorElement::basis(s.element, G.multiply(G.invert(s.element), g));
}

bool Conjugacy::factorization_check(const GroupElement& g) const {
  const Group& G = *group_;
  RingElement lhs = mult_tensor(G, swap_legs(step_splitting(g)));
  return lhs == RingElement::basis(reduce_once(g));
}

SpecialMapTable Conjugacy::step_splitting_table(int radius) const {
  SpecialMapTable table;
  table.radius = 2.0 * delta_ + 1.0;
  BallTable B = group_->ball(radius);
  for (const auto& g : B.elements) table.entries.emplace(g, step_splitting(g));
  return table;
}

std::pair<ClassRep, PhiTrace> Conjugacy::reduce_to_representative(const GroupElement& g) const {
  const Group& G = *group_;
  PhiTrace trace;
  trace.conjugator = G.identity();
  GroupElement current = g;
  for (int iter = 0; iter <= cfg_.iteration_cap; ++iter) {
    StepChoice s = step_choice(current);
    GroupElement next = G.conjugate(s.element, current);
    trace.steps.push_back({current, s.case_id, s.element, next});
    if (next == current) break;
    trace.conjugator = G.multiply(trace.conjugator, s.element);
    // the accumulated conjugator must reproduce the current value exactly
    if (G.conjugate(trace.conjugator, g) != next)
      throw std::runtime_error("conjugator accumulator failed to verify");
    current = next;
    ++trace.iterations;
    if (iter == cfg_.iteration_cap) trace.converged = false;
  }
  if (!trace.steps.empty() && trace.steps.back().output != trace.steps.back().input)
    trace.converged = false;

  ClassRep rep = class_representative(g);
  if (trace.converged && current != rep.representative)
    throw std::runtime_error("reduction fixed point differs from the class representative");
  return {rep, trace};
}

RingElement Conjugacy::characteristic_linear(const RingElement& a) const {
  RingElement out;
  for (const auto& [g, c] : a.support()) out.add(certified_representative(g), c);
  return out;
}

GromovReport Conjugacy::gromov_probe(int radius) const {
  const Group& G = *group_;
  BallTable B = G.ball(radius);
  std::map<GroupElement, std::vector<GroupElement>> classes;
  for (const auto& g : B.elements)
    classes[class_representative(g).representative].push_back(g);

  GromovReport rep;
  for (const auto& [h, members] : classes) {
    for (const auto& g1 : members) {
      for (const auto& g2 : members) {
        if (g1.is_identity() && g2.is_identity()) continue;
        int cap = static_cast<int>(std::ceil(
                      2.0 * std::max(1.0, cfg_.c10) * (g1.length() + g2.length()))) +
                  cfg_.plateau_slack + 2;
        auto v = minimal_conjugator_between(g1, g2, cap);
        if (!v) throw cap_exceeded("gromov probe: conjugator not found within cap");
        ++rep.pairs;
        double denom = g1.length() + g2.length();
        double ratio = v->length() / denom;
        if (ratio > rep.empirical_c10) {
          rep.empirical_c10 = ratio;
          rep.worst_g = g1;
          rep.worst_h = g2;
          rep.worst_conjugator = *v;
        }
      }
    }
  }
  return rep;
}

ConvergenceReport Conjugacy::convergence_profile(int radius) const {
  const Group& G = *group_;
  BallTable B = G.ball(radius);
  ConvergenceReport rep;
  for (const auto& g : B.elements) {
    auto [cr, trace] = reduce_to_representative(g);
    rep.rows.push_back({g.length(), trace.iterations});
    rep.max_iterations = std::max(rep.max_iterations, trace.iterations);
    if (!trace.converged) rep.all_converged = false;
  }
  // slope by least squares against log2(1 + length), then the envelope
  // intercept so that iterations <= c11 log2(1+l) + c12 holds on the corpus
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  double n = static_cast<double>(rep.rows.size());
  for (const auto& r : rep.rows) {
    double x = std::log2(1.0 + r.length);
    sx += x;
    sy += r.iterations;
    sxx += x * x;
    sxy += x * r.iterations;
  }
  double denom = n * sxx - sx * sx;
  rep.fitted_c11 = denom > 0.0 ? std::max(0.0, (n * sxy - sx * sy) / denom) : 0.0;
  rep.fitted_c12 = 0.0;
  for (const auto& r : rep.rows)
    rep.fitted_c12 =
        std::max(rep.fitted_c12, r.iterations - rep.fitted_c11 * std::log2(1.0 + r.length));
  return rep;
}

RingElement project_class(const Conjugacy& cj, const RingElement& a, const GroupElement& x) {
  GroupElement hx = cj.certified_representative(x);
  RingElement out;
  for (const auto& [g, c] : a.support())
    if (cj.certified_representative(g) == hx) out.add(g, c);
  return out;
}

FormElement form_project(const Conjugacy& cj, const FormElement& w, const GroupElement& x) {
  GroupElement hx = cj.certified_representative(x);
  FormElement out(w.degree());
  const Group& G = cj.group();
  for (const auto& [tuple, c] : w.support()) {
    GroupElement p = tuple_product(G, tuple);
    if (cj.certified_representative(p) == hx) out.add(tuple, c);
  }
  return out;
}

}  // namespace hypring
