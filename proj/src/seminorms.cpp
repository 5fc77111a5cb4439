#include "hypring/seminorms.hpp"

#include <cmath>
#include <sstream>

namespace hypring {

SeminormSpec SeminormSpec::ell1() { return SeminormSpec(Tag::Ell1, 0.0, 0); }

SeminormSpec SeminormSpec::ell1_lambda(double lambda) {
  if (!(lambda > 1.0)) throw invalid_spec("ell1_lambda requires lambda > 1");
  return SeminormSpec(Tag::Ell1Lambda, lambda, 0);
}

SeminormSpec SeminormSpec::ellinf() { return SeminormSpec(Tag::EllInf, 0.0, 0); }

SeminormSpec SeminormSpec::sobolev2(int k) {
  if (k < 0) throw invalid_spec("sobolev2 requires k >= 0");
  return SeminormSpec(Tag::Sobolev2, 0.0, k);
}

SeminormSpec SeminormSpec::weighted_ell1(std::function<double(const GroupElement&)> weight,
                                         std::string label) {
  SeminormSpec s(Tag::WeightedEll1, 0.0, 0);
  s.weight_ = std::move(weight);
  s.label_ = std::move(label);
  return s;
}

double SeminormSpec::element_weight(const GroupElement& g) const {
  switch (tag_) {
    case Tag::Ell1:
      return 1.0;
    case Tag::Ell1Lambda:
      return std::pow(lambda_, g.length());
    case Tag::WeightedEll1: {
      double w = weight_(g);
      if (!(w > 0.0)) throw invalid_spec("weighted_ell1: weight must be strictly positive");
      return w;
    }
    default:
      throw invalid_spec("element_weight: not an l1-type seminorm");
  }
}

double SeminormSpec::basis_norm(const GroupElement& g) const {
  switch (tag_) {
    case Tag::Ell1:
    case Tag::Ell1Lambda:
    case Tag::WeightedEll1:
      return element_weight(g);
    case Tag::EllInf:
      return 1.0;
    case Tag::Sobolev2:
      return std::pow(1.0 + g.length(), k_);
  }
  return 0.0;
}

std::string SeminormSpec::label() const {
  std::ostringstream os;
  switch (tag_) {
    case Tag::Ell1:
      return "ell1";
    case Tag::Ell1Lambda:
      os << "ell1_lambda:" << lambda_;
      return os.str();
    case Tag::EllInf:
      return "ellinf";
    case Tag::Sobolev2:
      os << "sobolev2:" << k_;
      return os.str();
    case Tag::WeightedEll1:
      return label_;
  }
  return "?";
}

SeminormSpec SeminormSpec::parse(const std::string& text) {
  if (text == "ell1") return ell1();
  if (text == "ellinf") return ellinf();
  auto colon = text.find(':');
  if (colon != std::string::npos) {
    std::string head = text.substr(0, colon);
    std::string tail = text.substr(colon + 1);
    if (head == "ell1_lambda") return ell1_lambda(std::stod(tail));
    if (head == "sobolev2") return sobolev2(std::stoi(tail));
  }
  throw invalid_spec("unknown seminorm spec: " + text);
}

double eval(const SeminormSpec& spec, const RingElement& a) {
  switch (spec.tag()) {
    case SeminormSpec::Tag::Ell1:
    case SeminormSpec::Tag::Ell1Lambda:
    case SeminormSpec::Tag::WeightedEll1: {
      double s = 0.0;
      for (const auto& [g, c] : a.support()) s += spec.element_weight(g) * std::abs(c);
      return s;
    }
    case SeminormSpec::Tag::EllInf: {
      double m = 0.0;
      for (const auto& [g, c] : a.support()) m = std::max(m, std::abs(c));
      return m;
    }
    case SeminormSpec::Tag::Sobolev2: {
      double s = 0.0;
      for (const auto& [g, c] : a.support()) {
        double w = std::pow(1.0 + g.length(), spec.k());
        s += w * w * std::norm(c);
      }
      return std::sqrt(s);
    }
  }
  return 0.0;
}

double eval_vector(const SeminormSpec& spec, const WeightVector& v) {
  RingElement a;
  for (const auto& [g, x] : v) a.add(g, x);
  return eval(spec, a);
}

double dual_norm(const SeminormSpec& spec, const WeightVector& phi) {
  switch (spec.tag()) {
    case SeminormSpec::Tag::Ell1:
    case SeminormSpec::Tag::Ell1Lambda:
    case SeminormSpec::Tag::WeightedEll1: {
      double m = 0.0;
      for (const auto& [g, x] : phi) m = std::max(m, std::abs(x) / spec.element_weight(g));
      return m;
    }
    case SeminormSpec::Tag::EllInf: {
      double s = 0.0;
      for (const auto& [g, x] : phi) s += std::abs(x);
      return s;
    }
    case SeminormSpec::Tag::Sobolev2: {
      double s = 0.0;
      for (const auto& [g, x] : phi) {
        double w = std::pow(1.0 + g.length(), spec.k());
        s += (x / w) * (x / w);
      }
      return std::sqrt(s);
    }
  }
  return 0.0;
}

WeightVector norming_functional(const SeminormSpec& spec, const WeightVector& v) {
  WeightVector phi;
  switch (spec.tag()) {
    case SeminormSpec::Tag::Ell1:
    case SeminormSpec::Tag::Ell1Lambda:
    case SeminormSpec::Tag::WeightedEll1:
      for (const auto& [g, x] : v)
        if (x > 0.0) phi[g] = spec.element_weight(g);
      return phi;
    case SeminormSpec::Tag::EllInf: {
      const GroupElement* best = nullptr;
      double bx = -1.0;
      for (const auto& [g, x] : v)
        if (x > bx) {
          bx = x;
          best = &g;
        }
      if (best) phi[*best] = 1.0;
      return phi;
    }
    case SeminormSpec::Tag::Sobolev2: {
      double nv = eval_vector(spec, v);
      if (nv <= 0.0) return phi;
      for (const auto& [g, x] : v) {
        double w = std::pow(1.0 + g.length(), spec.k());
        if (x > 0.0) phi[g] = w * w * x / nv;
      }
      return phi;
    }
  }
  return phi;
}

double pair(const WeightVector& phi, const WeightVector& v) {
  double s = 0.0;
  auto it = phi.begin();
  auto jt = v.begin();
  while (it != phi.end() && jt != v.end()) {
    if (it->first < jt->first) {
      ++it;
    } else if (jt->first < it->first) {
      ++jt;
    } else {
      s += it->second * jt->second;
      ++it;
      ++jt;
    }
  }
  return s;
}

double associated_unconditional_upper(const RingElement& a,
                                      const std::function<double(const RingElement&)>& raw_norm) {
  return raw_norm(absolute(a));
}

double associated_unconditional_upper(
    const TensorElement& t, const std::function<double(const TensorElement&)>& raw_norm) {
  return raw_norm(absolute(t));
}

double l1_cross_value(const SeminormSpec& sx, const SeminormSpec& sy, const TensorElement& t) {
  if (!sx.is_l1_type() || !sy.is_l1_type())
    throw invalid_spec("l1_cross_value needs l1-type specs on both legs");
  double s = 0.0;
  for (const auto& [k, c] : t.support())
    s += sx.element_weight(k.first) * sy.element_weight(k.second) * std::abs(c);
  return s;
}

}  // namespace hypring
