#include "hypring/serialize.hpp"

namespace hypring {

namespace {

std::string word_text(const Group& g, const GroupElement& e) {
  return g.alphabet().format_word(e.word());
}

Json weights_to_json(const Group& g, const WeightVector& v) {
  Json out = Json::array();
  for (const auto& [e, x] : v) out.push_back({word_text(g, e), x});
  return out;
}

WeightVector weights_from_json(const Group& g, const Json& j) {
  WeightVector v;
  for (const auto& item : j) v[g.parse(item.at(0).get<std::string>())] = item.at(1).get<double>();
  return v;
}

}  // namespace

Json ring_to_json(const Group& g, const RingElement& a) {
  Json out = Json::array();
  for (const auto& [e, c] : a.support()) out.push_back({word_text(g, e), c.real(), c.imag()});
  return out;
}

RingElement ring_from_json(const Group& g, const Json& j) {
  RingElement a;
  for (const auto& item : j)
    a.add(g.parse(item.at(0).get<std::string>()),
          Complex(item.at(1).get<double>(), item.at(2).get<double>()));
  return a;
}

Json tensor_to_json(const Group& g, const TensorElement& t) {
  Json out = Json::array();
  for (const auto& [k, c] : t.support())
    out.push_back({word_text(g, k.first), word_text(g, k.second), c.real(), c.imag()});
  return out;
}

TensorElement tensor_from_json(const Group& g, const Json& j) {
  TensorElement t;
  for (const auto& item : j)
    t.add(g.parse(item.at(0).get<std::string>()), g.parse(item.at(1).get<std::string>()),
          Complex(item.at(2).get<double>(), item.at(3).get<double>()));
  return t;
}

Json form_to_json(const Group& g, const FormElement& f) {
  Json terms = Json::array();
  for (const auto& [tuple, c] : f.support()) {
    Json row = Json::array();
    for (const auto& e : tuple) row.push_back(word_text(g, e));
    row.push_back(c.real());
    row.push_back(c.imag());
    terms.push_back(row);
  }
  return Json{{"degree", f.degree()}, {"terms", terms}};
}

FormElement form_from_json(const Group& g, const Json& j) {
  int degree = j.at("degree").get<int>();
  FormElement f(degree);
  for (const auto& row : j.at("terms")) {
    FormElement::Key tuple;
    for (int i = 0; i <= degree; ++i)
      tuple.push_back(g.parse(row.at(static_cast<std::size_t>(i)).get<std::string>()));
    double re = row.at(static_cast<std::size_t>(degree) + 1).get<double>();
    double im = row.at(static_cast<std::size_t>(degree) + 2).get<double>();
    f.add(tuple, Complex(re, im));
  }
  return f;
}

namespace {

const char* kind_name(CertKind k) {
  switch (k) {
    case CertKind::UcNorm:
      return "ucnorm";
    case CertKind::MinimalRing:
      return "minimal";
    case CertKind::SobolevRing:
      return "sobolev_ring";
    case CertKind::SobolevTensor:
      return "sobolev_tensor";
  }
  return "?";
}

CertKind kind_from_name(const std::string& s) {
  if (s == "ucnorm") return CertKind::UcNorm;
  if (s == "minimal") return CertKind::MinimalRing;
  if (s == "sobolev_ring") return CertKind::SobolevRing;
  if (s == "sobolev_tensor") return CertKind::SobolevTensor;
  throw invalid_spec("unknown certificate kind: " + s);
}

}  // namespace

Json certificate_to_json(const Group& g, const BoundCertificate& c) {
  Json out{{"kind", kind_name(c.kind)},
           {"lower", c.lower},
           {"upper", c.upper},
           {"n", c.n},
           {"k", c.k},
           {"ambient", c.ambient},
           {"spec_x", c.spec_x},
           {"spec_y", c.spec_y},
           {"lower_fallback", c.lower_fallback}};
  if (!c.uc_upper.empty()) {
    Json terms = Json::array();
    for (const auto& t : c.uc_upper)
      terms.push_back({{"left", weights_to_json(g, t.left)},
                       {"right", weights_to_json(g, t.right)}});
    out["uc_upper"] = terms;
  }
  if (c.uc_lower) {
    out["uc_lower"] = {{"left", weights_to_json(g, c.uc_lower->left)},
                       {"right", weights_to_json(g, c.uc_lower->right)}};
  }
  if (!c.product_upper.empty()) {
    Json terms = Json::array();
    for (const auto& t : c.product_upper) {
      Json factors = Json::array();
      for (const auto& f : t.factors) factors.push_back(ring_to_json(g, f));
      terms.push_back({{"coeff", t.coeff}, {"factors", factors}});
    }
    out["product_upper"] = terms;
  }
  if (!c.tensor_upper.empty()) {
    Json terms = Json::array();
    for (const auto& t : c.tensor_upper) {
      Json lf = Json::array(), rf = Json::array();
      for (const auto& f : t.left_factors) lf.push_back(ring_to_json(g, f));
      for (const auto& f : t.right_factors) rf.push_back(ring_to_json(g, f));
      terms.push_back({{"coeff", t.coeff}, {"left_factors", lf}, {"right_factors", rf}});
    }
    out["tensor_upper"] = terms;
  }
  if (c.norm_lower) {
    out["norm_lower"] = {{"scale", c.norm_lower->scale},
                         {"mu", c.norm_lower->mu},
                         {"sup_tn", c.norm_lower->sup_tn}};
  }
  return out;
}

BoundCertificate certificate_from_json(const Group& g, const Json& j) {
  BoundCertificate c;
  c.kind = kind_from_name(j.at("kind").get<std::string>());
  c.lower = j.at("lower").get<double>();
  c.upper = j.at("upper").get<double>();
  c.n = j.at("n").get<int>();
  c.k = j.at("k").get<int>();
  c.ambient = j.value("ambient", "");
  c.spec_x = j.value("spec_x", "");
  c.spec_y = j.value("spec_y", "");
  c.lower_fallback = j.value("lower_fallback", false);
  if (j.contains("uc_upper")) {
    for (const auto& t : j.at("uc_upper")) {
      UcTerm term;
      term.left = weights_from_json(g, t.at("left"));
      term.right = weights_from_json(g, t.at("right"));
      c.uc_upper.push_back(std::move(term));
    }
  }
  if (j.contains("uc_lower")) {
    DualPairWitness w;
    w.left = weights_from_json(g, j.at("uc_lower").at("left"));
    w.right = weights_from_json(g, j.at("uc_lower").at("right"));
    c.uc_lower = std::move(w);
  }
  if (j.contains("product_upper")) {
    for (const auto& t : j.at("product_upper")) {
      ProductTerm term;
      term.coeff = t.at("coeff").get<double>();
      for (const auto& f : t.at("factors")) term.factors.push_back(ring_from_json(g, f));
      c.product_upper.push_back(std::move(term));
    }
  }
  if (j.contains("tensor_upper")) {
    for (const auto& t : j.at("tensor_upper")) {
      TensorProductTerm term;
      term.coeff = t.at("coeff").get<double>();
      for (const auto& f : t.at("left_factors"))
        term.left_factors.push_back(ring_from_json(g, f));
      for (const auto& f : t.at("right_factors"))
        term.right_factors.push_back(ring_from_json(g, f));
      c.tensor_upper.push_back(std::move(term));
    }
  }
  if (j.contains("norm_lower")) {
    WitnessNormData w;
    w.scale = j.at("norm_lower").at("scale").get<double>();
    w.mu = j.at("norm_lower").at("mu").get<double>();
    w.sup_tn = j.at("norm_lower").at("sup_tn").get<double>();
    c.norm_lower = w;
  }
  return c;
}

Json phi_trace_to_json(const Group& g, const PhiTrace& t) {
  Json steps = Json::array();
  for (const auto& s : t.steps)
    steps.push_back({{"input", word_text(g, s.input)},
                     {"case", step_case_label(s.case_id)},
                     {"step_element", word_text(g, s.step_element)},
                     {"output", word_text(g, s.output)}});
  return Json{{"steps", steps},
              {"conjugator", word_text(g, t.conjugator)},
              {"iterations", t.iterations},
              {"converged", t.converged}};
}

}  // namespace hypring
