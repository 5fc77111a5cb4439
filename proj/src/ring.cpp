#include "hypring/ring.hpp"

#include <cmath>

namespace hypring {

namespace {

bool coeff_radial(Complex c, double tol) {
  return std::abs(c.imag()) <= tol && c.real() >= -tol;
}

}  // namespace

void RingElement::add(const GroupElement& g, Complex c) {
  auto [it, inserted] = support_.try_emplace(g, c);
  if (!inserted) it->second += c;
  if (std::abs(it->second) <= kPruneTol) support_.erase(it);
}

RingElement& RingElement::operator+=(const RingElement& o) {
  for (const auto& [g, c] : o.support_) add(g, c);
  return *this;
}

RingElement& RingElement::operator*=(Complex c) {
  if (std::abs(c) <= kPruneTol) {
    support_.clear();
    return *this;
  }
  for (auto& [g, v] : support_) v *= c;
  return *this;
}

bool RingElement::is_radial(double tol) const {
  for (const auto& [g, c] : support_)
    if (!coeff_radial(c, tol)) return false;
  return true;
}

void TensorElement::add(const GroupElement& g, const GroupElement& h, Complex c) {
  auto [it, inserted] = support_.try_emplace({g, h}, c);
  if (!inserted) it->second += c;
  if (std::abs(it->second) <= kPruneTol) support_.erase(it);
}

TensorElement& TensorElement::operator+=(const TensorElement& o) {
  for (const auto& [k, c] : o.support_) add(k.first, k.second, c);
  return *this;
}

TensorElement& TensorElement::operator*=(Complex c) {
  if (std::abs(c) <= kPruneTol) {
    support_.clear();
    return *this;
  }
  for (auto& [k, v] : support_) v *= c;
  return *this;
}

bool TensorElement::is_radial(double tol) const {
  for (const auto& [k, c] : support_)
    if (!coeff_radial(c, tol)) return false;
  return true;
}

FormElement FormElement::basis(Key tuple, Complex c) {
  FormElement f(static_cast<int>(tuple.size()) - 1);
  f.add(tuple, c);
  return f;
}

void FormElement::add(const Key& tuple, Complex c) {
  if (static_cast<int>(tuple.size()) != degree_ + 1)
    throw precondition_violation("form: tuple arity does not match degree");
  auto [it, inserted] = support_.try_emplace(tuple, c);
  if (!inserted) it->second += c;
  if (std::abs(it->second) <= kPruneTol) support_.erase(it);
}

FormElement& FormElement::operator+=(const FormElement& o) {
  if (o.degree_ != degree_) throw precondition_violation("form: degree mismatch");
  for (const auto& [k, c] : o.support_) add(k, c);
  return *this;
}

FormElement& FormElement::operator*=(Complex c) {
  if (std::abs(c) <= kPruneTol) {
    support_.clear();
    return *this;
  }
  for (auto& [k, v] : support_) v *= c;
  return *this;
}

RingElement absolute(const RingElement& a) {
  RingElement r;
  for (const auto& [g, c] : a.support()) r.add(g, std::abs(c));
  return r;
}

TensorElement absolute(const TensorElement& a) {
  TensorElement r;
  for (const auto& [k, c] : a.support()) r.add(k.first, k.second, std::abs(c));
  return r;
}

FormElement absolute(const FormElement& a) {
  FormElement r(a.degree());
  for (const auto& [k, c] : a.support()) r.add(k, std::abs(c));
  return r;
}

bool radial_leq(const RingElement& a, const RingElement& b, double tol) {
  if (!a.is_radial(tol) || !b.is_radial(tol))
    throw non_radial_argument("radial_leq: non-radial argument");
  for (const auto& [g, c] : a.support())
    if (c.real() > b.coeff(g).real() + tol) return false;
  return true;
}

bool radial_leq(const TensorElement& a, const TensorElement& b, double tol) {
  if (!a.is_radial(tol) || !b.is_radial(tol))
    throw non_radial_argument("radial_leq: non-radial argument");
  for (const auto& [k, c] : a.support())
    if (c.real() > b.coeff(k.first, k.second).real() + tol) return false;
  return true;
}

RingElement convolve(const Group& G, const RingElement& a, const RingElement& b) {
  RingElement r;
  for (const auto& [g, cg] : a.support())
    for (const auto& [h, ch] : b.support()) r.add(G.multiply(g, h), cg * ch);
  return r;
}

RingElement convolve_power(const Group& G, const RingElement& a, int n) {
  RingElement r = RingElement::basis(G.identity());
  for (int i = 0; i < n; ++i) r = convolve(G, r, a);
  return r;
}

TensorElement tensor(const RingElement& a, const RingElement& b) {
  TensorElement t;
  for (const auto& [g, cg] : a.support())
    for (const auto& [h, ch] : b.support()) t.add(g, h, cg * ch);
  return t;
}

TensorElement swap_legs(const TensorElement& t) {
  TensorElement r;
  for (const auto& [k, c] : t.support()) r.add(k.second, k.first, c);
  return r;
}

TensorElement act_left(const Group& G, const GroupElement& g, const TensorElement& t) {
  TensorElement r;
  for (const auto& [k, c] : t.support()) r.add(G.multiply(g, k.first), k.second, c);
  return r;
}

TensorElement act_right(const Group& G, const TensorElement& t, const GroupElement& g) {
  TensorElement r;
  for (const auto& [k, c] : t.support()) r.add(k.first, G.multiply(k.second, g), c);
  return r;
}

TensorElement inner_shift(const Group& G, const GroupElement& t, const TensorElement& T) {
  TensorElement r;
  GroupElement ti = G.invert(t);
  for (const auto& [k, c] : T.support())
    r.add(G.multiply(k.first, ti), G.multiply(t, k.second), c);
  return r;
}

TensorElement tensor_mult_left(const Group& G, const RingElement& a, const TensorElement& T) {
  TensorElement r;
  for (const auto& [g, cg] : a.support())
    for (const auto& [k, c] : T.support()) r.add(G.multiply(g, k.first), k.second, cg * c);
  return r;
}

TensorElement tensor_mult_right(const Group& G, const TensorElement& T, const RingElement& b) {
  TensorElement r;
  for (const auto& [k, c] : T.support())
    for (const auto& [h, ch] : b.support()) r.add(k.first, G.multiply(k.second, h), c * ch);
  return r;
}

RingElement mult_tensor(const Group& G, const TensorElement& T) {
  RingElement r;
  for (const auto& [k, c] : T.support()) r.add(G.multiply(k.first, k.second), c);
  return r;
}

GroupElement tuple_product(const Group& G, const FormElement::Key& tuple) {
  GroupElement p = G.identity();
  for (const auto& g : tuple) p = G.multiply(p, g);
  return p;
}

FormElement hochschild_boundary(const Group& G, const FormElement& w) {
  if (w.degree() < 1) throw precondition_violation("hochschild boundary needs degree >= 1");
  FormElement out(w.degree() - 1);
  for (const auto& [tuple, c] : w.support()) {
    const int n = w.degree();
    for (int i = 0; i < n; ++i) {
      FormElement::Key k;
      k.reserve(tuple.size() - 1);
      for (int j = 0; j < i; ++j) k.push_back(tuple[static_cast<std::size_t>(j)]);
      k.push_back(G.multiply(tuple[static_cast<std::size_t>(i)], tuple[static_cast<std::size_t>(i) + 1]));
      for (std::size_t j = static_cast<std::size_t>(i) + 2; j < tuple.size(); ++j) k.push_back(tuple[j]);
      out.add(k, (i % 2 == 0 ? c : -c));
    }
    FormElement::Key k;
    k.reserve(tuple.size() - 1);
    k.push_back(G.multiply(tuple.back(), tuple.front()));
    for (std::size_t j = 1; j + 1 < tuple.size(); ++j) k.push_back(tuple[j]);
    out.add(k, (n % 2 == 0 ? c : -c));
  }
  return out;
}

FormElement form_from_factors(const std::vector<RingElement>& factors) {
  if (factors.empty()) throw precondition_violation("form needs at least one factor");
  FormElement out(static_cast<int>(factors.size()) - 1);
  std::vector<FormElement::Key> keys{{}};
  std::vector<Complex> coeffs{Complex(1.0)};
  for (const auto& f : factors) {
    std::vector<FormElement::Key> nk;
    std::vector<Complex> nc;
    for (std::size_t i = 0; i < keys.size(); ++i) {
      for (const auto& [g, c] : f.support()) {
        auto k = keys[i];
        k.push_back(g);
        nk.push_back(std::move(k));
        nc.push_back(coeffs[i] * c);
      }
    }
    keys = std::move(nk);
    coeffs = std::move(nc);
  }
  for (std::size_t i = 0; i < keys.size(); ++i) out.add(keys[i], coeffs[i]);
  return out;
}

}  // namespace hypring
