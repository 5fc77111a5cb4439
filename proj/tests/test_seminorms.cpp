#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "hypring/seminorms.hpp"

using namespace hypring;

namespace {

RingElement u(const Group& g, const std::string& text) {
  return RingElement::basis(g.parse(text));
}

}  // namespace

TEST_CASE("closed-form evaluations") {
  Group F = Group::free_group(2);
  GroupElement ab = F.parse("ab");

  CHECK(eval(SeminormSpec::sobolev2(2), RingElement::basis(ab)) == doctest::Approx(9.0));
  CHECK(eval(SeminormSpec::ell1_lambda(2.0), RingElement::basis(ab)) == doctest::Approx(4.0));

  RingElement a = Complex(1, 1) * u(F, "a") + Complex(-2, 0) * u(F, "b");
  CHECK(eval(SeminormSpec::ell1(), a) == doctest::Approx(std::sqrt(2.0) + 2.0));
  CHECK(eval(SeminormSpec::ellinf(), a) == doctest::Approx(2.0));

  auto w = SeminormSpec::weighted_ell1(
      [](const GroupElement& g) { return (1.0 + g.length()) * std::pow(1.1, g.length()); },
      "poly_exp_weight");
  CHECK(eval(w, RingElement::basis(ab)) == doctest::Approx(3.0 * 1.21));
}

TEST_CASE("unconditionality on dominating pairs") {
  Group F = Group::free_group(2);
  BallTable B = F.ball(3);
  std::mt19937_64 rng(29);
  std::uniform_int_distribution<std::size_t> idx(0, B.elements.size() - 1);
  std::uniform_real_distribution<double> coeff(-2.0, 2.0);
  std::uniform_real_distribution<double> shrink(0.0, 1.0);

  std::vector<SeminormSpec> specs = {
      SeminormSpec::ell1(), SeminormSpec::ell1_lambda(1.5), SeminormSpec::ellinf(),
      SeminormSpec::sobolev2(2),
      SeminormSpec::weighted_ell1(
          [](const GroupElement& g) { return std::pow(1.3, g.length()); }, "ell1_1.3")};

  for (int i = 0; i < 1000; ++i) {
    RingElement big;
    for (int t = 0; t < 5; ++t) big.add(B.elements[idx(rng)], Complex(coeff(rng), coeff(rng)));
    RingElement small;
    for (const auto& [g, c] : big.support()) small.add(g, c * shrink(rng));
    for (const auto& s : specs) CHECK(eval(s, small) <= eval(s, big) + 1e-12);
  }
}

TEST_CASE("norming functionals are positive and tight") {
  Group F = Group::free_group(2);
  BallTable B = F.ball(3);
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<std::size_t> idx(0, B.elements.size() - 1);
  std::uniform_real_distribution<double> coeff(0.1, 2.0);

  std::vector<SeminormSpec> specs = {SeminormSpec::ell1(), SeminormSpec::ell1_lambda(1.2),
                                     SeminormSpec::ellinf(), SeminormSpec::sobolev2(1)};
  for (int i = 0; i < 200; ++i) {
    WeightVector v;
    for (int t = 0; t < 4; ++t) v[B.elements[idx(rng)]] = coeff(rng);
    for (const auto& s : specs) {
      WeightVector phi = norming_functional(s, v);
      for (const auto& [g, x] : phi) CHECK(x >= 0.0);
      CHECK(dual_norm(s, phi) <= 1.0 + 1e-9);
      CHECK(pair(phi, v) == doctest::Approx(eval_vector(s, v)).epsilon(1e-9));
    }
  }
}

TEST_CASE("associated unconditional upper surrogate") {
  Group F = Group::free_group(2);
  RingElement a = Complex(0, 1) * u(F, "a") + Complex(-1, 0) * u(F, "b");
  auto raw = [&](const RingElement& x) { return eval(SeminormSpec::ell1(), x); };
  CHECK(associated_unconditional_upper(a, raw) == doctest::Approx(eval(SeminormSpec::ell1(), a)));
  RingElement radial = absolute(a);
  CHECK(associated_unconditional_upper(radial, raw) == doctest::Approx(raw(radial)));
}

TEST_CASE("l1-type cross value") {
  Group F = Group::free_group(2);
  TensorElement t;
  t.add(F.parse("a"), F.parse("b"), Complex(1, 0));
  t.add(F.parse("ab"), F.identity(), Complex(0, -2));
  auto l15 = SeminormSpec::ell1_lambda(1.5);
  double expect = 1.5 * 1.5 * 1.0 + 1.5 * 1.5 * 2.0;
  CHECK(l1_cross_value(l15, l15, t) == doctest::Approx(expect));
  CHECK_THROWS_AS((void)l1_cross_value(SeminormSpec::ellinf(), l15, t), invalid_spec);
}

TEST_CASE("spec parsing") {
  CHECK(SeminormSpec::parse("ell1").tag() == SeminormSpec::Tag::Ell1);
  CHECK(SeminormSpec::parse("ell1_lambda:1.5").lambda() == doctest::Approx(1.5));
  CHECK(SeminormSpec::parse("sobolev2:3").k() == 3);
  CHECK(SeminormSpec::parse("ellinf").tag() == SeminormSpec::Tag::EllInf);
  CHECK_THROWS_AS(SeminormSpec::parse("nope"), invalid_spec);
  CHECK_THROWS_AS(SeminormSpec::ell1_lambda(1.0), invalid_spec);
}
