#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "hypring/traces.hpp"

using namespace hypring;

namespace {

RingElement u(const Group& g, const std::string& text) {
  return RingElement::basis(g.parse(text));
}

RingElement random_ring(const BallTable& B, std::mt19937_64& rng, int max_terms) {
  std::uniform_int_distribution<std::size_t> idx(0, B.elements.size() - 1);
  std::uniform_real_distribution<double> coeff(-2.0, 2.0);
  std::uniform_int_distribution<int> nterms(1, max_terms);
  RingElement r;
  int n = nterms(rng);
  for (int i = 0; i < n; ++i) r.add(B.elements[idx(rng)], Complex(coeff(rng), coeff(rng)));
  return r;
}

}  // namespace

TEST_CASE("temperedness verdicts") {
  Group F = Group::free_group(2);
  Conjugacy cj(F, 1);

  auto ind = ClassFunction::indicator(F.parse("b"));
  auto rep = is_tempered(cj, ind, 3, 5);
  CHECK(rep.finitely_supported);
  CHECK(rep.verdict == "tempered");

  // constant class function on a free group: class counts grow exponentially
  auto rep2 = is_tempered(cj, ClassFunction::constant(), 3, 6);
  CHECK_FALSE(rep2.finitely_supported);
  for (const auto& row : rep2.rows) CHECK(row.verdict == "divergent-looking");

  // on the integers the class counts are flat; decay decides
  Group Z = Group::free_group(1);
  Conjugacy cz(Z, 1);
  auto rep3 = is_tempered(cz, ClassFunction::power_length(1.0), 2, 8);
  REQUIRE(rep3.rows.size() == 3);
  CHECK(rep3.rows[0].verdict == "divergent-looking");  // k = 0: (1+l)^2 grows
  CHECK(rep3.rows[2].verdict == "convergent-looking"); // k = 2: (1+l)^{-2} decays
}

TEST_CASE("trace evaluation, both paths") {
  Group F = Group::free_group(2);
  Conjugacy cj(F, 1);

  auto tau = ClassFunction::indicator(F.parse("b"));
  RingElement a = Complex(2, 0) * u(F, "abA") + Complex(3, 0) * u(F, "a");
  CHECK(trace_eval(cj, tau, a) == Complex(2.0, 0.0));

  auto tau_e = ClassFunction::indicator(F.identity());
  CHECK(trace_eval(cj, tau_e, u(F, "e")) == Complex(1.0, 0.0));
  CHECK(trace_eval(cj, ClassFunction::exp_length(), u(F, "e")) == Complex(1.0, 0.0));
}

TEST_CASE("traces are cyclic") {
  Group F = Group::free_group(2);
  Conjugacy cj(F, 1);
  BallTable B = F.ball(4);
  std::mt19937_64 rng(7);

  std::map<GroupElement, Complex> vals;
  vals[F.parse("b")] = Complex(0.5, 1.0);
  vals[F.parse("ab")] = Complex(-1.0, 0.25);
  vals[F.identity()] = Complex(2.0, 0.0);
  std::vector<ClassFunction> taus = {ClassFunction::indicator(F.parse("b")),
                                     ClassFunction::indicator(F.identity()),
                                     ClassFunction::finitely_supported(vals)};
  for (int i = 0; i < 200; ++i) {
    RingElement a = random_ring(B, rng, 4);
    RingElement b = random_ring(B, rng, 4);
    RingElement ab = convolve(F, a, b);
    RingElement ba = convolve(F, b, a);
    for (const auto& tau : taus)
      CHECK(std::abs(trace_eval(cj, tau, ab) - trace_eval(cj, tau, ba)) < 1e-9);
  }
}

TEST_CASE("restriction probe basics") {
  Group F = Group::free_group(2);
  Conjugacy cj(F, 1);
  auto l1 = SeminormSpec::ell1();

  // support away from the class projects to zero
  RingElement off = u(F, "a");
  CHECK(eval(l1, project_class(cj, off, F.parse("b"))) == 0.0);

  // class projection contracts the l1 norm
  std::mt19937_64 rng(11);
  BallTable B = F.ball(4);
  for (int i = 0; i < 100; ++i) {
    RingElement a = random_ring(B, rng, 5);
    CHECK(eval(l1, project_class(cj, a, F.parse("b"))) <= eval(l1, a) + 1e-12);
  }

  // one in-class basis element: certified upper bound is at least one
  RingElement g = u(F, "abA");
  double upper = minimal_norm_bounds(F, g, 2, l1).upper;
  double ratio = eval(l1, project_class(cj, g, F.parse("b"))) / upper;
  CHECK(ratio <= 1.0 + 1e-9);

  auto rep = restriction_probe(cj, F.parse("b"), 2, l1, 200, 12345, 5);
  CHECK(rep.samples.size() >= 150);
  CHECK(rep.max_ratio >= 0.0);
  CHECK(rep.bounded_looking);
}

TEST_CASE("form chain check") {
  Group F = Group::free_group(2);
  Conjugacy cj(F, 1);

  // single-tuple form: both sides equal lambda^2
  double lambda = 1.5;
  auto rep = form_norm_chain_check(cj, {u(F, "a"), u(F, "b")}, F.parse("ab"), lambda, 2);
  CHECK(rep.lhs == doctest::Approx(lambda * lambda));
  CHECK(rep.rhs == doctest::Approx(lambda * lambda));
  CHECK(rep.holds);

  // no tuple lands in the class
  auto rep0 = form_norm_chain_check(cj, {u(F, "a"), u(F, "b")}, F.parse("a"), lambda, 2);
  CHECK(rep0.lhs == 0.0);
  CHECK(rep0.holds);

  // random degree-2 data
  BallTable B = F.ball(3);
  std::mt19937_64 rng(17);
  for (int i = 0; i < 100; ++i) {
    std::vector<RingElement> factors = {random_ring(B, rng, 3), random_ring(B, rng, 3),
                                        random_ring(B, rng, 3)};
    auto r = form_norm_chain_check(cj, factors, F.parse("b"), lambda, 2);
    CHECK(r.holds);
  }

  CHECK_THROWS_AS(form_norm_chain_check(cj, {u(F, "a")}, F.parse("a"), 1.0, 2),
                  precondition_violation);
}
