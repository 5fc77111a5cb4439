#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "hypring/conjugacy.hpp"

using namespace hypring;

namespace {

// Independent oracle for free groups: shortlex-least cyclic rotation of the
// cyclic reduction.
GroupElement free_class_oracle(const Group& F, const GroupElement& g) {
  Word c = cyclic_reduce(g.word(), F.alphabet());
  Word best = c;
  for (std::size_t m = 1; m < c.size(); ++m) {
    Word rot = c.substr(m) + c.substr(0, m);
    if (shortlex_less(rot, best)) best = rot;
  }
  return GroupElement(best);
}

RingElement u(const Group& g, const std::string& text) {
  return RingElement::basis(g.parse(text));
}

}  // namespace

TEST_CASE("class representatives in the free group") {
  Group F = Group::free_group(2);
  Conjugacy cj(F, 1);
  CHECK(cj.class_representative(F.parse("abA")).representative == F.parse("b"));
  CHECK(cj.class_representative(F.identity()).representative == F.identity());

  BallTable B = F.ball(6);
  for (const auto& g : B.elements) {
    ClassRep r = cj.class_representative(g);
    CHECK(r.certified);
    CHECK(r.representative == free_class_oracle(F, g));
  }
}

TEST_CASE("class representatives on the surface group match brute force") {
  Group S = Group::surface_group(2);
  Conjugacy cj(S, 2);
  BallTable B = S.ball(3);
  BallTable T = S.ball(4);  // conjugators for brute-force enumeration
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<std::size_t> idx(0, B.elements.size() - 1);
  for (int i = 0; i < 60; ++i) {
    const GroupElement& g = B.elements[idx(rng)];
    ClassRep r = cj.class_representative(g);
    // brute force over conjugators in ball(4)
    GroupElement best = g;
    for (const auto& t : T.elements) {
      GroupElement c = S.conjugate(t, g);
      if (c.length() < best.length() || (c.length() == best.length() && c < best)) best = c;
    }
    CHECK(r.representative.length() <= best.length());
    if (r.representative.length() == best.length()) CHECK(!(best < r.representative));
  }
}

TEST_CASE("minimal conjugators") {
  Group F = Group::free_group(2);
  Conjugacy cj(F, 1);

  auto mc = cj.minimal_conjugator(F.parse("abA"));
  CHECK(mc.conjugator == F.parse("a"));
  CHECK(mc.target == F.parse("b"));
  CHECK(mc.gromov_bound_ok);

  auto mcb = cj.minimal_conjugator(F.parse("b"));
  CHECK(mcb.conjugator.is_identity());
  CHECK(mcb.target == F.parse("b"));

  auto mcab = cj.minimal_conjugator(F.parse("ab"));
  CHECK(mcab.conjugator.is_identity());
  CHECK(mcab.target == F.parse("ab"));

  // conjugator actually conjugates onto the target
  BallTable B = F.ball(5);
  for (const auto& g : B.elements) {
    auto m = cj.minimal_conjugator(g);
    CHECK(F.conjugate(m.conjugator, g) == m.target);
  }
}

TEST_CASE("step choices follow the case ladder") {
  Group F = Group::free_group(2);
  Conjugacy cj(F, 1);

  auto se = cj.step_choice(F.identity());
  CHECK(se.case_id == StepCase::Identity);
  CHECK(se.element.is_identity());
  CHECK(std::string(step_case_label(se.case_id)) == "i");

  auto s2 = cj.step_choice(F.parse("aabAA"));
  CHECK(s2.case_id == StepCase::ShortConjugator);
  CHECK(s2.element == F.parse("aa"));
  CHECK(std::string(step_case_label(s2.case_id)) == "iii");

  auto s3 = cj.step_choice(F.parse("aaabAAA"));
  CHECK(s3.case_id == StepCase::ConjugatorPrefix);
  CHECK(s3.element == F.parse("aa"));
  CHECK(std::string(step_case_label(s3.case_id)) == "iv");

  auto sb = cj.step_choice(F.parse("b"));
  CHECK(sb.case_id == StepCase::Rotation);
  CHECK(sb.element.is_identity());
}

TEST_CASE("single reduction steps") {
  Group F = Group::free_group(2);
  Conjugacy cj(F, 1);
  CHECK(cj.reduce_once(F.parse("aabAA")) == F.parse("b"));
  CHECK(cj.reduce_once(F.parse("aaabAAA")) == F.parse("abA"));
  CHECK(cj.reduce_once(F.parse("b")) == F.parse("b"));

  RingElement a = Complex(2, 0) * u(F, "abA") + Complex(1, 0) * u(F, "a");
  RingElement r = cj.reduce_once_linear(a);
  CHECK(radial_leq(absolute(r), cj.reduce_once_linear(absolute(a))));
}

TEST_CASE("step splitting factors the reduction") {
  Group F = Group::free_group(2);
  Conjugacy cj(F, 1);

  GroupElement g = F.parse("aaabAAA");
  TensorElement psi = cj.step_splitting(g);
  CHECK(psi == TensorElement::basis(F.parse("aa"), F.parse("abAAA")));
  CHECK(cj.factorization_check(g));
  CHECK(cj.step_splitting(F.identity()) ==
        TensorElement::basis(F.identity(), F.identity()));

  BallTable B = F.ball(5);
  for (const auto& e : B.elements) CHECK(cj.factorization_check(e));
}

TEST_CASE("step splitting tables are special") {
  Group F = Group::free_group(2);
  Conjugacy cj(F, 1);
  SpecialMapTable t = cj.step_splitting_table(5);
  CHECK(t.radius == doctest::Approx(3.0));
  auto rep = check_special(F, t);
  CHECK(rep.ok);

  Group S = Group::surface_group(2);
  Conjugacy cjs(S, 2);
  SpecialMapTable ts = cjs.step_splitting_table(2);
  CHECK(check_special(S, ts).ok);
}

TEST_CASE("reduction to the representative, free oracle") {
  Group F = Group::free_group(2);
  Conjugacy cj(F, 1);
  BallTable B = F.ball(6);
  for (const auto& g : B.elements) {
    auto [rep, trace] = cj.reduce_to_representative(g);
    CHECK(trace.converged);
    CHECK(rep.representative == free_class_oracle(F, g));
    // the accumulator conjugates g onto the final value
    GroupElement final_value = trace.steps.back().output;
    CHECK(F.conjugate(trace.conjugator, g) == final_value);
    CHECK(final_value == rep.representative);
    CHECK(trace.iterations <= 8);
  }
}

TEST_CASE("proper powers stay fixed") {
  Group F = Group::free_group(2);
  Conjugacy cj(F, 1);
  GroupElement g = F.parse("ababab");
  auto s = cj.step_choice(g);
  CHECK(s.case_id == StepCase::Rotation);
  CHECK(s.element.is_identity());
  CHECK(cj.reduce_once(g) == g);
  auto [rep, trace] = cj.reduce_to_representative(F.parse("bababa"));
  CHECK(rep.representative == g);
  CHECK(trace.iterations <= 2);
}

TEST_CASE("characteristic map collapses classes") {
  Group F = Group::free_group(2);
  Conjugacy cj(F, 1);
  RingElement a = u(F, "abA") + u(F, "b");
  RingElement r = cj.characteristic_linear(a);
  CHECK(r == Complex(2, 0) * u(F, "b"));

  // radial: |Phi(a)| <= Phi(|a|)
  std::mt19937_64 rng(17);
  BallTable B = F.ball(4);
  std::uniform_int_distribution<std::size_t> idx(0, B.elements.size() - 1);
  std::uniform_real_distribution<double> coeff(-2.0, 2.0);
  for (int i = 0; i < 100; ++i) {
    RingElement x;
    for (int t = 0; t < 5; ++t) x.add(B.elements[idx(rng)], Complex(coeff(rng), coeff(rng)));
    CHECK(radial_leq(absolute(cj.characteristic_linear(x)),
                     cj.characteristic_linear(absolute(x))));
  }
}

TEST_CASE("class projection") {
  Group F = Group::free_group(2);
  Conjugacy cj(F, 1);
  RingElement a = Complex(2, 0) * u(F, "abA") + Complex(3, 0) * u(F, "a");
  CHECK(project_class(cj, a, F.parse("b")) == Complex(2, 0) * u(F, "abA"));
  // the identity class catches only the identity coefficient
  CHECK(project_class(cj, a, F.identity()).empty());

  // partition of unity over classes meeting the support
  std::mt19937_64 rng(23);
  BallTable B = F.ball(4);
  std::uniform_int_distribution<std::size_t> idx(0, B.elements.size() - 1);
  std::uniform_real_distribution<double> coeff(-2.0, 2.0);
  for (int i = 0; i < 50; ++i) {
    RingElement x;
    for (int t = 0; t < 6; ++t) x.add(B.elements[idx(rng)], Complex(coeff(rng), coeff(rng)));
    std::set<Word> reps;
    RingElement sum;
    for (const auto& [g, c] : x.support()) {
      GroupElement r = cj.class_representative(g).representative;
      if (reps.insert(r.word()).second) sum += project_class(cj, x, r);
    }
    CHECK(sum == x);
    // idempotent and radial
    RingElement p = project_class(cj, x, F.parse("b"));
    CHECK(project_class(cj, p, F.parse("b")) == p);
    CHECK(absolute(project_class(cj, x, F.parse("b"))) ==
          project_class(cj, absolute(x), F.parse("b")));
  }

  // projection commutes with the characteristic map
  for (int i = 0; i < 20; ++i) {
    RingElement x;
    for (int t = 0; t < 5; ++t) x.add(B.elements[idx(rng)], Complex(coeff(rng), coeff(rng)));
    GroupElement cls = F.parse("b");
    CHECK(cj.characteristic_linear(project_class(cj, x, cls)) ==
          project_class(cj, cj.characteristic_linear(x), cls));
  }
}

TEST_CASE("form projection commutes with the hochschild boundary") {
  Group F = Group::free_group(2);
  Conjugacy cj(F, 1);
  BallTable B = F.ball(2);
  std::mt19937_64 rng(29);
  std::uniform_int_distribution<std::size_t> idx(0, B.elements.size() - 1);
  std::uniform_real_distribution<double> coeff(-2.0, 2.0);

  // degree-1 basis example
  FormElement w = FormElement::basis({F.parse("a"), F.parse("b")});
  CHECK(form_project(cj, w, F.parse("ab")) == w);
  CHECK(form_project(cj, w, F.identity()).empty());

  for (int i = 0; i < 60; ++i) {
    FormElement f(2);
    for (int t = 0; t < 4; ++t)
      f.add({B.elements[idx(rng)], B.elements[idx(rng)], B.elements[idx(rng)]},
            Complex(coeff(rng), coeff(rng)));
    // partition of unity
    std::set<Word> reps;
    FormElement sum(2);
    for (const auto& [tuple, c] : f.support()) {
      GroupElement r = cj.class_representative(tuple_product(F, tuple)).representative;
      if (reps.insert(r.word()).second) sum += form_project(cj, f, r);
    }
    CHECK(sum == f);
    // commutation for every class meeting the support
    for (const auto& rw : reps) {
      GroupElement r{Word(rw)};
      CHECK(hochschild_boundary(F, form_project(cj, f, r)) ==
            form_project(cj, hochschild_boundary(F, f), r));
    }
  }
}

TEST_CASE("conjugator growth probe") {
  Group Z = Group::free_group(1);
  Conjugacy cz(Z, 1);
  auto repz = cz.gromov_probe(4);
  CHECK(repz.empirical_c10 == doctest::Approx(0.0));

  Group F = Group::free_group(2);
  Conjugacy cf(F, 1);
  auto repf = cf.gromov_probe(4);
  CHECK(repf.empirical_c10 <= 1.0 + 1e-12);
  CHECK(repf.pairs > 0);
}

TEST_CASE("convergence profile") {
  Group F = Group::free_group(2);
  Conjugacy cj(F, 1);
  auto rep = cj.convergence_profile(6);
  CHECK(rep.all_converged);
  CHECK(rep.max_iterations <= 8);
  for (const auto& row : rep.rows)
    CHECK(row.iterations <=
          rep.fitted_c11 * std::log2(1.0 + row.length) + rep.fitted_c12 + 1e-9);

  auto rep1 = cj.convergence_profile(1);
  CHECK(rep1.max_iterations <= 2);

  Group Z = Group::free_group(1);
  Conjugacy cz(Z, 1);
  auto repz = cz.convergence_profile(5);
  CHECK(repz.max_iterations <= 1);
}

TEST_CASE("fixed points are exactly the representatives") {
  Group F = Group::free_group(2);
  Conjugacy cj(F, 1);
  std::set<Word> reps;
  for (const auto& g : F.ball(6).elements)
    reps.insert(cj.class_representative(g).representative.word());
  for (const auto& rw : reps) {
    GroupElement h{Word(rw)};
    CHECK(cj.reduce_once(h) == h);
  }
}

TEST_CASE("growth probe over the step splitting") {
  Group F = Group::free_group(2);
  Conjugacy cj(F, 1);
  RingElement gen;
  for (const char* w : {"a", "b", "A", "B"}) gen.add(F.parse(w), Complex(0.25, 0.0));
  auto psi = [&cj](const GroupElement& g) { return cj.step_splitting(g); };
  auto rep = special_growth_probe(F, psi, gen, 2, 0, 5, /*l1_surrogate=*/true);
  CHECK(rep.values.size() == 5);
  CHECK(rep.polynomial_looking);
}

TEST_CASE("boundary commutes with projection through degree 3, exhaustive") {
  Group F = Group::free_group(2);
  Conjugacy cj(F, 1);
  BallTable B = F.ball(2);
  GroupElement off = F.parse("bb");
  GroupElement off_rep = cj.class_representative(off).representative;
  long long checked = 0;
  for (const auto& g0 : B.elements)
    for (const auto& g1 : B.elements)
      for (const auto& g2 : B.elements)
        for (const auto& g3 : B.elements) {
          FormElement w = FormElement::basis({g0, g1, g2, g3});
          GroupElement prod = tuple_product(F, {g0, g1, g2, g3});
          GroupElement cls = cj.class_representative(prod).representative;
          bool ok = hochschild_boundary(F, form_project(cj, w, cls)) ==
                    form_project(cj, hochschild_boundary(F, w), cls);
          // a class the tuple misses kills both sides
          if (cls != off_rep)
            ok = ok && hochschild_boundary(F, form_project(cj, w, off)).empty() &&
                 form_project(cj, hochschild_boundary(F, w), off).empty();
          if (!ok) {
            CHECK(ok);
          }
          ++checked;
        }
  CHECK(checked == 83521);
}
