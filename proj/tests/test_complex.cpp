#include "algebras.hpp"
#include "doctest.h"
#include "leflab/complex.hpp"
#include "oracles.hpp"

using namespace leflab;

namespace {

// Betti numbers through the independent integer-elimination rank oracle.
int betti_oracle(const InvariantComplex& cx, int p) {
  const int kdim = space_dim(cx.dim(), p) - oracles::rank_bareiss(cx.d().matrix(p));
  const int imdim = p == 0 ? 0 : oracles::rank_bareiss(cx.d().matrix(p - 1));
  return kdim - imdim;
}

}  // namespace

TEST_CASE("heisenberg 3 complex: differential, bracket, cohomology") {
  const InvariantComplex cx = InvariantComplex::build(algebras::heisenberg(1));
  CHECK(cx.dim() == 3);
  CHECK(cx.d_form(Form::monomial(3, {3})) == Form::monomial(3, {1, 2}, rat(-2)));
  CHECK(cx.d_form(Form::monomial(3, {1})).is_zero());
  CHECK((cx.d() * cx.d()).is_zero());

  // de^3 = -2 e^{12}  <=>  [E1, E2] = 2 E3
  const VectorField b12 = cx.bracket(1, 2);
  CHECK(b12 == VectorField{rat(0), rat(0), rat(2)});
  CHECK(cx.bracket(2, 1) == VectorField{rat(0), rat(0), rat(-2)});
  CHECK(cx.bracket(1, 3) == VectorField{rat(0), rat(0), rat(0)});

  const int expected[] = {1, 2, 2, 1};
  for (int p = 0; p <= 3; ++p) {
    CHECK(cx.betti(p) == expected[p]);
    CHECK(cx.betti(p) == betti_oracle(cx, p));
  }
}

TEST_CASE("heisenberg 5 and 7 betti numbers") {
  const InvariantComplex h5 = InvariantComplex::build(algebras::heisenberg(2));
  const int expected5[] = {1, 4, 5, 5, 4, 1};
  for (int p = 0; p <= 5; ++p) {
    CHECK(h5.betti(p) == expected5[p]);
    CHECK(h5.betti(p) == betti_oracle(h5, p));
  }
  const InvariantComplex h7 = InvariantComplex::build(algebras::heisenberg(3));
  int euler = 0;
  for (int p = 0; p <= 7; ++p) {
    CHECK(h7.betti(p) == betti_oracle(h7, p));
    euler += (p % 2 == 0 ? 1 : -1) * h7.betti(p);
  }
  CHECK(euler == 0);
  // Poincare duality for unimodular algebras
  for (int p = 0; p <= 7; ++p) CHECK(h7.betti(p) == h7.betti(7 - p));
}

TEST_CASE("n5 complex cohomology") {
  const InvariantComplex cx = InvariantComplex::build(algebras::n5_contact());
  const int expected[] = {1, 3, 4, 4, 3, 1};
  for (int p = 0; p <= 5; ++p) {
    CHECK(cx.betti(p) == betti_oracle(cx, p));
    CHECK(cx.betti(p) == expected[p]);
  }
}

TEST_CASE("jacobi violation is rejected with a named witness") {
  CHECK_THROWS_WITH_AS(InvariantComplex::build(algebras::broken_jacobi()),
                       doctest::Contains("Jacobi"), std::invalid_argument);
  try {
    InvariantComplex::build(algebras::broken_jacobi());
  } catch (const std::invalid_argument& e) {
    const std::string msg = e.what();
    CHECK(msg.find("e3") != std::string::npos);
    CHECK(msg.find("(E1, E2, E3)") != std::string::npos);
  }
}

TEST_CASE("malformed presentations are rejected") {
  LieAlgebraSpec spec;
  spec.name = "bad";
  spec.dim = 3;
  spec.diff.assign(2, Form::zero(3, 2));
  CHECK_THROWS_AS(InvariantComplex::build(spec), std::invalid_argument);
  spec.diff.assign(3, Form::zero(3, 2));
  spec.diff[0] = Form::monomial(3, {1});  // wrong degree
  CHECK_THROWS_AS(InvariantComplex::build(spec), std::invalid_argument);
}

TEST_CASE("d matrix route equals the antiderivation route") {
  oracles::Rng rng(101);
  const InvariantComplex cx = InvariantComplex::build(algebras::heisenberg(2));
  for (int trial = 0; trial < 25; ++trial) {
    const int p = rng.uniform(0, 5);
    const Form f = rng.form(5, p);
    CHECK(cx.d().apply(f) == cx.d_form(f));
  }
  // antiderivation property of d
  for (int trial = 0; trial < 15; ++trial) {
    const int p = rng.uniform(0, 2), q = rng.uniform(0, 2);
    const Form a = rng.form(5, p), b = rng.form(5, q);
    const Rational sign(p % 2 == 0 ? 1 : -1);
    CHECK(cx.d_form(wedge(a, b)) ==
          wedge(cx.d_form(a), b) + wedge(a, cx.d_form(b)).scaled(sign));
  }
}

TEST_CASE("cohomology classes: representatives and coordinates") {
  const InvariantComplex cx = InvariantComplex::build(algebras::heisenberg(1));

  // degree 1: e1, e2 closed and independent; e3 is not closed
  const auto coords = cx.class_of(Form::monomial(3, {1}) + Form::monomial(3, {2}, rat(3)));
  REQUIRE(coords.size() == 2);
  CHECK_THROWS_AS(cx.class_of(Form::monomial(3, {3})), std::invalid_argument);

  // e12 = d(-e3/2) is exact: its class vanishes
  const auto exact = cx.class_of(Form::monomial(3, {1, 2}));
  for (const Rational& c : exact) CHECK(c == rat(0));

  // representatives are closed, mutually independent, and reproduce themselves
  for (int p = 0; p <= 3; ++p) {
    const auto& reps = cx.cohomology(p).reps;
    for (size_t i = 0; i < reps.size(); ++i) {
      CHECK(cx.d_form(reps[i]).is_zero());
      const auto self = cx.class_of(reps[i]);
      for (size_t j = 0; j < self.size(); ++j) {
        CHECK(self[j] == (i == j ? rat(1) : rat(0)));
      }
    }
  }

  // class coordinates are invariant under adding an exact form
  const Form rep2 = cx.cohomology(2).reps[0];
  const Form shifted2 = rep2 + cx.d_form(Form::monomial(3, {3}, rat(5)));
  CHECK(cx.class_of(shifted2) == cx.class_of(rep2));
}
