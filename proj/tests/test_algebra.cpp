#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "fixtures.hpp"
#include "sga/algebra.hpp"
#include "sga/skew.hpp"

using namespace sga;
using namespace sga::testing;

TEST_CASE("matrix algebra satisfies the axioms and corners work") {
  auto m2 = make_m2(2);
  CHECK(m2->dim() == 4);
  CHECK(verify_algebra(*m2).empty());

  // E12 * E21 = E11, E21 * E12 = E22, E12 * E12 = 0
  CHECK(m2->mul(m2->basis_vec(1), m2->basis_vec(2)) == m2->basis_vec(0));
  CHECK(m2->mul(m2->basis_vec(2), m2->basis_vec(1)) == m2->basis_vec(3));
  CHECK(m2->mul(m2->basis_vec(1), m2->basis_vec(1)).is_zero());

  auto op = opposite_algebra(*m2);
  CHECK(verify_algebra(*op).empty());
  CHECK(op->mul(m2->basis_vec(1), m2->basis_vec(2)) == m2->basis_vec(3));

  auto corner = corner_algebra(*m2, m2->basis_vec(0)); // E11 M2 E11 = k E11
  CHECK(corner.algebra->dim() == 1);
  CHECK(corner.basis.col(0) == m2->basis_vec(0));
}

TEST_CASE("verify_algebra reports violations on a broken table") {
  uint32_t p = 2;
  std::vector<std::vector<Vec>> table(2, std::vector<Vec>(2, Vec(p, 2)));
  Vec b0 = Vec::unit(p, 2, 0), b1 = Vec::unit(p, 2, 1);
  table[0][0] = b0;
  table[0][1] = b1;
  table[1][0] = b0; // b1 * b0 = b0 breaks the right unit law
  table[1][1] = b0;
  FinDimAlgebra a(p, {}, table, b0);
  auto viol = verify_algebra(a);
  REQUIRE(!viol.empty());
  bool unit_issue = false, assoc_issue = false;
  for (const auto& v : viol) {
    if (v.kind == "right_unit") unit_issue = true;
    if (v.kind == "assoc") assoc_issue = true;
  }
  CHECK(unit_issue);
  CHECK(assoc_issue);
}

TEST_CASE("path algebra of the A2 quiver") {
  auto qa = make_ka2(2);
  const auto& a = *qa.algebra;
  REQUIRE(a.dim() == 3);
  CHECK(a.label(0) == "e_1");
  CHECK(a.label(1) == "e_2");
  CHECK(a.label(2) == "a");
  CHECK(verify_algebra(a).empty());

  Vec e1 = qa.vertex_idempotents[0], e2 = qa.vertex_idempotents[1];
  Vec ar = qa.arrow_elements[0];
  CHECK(a.is_idempotent(e1));
  CHECK(a.mul(e1, e2).is_zero());
  CHECK(a.mul(ar, e1) == ar);  // a restricted to its source
  CHECK(a.mul(e2, ar) == ar);  // and its target on the left
  CHECK(a.mul(ar, e2).is_zero());
  CHECK(a.mul(e1, ar).is_zero());
  CHECK(a.mul(ar, ar).is_zero());
  CHECK(a.unit() == e1 + e2);

  // A e_1 = span{e_1, a}: the right multiplication by e_1 has rank 2
  CHECK(rank_of(a.right_mult(e1)) == 2);
  CHECK(rank_of(a.right_mult(e2)) == 1);
}

TEST_CASE("loop quiver gives the dual numbers, with or without the relation") {
  auto qa = make_kxx(3);
  REQUIRE(qa.algebra->dim() == 2);
  Vec x = qa.arrow_elements[0];
  CHECK(qa.algebra->mul(x, x).is_zero());

  // same algebra with the relation spelled out and a higher bound
  QuiverPresentation q;
  q.p = 3;
  q.vertices = {"v"};
  q.arrows = {{"x", 0, 0}};
  q.relations = {{{1, {"x", "x"}}}};
  q.nilpotency_bound = 4;
  auto qb = algebra_from_quiver(q);
  REQUIRE(qb.algebra->dim() == 2);
  CHECK(qb.algebra->mul(qb.arrow_elements[0], qb.arrow_elements[0]).is_zero());
  CHECK(verify_algebra(*qb.algebra).empty());
}

TEST_CASE("quiver validation rejects malformed presentations") {
  QuiverPresentation q;
  q.p = 2;
  q.vertices = {"1", "2"};
  q.arrows = {{"a", 0, 1}};
  q.nilpotency_bound = 0;
  CHECK_THROWS_AS(algebra_from_quiver(q), std::invalid_argument);
  q.nilpotency_bound = 2;
  q.relations = {{{1, {"zz"}}}};
  CHECK_THROWS_AS(algebra_from_quiver(q), std::invalid_argument);
  q.relations = {{{1, {"a"}}, {1, {"a", "a"}}}}; // a*a not composable
  CHECK_THROWS_AS(algebra_from_quiver(q), std::invalid_argument);
  q.relations.clear();
  q.arrows.push_back({"a", 0, 1});
  CHECK_THROWS_AS(algebra_from_quiver(q), std::invalid_argument);
}

TEST_CASE("relation terms that cancel mod p are dropped") {
  QuiverPresentation q;
  q.p = 2;
  q.vertices = {"v"};
  q.arrows = {{"x", 0, 0}};
  q.relations = {{{2, {"x"}}}}; // 2x = 0 at p = 2: no constraint
  q.nilpotency_bound = 2;
  auto qa = algebra_from_quiver(q);
  CHECK(qa.algebra->dim() == 2);
}

TEST_CASE("non-parallel relation terms are rejected") {
  QuiverPresentation q;
  q.p = 2;
  q.vertices = {"1", "2"};
  q.arrows = {{"a", 0, 1}, {"b", 1, 0}};
  q.relations = {{{1, {"a"}}, {1, {"b"}}}};
  q.nilpotency_bound = 3;
  CHECK_THROWS_AS(algebra_from_quiver(q), std::invalid_argument);
}

TEST_CASE("quotient of the length-3 loop algebra by the square of the arrow") {
  QuiverPresentation q;
  q.p = 2;
  q.vertices = {"v"};
  q.arrows = {{"x", 0, 0}};
  q.nilpotency_bound = 3; // k[x]/(x^3), basis e, x, x^2
  auto qa = algebra_from_quiver(q);
  REQUIRE(qa.algebra->dim() == 3);
  const auto& a = *qa.algebra;
  Vec x = qa.arrow_elements[0];
  Vec x2 = a.mul(x, x);
  CHECK(!x2.is_zero());

  auto quot = quotient_algebra(a, Mat::from_cols(2, 3, {x2}));
  CHECK(quot.algebra->dim() == 2);
  Vec xq = quot.qmap.reduce(x);
  CHECK(quot.algebra->mul(xq, xq).is_zero());

  // span{x} is not an ideal here (x * x = x^2 falls outside), and span{1}
  // contains the unit; both must be rejected
  CHECK_THROWS_AS(quotient_algebra(a, Mat::from_cols(2, 3, {x})),
                  std::invalid_argument);
  CHECK_THROWS_AS(quotient_algebra(a, Mat::from_cols(2, 3, {a.unit()})),
                  std::invalid_argument);
}

TEST_CASE("product algebra matches the two-vertex quiver") {
  QuiverPresentation qv;
  qv.p = 3;
  qv.vertices = {"v"};
  qv.nilpotency_bound = 1;
  auto k = algebra_from_quiver(qv).algebra;
  auto kk = product_algebra(*k, *k);
  auto kk_quiver = make_kk(3).algebra;
  REQUIRE(kk->dim() == 2);
  for (size_t i = 0; i < 2; ++i)
    for (size_t j = 0; j < 2; ++j)
      CHECK(kk->basis_product(i, j) == kk_quiver->basis_product(i, j));
  CHECK(kk->unit() == kk_quiver->unit());
}

TEST_CASE("group construction and Sylow subgroups") {
  auto z6 = FiniteGroup::cyclic(6);
  CHECK(z6.order() == 6);
  CHECK(z6.identity() == 0);
  CHECK(z6.inverse(1) == 5);
  CHECK(z6.element_order(1) == 6);
  CHECK(z6.element_order(3) == 2);
  CHECK(z6.find_sylow(2) == std::vector<size_t>{0, 3});
  CHECK(z6.find_sylow(3) == std::vector<size_t>{0, 2, 4});
  CHECK(z6.find_sylow(5) == std::vector<size_t>{0});

  auto s3 = make_s3();
  CHECK(s3.order() == 6);
  auto syl2 = s3.find_sylow(2);
  auto syl3 = s3.find_sylow(3);
  CHECK(verify_sylow(s3, syl2, 2).ok());
  CHECK(verify_sylow(s3, syl3, 3).ok());
  CHECK(syl2.size() == 2);
  CHECK(syl3.size() == 3);
  CHECK_FALSE(verify_sylow(s3, {s3.identity()}, 2).ok());
  CHECK_FALSE(verify_sylow(s3, {0, 1, 2}, 2).ok());

  CHECK(s3.is_subgroup(syl3));
  auto sub = s3.subgroup(syl3);
  CHECK(sub.group.order() == 3);
  CHECK(sub.parent_of[0] == s3.identity());

  CHECK_THROWS_AS(FiniteGroup::from_table({}, {{0, 1}, {1, 1}}),
                  std::invalid_argument);
}

TEST_CASE("group actions verify and restrict") {
  auto act = make_swap_kk(2);
  CHECK(act.verify().empty());

  auto whole = act.group().subgroup({0, 1});
  auto trivial = act.group().subgroup({0});
  CHECK(act.restricted(whole).verify().empty());
  CHECK(act.restricted(trivial).group().order() == 1);

  // a non-multiplicative family is flagged
  Mat bad(2, 2, 2);
  bad.set(0, 0, 1);
  bad.set(1, 0, 1);
  bad.set(1, 1, 1);
  GroupAction broken(act.algebra_ptr(), FiniteGroup::cyclic(2),
                     {Mat::identity(2, 2), bad});
  CHECK(!broken.verify().empty());

  // sign action on dual numbers is genuine for p = 3, degenerate check at p = 2
  CHECK(make_sign_kxx(3).verify().empty());
  CHECK(make_sign_kxx(2).verify().empty()); // -1 == 1, still a valid action
}

TEST_CASE("skew group algebra of the factor swap on k x k") {
  auto act = make_swap_kk(2);
  auto sk = skew_group_algebra(act);
  const auto& a = *sk.algebra;
  REQUIRE(a.dim() == 4);
  CHECK(verify_algebra(a).empty());
  CHECK(a.label(0) == "e_1@g0");
  CHECK(a.label(3) == "e_2@g1");

  // hand-checked products: with e_i the two factor units and s the swap,
  // (e1 x s)(e1 x 1) = e1 s(e1) x s = e1 e2 x s = 0
  Vec e1s = Vec::unit(2, 4, sk.flat(0, 1));
  Vec e11 = Vec::unit(2, 4, sk.flat(0, 0));
  CHECK(a.mul(e1s, e11).is_zero());
  // (e1 x s)(e2 x s) = e1 s(e2) x s^2 = e1 x 1
  Vec e2s = Vec::unit(2, 4, sk.flat(1, 1));
  CHECK(a.mul(e1s, e2s) == e11);
  // (1 x s)(e1 x 1)(1 x s) = e2 x 1
  Vec one_s = sk.embed_group(1);
  Vec e21 = Vec::unit(2, 4, sk.flat(1, 0));
  CHECK(a.mul(one_s, a.mul(e11, one_s)) == e21);

  CHECK(a.mul(sk.embed_base(act.algebra().unit()), e1s) == e1s);
  CHECK(sk.base_embedding().cols() == 2);
}

TEST_CASE("skew group algebra of the sign action on dual numbers") {
  auto act = make_sign_kxx(3);
  auto sk = skew_group_algebra(act);
  const auto& a = *sk.algebra;
  REQUIRE(a.dim() == 4);
  CHECK(verify_algebra(a).empty());

  // (x x s)(x x s) = x s(x) x 1 = -x^2 x 1 = 0
  Vec xs = Vec::unit(3, 4, sk.flat(1, 1));
  CHECK(a.mul(xs, xs).is_zero());
  // (1 x s)(x x 1) = -x x s
  Vec x1 = Vec::unit(3, 4, sk.flat(1, 0));
  Vec got = a.mul(sk.embed_group(1), x1);
  Vec want(3, 4);
  want.set(sk.flat(1, 1), 2);
  CHECK(got == want);
}

TEST_CASE("fixed algebra of the component swap is the diagonal") {
  auto act = make_swap_kk(2);
  auto fx = fixed_algebra(act, {0, 1});
  CHECK(fx.algebra->dim() == 1);
  Vec diag(2, 2);
  diag.set(0, 1);
  diag.set(1, 1);
  CHECK(fx.embedding.col(0) == diag);
  CHECK(fx.trace_span_agrees); // free regime
  CHECK(verify_algebra(*fx.algebra).empty());

  // over the trivial subgroup everything is fixed
  auto full = fixed_algebra(act, {0});
  CHECK(full.algebra->dim() == 2);
  CHECK(full.trace_span_agrees);
}

TEST_CASE("fixed algebra of the component swap on kA2 x kA2") {
  auto act = make_swap_ka2_ka2(2);
  auto fx = fixed_algebra(act, {0, 1});
  REQUIRE(fx.algebra->dim() == 3);
  CHECK(fx.trace_span_agrees);
  CHECK(verify_algebra(*fx.algebra).empty());

  // the fixed algebra is again a path algebra of A2: two orthogonal
  // idempotents and a square-zero arrow between them
  const auto& f = *fx.algebra;
  size_t idem = 0, arrows = 0;
  for (size_t i = 0; i < 3; ++i) {
    Vec b = f.basis_vec(i);
    if (f.is_idempotent(b)) ++idem;
    if (f.mul(b, b).is_zero()) ++arrows;
  }
  CHECK(idem == 2);
  CHECK(arrows == 1);
}

TEST_CASE("trace span can disagree with the fixed subspace off the free regime") {
  // trivial Z/2 on k at p = 2: the trace sums to 2 = 0 but everything is fixed
  auto act = make_trivial_k(2);
  auto fx = fixed_algebra(act, {0, 1});
  CHECK(fx.algebra->dim() == 1);
  CHECK_FALSE(fx.trace_span_agrees);
}

TEST_CASE("idempotent set bookkeeping") {
  auto qa = make_ka2(2);
  const auto& a = *qa.algebra;
  auto good = check_idempotent_set(a, qa.vertex_idempotents);
  CHECK(good.ok());

  auto incomplete = check_idempotent_set(a, {qa.vertex_idempotents[0]});
  CHECK(!incomplete.complete);
  CHECK(incomplete.all_idempotent);

  auto overlapping = check_idempotent_set(
      a, {qa.vertex_idempotents[0], qa.vertex_idempotents[0]});
  CHECK(!overlapping.pairwise_orthogonal);

  auto not_idem = check_idempotent_set(a, {qa.arrow_elements[0]});
  CHECK(!not_idem.all_idempotent);
}

TEST_CASE("action on idempotents: closure and freeness") {
  auto swap = make_swap_kk(2);
  auto qa = make_kk(2);
  auto res = check_action_on_idempotents(swap, qa.vertex_idempotents, {0, 1});
  CHECK(res.closed);
  CHECK(res.free_action);
  CHECK(res.perm[1][0] == 1);
  CHECK(res.perm[1][1] == 0);

  auto trivial = make_trivial_k(2);
  QuiverPresentation q;
  q.p = 2;
  q.vertices = {"v"};
  q.nilpotency_bound = 1;
  auto k = algebra_from_quiver(q);
  auto res2 = check_action_on_idempotents(trivial, k.vertex_idempotents, {0, 1});
  CHECK(res2.closed);
  CHECK_FALSE(res2.free_action);

  // an idempotent set the action does not permute
  auto swap2 = make_swap_ka2_ka2(2);
  auto qb = make_ka2_ka2(2);
  std::vector<Vec> partial = {qb.vertex_idempotents[0], qb.vertex_idempotents[1]};
  auto res3 = check_action_on_idempotents(swap2, partial, {0, 1});
  CHECK_FALSE(res3.closed);
}

TEST_CASE("bimodule splitting exists for the diagonal but not for the Borel") {
  auto m2 = make_m2(3);
  // diagonal subalgebra: complement span{E12, E21} is stable both sides
  Mat diag = Mat::from_cols(3, 4, {m2->basis_vec(0), m2->basis_vec(3)});
  auto split = bimodule_splitting(*m2, diag);
  REQUIRE(split.has_value());
  CHECK((split->zeta * split->zeta) == split->zeta);
  CHECK(split->complement_basis.cols() == 2);
  // the projection must kill a complement stable under the subalgebra
  CHECK((split->zeta * m2->basis_vec(1)).is_zero());
  CHECK((split->zeta * m2->basis_vec(2)).is_zero());

  // upper triangular (Borel) subalgebra: no bimodule complement exists
  Mat borel = Mat::from_cols(
      3, 4, {m2->basis_vec(0), m2->basis_vec(1), m2->basis_vec(3)});
  CHECK_FALSE(bimodule_splitting(*m2, borel).has_value());

  // non-subalgebras are rejected
  Mat bad = Mat::from_cols(3, 4, {m2->basis_vec(1)});
  CHECK_THROWS_AS(bimodule_splitting(*m2, bad), std::invalid_argument);
}

TEST_CASE("bimodule splitting for fixed algebras of the swap fixtures") {
  auto fx = fixed_algebra(make_swap_kk(2), {0, 1});
  auto split = bimodule_splitting(fx);
  REQUIRE(split.has_value());
  CHECK(split->complement_basis.cols() == 1);

  auto fx2 = fixed_algebra(make_swap_ka2_ka2(2), {0, 1});
  auto split2 = bimodule_splitting(fx2);
  REQUIRE(split2.has_value());
  CHECK(split2->complement_basis.cols() == 3);
}
