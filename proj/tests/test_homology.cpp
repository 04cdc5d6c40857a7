#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "sga/homology.hpp"

#include "fixtures.hpp"

#include <algorithm>
#include <set>

using namespace sga;
using namespace sga::testing;

namespace {

// GF(4) as an F_2 algebra: basis {1, w} with w^2 = w + 1 (non-split field)
AlgebraPtr make_gf4() {
  const uint32_t p = 2;
  Vec one(p, 2), w(p, 2), wp1(p, 2);
  one.set(0, 1);
  w.set(1, 1);
  wp1.set(0, 1);
  wp1.set(1, 1);
  std::vector<std::vector<Vec>> table = {{one, w}, {w, wp1}};
  return std::make_shared<FinDimAlgebra>(
      p, std::vector<std::string>{"one", "w"}, table, one);
}

// quiver with arrows a: 0 -> 1 and b: 0 -> 2 (radical layers not simple)
QuiverAlgebra make_two_arrows(uint32_t p) {
  QuiverPresentation q;
  q.p = p;
  q.vertices = {"1", "2", "3"};
  q.arrows = {{"a", 0, 1}, {"b", 0, 2}};
  q.nilpotency_bound = 2;
  return algebra_from_quiver(q);
}

size_t span_dim(const Mat& cols) { return rank_of(cols); }

std::multiset<size_t> pim_dims(const AlgebraData& d) {
  std::multiset<size_t> out;
  for (const auto& m : d.pim) out.insert(m.dim);
  return out;
}

} // namespace

TEST_CASE("radical vanishes exactly on semisimple algebras") {
  CHECK(radical_algebra(*make_m2(2)).cols() == 0);
  CHECK(radical_algebra(*make_m2(5)).cols() == 0);
  CHECK(radical_algebra(*make_gf4()).cols() == 0); // semisimple, not split

  // group algebra of Z/2 in characteristic 3 is semisimple
  SkewAlgebra kz2_3 = skew_group_algebra(make_trivial_k(3));
  CHECK(radical_algebra(*kz2_3.algebra).cols() == 0);
}

TEST_CASE("radical of path and local algebras") {
  for (uint32_t p : {2u, 5u}) {
    QuiverAlgebra ka2 = make_ka2(p);
    Mat rad = radical_algebra(*ka2.algebra);
    CHECK(rad.cols() == 1);
    CHECK(in_span(rad, Vec::unit(p, 3, 2))); // the arrow spans it

    QuiverAlgebra kxx = make_kxx(p);
    Mat radx = radical_algebra(*kxx.algebra);
    CHECK(radx.cols() == 1);
    CHECK(in_span(radx, Vec::unit(p, 2, 1)));
  }

  // group algebra of Z/2 in characteristic 2: radical spans 1 + s
  SkewAlgebra kz2 = skew_group_algebra(make_trivial_k(2));
  Mat rad = radical_algebra(*kz2.algebra);
  CHECK(rad.cols() == 1);
  Vec one_plus_s(2, 2);
  one_plus_s.set(0, 1);
  one_plus_s.set(1, 1);
  CHECK(in_span(rad, one_plus_s));
}

TEST_CASE("splitness detection") {
  CHECK(check_split(*make_m2(2), radical_algebra(*make_m2(2))));
  {
    QuiverAlgebra ka2 = make_ka2(2);
    CHECK(check_split(*ka2.algebra, radical_algebra(*ka2.algebra)));
  }
  {
    SkewAlgebra kz2 = skew_group_algebra(make_trivial_k(2));
    CHECK(check_split(*kz2.algebra, radical_algebra(*kz2.algebra)));
  }
  AlgebraPtr gf4 = make_gf4();
  CHECK_FALSE(check_split(*gf4, radical_algebra(*gf4)));
}

TEST_CASE("locality trichotomy") {
  CHECK(is_local_algebra(*make_kxx(2).algebra));
  CHECK(is_local_algebra(*skew_group_algebra(make_trivial_k(2)).algebra));
  CHECK_FALSE(is_local_algebra(*make_ka2(2).algebra));
  CHECK_FALSE(is_local_algebra(*make_m2(2)));
  CHECK_THROWS_AS((void)is_local_algebra(*make_gf4()), NonSplitError);
}

TEST_CASE("primitive idempotents of small algebras") {
  {
    QuiverAlgebra ka2 = make_ka2(2);
    auto es = primitive_idempotents(*ka2.algebra);
    REQUIRE(es.size() == 2);
    Vec e1 = Vec::unit(2, 3, 0), e2 = Vec::unit(2, 3, 1);
    bool match = (es[0] == e1 && es[1] == e2) || (es[0] == e2 && es[1] == e1);
    CHECK(match);
    CHECK(check_primitive_idempotent_set(*ka2.algebra, es).ok());
  }
  {
    auto m2 = make_m2(3);
    auto es = primitive_idempotents(*m2);
    REQUIRE(es.size() == 2);
    CHECK(check_primitive_idempotent_set(*m2, es).ok());
  }
  {
    // local algebra: the unit is the only primitive idempotent
    SkewAlgebra kz2 = skew_group_algebra(make_trivial_k(2));
    auto es = primitive_idempotents(*kz2.algebra);
    REQUIRE(es.size() == 1);
    CHECK(es[0] == kz2.algebra->unit());
  }
  CHECK_THROWS_AS((void)primitive_idempotents(*make_gf4()), NonSplitError);
}

TEST_CASE("primitive set checker flags imprimitive idempotents") {
  auto m2 = make_m2(2);
  auto res = check_primitive_idempotent_set(*m2, {m2->unit()});
  CHECK(res.basic.ok());       // 1 alone is complete and orthogonal
  CHECK_FALSE(res.all_primitive); // but not primitive in M2
  CHECK_FALSE(res.ok());
}

TEST_CASE("analysis of the A2 path algebra") {
  QuiverAlgebra ka2 = make_ka2(2);
  AlgebraData d = analyze_algebra(ka2.algebra);
  CHECK(d.split);
  CHECK(d.idem.size() == 2);
  CHECK(d.n_classes == 2);
  CHECK(pim_dims(d) == std::multiset<size_t>{1, 2});
  for (const auto& s : d.simple) CHECK(s.dim == 1);
  CHECK(d.cartan[0][0] == 1);
  CHECK(d.cartan[1][1] == 1);
  size_t total = d.cartan[0][0] + d.cartan[0][1] + d.cartan[1][0] + d.cartan[1][1];
  CHECK(total == 3); // one off-diagonal link from the arrow

  auto mult = top_multiplicities(d, regular_module(ka2.algebra));
  CHECK(mult == std::vector<size_t>{1, 1});
}

TEST_CASE("analysis of a matrix algebra") {
  AlgebraPtr m2 = make_m2(2);
  AlgebraData d = analyze_algebra(m2);
  CHECK(d.split);
  CHECK(d.idem.size() == 2);
  CHECK(d.n_classes == 1);
  CHECK(d.pim[0].dim == 2);
  CHECK(d.simple[0].dim == 2);
  CHECK(d.cartan == std::vector<std::vector<size_t>>{{1}});
  CHECK(top_multiplicities(d, regular_module(m2)) == std::vector<size_t>{2});

  GlobalDimReport g = global_dimension(d, 5);
  CHECK(g.overall.is_exact());
  CHECK(g.overall.value == 0);
}

TEST_CASE("analysis stops at a non-split algebra") {
  AlgebraData d = analyze_algebra(make_gf4());
  CHECK_FALSE(d.split);
  CHECK(d.idem.empty());
  CHECK_THROWS_AS(d.require_split("test"), NonSplitError);
  CHECK_THROWS_AS((void)global_dimension(d, 3), NonSplitError);
  CHECK_THROWS_AS((void)finitistic_dimension(d, 3), NonSplitError);
}

TEST_CASE("projective covers over the A2 path algebra") {
  QuiverAlgebra ka2 = make_ka2(2);
  AlgebraData d = analyze_algebra(ka2.algebra);

  for (size_t c = 0; c < d.n_classes; ++c) CHECK(is_projective(d, d.pim[c]));

  // the top of the two-dimensional PIM has a one-dimensional syzygy
  size_t big = d.pim[0].dim == 2 ? 0 : 1;
  CoverData cov = projective_cover(d, d.simple[big]);
  CHECK(cov.classes == std::vector<size_t>{big});
  CHECK(cov.total.dim == 2);
  CHECK(cov.kernel.dim == 1);
  CHECK(span_dim(cov.map) == 1);

  CoverData zero = projective_cover(d, zero_module(ka2.algebra));
  CHECK(zero.total.dim == 0);
  CHECK(zero.kernel.dim == 0);
  CHECK(is_projective(d, zero_module(ka2.algebra)));

  Resolution res = resolve(d, d.simple[big], 5);
  REQUIRE(res.steps.size() == 2); // S, then its simple projective syzygy
  CHECK(res.steps[1].kernel.dim == 0);

  GlobalDimReport g = global_dimension(d, 5);
  CHECK(g.overall.is_exact());
  CHECK(g.overall.value == 1);
}

TEST_CASE("periodic syzygies certify infinite projective dimension") {
  // dual numbers: 0 -> k -> A -> k -> 0 repeats forever
  QuiverAlgebra kxx = make_kxx(2);
  AlgebraData d = analyze_algebra(kxx.algebra);
  DimensionReport pd = pd_module(d, d.simple[0], 8);
  CHECK(pd.is_infinite());
  REQUIRE(pd.period.has_value());
  CHECK(*pd.period == std::pair<size_t, size_t>{0, 1});

  GlobalDimReport g = global_dimension(d, 8);
  CHECK(g.overall.is_infinite());
}

TEST_CASE("group algebra of Z/2 in characteristic 2 has infinite global dimension") {
  SkewAlgebra kz2 = skew_group_algebra(make_trivial_k(2));
  AlgebraData d = analyze_algebra(kz2.algebra);
  CHECK(d.n_classes == 1);
  CHECK(d.cartan == std::vector<std::vector<size_t>>{{2}});

  GlobalDimReport g = global_dimension(d, 8);
  CHECK(g.overall.is_infinite());
  REQUIRE(g.overall.period.has_value());
  CHECK(*g.overall.period == std::pair<size_t, size_t>{0, 1});

  FinDimReport f = finitistic_dimension(d, 8);
  CHECK(f.nakayama_exact);
  CHECK(f.overall.is_exact());
  CHECK(f.overall.value == 0);
}

TEST_CASE("skew algebra of the sign action in characteristic 3") {
  SkewAlgebra sk = skew_group_algebra(make_sign_kxx(3));
  AlgebraData d = analyze_algebra(sk.algebra);
  CHECK(d.split);
  CHECK(d.idem.size() == 2);
  CHECK(d.n_classes == 2);
  CHECK(pim_dims(d) == std::multiset<size_t>{2, 2});
  CHECK(is_nakayama(d));

  // the two simples are syzygies of one another: period two
  GlobalDimReport g = global_dimension(d, 8);
  CHECK(g.overall.is_infinite());
  REQUIRE(g.overall.period.has_value());
  CHECK(*g.overall.period == std::pair<size_t, size_t>{0, 2});
  for (const auto& r : g.per_simple) {
    CHECK(r.is_infinite());
    CHECK(*r.period == std::pair<size_t, size_t>{0, 2});
  }

  CHECK(indecomposables_nakayama(d).size() == 4);
  FinDimReport f = finitistic_dimension(d, 8);
  CHECK(f.nakayama_exact);
  CHECK(f.overall.is_exact());
  CHECK(f.overall.value == 0);
}

TEST_CASE("skew algebra of the component swap on two A2 copies") {
  SkewAlgebra sk = skew_group_algebra(make_swap_ka2_ka2(2));
  REQUIRE(sk.algebra->dim() == 12);
  AlgebraData d = analyze_algebra(sk.algebra);
  CHECK(d.split);
  CHECK(d.idem.size() == 4);
  CHECK(d.n_classes == 2);
  CHECK(pim_dims(d) == std::multiset<size_t>{2, 4});

  GlobalDimReport g = global_dimension(d, 6);
  CHECK(g.overall.is_exact());
  CHECK(g.overall.value == 1);

  CHECK(is_nakayama(d));
  FinDimReport f = finitistic_dimension(d, 6);
  CHECK(f.nakayama_exact);
  CHECK(f.overall.is_exact());
  CHECK(f.overall.value == 1);
}

TEST_CASE("matrix skew algebra over two points is semisimple") {
  SkewAlgebra sk = skew_group_algebra(make_swap_kk(2));
  AlgebraData d = analyze_algebra(sk.algebra);
  CHECK(d.idem.size() == 2);
  CHECK(d.n_classes == 1);
  CHECK(global_dimension(d, 4).overall.value == 0);
  CHECK(is_nakayama(d));
  FinDimReport f = finitistic_dimension(d, 4);
  CHECK(f.nakayama_exact);
  CHECK(f.overall.value == 0);
}

TEST_CASE("two arrows out of one vertex break the Nakayama property") {
  QuiverAlgebra q = make_two_arrows(2);
  AlgebraData d = analyze_algebra(q.algebra);
  CHECK(d.n_classes == 3);
  CHECK_FALSE(is_nakayama(d));

  GlobalDimReport g = global_dimension(d, 6);
  CHECK(g.overall.is_exact());
  CHECK(g.overall.value == 1);

  // without the Nakayama catalog the finitistic bound stays a lower bound
  FinDimReport f = finitistic_dimension(d, 6);
  CHECK_FALSE(f.nakayama_exact);
  CHECK(f.overall.kind == DimensionReport::Kind::at_least);
  CHECK(f.overall.value == 1);
}

TEST_CASE("module decomposition into indecomposables") {
  {
    AlgebraPtr m2 = make_m2(2);
    auto parts = decompose_module(regular_module(m2));
    REQUIRE(parts.size() == 2);
    CHECK(parts[0].dim == 2);
    CHECK(parts[1].dim == 2);
    for (const auto& m : parts) CHECK(verify_module(m).empty());
  }
  {
    QuiverAlgebra ka2 = make_ka2(2);
    auto parts = decompose_module(regular_module(ka2.algebra));
    REQUIRE(parts.size() == 2);
    std::multiset<size_t> dims = {parts[0].dim, parts[1].dim};
    CHECK(dims == std::multiset<size_t>{1, 2});
  }
  {
    // a square of a simple has matrix endomorphism algebra
    QuiverAlgebra ka2 = make_ka2(2);
    AlgebraData d = analyze_algebra(ka2.algebra);
    size_t big = d.pim[0].dim == 2 ? 0 : 1;
    AModule twice = direct_sum(d.simple[big], d.simple[big]);
    auto parts = decompose_module(twice);
    REQUIRE(parts.size() == 2);
    CHECK(parts[0].dim == 1);
    CHECK(parts[1].dim == 1);
  }
}

TEST_CASE("restricting the skew regular module to the base") {
  // over two swapped points the skew algebra restricts to two regular copies
  SkewAlgebra sk = skew_group_algebra(make_swap_kk(2));
  AModule restricted =
      restrict_scalars(regular_module(sk.algebra), sk.base, sk.base_embedding());
  AModule twice = direct_sum(regular_module(sk.base), regular_module(sk.base));
  IsoResult iso = module_iso(restricted, twice);
  CHECK(iso.verdict == IsoVerdict::iso);
  CHECK(iso.certified);
}

TEST_CASE("fixed points of the regular module over the fixed algebra") {
  GroupAction act = make_swap_kk(2);
  SkewAlgebra sk = skew_group_algebra(act);
  FixedAlgebra fx = fixed_algebra(act, {0, 1});
  AModule m = fixed_points_module(sk, fx, {0, 1}, regular_module(sk.algebra));
  CHECK(m.alg == fx.algebra);
  CHECK(m.dim == 2);
  REQUIRE(m.rho.size() == 1);
  CHECK(m.rho[0].is_identity());
  CHECK(verify_module(m).empty());
}

TEST_CASE("random modules are deterministic per seed") {
  QuiverAlgebra ka2 = make_ka2(3);
  AlgebraData d = analyze_algebra(ka2.algebra);
  Rng r1(42), r2(42);
  AModule a = random_module(d, r1);
  AModule b = random_module(d, r2);
  CHECK(a.dim == b.dim);
  REQUIRE(a.rho.size() == b.rho.size());
  for (size_t i = 0; i < a.rho.size(); ++i) CHECK(a.rho[i] == b.rho[i]);
  CHECK(verify_module(a).empty());
  CHECK(a.dim > 0);
}
