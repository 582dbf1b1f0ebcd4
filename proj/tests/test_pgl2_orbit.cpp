#include <gtest/gtest.h>

#include <random>

#include "rigidity/pgl2_orbit.hpp"

using namespace rigidity;

namespace {

std::vector<std::uint64_t> indices(const OrbitSimplex& s) {
  std::vector<std::uint64_t> out;
  for (const auto& a : s) out.push_back(a.index());
  return out;
}

// Cross-ratio-style invariant computed directly: for g in PGL_2, apply to
// the whole tuple, then re-frame.
std::vector<std::uint64_t> frame_after(const ProjectiveMatrix& g, const std::vector<ProjPoint>& t) {
  std::vector<ProjPoint> moved;
  for (const auto& v : t) moved.push_back(g.apply(v));
  return indices(canonical_frame(moved).alphas);
}

}  // namespace

TEST(ProjectiveMatrix, CanonicalFormIsPerClass) {
  auto r = Ring::make(5, 1, 2);
  std::mt19937_64 rng(1);
  for (int i = 0; i < 200; ++i) {
    auto g = random_pgl2(r, rng);
    auto s = r->element_at(1 + rng() % 4 + 5 * (rng() % 5));  // random unit
    ProjectiveMatrix h(g.a() * s, g.b() * s, g.c() * s, g.d() * s);
    EXPECT_EQ(g, h);
    EXPECT_TRUE((g * g.inverse()).is_identity());
  }
  EXPECT_THROW(ProjectiveMatrix(r->one(), r->one(), r->one(), r->one()), std::invalid_argument);
}

TEST(CanonicalFrame, Examples) {
  auto f7 = Ring::make(7, 0, 1);
  auto zero = ProjPoint::zero(f7), inf = ProjPoint::infinity(f7), one = ProjPoint::one(f7);
  std::vector<ProjPoint> t{zero, inf, one};
  auto f = canonical_frame(t);
  EXPECT_TRUE(f.transform.is_identity());
  EXPECT_TRUE(f.alphas.empty());

  std::vector<ProjPoint> swapped{inf, zero, one};
  auto g = canonical_frame(swapped);
  EXPECT_EQ(g.transform, ProjectiveMatrix(f7->zero(), f7->one(), f7->one(), f7->zero()));
  EXPECT_TRUE(g.alphas.empty());

  std::vector<ProjPoint> four{zero, inf, one, ProjPoint::affine(f7->constant(2))};
  auto h = canonical_frame(four);
  EXPECT_TRUE(h.transform.is_identity());
  EXPECT_EQ(indices(h.alphas), (std::vector<std::uint64_t>{2}));

  std::vector<ProjPoint> bad{zero, zero, one};
  EXPECT_THROW(canonical_frame(bad), TupleNotGP);
  auto d5 = Ring::make(5, 1, 2);
  std::vector<ProjPoint> close{ProjPoint::zero(d5), ProjPoint::infinity(d5),
                               ProjPoint::affine(d5->variable(0))};
  EXPECT_THROW(canonical_frame(close), TupleNotGP);
}

TEST(CanonicalFrame, MapsFirstThreePointsAndIsIdempotent) {
  std::mt19937_64 rng(7);
  for (const auto& r : {Ring::make(7, 0, 1), Ring::make(5, 1, 2), Ring::make(3, 2, 2)}) {
    ProjectiveLine line(r);
    for (int i = 0; i < 200; ++i) {
      auto t = random_gp_tuple(line, std::min<std::size_t>(r->q() + 1, 5), rng);
      auto f = canonical_frame(t);
      EXPECT_EQ(f.transform.apply(t[0]), ProjPoint::zero(r));
      EXPECT_EQ(f.transform.apply(t[1]), ProjPoint::infinity(r));
      EXPECT_EQ(f.transform.apply(t[2]), ProjPoint::one(r));
      auto again = canonical_frame(framed_tuple(f.alphas, r));
      EXPECT_TRUE(again.transform.is_identity());
      EXPECT_EQ(indices(again.alphas), indices(f.alphas));
      EXPECT_TRUE(is_admissible_simplex(f.alphas));
    }
  }
}

TEST(CanonicalFrame, OrbitInvariance) {
  for (const auto& r : {Ring::make(7, 0, 1), Ring::make(5, 1, 2), Ring::make(7, 1, 2),
                        Ring::make(3, 2, 2), Ring::make(2, 1, 2, 2)}) {
    std::mt19937_64 rng(r->descriptor_hash());
    ProjectiveLine line(r);
    for (int i = 0; i < 1000; ++i) {
      auto t = random_gp_tuple(line, std::min<std::size_t>(r->q() + 1, 6), rng);
      auto g = random_pgl2(r, rng);
      ASSERT_EQ(frame_after(g, t), indices(canonical_frame(t).alphas)) << r->descriptor();
    }
  }
}

TEST(OrbitFace, FiveFacesOverF7) {
  auto f7 = Ring::make(7, 0, 1);
  OrbitSimplex s{f7->constant(2), f7->constant(3)};
  const std::vector<std::pair<int, std::uint64_t>> expected{{1, 4}, {-1, 6}, {1, 5}, {-1, 3}, {1, 2}};
  for (std::size_t i = 0; i < 5; ++i) {
    auto [sign, face] = orbit_face(s, i);
    ASSERT_EQ(face.size(), 1u);
    EXPECT_EQ(sign, expected[i].first) << i;
    EXPECT_EQ(face[0].index(), expected[i].second) << i;
  }
  EXPECT_THROW(orbit_face(s, 5), std::out_of_range);
}

TEST(OrbitFace, ClosedFormsOnAllAdmissiblePairs) {
  for (const auto& r : {Ring::make(7, 0, 1), Ring::make(5, 1, 2), Ring::make(2, 1, 2, 2)}) {
    auto adm = enumerate_admissible(r);
    const auto one = r->one();
    for (const auto& a : adm)
      for (const auto& b : adm) {
        if (!(a - b).is_unit()) continue;
        OrbitSimplex s{a, b};
        std::vector<RingElement> closed{(one - a) / (one - b), (one - a.inverse()) / (one - b.inverse()),
                                        b / a, b, a};
        for (std::size_t i = 0; i < 5; ++i) {
          auto [sign, face] = orbit_face(s, i);
          ASSERT_EQ(sign, i % 2 ? -1 : 1);
          ASSERT_EQ(face[0], closed[i]) << r->descriptor() << " face " << i;
        }
      }
  }
}

TEST(OrbitComplex, BasisSizes) {
  auto f5 = build_orbit_complex(Ring::make(5, 0, 1), 1, 3);
  EXPECT_EQ(f5.basis_size(0), 3u);
  EXPECT_EQ(indices(f5.simplex(0, 0)), (std::vector<std::uint64_t>{2}));
  EXPECT_EQ(indices(f5.simplex(0, 2)), (std::vector<std::uint64_t>{4}));
  auto r = Ring::make(5, 1, 2);
  auto d5 = build_orbit_complex(r, 1, 3);
  EXPECT_EQ(d5.basis_size(0), 15u);
  // pairs of admissible elements with distinct residues, counted directly
  auto adm = enumerate_admissible(r);
  std::size_t pairs = 0;
  for (const auto& a : adm)
    for (const auto& b : adm) pairs += (a - b).is_unit();
  EXPECT_EQ(d5.basis_size(1), pairs);
  for (const auto& ring : {Ring::make(7, 1, 2), Ring::make(3, 2, 2), Ring::make(2, 1, 3, 2)}) {
    std::uint64_t expected = ring->q() - 2;
    for (std::size_t i = 1; i < ring->num_monomials(); ++i) expected *= ring->q();
    EXPECT_EQ(enumerate_orbit_bases(ring, 0)[0].size(), expected);
  }
}

TEST(OrbitComplex, BoundariesComposeToZero) {
  for (const auto& r : {Ring::make(5, 0, 1), Ring::make(7, 0, 1), Ring::make(11, 0, 1),
                        Ring::make(5, 1, 2), Ring::make(2, 1, 2, 2), Ring::make(3, 1, 3)})
    for (std::uint32_t p : {2u, 3u}) {
      auto c = build_orbit_complex(r, 3, p);
      EXPECT_TRUE(c.boundaries_compose_to_zero()) << r->descriptor() << " p=" << p;
      EXPECT_TRUE(c.rational_face_closed);
    }
}

TEST(QuotientComplex, Examples) {
  auto k = Ring::make(5, 0, 1);
  auto R = Ring::make(5, 1, 2);
  auto dk = build_orbit_complex(k, 2, 3), dR = build_orbit_complex(R, 2, 3);
  auto q = build_quotient_complex(dk, dR);
  EXPECT_TRUE(q.subcomplex_verified);
  EXPECT_EQ(q.basis_size(0), 12u);
  EXPECT_TRUE(q.boundaries_compose_to_zero());
  EXPECT_EQ(q.homology.size(), 2u);

  auto same = build_quotient_complex(dk, dk);
  EXPECT_TRUE(same.subcomplex_verified);
  for (int d = 0; d <= 2; ++d) EXPECT_EQ(same.basis_size(d), 0u);
  EXPECT_EQ(same.homology, (std::vector<std::size_t>{0, 0}));
  EXPECT_THROW(build_quotient_complex(dk, build_orbit_complex(Ring::make(7, 1, 2), 2, 3)),
               std::invalid_argument);
}

TEST(QuotientComplex, RationalFlagFaceClosedOnRandomSimplices) {
  auto r = Ring::make(7, 1, 2);
  auto bases = enumerate_orbit_bases(r, 2);
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 1000; ++trial) {
    int d = 1 + static_cast<int>(rng() % 2);
    // draw rational simplices from the F_7 constants inside A
    std::vector<std::size_t> rational;
    for (std::size_t i = 0; i < bases[d].size(); ++i) {
      auto t = bases[d][i];
      if (std::all_of(t.begin(), t.end(), [](std::uint32_t v) { return v < 7; })) rational.push_back(i);
    }
    auto t = bases[d][rational[rng() % rational.size()]];
    OrbitSimplex s;
    for (auto v : t) s.push_back(r->element_at(v));
    for (std::size_t i = 0; i < s.size() + 3; ++i)
      for (const auto& a : orbit_face(s, i).second) ASSERT_TRUE(a.is_constant());
  }
}

TEST(E1Page, Examples) {
  UnitGroupData d7(Ring::make(7, 1, 2));
  auto page = e1_page(d7, 3, 2);
  for (int c : {0, 1})
    for (int q = 0; q <= 2; ++q) EXPECT_EQ(page.at(c, q), 1u);
  EXPECT_EQ(page.dims[2], (std::vector<std::uint64_t>{1, 0, 0}));
  EXPECT_EQ(page.at(3, 0), 5u * 7u);
  EXPECT_EQ(page.at(3, 1), 0u);

  UnitGroupData f5(Ring::make(5, 0, 1));
  auto p5 = e1_page(f5, 3, 2);
  EXPECT_EQ(p5.dims[0], (std::vector<std::uint64_t>{1, 0, 0}));
  EXPECT_EQ(p5.dims[1], (std::vector<std::uint64_t>{1, 0, 0}));

  UnitGroupData d5(Ring::make(5, 1, 2));
  auto a = e1_page(f5, 2, 4), b = e1_page(d5, 2, 4);
  for (int c = 0; c <= 2; ++c) EXPECT_EQ(a.dims[c], b.dims[c]);
}

TEST(E1Page, LowColumnsAgreeOnGrid) {
  for (std::uint32_t q : {3u, 5u, 7u})
    for (int l : {2, 3}) {
      UnitGroupData k(Ring::make(q, 0, 1)), R(Ring::make(q, 1, l));
      for (std::uint32_t p : {2u, 3u}) {
        if (p == q) continue;
        auto a = e1_page(k, p, 4, 2), b = e1_page(R, p, 4, 2);
        for (int c = 0; c <= 2; ++c) EXPECT_EQ(a.dims[c], b.dims[c]) << "q=" << q << " l=" << l;
        for (int row = 1; row <= 4; ++row) EXPECT_EQ(b.at(2, row), 0u);
      }
    }
}

TEST(Stabilizers, SmallFields) {
  auto f3 = stabilizer_orders(Ring::make(3, 0, 1));
  EXPECT_EQ(f3.group_order, 24u);
  EXPECT_EQ(f3.point, 6u);
  EXPECT_EQ(f3.pair, 2u);
  EXPECT_EQ(f3.triple, 1u);
  EXPECT_EQ(f3.orbit_counts, (std::vector<std::uint64_t>{1, 1, 1}));
  EXPECT_TRUE(f3.matches());

  auto f5 = stabilizer_orders(Ring::make(5, 0, 1));
  EXPECT_EQ(f5.group_order, 120u);
  EXPECT_EQ(f5.point, 20u);
  EXPECT_EQ(f5.pair, 4u);
  EXPECT_EQ(f5.triple, 1u);
  EXPECT_TRUE(f5.matches());
}

TEST(Stabilizers, DualNumbers) {
  // |PGL_2| = |GL_2| / |A^x|
  auto r = Ring::make(3, 1, 2);
  auto rep = stabilizer_orders(r);
  EXPECT_EQ(rep.group_order, 648u);
  EXPECT_TRUE(rep.matches());
}
