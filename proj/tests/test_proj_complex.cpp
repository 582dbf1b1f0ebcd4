#include <gtest/gtest.h>

#include <numeric>
#include <random>
#include <set>

#include "oracles/injective_words.hpp"
#include "rigidity/proj_complex.hpp"

using namespace rigidity;
using oracle::dense_oracle_rank;
using oracle::injective_words_homology;

namespace {

std::vector<int> colors_of(const GPComplex& c) {
  std::vector<int> out;
  for (const auto& v : c.vertices) out.push_back(static_cast<int>(v.residue_class()));
  return out;
}

}  // namespace

TEST(P1, Counts) {
  EXPECT_EQ(enumerate_p1(Ring::make(3, 0, 1)).size(), 4u);
  EXPECT_EQ(enumerate_p1(Ring::make(3, 1, 2)).size(), 12u);
  EXPECT_EQ(enumerate_p1(Ring::make(5, 1, 2)).size(), 30u);
  for (const auto& r : {Ring::make(2, 2, 2), Ring::make(3, 2, 3), Ring::make(2, 1, 2, 2)}) {
    std::uint64_t q = r->q(), expected = q + 1;
    for (std::size_t i = 1; i < r->num_monomials(); ++i) expected *= q;
    EXPECT_EQ(enumerate_p1(r).size(), expected) << r->descriptor();
  }
}

TEST(P1, NormalFormsAreDistinctAndIdsRoundTrip) {
  auto r = Ring::make(3, 1, 3);
  ProjectiveLine line(r);
  std::set<std::pair<std::uint64_t, std::uint64_t>> seen;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const auto& p = line[i];
    EXPECT_TRUE(p.u.is_one() || (p.w.is_one() && !p.u.is_unit()));
    EXPECT_TRUE(seen.insert({p.u.index(), p.w.index()}).second);
    EXPECT_EQ(line.id_of(p), i);
  }
  // every unimodular vector normalizes onto the list
  for (std::uint64_t a = 0; a < *r->size(); ++a)
    for (std::uint64_t b = 0; b < *r->size(); ++b) {
      auto u = r->element_at(a), w = r->element_at(b);
      if (!u.is_unit() && !w.is_unit()) {
        EXPECT_THROW(ProjPoint::normalize(u, w), std::invalid_argument);
        continue;
      }
      auto n = ProjPoint::normalize(u, w);
      EXPECT_TRUE(det2(n, {u, w}).is_zero());
      EXPECT_LT(line.id_of(n), line.size());
    }
}

TEST(P1, GuardIsEnforced) {
  EXPECT_THROW(ProjectiveLine(Ring::make(7, 2, 3), 1000), GuardExceeded);
}

TEST(GeneralPosition, Examples) {
  auto f5 = Ring::make(5, 0, 1);
  std::vector<ProjPoint> a{ProjPoint::zero(f5), ProjPoint::infinity(f5)};
  EXPECT_TRUE(is_general_position(a));
  a.push_back(ProjPoint::one(f5));
  EXPECT_TRUE(is_general_position(a));
  auto d5 = Ring::make(5, 1, 2);
  std::vector<ProjPoint> b{ProjPoint::zero(d5), ProjPoint::affine(d5->variable(0))};
  EXPECT_FALSE(is_general_position(b));
  EXPECT_EQ(det2(b[0], b[1]), d5->variable(0));
}

TEST(GeneralPosition, DeterminantCriterionMatchesResidueClasses) {
  for (const auto& r : {Ring::make(3, 1, 2), Ring::make(2, 2, 2), Ring::make(5, 1, 2)}) {
    ProjectiveLine line(r);
    for (std::size_t i = 0; i < line.size(); ++i)
      for (std::size_t j = 0; j < line.size(); ++j) {
        std::vector<ProjPoint> pair{line[i], line[j]};
        ASSERT_EQ(is_general_position(pair), line.residue_class(i) != line.residue_class(j));
      }
  }
}

TEST(GeneralPosition, FieldCaseIsDistinctness) {
  for (std::uint32_t q : {2u, 3u, 5u, 7u}) {
    auto r = Ring::make(q, 0, 1);
    ProjectiveLine line(r);
    for (std::size_t i = 0; i < line.size(); ++i)
      for (std::size_t j = 0; j < line.size(); ++j) {
        std::vector<ProjPoint> pair{line[i], line[j]};
        ASSERT_EQ(is_general_position(pair), i != j);
      }
  }
  auto f4 = Ring::make(2, 0, 1, 2);
  ProjectiveLine l4(f4);
  for (std::size_t i = 0; i < l4.size(); ++i)
    for (std::size_t j = 0; j < l4.size(); ++j) {
      std::vector<ProjPoint> pair{l4[i], l4[j]};
      ASSERT_EQ(is_general_position(pair), i != j);
    }
}

TEST(GPComplex, BasisSizes) {
  auto c3 = build_gp_complex(Ring::make(3, 0, 1), 1, 2);
  EXPECT_EQ(c3.basis_size(0), 4u);
  EXPECT_EQ(c3.basis_size(1), 12u);
  auto d3 = build_gp_complex(Ring::make(3, 1, 2), 1, 2);
  EXPECT_EQ(d3.basis_size(0), 12u);
  EXPECT_EQ(d3.basis_size(1), 108u);
  auto f5 = build_gp_complex(Ring::make(5, 0, 1), 6, 2);
  EXPECT_EQ(f5.basis_size(5), 720u);  // all orderings of the 6 points
  EXPECT_EQ(f5.basis_size(6), 0u);
}

TEST(GPComplex, BoundariesComposeToZero) {
  for (const auto& r : {Ring::make(3, 0, 1), Ring::make(5, 0, 1), Ring::make(3, 1, 2),
                        Ring::make(2, 1, 2, 2), Ring::make(2, 2, 2)})
    for (std::uint32_t p : {2u, 3u, 5u}) {
      auto c = build_gp_complex(r, 3, p);
      EXPECT_TRUE(c.boundaries_compose_to_zero()) << r->descriptor() << " p=" << p;
      EXPECT_TRUE((c.augmentation * c.boundary[1]).is_zero());
    }
}

TEST(GPComplex, EveryBasisTupleIsGeneralPosition) {
  auto r = Ring::make(3, 1, 2);
  auto c = build_gp_complex(r, 2, 3);
  for (int d = 0; d <= 2; ++d)
    for (std::size_t i = 0; i < c.basis_size(d); ++i) {
      std::vector<ProjPoint> pts;
      for (auto v : c.basis[d][i]) pts.push_back(c.vertices[v]);
      ASSERT_TRUE(is_general_position(pts));
    }
}

TEST(GPComplex, HomologyExamples) {
  auto f7 = build_gp_complex(Ring::make(7, 0, 1), 3, 2);
  auto h = f7.homology_dims(2);
  EXPECT_EQ(h, (std::vector<std::size_t>{0, 0, 0}));
  std::vector<int> distinct(8);
  std::iota(distinct.begin(), distinct.end(), 0);
  EXPECT_EQ(injective_words_homology(distinct, 2, 2), h);
  EXPECT_EQ(f7.homology_dims(2, RankBackend::Dense), h);

  auto d5 = build_gp_complex(Ring::make(5, 1, 2), 2, 3);
  auto h5 = d5.homology_dims(1);
  EXPECT_EQ(h5, (std::vector<std::size_t>{0, 0}));
  EXPECT_EQ(injective_words_homology(colors_of(d5), 1, 3), h5);

  auto r = Ring::make(5, 0, 1);
  auto single = build_gp_complex_on(r, {ProjPoint::zero(r)}, 1, 2);
  EXPECT_EQ(single.homology_dims(0), (std::vector<std::size_t>{0}));
  EXPECT_THROW(single.homology_dims(1), std::invalid_argument);
}

TEST(GPComplex, HomologyMatchesInjectiveWordsOracle) {
  for (const auto& r : {Ring::make(3, 0, 1), Ring::make(5, 0, 1), Ring::make(3, 1, 2),
                        Ring::make(2, 2, 2)})
    for (std::uint32_t p : {2u, 3u}) {
      auto c = build_gp_complex(r, 3, p);
      EXPECT_EQ(c.homology_dims(2), injective_words_homology(colors_of(c), 2, p))
          << r->descriptor() << " p=" << p;
    }
}

TEST(GPComplex, HomologyInvariantUnderBasisPermutation) {
  std::mt19937_64 rng(99);
  auto c = build_gp_complex(Ring::make(3, 1, 2), 3, 2);
  auto base = c.homology_dims(2);
  for (int trial = 0; trial < 3; ++trial) {
    std::vector<std::vector<std::size_t>> perm(c.basis.size());
    for (std::size_t d = 0; d < c.basis.size(); ++d) {
      perm[d].resize(c.basis_size(static_cast<int>(d)));
      std::iota(perm[d].begin(), perm[d].end(), 0);
      std::shuffle(perm[d].begin(), perm[d].end(), rng);
    }
    std::vector<std::size_t> ranks(c.basis.size() + 1, 0);
    ranks[0] = 1;
    for (std::size_t d = 1; d < c.basis.size(); ++d)
      ranks[d] = gf_rank(c.boundary[d].permuted(perm[d - 1], perm[d]));
    for (int d = 0; d <= 2; ++d)
      EXPECT_EQ(c.basis_size(d) - ranks[d] - ranks[d + 1], base[d]);
  }
}

TEST(GPComplex, SparseAndDenseAgreeOnGrid) {
  for (const auto& r : {Ring::make(3, 0, 1), Ring::make(5, 0, 1), Ring::make(7, 0, 1),
                        Ring::make(3, 1, 2), Ring::make(2, 1, 2, 2)})
    for (std::uint32_t p : {2u, 3u}) {
      auto c = build_gp_complex(r, 3, p);
      for (std::size_t d = 1; d < c.basis.size(); ++d)
        ASSERT_EQ(matrix_rank(c.boundary[d], RankBackend::Sparse),
                  matrix_rank(c.boundary[d], RankBackend::Dense))
            << r->descriptor() << " d=" << d;
    }
}

TEST(GPComplex, AssertedDegreeLimit) {
  EXPECT_EQ(asserted_degree_limit(Ring::make(7, 0, 1), 3), 2);
  EXPECT_EQ(asserted_degree_limit(Ring::make(3, 0, 1), 4), 1);
  EXPECT_EQ(asserted_degree_limit(Ring::make(5, 1, 2), 2), 1);
}

TEST(GPComplex, GuardIsEnforced) {
  EXPECT_THROW(enumerate_colored_tuples(std::vector<std::uint32_t>{0, 1, 2, 3, 4, 5}, 4, 100),
               GuardExceeded);
}
