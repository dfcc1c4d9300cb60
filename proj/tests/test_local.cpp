#include <gtest/gtest.h>

#include <random>
#include <set>

#include "oracles.hpp"
#include "qforms/error.hpp"
#include "qforms/local.hpp"

using namespace qforms;

namespace {

const Place kInf = Place::infinity();
Place P(std::uint64_t p) { return Place::prime(p); }

DiagonalForm ints(const std::vector<long>& a) {
  std::vector<Rational> e(a.begin(), a.end());
  return DiagonalForm(e);
}

std::vector<long> random_entries(std::mt19937_64& rng, int dim, long bound) {
  std::uniform_int_distribution<long> d(-bound, bound);
  std::vector<long> a;
  while (static_cast<int>(a.size()) < dim) {
    long x = d(rng);
    if (x) a.push_back(x);
  }
  return a;
}

}  // namespace

TEST(LocalInvariantsOp, Examples) {
  const auto a = local_invariants(DiagonalForm({1, 1, 5, -1}), P(3));
  EXPECT_TRUE(a.det.is_square());
  EXPECT_EQ(a.hasse, 1);
  const auto b = local_invariants(DiagonalForm({1, 1, 1, 1, -5}), kInf);
  EXPECT_EQ(b.signature, (Signature{4, 1}));
  const auto c = local_invariants(DiagonalForm({1, 1, 3, 3}), P(3));
  EXPECT_TRUE(c.det.is_square());
  EXPECT_EQ(c.hasse, -1);
}

TEST(LocalIsometric, Examples) {
  EXPECT_TRUE(local_isometric(DiagonalForm({1, 1}), DiagonalForm({2, 2}), P(5)));
  EXPECT_FALSE(local_isometric(DiagonalForm({1, 1}), DiagonalForm({1, -1}), kInf));
  EXPECT_FALSE(local_isometric(DiagonalForm({1, 1, 1, 1, -5}), DiagonalForm({1, 1, 3, 3, -5}), P(3)));
}

TEST(LocalIsotropic, Examples) {
  EXPECT_FALSE(local_isotropic(DiagonalForm({1, 1}), P(3)));
  EXPECT_FALSE(local_isotropic(DiagonalForm({1, 1, 3, 3}), P(3)));
  EXPECT_TRUE(local_isotropic(DiagonalForm({1, 1, 1, 1, 1}), P(2)));
  EXPECT_FALSE(local_isotropic(DiagonalForm({1, 1, 1}), kInf));
  EXPECT_TRUE(local_isotropic(DiagonalForm({1, -2}), kInf));
}

TEST(LocalIsotropic, MatchesHenselSearch) {
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 400; ++i) {
    const int dim = 2 + i % 4;
    const auto a = random_entries(rng, dim, 30);
    const auto q = ints(a);
    for (const auto& v : q.support()) {
      if (v.is_infinite()) continue;
      EXPECT_EQ(local_isotropic(q, v), oracle::padic_isotropic({a.begin(), a.end()}, v.p()))
          << q.to_string() << " at " << v.to_string();
    }
  }
}

TEST(LocalWittIndex, Examples) {
  for (std::uint64_t p : {0, 2, 3, 7}) {
    EXPECT_EQ(local_witt_index(DiagonalForm({1, -1, 1, -1}), p ? P(p) : kInf), 2);
  }
  EXPECT_EQ(local_witt_index(DiagonalForm({1, 1, 3, 3}), P(3)), 0);
  EXPECT_EQ(local_witt_index(DiagonalForm({1, 1, 1, 1, -5}), P(3)), 2);
}

TEST(LocalWittIndex, AgreesWithIsotropyAndTits) {
  std::mt19937_64 rng(99);
  for (int i = 0; i < 300; ++i) {
    const int dim = 3 + i % 6;
    const auto q = ints(random_entries(rng, dim, 50));
    for (const auto& v : q.support()) {
      const int w = local_witt_index(q, v);
      EXPECT_EQ(local_isotropic(q, v), w >= 1);
      const auto t = tits_index(q, v);
      EXPECT_EQ(t.witt_index, w) << q.to_string() << " at " << v.to_string();
      EXPECT_EQ(t.split, w == q.dim() / 2);
    }
  }
}

TEST(LocalFormExists, Examples) {
  for (std::uint64_t p : {2, 3, 5}) {
    const Place v = P(p);
    EXPECT_FALSE(local_form_exists(2, LocalClass::of(-1, v), -1, v));
    EXPECT_TRUE(local_form_exists(1, LocalClass::of(7, v), 1, v));
    EXPECT_FALSE(local_form_exists(1, LocalClass::of(7, v), -1, v));
    EXPECT_TRUE(local_form_exists(3, LocalClass::of(1, v), -1, v));
  }
}

TEST(LocalFormExists, RealizedByEnumeration) {
  // Every (dim <= 3, det, c) that exists is hit by some diagonal form on class
  // representatives, and nothing else is.
  for (std::uint64_t p : {2, 3}) {
    const Place v = P(p);
    const auto classes = LocalClass::all(v);
    for (int dim = 1; dim <= 3; ++dim) {
      std::set<std::pair<int, int>> seen;  // (index of det class, c)
      std::vector<std::size_t> idx(dim, 0);
      while (true) {
        std::vector<Rational> e;
        for (auto k : idx) e.emplace_back(classes[k].representative());
        const DiagonalForm q(e);
        const auto d = LocalClass::of(q.det(), v);
        const auto pos = std::find(classes.begin(), classes.end(), d) - classes.begin();
        seen.insert({static_cast<int>(pos), hasse_invariant(q, v)});
        std::size_t i = 0;
        while (i < idx.size() && idx[i] == classes.size() - 1) idx[i++] = 0;
        if (i == idx.size()) break;
        ++idx[i];
      }
      for (std::size_t k = 0; k < classes.size(); ++k) {
        for (int c : {1, -1}) {
          EXPECT_EQ(local_form_exists(dim, classes[k], c, v), seen.count({static_cast<int>(k), c}) == 1)
              << "dim " << dim << " class " << classes[k].representative() << " c " << c << " p " << p;
        }
      }
    }
  }
}

TEST(LocalSubform, Examples) {
  const DiagonalForm q({1, 1, 1, 1, -5});
  const DiagonalForm r({1, 1, 1, -5});
  for (const auto& v : q.support()) EXPECT_TRUE(local_subform(r, q, v));
  EXPECT_FALSE(local_subform(DiagonalForm({1, 1}), DiagonalForm({1, -1, -1}), kInf));
  for (std::uint64_t p : {2, 3, 5}) {
    EXPECT_TRUE(local_subform(DiagonalForm({1}), DiagonalForm({1, -1}), P(p)));
    EXPECT_TRUE(local_subform(DiagonalForm({7}), DiagonalForm({1, -1}), P(p)));
  }
  EXPECT_THROW(local_subform(q, r, P(3)), Error);
}

TEST(LocalSubform, DeletionsAreSubforms) {
  std::mt19937_64 rng(8);
  for (int i = 0; i < 150; ++i) {
    const auto q = ints(random_entries(rng, 2 + i % 6, 40));
    std::uniform_int_distribution<std::size_t> pick(0, q.entries().size() - 1);
    const auto r = delete_entries(q, {pick(rng)});
    for (const auto& v : q.support()) EXPECT_TRUE(local_subform(r, q, v));
  }
}

TEST(TitsIndexOp, Examples) {
  const auto a = tits_index(DiagonalForm({1, -1, 1, -1}), P(3));
  EXPECT_EQ(a.symbol(), "1D_{2,2}");
  EXPECT_TRUE(a.split);
  EXPECT_EQ(tits_index(DiagonalForm({1, 1, 3, 3}), P(3)).symbol(), "1D_{2,0}");
  EXPECT_EQ(tits_index(DiagonalForm({1, 1, 1, 1, -5}), P(3)).symbol(), "B_{2,2}");
  EXPECT_EQ(tits_index(DiagonalForm({1, 1, 5, -1}), P(3)).symbol(), "1D_{2,2}");
  EXPECT_EQ(tits_index(DiagonalForm({3, 3, 5, -1}), P(3)).symbol(), "1D_{2,0}");
  EXPECT_EQ(tits_index(DiagonalForm({1, 1, 1, 1, 1, -5}), P(3)).family, TitsFamily::DOuter);
  EXPECT_EQ(tits_index(DiagonalForm({1, 1, 1, 1, -5}), kInf).witt_index, 1);
  EXPECT_THROW(tits_index(DiagonalForm({1, 1}), P(3)), Error);
}

TEST(TitsIndexOp, CodimensionOneDeletionsOfInnerForms) {
  // Deleting one entry from a 1D_{n,n} form gives B_{n-1,n-1}; from 1D_{n,n-2}
  // it gives B_{n-1,n-2}.
  std::mt19937_64 rng(31);
  int checked = 0;
  for (int i = 0; i < 3000 && checked < 400; ++i) {
    const int m = 4 + 2 * (i % 3);
    const auto q = ints(random_entries(rng, m, 40));
    for (const auto& v : q.support()) {
      if (v.is_infinite()) continue;
      const auto t = tits_index(q, v);
      if (t.family != TitsFamily::DInner) continue;
      ++checked;
      for (std::size_t k = 0; k < q.entries().size(); ++k) {
        const auto r = tits_index(delete_entries(q, {k}), v);
        EXPECT_EQ(r.family, TitsFamily::B);
        EXPECT_EQ(r.split, t.split) << q.to_string() << " at " << v.to_string();
      }
    }
  }
  EXPECT_GT(checked, 50);
}

TEST(LocalIsometric, EquivalenceUnderRediagonalization) {
  std::mt19937_64 rng(12);
  for (int i = 0; i < 60; ++i) {
    const auto q = ints(random_entries(rng, 2 + i % 5, 25));
    const auto r = rediagonalize(q, i);
    for (const auto& v : union_support({&q, &r})) EXPECT_TRUE(local_isometric(q, r, v));
  }
}
