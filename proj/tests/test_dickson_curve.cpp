#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "theta/dickson_curve.hpp"
#include "theta/io.hpp"

using namespace theta;

TEST(Dickson, SmallCases) {
  const Field f1 = make_field(1);
  EXPECT_EQ(dickson_eval(*f1, 3, 1), 0u);  // x^3 + x at 1
  const Field f = make_field(8);
  for (Word x = 0; x < 256; ++x) EXPECT_EQ(dickson_eval(*f, 1, x), x);
  EXPECT_EQ(dickson_eval(2, f->element(7)).bits(), f->mul(7, 7));
}

TEST(Dickson, RecurrenceMatchesClosedForm) {
  for (unsigned t : {1u, 2u, 3u, 4u, 5u, 6u, 8u}) {
    const Field f = make_field(t);
    for (unsigned m = 1; m <= 10; ++m)
      for (Word x = 0; x < f->size(); ++x)
        ASSERT_EQ(dickson_eval(*f, m, x), oracle::dickson_closed(m, x, f->modulus(), t)) << t << ' ' << m << ' ' << x;
  }
  // closed-form coefficients for m = 5: x^5 + 5x^3 + 5x -> x^5 + x^3 + x
  EXPECT_EQ(oracle::dickson_coefficient(5, 1), 5u);
  EXPECT_EQ(oracle::dickson_coefficient(5, 2), 5u);
  EXPECT_EQ(oracle::dickson_coefficient(6, 3), 2u);
}

TEST(Dickson, FunctionalIdentityRandomized) {
  const Field f = make_field(12);
  std::mt19937_64 rng(12);
  std::uniform_int_distribution<Word> pick(1, 4095);
  for (int i = 0; i < 100; ++i) {
    const Word g = pick(rng), gi = f->inv(g);
    ASSERT_EQ(dickson_eval(*f, 5, g ^ gi), f->pow(g, 5) ^ f->pow(gi, 5));
  }
}

TEST(RootSets, SmallFieldValues) {
  const auto r2 = root_sets(make_field(1), 3);
  EXPECT_EQ(r2.S, std::vector<Word>{1});
  EXPECT_TRUE(r2.T.empty());
  const auto r4 = root_sets(make_field(2), 5);
  EXPECT_EQ(r4.S.size(), 2u);
  EXPECT_TRUE(r4.T.empty());
  const auto r8 = root_sets(make_field(3), 9);
  EXPECT_FALSE(r8.T.empty());
  EXPECT_THROW(root_sets(make_field(3), 1), std::invalid_argument);
  EXPECT_THROW(root_sets(make_field(3), 7), std::invalid_argument);
  EXPECT_NO_THROW(root_sets(make_field(3), 3));
}

TEST(RootSets, ThetaImageIsAllRootsNotOnlyS) {
  // {gamma + gamma^-1 : |gamma| divides q+1, gamma != 1} is the full root set of
  // D_{q+1}; S is the part closed under inversion.
  for (unsigned n = 1; n <= 8; ++n) {
    const Field f = make_field(n);
    const auto rs = root_sets(f, f->size() + 1);
    ASSERT_TRUE(rs.image_is_roots && rs.s_is_paired_image);
    EXPECT_TRUE(*rs.image_is_roots) << n;
    EXPECT_TRUE(*rs.s_is_paired_image) << n;
    const auto img = theta_image_of_norm_one(f);
    EXPECT_EQ(img.size(), f->size() / 2);
    EXPECT_EQ(img == rs.S, n <= 2) << n;
  }
}

TEST(RootSets, SetInvariants) {
  for (unsigned n = 1; n <= 12; ++n) {
    const Field f = make_field(n);
    const auto rs = root_sets(f, f->size() + 1, 4);
    std::vector<Word> both;
    std::set_intersection(rs.S.begin(), rs.S.end(), rs.T.begin(), rs.T.end(), std::back_inserter(both));
    EXPECT_TRUE(both.empty());
    for (Word a : rs.S) EXPECT_TRUE(std::binary_search(rs.S.begin(), rs.S.end(), f->inv(a)));
    for (Word a : rs.T) {
      EXPECT_FALSE(std::binary_search(rs.T.begin(), rs.T.end(), f->inv(a)));
      EXPECT_EQ(f->trace(a), 0u);
      EXPECT_EQ(f->trace(f->inv(a)), 1u);
    }
  }
}

TEST(RootSets, RootsAreThetaImagesOfDivisorOrders) {
  // alpha is a root of D_m iff alpha = gamma + 1/gamma with |gamma| dividing m, for every m | q+1
  for (unsigned n = 1; n <= 6; ++n) {
    const Field f = make_field(n), big = make_field(2 * n);
    const Embedding e(f, big);
    for (auto m : factorize(f->size() + 1).divisors()) {
      if (m == 1) continue;
      std::vector<Word> img;
      for (Word g : big->subgroup(m)) {
        if (g == 1) continue;
        img.push_back(*e.preimage(g ^ big->inv(g)));
      }
      std::sort(img.begin(), img.end());
      img.erase(std::unique(img.begin(), img.end()), img.end());
      std::vector<Word> roots;
      for (Word x = 1; x < f->size(); ++x)
        if (dickson_eval(*f, m, x) == 0) roots.push_back(x);
      EXPECT_EQ(img, roots) << n << ' ' << m;
    }
  }
}

TEST(Kloosterman, ValuesAndCount) {
  EXPECT_EQ(kloosterman(*make_field(1)), 1);
  EXPECT_EQ(kloosterman(*make_field(2)), 3);
  const auto n2 = count_N(make_field(1));
  EXPECT_EQ(n2.N, 1);
  EXPECT_TRUE(n2.matches);
  const auto n4 = count_N(make_field(2));
  EXPECT_EQ(n4.N, 2);
  EXPECT_TRUE(n4.matches);
  for (unsigned n = 1; n <= 12; ++n) {
    const Field f = make_field(n);
    const std::int64_t k = kloosterman(*f);
    EXPECT_LE(static_cast<double>(k * k), 4.0 * static_cast<double>(f->size()));
    EXPECT_EQ((static_cast<std::int64_t>(f->size()) + 1 + k) % 4, 0);
    const auto nc = count_N(f, 3);
    EXPECT_TRUE(nc.matches) << n;
    EXPECT_GE(nc.N, 1);
  }
  EXPECT_THROW(count_N(*make_field(3), 0, 1), std::logic_error);
}

TEST(Curve, CriterionMatchesEnumeration) {
  EXPECT_EQ(curve_point_count(*make_field(1)), 4u);
  for (unsigned n = 1; n <= 8; ++n) {
    const Field f = make_field(n);
    EXPECT_EQ(curve_point_count(*f), oracle::curve_points(f->modulus(), n)) << n;
  }
}

TEST(Curve, KnownOrdersFromTheFrobeniusTrace) {
  // |E(F_2)| = 4 gives Frobenius trace -1; |E(F_{2^n})| = 2^n + 1 - (a^n + b^n) for a, b roots of x^2 + x + 2
  std::int64_t s0 = 2, s1 = -1;
  for (unsigned n = 1; n <= 20; ++n) {
    const Field f = make_field(n);
    EXPECT_EQ(static_cast<std::int64_t>(curve_point_count(*f)), static_cast<std::int64_t>(f->size()) + 1 - s1) << n;
    const std::int64_t s2 = -s1 - 2 * s0;
    s0 = s1;
    s1 = s2;
  }
}

TEST(LeafSets, EqualitiesAndMismatch) {
  for (unsigned n = 1; n <= 10; ++n) {
    const Field f = make_field(n);
    const ThetaGraph g(f);
    const auto rep = leaf_set_equalities(f, g);
    for (const auto& c : rep.checks()) EXPECT_TRUE(c.pass) << n << ' ' << c.name << ' ' << c.detail;
    EXPECT_NE(rep.find("leaf-a-equals-s"), nullptr);
    EXPECT_NE(rep.find(n > 2 ? "leaf-b-equals-t" : "t-empty-small-q"), nullptr);
  }
  const ThetaGraph g4(make_field(4));
  EXPECT_THROW(leaf_set_equalities(make_field(5), g4), field_mismatch);
}

TEST(DicksonReport, AllChecksPassAndSerialise) {
  for (unsigned n = 1; n <= 6; ++n) {
    const Field f = make_field(n);
    const auto rep = dickson_report(f);
    for (const auto& c : rep.checks.checks()) EXPECT_TRUE(c.pass) << n << ' ' << c.name << ' ' << c.detail;
    EXPECT_EQ(rep.E_count, curve_point_count(*f));
    const auto j = dickson_json(rep, *f);
    EXPECT_EQ(j["S_size"], rep.S.size());
    EXPECT_EQ(j["N_pred"], rep.N_pred);
  }
  const auto r = dickson_report(make_field(3));
  EXPECT_EQ(dickson_csv_row(r), "3,8,9,-5,1,1,3,4,true");
}
