#include <gtest/gtest.h>

#include <random>

#include "jackhilb/symfunc.hpp"
#include "oracles.hpp"

using namespace jackhilb;

namespace {

const std::vector<Rational> kParams{Rational(1), Rational(1, 2), Rational(2), Rational(1, 3)};

SymPoly m(const Partition& p) { return SymPoly::basis_element(p, BasisLabel::monomial()); }
SymPoly p(const Partition& q) { return SymPoly::basis_element(q, BasisLabel::power()); }

SymPoly random_poly(int n, const BasisLabel& basis, std::mt19937& rng) {
  std::uniform_int_distribution<int> num(-6, 6), den(1, 5);
  SymPoly f(n, basis);
  for (const Partition& q : enumerate_partitions(n)) f.add(q, Rational(num(rng), den(rng)));
  return f;
}

std::vector<BasisLabel> all_bases() {
  std::vector<BasisLabel> out{BasisLabel::monomial(), BasisLabel::power(),
                              BasisLabel::power_normalized()};
  for (const Rational& r : kParams) out.push_back(BasisLabel::jack(r));
  return out;
}

}  // namespace

TEST(SymPoly, AddDropsZerosAndChecksDegree) {
  SymPoly f(2, BasisLabel::monomial());
  f.add(Partition{2}, 3);
  f.add(Partition{2}, -3);
  EXPECT_TRUE(f.is_zero());
  EXPECT_THROW(f.add(Partition{1}, 1), std::domain_error);
  EXPECT_THROW(f += SymPoly(2, BasisLabel::power()), std::domain_error);
}

TEST(SymPoly, JackLabelRejectsNonPositive) {
  EXPECT_THROW(BasisLabel::jack(0), std::domain_error);
  EXPECT_THROW(BasisLabel::jack(Rational(-1, 2)), std::domain_error);
}

TEST(PTimesM, Examples) {
  EXPECT_EQ(p_times_m(1, Partition{1}), m({2}) + m({1, 1}) * 2);
  EXPECT_EQ(p_times_m(2, Partition{1}), m({3}) + m({2, 1}));
  for (int i = 1; i <= 4; ++i) EXPECT_EQ(p_times_m(i, Partition{}), m(Partition{i}));
}

TEST(PTimesM, MatchesPolynomialExpansion) {
  for (int n = 1; n <= 6; ++n) {
    const auto& parts = enumerate_partitions(n);
    const Matrix& pm = power_in_monomial(n);
    for (std::size_t i = 0; i < parts.size(); ++i)
      for (std::size_t j = 0; j < parts.size(); ++j)
        EXPECT_EQ(pm(i, j), oracle::power_in_monomial_coeff(parts[i].parts(), parts[j].parts()))
            << parts[i].to_string() << " " << parts[j].to_string();
  }
}

TEST(Convert, NewtonIdentity) {
  const SymPoly got = convert(m({1, 1}), BasisLabel::power());
  SymPoly want(2, BasisLabel::power());
  want.add(Partition{1, 1}, Rational(1, 2));
  want.add(Partition{2}, Rational(-1, 2));
  EXPECT_EQ(got, want);
}

TEST(Convert, DegreeOneBasesCoincide) {
  EXPECT_EQ(convert(p({1}), BasisLabel::monomial()), m({1}));
  EXPECT_EQ(convert(m({1}), BasisLabel::jack(Rational(7, 3))),
            SymPoly::basis_element(Partition{1}, BasisLabel::jack(Rational(7, 3))));
}

TEST(Convert, RejectsBadJackParameter) {
  EXPECT_THROW(convert(m({1}), BasisLabel{BasisLabel::Kind::Jack, 0}), std::domain_error);
}

TEST(Jack, ColumnPartitionIsMonomial) {
  for (int n = 1; n <= 6; ++n) {
    std::vector<int> ones(n, 1);
    const Partition col(ones);
    for (const Rational& r : kParams) EXPECT_EQ(jack_in_m(col, r), m(col));
  }
}

TEST(Jack, DegreeTwoClosedForm) {
  for (const Rational& r : kParams) {
    EXPECT_EQ(jack_in_m(Partition{2}, r), m({2}) + m({1, 1}) * (Rational(2) / (1 + r)));
  }
  EXPECT_EQ(jack_in_m(Partition{2}, 1), m({2}) + m({1, 1}));
  EXPECT_EQ(jack_in_m(Partition{2}, Rational(1, 2)), m({2}) + m({1, 1}) * Rational(4, 3));
}

TEST(Jack, SchurSpecializationMatchesKostka) {
  for (int n = 1; n <= 6; ++n)
    for (const Partition& lambda : enumerate_partitions(n)) {
      const SymPoly j = jack_in_m(lambda, 1);
      for (const Partition& mu : enumerate_partitions(n))
        EXPECT_EQ(j.coeff(mu), Rational(oracle::kostka(lambda.parts(), mu.parts())))
            << lambda.to_string() << " " << mu.to_string();
    }
}

TEST(Jack, MatchesGramSchmidtOverTotalOrder) {
  for (int n = 1; n <= 6; ++n)
    for (const Rational& r : kParams) {
      const oracle::JackData d = oracle::jack_by_gram_schmidt(n, r);
      for (std::size_t i = 0; i < d.parts.size(); ++i) {
        const SymPoly j = jack_in_m(Partition(d.parts[i]), r);
        for (std::size_t k = 0; k < d.parts.size(); ++k)
          EXPECT_EQ(j.coeff(Partition(d.parts[k])), d.in_monomial[i][k]);
      }
    }
}

TEST(Jack, TriangularInDominance) {
  for (int n = 1; n <= 7; ++n)
    for (const Partition& lambda : enumerate_partitions(n)) {
      const SymPoly j = jack_in_m(lambda, Rational(2, 5));
      EXPECT_EQ(j.coeff(lambda), 1);
      for (const auto& [mu, c] : j.terms()) EXPECT_TRUE(dominance_leq(mu, lambda));
    }
}

TEST(JackNorm, Examples) {
  for (const Rational& r : kParams) {
    EXPECT_EQ(jack_norm(Partition{1}, r), r);
    EXPECT_EQ(jack_norm(Partition{2}, r), 2 * r * r / (1 + r));
    EXPECT_EQ(jack_norm(Partition{1, 1}, r), r * (1 + r) / 2);
    EXPECT_EQ(jack_norm(Partition{2}, r), inner_product(jack_in_m({2}, r), jack_in_m({2}, r), r));
  }
  EXPECT_THROW(jack_norm(Partition{1}, 0), std::domain_error);
}

TEST(JackProperty, OrthogonalityAndNorm) {
  for (int n = 1; n <= 6; ++n)
    for (const Rational& r : kParams) {
      const auto& parts = enumerate_partitions(n);
      for (const Partition& a : parts)
        for (const Partition& b : parts) {
          const Rational v = inner_product(jack_in_m(a, r), jack_in_m(b, r), r);
          EXPECT_EQ(v, a == b ? jack_norm(a, r) : Rational(0));
        }
    }
}

TEST(InnerProduct, Examples) {
  const Rational r(3, 7);
  EXPECT_EQ(inner_product(p({2}), p({2}), r), 2 * r);
  EXPECT_EQ(inner_product(p({2}), p({1, 1}), r), 0);
  EXPECT_EQ(inner_product(m({1}), m({1}), r), r);
  EXPECT_THROW(inner_product(p({2}), p({1}), r), std::domain_error);
}

TEST(InnerProductProperty, SymmetricAndBilinear) {
  std::mt19937 rng(11);
  for (int n = 1; n <= 5; ++n)
    for (const Rational& r : kParams) {
      const SymPoly f = random_poly(n, BasisLabel::monomial(), rng);
      const SymPoly g = random_poly(n, BasisLabel::power(), rng);
      const SymPoly h = random_poly(n, BasisLabel::jack(r), rng);
      EXPECT_EQ(inner_product(f, g, r), inner_product(g, f, r));
      const SymPoly gh = convert(g, BasisLabel::monomial()) + convert(h, BasisLabel::monomial());
      EXPECT_EQ(inner_product(f, gh, r), inner_product(f, g, r) + inner_product(f, h, r));
      EXPECT_EQ(inner_product(f * Rational(5, 2), g, r), Rational(5, 2) * inner_product(f, g, r));
    }
}

TEST(TransitionMatrix, SmallCases) {
  const Matrix& g1 = jack_transition_matrix(1, Rational(3, 4));
  ASSERT_EQ(g1.rows(), 1u);
  EXPECT_EQ(g1(0, 0), 1);
  // rows s_(2), s_(1,1); columns normalized p_(2), p_(1,1)
  const Matrix& g2 = jack_transition_matrix(2, 1);
  EXPECT_EQ(g2(0, 0), 1);
  EXPECT_EQ(g2(0, 1), 1);
  EXPECT_EQ(g2(1, 0), -1);
  EXPECT_EQ(g2(1, 1), 1);
}

TEST(TransitionMatrix, InvertibleAndConsistentWithConvert) {
  for (int n = 1; n <= 6; ++n)
    for (const Rational& r : kParams) {
      const Matrix& g = jack_transition_matrix(n, r);
      EXPECT_NO_THROW(g.inverse());
      const auto& parts = enumerate_partitions(n);
      for (std::size_t i = 0; i < parts.size(); ++i) {
        const SymPoly pn = convert(jack_in_m(parts[i], r), BasisLabel::power_normalized());
        for (std::size_t j = 0; j < parts.size(); ++j) EXPECT_EQ(g(i, j), pn.coeff(parts[j]));
      }
    }
}

TEST(ConvertProperty, RoundTripsBetweenAllBases) {
  std::mt19937 rng(3);
  const auto bases = all_bases();
  for (int n = 0; n <= 7; ++n)
    for (const BasisLabel& a : bases)
      for (const BasisLabel& b : bases) {
        const SymPoly f = random_poly(n, a, rng);
        EXPECT_EQ(convert(convert(f, b), a), f) << n;
      }
}

TEST(SignConvention, ChartTwoRatioIsSignFlipInvariant) {
  for (long gamma = 2; gamma <= 5; ++gamma)
    for (int n = 0; n <= 6; ++n)
      for (const Partition& l : enumerate_partitions(n)) {
        const Rational a(1 - gamma), b(-1);
        EXPECT_EQ(c_prime_weight(l, a, b) / c_weight(l, a, b),
                  c_prime_weight(l, -a, -b) / c_weight(l, -a, -b));
      }
}
