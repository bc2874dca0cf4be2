#include <doctest.h>

#include <random>

#include "rigc/pmf.hpp"
#include "test_util.hpp"

using namespace rigc;

namespace {

Pmf random_pmf(std::mt19937_64& rng, int min_value, int max_value) {
  std::uniform_int_distribution<int> count(1, 4);
  std::uniform_int_distribution<int> value(min_value, max_value);
  std::uniform_real_distribution<double> weight(0.1, 1.0);
  std::map<int, double> w;
  const int n = count(rng);
  for (int i = 0; i < n; ++i) w[value(rng)] += weight(rng);
  double total = 0.0;
  for (auto& [k, x] : w) total += x;
  for (auto& [k, x] : w) x /= total;
  return pmf_new(w);
}

}  // namespace

TEST_CASE("pmf_new validates and normalizes") {
  const auto p = pmf_new({{1, 0.5}, {3, 0.5}});
  CHECK(mean(p) == doctest::Approx(2.0));
  CHECK(pmf_new({{2, 1.0}}).is_point_mass());
  CHECK(pmf_new({{2, 1.0}}) == point_mass(2));
  CHECK(code_of([] { pmf_new({{0, 0.3}, {1, 0.8}}); }) == ErrorCode::NotNormalized);
  CHECK(code_of([] { pmf_new({{0, -0.1}, {1, 1.1}}); }) == ErrorCode::NegativeWeight);
  CHECK(code_of([] { pmf_new({}); }) == ErrorCode::EmptySupport);
  CHECK(code_of([] { pmf_new({{3, 0.0}}); }) == ErrorCode::EmptySupport);

  const auto q = pmf_new({{0, 0.0}, {1, 0.5}, {2, 0.5 + 1e-10}});
  CHECK(q.entries().size() == 2);
  CHECK(q.min_value() == 1);
  double total = 0.0;
  for (const auto& [k, w] : q.entries()) total += w;
  CHECK(total == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("moments") {
  CHECK(mean(pmf_new({{1, 0.5}, {3, 0.5}})) == 2.0);
  CHECK(mean(point_mass(3)) == 3.0);
  CHECK(factorial_moment2(point_mass(3)) == 6.0);
  CHECK(second_moment(pmf_new({{1, 0.5}, {3, 0.5}})) == doctest::Approx(5.0));
}

TEST_CASE("size bias and shift") {
  const auto sb = size_bias(pmf_new({{1, 0.5}, {3, 0.5}}));
  CHECK(sb.prob(1) == doctest::Approx(0.25));
  CHECK(sb.prob(3) == doctest::Approx(0.75));
  CHECK(size_bias(point_mass(2)) == point_mass(2));
  CHECK(code_of([] { size_bias(point_mass(0)); }) == ErrorCode::ZeroMean);

  const auto sh = shift_down_one(sb);
  CHECK(sh.prob(0) == doctest::Approx(0.25));
  CHECK(sh.prob(2) == doctest::Approx(0.75));
  CHECK(shift_down_one(point_mass(2)) == point_mass(1));
  CHECK(code_of([] { shift_down_one(pmf_new({{0, 0.5}, {1, 0.5}})); }) == ErrorCode::SupportContainsZero);
  CHECK(tilted(pmf_new({{1, 0.5}, {3, 0.5}})) == sh);
}

TEST_CASE("generating function and inverse") {
  const auto p = pmf_new({{0, 0.25}, {2, 0.75}});
  CHECK(gf_eval(p, 1.0) == doctest::Approx(1.0));
  CHECK(gf_eval(p, 0.0) == doctest::Approx(0.25));
  CHECK(gf_eval(p, 0.5) == doctest::Approx(0.4375));
  CHECK(code_of([&] { gf_eval(p, 1.5); }) == ErrorCode::OutOfDomain);
  CHECK(code_of([&] { gf_eval(p, -0.1); }) == ErrorCode::OutOfDomain);

  CHECK(gf_inverse(p, 1.0) == doctest::Approx(1.0));
  CHECK(gf_inverse(p, 0.25) == doctest::Approx(0.0));
  CHECK(gf_inverse(p, 0.4375) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(code_of([&] { gf_inverse(p, 0.2); }) == ErrorCode::OutOfRange);
  CHECK(code_of([&] { gf_inverse(p, 1.1); }) == ErrorCode::OutOfRange);
}

TEST_CASE("convolution") {
  CHECK(convolve(point_mass(2), point_mass(2)) == point_mass(4));
  const auto w = convolve_power(WeightVector{0.0, 0.0, 1.0}, 3);
  REQUIRE(w.size() >= 7);
  CHECK(w[6] == doctest::Approx(1.0));
  const auto coin = pmf_new({{0, 0.5}, {1, 0.5}});
  const auto two = convolve(coin, coin);
  CHECK(two.prob(0) == doctest::Approx(0.25));
  CHECK(two.prob(1) == doctest::Approx(0.5));
  CHECK(two.prob(2) == doctest::Approx(0.25));
  const auto zero = convolve_power(WeightVector{0.3, 0.2}, 0);
  REQUIRE(!zero.empty());
  CHECK(zero[0] == 1.0);
}

TEST_CASE("truncated Poisson keeps mass 1 - 1e-12 and is normalized") {
  const auto p = truncated_poisson(2.0, 1);
  CHECK(p.min_value() == 1);
  CHECK(mean(p) == doctest::Approx(3.0).epsilon(1e-9));
  double total = 0.0;
  for (const auto& [k, w] : p.entries()) total += w;
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("property: inverse round trip") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const auto p = random_pmf(rng, 0, 8);
    if (p.is_point_mass() && p.min_value() == 0) continue;
    const double y0 = p.prob(0);
    for (int i = 0; i <= 20; ++i) {
      const double y = y0 + (1.0 - y0) * i / 20.0;
      CHECK(std::abs(gf_eval(p, gf_inverse(p, y)) - y) < 1e-10);
    }
  }
}

TEST_CASE("property: size bias normalization, mean and derivative relation") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 200; ++trial) {
    const auto p = random_pmf(rng, 1, 9);
    const auto sb = size_bias(p);
    double total = 0.0;
    for (const auto& [k, w] : sb.entries()) total += w;
    CHECK(std::abs(total - 1.0) < 1e-12);
    CHECK(std::abs(mean(sb) - second_moment(p) / mean(p)) < 1e-12);

    const auto t = shift_down_one(sb);
    for (double z : {0.1, 0.3, 0.5, 0.7, 0.9}) {
      const double h = 1e-6;
      const double fd = (gf_eval(p, z + h) - gf_eval(p, z - h)) / (2 * h);
      CHECK(std::abs(gf_eval(t, z) - fd / mean(p)) < 1e-6);
      CHECK(std::abs(gf_derivative(p, z) - fd) < 1e-6);
    }
  }
}

TEST_CASE("property: convolution is commutative and associative") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    const auto a = random_pmf(rng, 0, 5);
    const auto b = random_pmf(rng, 0, 5);
    const auto c = random_pmf(rng, 0, 5);
    CHECK(total_variation(convolve(a, b), convolve(b, a)) < 1e-12);
    CHECK(total_variation(convolve(convolve(a, b), c), convolve(a, convolve(b, c))) < 1e-12);
  }
}

TEST_CASE("empirical pmf and sampler") {
  const std::vector<int> values{1, 1, 3, 3, 3, 5};
  const auto e = empirical_pmf(values);
  CHECK(e.prob(1) == doctest::Approx(2.0 / 6));
  CHECK(e.prob(3) == doctest::Approx(0.5));
  PmfSampler s(e);
  std::mt19937_64 rng(5);
  std::map<int, double> counts;
  const int n = 100000;
  for (int i = 0; i < n; ++i) counts[s(rng)] += 1.0 / n;
  CHECK(total_variation(counts, std::map<int, double>{{1, 1.0 / 3}, {3, 0.5}, {5, 1.0 / 6}}) < 0.01);
}
