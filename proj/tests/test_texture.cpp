#include <doctest.h>

#include <stdexcept>

#include <random>
#include <vector>

#include "imgql/texture.hpp"
#include "oracle.hpp"

using namespace imgql;

namespace {

ScalarImage random_scalar(GridDims d, std::uint64_t seed, double lo, double hi) {
  std::mt19937_64 gen(seed);
  ScalarImage out(d);
  for (std::size_t i = 0; i < out.size(); ++i) {
    out.set(i, lo + (hi - lo) * (static_cast<double>(gen() % 10000) / 10000.0));
  }
  return out;
}

}  // namespace

TEST_CASE("histogram construction and binning") {
  CHECK_THROWS_AS(Histogram(1.0, 1.0, 4), std::invalid_argument);
  CHECK_THROWS_AS(Histogram(0.0, 1.0, 0), std::invalid_argument);

  const GridDims d(3, 1);
  ScalarImage a(d);
  a.set(0, 0, 0.0);
  a.set(1, 0, 0.5);
  a.set(2, 0, 1.0);
  const Histogram h = region_histogram(a, BoolImage(d, true), 0.0, 1.0, 2);
  CHECK(h.count(0) == 1);  // 0 in bin 1
  CHECK(h.count(1) == 2);  // 0.5 in bin 2; the maximum folds into bin 2

  CHECK(region_histogram(a, BoolImage(d), 0.0, 1.0, 2).total() == 0);

  // Constant image at the range minimum lands entirely in bin 1.
  const Histogram c = region_histogram(ScalarImage(d, 5.0), BoolImage(d, true), 5.0, 9.0, 4);
  CHECK(c.count(0) == 3);
  CHECK(c.total() == 3);

  // Out-of-range values are dropped.
  ScalarImage wide(d);
  wide.set(0, 0, -1.0);
  wide.set(1, 0, 0.5);
  wide.set(2, 0, 2.0);
  CHECK(region_histogram(wide, BoolImage(d, true), 0.0, 1.0, 2).total() == 1);
}

TEST_CASE("histogram mean is the mean of counts") {
  Histogram h(0.0, 3.0, 3);
  h.add(0.1);
  h.add(1.5);
  h.add(1.6);
  h.add(2.5);
  h.add(2.6);
  h.add(2.7);
  CHECK(hist_mean(h) == doctest::Approx(2.0));  // counts 1,2,3
  CHECK(hist_mean(Histogram(0.0, 1.0, 4)) == 0.0);
  Histogram one(0.0, 1.0, 1);
  for (int i = 0; i < 5; ++i) one.add(0.5);
  CHECK(hist_mean(one) == 5.0);
}

TEST_CASE("histogram additivity over disjoint masks") {
  const GridDims d(8, 8);
  const ScalarImage a = random_scalar(d, 9, 0.0, 10.0);
  const BoolImage m1 = oracle::random_image(d, 10, 0.4);
  const BoolImage m2 = oracle::random_image(d, 11, 0.4) & !m1;
  const Histogram h1 = region_histogram(a, m1, 0.0, 10.0, 7);
  const Histogram h2 = region_histogram(a, m2, 0.0, 10.0, 7);
  const Histogram hu = region_histogram(a, m1 | m2, 0.0, 10.0, 7);
  for (int i = 0; i < 7; ++i) CHECK(hu.count(i) == h1.count(i) + h2.count(i));
}

TEST_CASE("pearson identities and special cases") {
  Histogram h(0.0, 4.0, 4);
  h.add(0.5);
  h.add(1.5);
  h.add(1.7);
  h.add(3.5);
  CHECK(pearson(h, h) == doctest::Approx(1.0));

  // Affine images of a histogram correlate perfectly (alpha > 0) or
  // anti-perfectly (alpha < 0).
  const std::vector<double> base = {1, 4, 2, 8, 5};
  std::vector<double> pos(base.size()), neg(base.size());
  for (std::size_t i = 0; i < base.size(); ++i) {
    pos[i] = 3.0 * base[i] + 7.0;
    neg[i] = -2.0 * base[i] + 40.0;
  }
  CHECK(pearson(base, pos) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(pearson(base, neg) == doctest::Approx(-1.0).epsilon(1e-12));

  const std::vector<double> flat = {3, 3, 3, 3, 3};
  const std::vector<double> flat2 = {0, 0, 0, 0, 0};
  CHECK(pearson(flat, flat2) == 1.0);
  CHECK(pearson(flat, base) == 0.0);
  CHECK(pearson(base, flat2) == 0.0);

  CHECK_THROWS_AS(pearson(Histogram(0, 1, 3), Histogram(0, 1, 4)),
                  std::invalid_argument);
}

TEST_CASE("pearson translation invariance") {
  std::mt19937_64 gen(123);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> h1(12), h2(12), shifted(12);
    for (int i = 0; i < 12; ++i) {
      h1[i] = static_cast<double>(gen() % 100);
      h2[i] = static_cast<double>(gen() % 100);
      shifted[i] = h2[i] + 17.0;
    }
    CHECK(pearson(h1, shifted) == doctest::Approx(pearson(h1, h2)).epsilon(1e-12));
  }
}

TEST_CASE("cross-correlation map: constant image is 1 everywhere") {
  const GridDims d(12, 9);
  const ScalarImage a(d, 4.5);
  const BoolImage region = oracle::random_image(d, 3, 0.5);
  const ScalarImage m = cross_correlation_map({2.0}, a, a, region, 0.0, 10.0, 5);
  for (double v : m.values()) CHECK(v == 1.0);
}

TEST_CASE("cross-correlation map: empty region follows the constant rules") {
  const GridDims d(10, 10);
  const ScalarImage a = random_scalar(d, 77, 0.0, 8.0);
  const ScalarImage m =
      cross_correlation_map({1.0}, a, a, BoolImage(d), 0.0, 8.0, 6);
  const ScalarImage naive =
      cross_correlation_map_naive({1.0}, a, a, BoolImage(d), 0.0, 8.0, 6);
  for (std::size_t i = 0; i < m.size(); ++i) {
    CHECK((m.at(i) == 0.0 || m.at(i) == 1.0));
    CHECK(m.at(i) == naive.at(i));
  }
}

TEST_CASE("sliding path equals the naive path") {
  std::mt19937_64 gen(2024);
  for (int trial = 0; trial < 30; ++trial) {
    const GridDims d(32, 32);
    const double m = static_cast<double>(gen() % 10);
    const double M = m + 1.0 + static_cast<double>(gen() % 20);
    const int k = 1 + static_cast<int>(gen() % 32);
    const double radius = static_cast<double>(gen() % 7);
    const int threads = 1 + static_cast<int>(gen() % 4);
    const ScalarImage a = random_scalar(d, gen(), m - 2.0, M + 2.0);
    const ScalarImage b = random_scalar(d, gen(), m - 2.0, M + 2.0);
    const BoolImage region = oracle::random_image(d, gen(), 0.3);

    const ScalarImage fast =
        cross_correlation_map({radius}, a, b, region, m, M, k, threads);
    const ScalarImage naive =
        cross_correlation_map_naive({radius}, a, b, region, m, M, k);
    REQUIRE(fast.size() == naive.size());
    for (std::size_t i = 0; i < fast.size(); ++i) {
      CHECK(fast.at(i) == doctest::Approx(naive.at(i)).epsilon(1e-12));
      CHECK(fast.at(i) >= -1.0);
      CHECK(fast.at(i) <= 1.0);
    }
  }
}

TEST_CASE("map is thread-count invariant") {
  const GridDims d(23, 17);
  const ScalarImage a = random_scalar(d, 5, 0.0, 9.0);
  const BoolImage region = oracle::random_image(d, 6, 0.4);
  const ScalarImage t1 = cross_correlation_map({3.0}, a, a, region, 0.0, 9.0, 9, 1);
  const ScalarImage t8 = cross_correlation_map({3.0}, a, a, region, 0.0, 9.0, 9, 8);
  CHECK(t1 == t8);
}

TEST_CASE("map argument validation") {
  const GridDims d(4, 4);
  const ScalarImage a(d);
  CHECK_THROWS_AS(cross_correlation_map({1.0}, a, a, BoolImage(d, true), 1.0, 1.0, 3),
                  std::invalid_argument);
  CHECK_THROWS_AS(cross_correlation_map({1.0}, a, a, BoolImage(d, true), 0.0, 1.0, 0),
                  std::invalid_argument);
  CHECK_THROWS_AS(cross_correlation_map({1.0}, a, ScalarImage(GridDims(5, 4)),
                                        BoolImage(d, true), 0.0, 1.0, 3),
                  std::invalid_argument);
}
