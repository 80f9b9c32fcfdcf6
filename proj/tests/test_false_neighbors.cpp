#include <doctest.h>

#include <random>

#include "chaoskit/error.hpp"
#include "chaoskit/false_neighbors.hpp"
#include "chaoskit/kdtree.hpp"
#include "chaoskit/synthetic.hpp"
#include "oracles.hpp"

using namespace chaoskit;

TEST_CASE("nearest neighbor hand cases") {
  CHECK(nearest_neighbor(PointCloud(1, {0, 10, 1}), 0, 0) == 2);
  CHECK(nearest_neighbor(PointCloud(1, {0, 1, 1}), 0, 0) == 1);

  const PointCloud windows = delay_embed(TimeSeries({1, 2, 3, 4}), {1, 2});
  REQUIRE(windows.size() == 3);
  try {
    nearest_neighbor(windows, 0, 2);
    FAIL("every neighbor lies inside the window");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kNoAdmissibleNeighbor);
  }
}

TEST_CASE("k-d tree matches the linear scan, ties included") {
  std::mt19937_64 g(23);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 2 + g() % 199;
    const std::size_t dim = 1 + g() % 4;
    std::vector<double> c(n * dim);
    // Odd trials use a coarse integer grid so exact ties are frequent.
    std::uniform_int_distribution<int> cell(0, 3);
    std::normal_distribution<double> z;
    for (double& v : c) v = trial % 2 ? cell(g) : z(g);
    const PointCloud cloud(dim, c);
    const KdTree tree(cloud.coords(), dim, 1 + g() % 6);
    const std::size_t w = g() % 4;
    for (std::size_t t = 0; t < n; ++t) {
      const auto expected = oracle::brute_nearest(cloud, t, w);
      const auto got = tree.nearest(cloud.point(t), [&](std::size_t i) {
        return (i > t ? i - t : t - i) > w;
      });
      REQUIRE(expected.has_value() == got.has_value());
      if (got) REQUIRE(got->index == *expected);
    }
  }
}

TEST_CASE("fnn on a straight line is zero") {
  std::vector<double> line(100);
  for (std::size_t t = 0; t < line.size(); ++t) line[t] = static_cast<double>(t);
  const FnnPoint p = fnn_fraction(TimeSeries(line), 1, 1);
  CHECK(p.fraction == 0.0);
  CHECK(p.tested == 99);
  CHECK(p.skipped == 0);
}

TEST_CASE("zero-distance neighbors use the limit rule") {
  FnnParams params;
  params.theiler_window = 1;

  // x = 0 repeats with different continuations (3 vs 7): false. Point 1 has
  // no testable neighbor outside the band.
  const FnnPoint split = fnn_fraction(TimeSeries({0, 3, 0, 7}), 1, 1, params);
  CHECK(split.tested == 2);
  CHECK(split.skipped == 1);
  CHECK(split.false_count == 2);
  CHECK(split.fraction == 1.0);

  // Exact repeats that continue identically are true neighbors.
  std::vector<double> alt(40);
  for (std::size_t t = 0; t < alt.size(); ++t) alt[t] = static_cast<double>(t % 2);
  CHECK(fnn_fraction(TimeSeries(alt), 1, 1, params).fraction == 0.0);
}

TEST_CASE("fnn on the Henon map and a sine") {
  const TimeSeries henon = synth::henon(5000);
  CHECK(fnn_fraction(henon, 1, 1).fraction > 0.5);
  CHECK(fnn_fraction(henon, 1, 2).fraction < 0.01);
  const DimensionSelection h = embedding_dimension(henon, 1);
  REQUIRE(h.dimension.has_value());
  CHECK(*h.dimension == 2);
  CHECK(h.curve.entries.size() == 20);

  const DimensionSelection s = embedding_dimension(synth::sine(5000, 50), 12);
  REQUIRE(s.dimension.has_value());
  CHECK(*s.dimension == 2);
}

TEST_CASE("fnn on white noise stays high in low dimensions") {
  const TimeSeries noise = synth::white_noise(5000, 42);
  double previous = 1.0;
  for (std::size_t m = 1; m <= 4; ++m) {
    const double f = fnn_fraction(noise, 1, m).fraction;
    CHECK(f > 0.01);
    CHECK(f <= previous);
    previous = f;
  }
}

TEST_CASE("no dimension found keeps the curve") {
  FnnParams params;
  params.m_max = 1;
  const DimensionSelection sel = embedding_dimension(synth::henon(2000), 1, params);
  CHECK_FALSE(sel.dimension.has_value());
  REQUIRE(sel.curve.entries.size() == 1);
  CHECK(sel.curve.entries[0].fraction > 0.01);
}

TEST_CASE("property: huge tolerance, scale invariance, determinism") {
  std::mt19937_64 g(29);
  std::normal_distribution<double> z;
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<double> v(300);
    for (double& x : v) x = z(g);
    const TimeSeries s(v);
    FnnParams loose;
    loose.r_tol = 1e15;
    loose.m_max = 4;
    for (const auto& e : embedding_dimension(s, 2, loose).curve.entries) CHECK(e.fraction == 0.0);

    std::vector<double> scaled = v;
    for (double& x : scaled) x *= 3.7;
    FnnParams p;
    p.m_max = 5;
    const auto a = embedding_dimension(s, 2, p).curve.entries;
    const auto b = embedding_dimension(TimeSeries(scaled), 2, p).curve.entries;
    const auto c = embedding_dimension(s, 2, p).curve.entries;
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK(std::abs(a[i].fraction - b[i].fraction) <= 1e-12);
      CHECK(a[i].fraction == c[i].fraction);
      CHECK((a[i].fraction >= 0.0 && a[i].fraction <= 1.0));
    }
  }
}

TEST_CASE("fnn preconditions") {
  const TimeSeries s({1, 2, 3, 4, 5, 6});
  CHECK_THROWS_AS(fnn_fraction(s, 2, 3), Error);
  CHECK_THROWS_AS(fnn_fraction(TimeSeries({2, 2, 2, 2}), 1, 1), Error);
  FnnParams bad;
  bad.r_tol = 0.0;
  CHECK_THROWS_AS(fnn_fraction(s, 1, 1, bad), Error);
  bad = {};
  bad.threshold = 1.5;
  CHECK_THROWS_AS(fnn_fraction(s, 1, 1, bad), Error);
  FnnParams deep;
  deep.m_max = 6;
  CHECK_THROWS_AS(embedding_dimension(s, 1, deep), Error);
  FnnParams wide;
  wide.theiler_window = 10;
  try {
    fnn_fraction(s, 1, 1, wide);
    FAIL("window covers the whole series");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kNoTestablePoints);
  }
}
