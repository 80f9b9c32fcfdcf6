#include <doctest.h>

#include <random>

#include "chaoskit/embedding.hpp"
#include "chaoskit/error.hpp"

using namespace chaoskit;

namespace {

std::vector<std::vector<double>> rows(const PointCloud& c) {
  std::vector<std::vector<double>> out;
  for (std::size_t i = 0; i < c.size(); ++i) out.emplace_back(c.point(i).begin(), c.point(i).end());
  return out;
}

using Rows = std::vector<std::vector<double>>;

}  // namespace

TEST_CASE("delay windows") {
  const TimeSeries s({1, 2, 3, 4, 5});
  CHECK(rows(delay_embed(s, {1, 2})) == Rows{{1, 2}, {2, 3}, {3, 4}, {4, 5}});
  CHECK(rows(delay_embed(s, {2, 2})) == Rows{{1, 3}, {2, 4}, {3, 5}});
  const PointCloud single = delay_embed(TimeSeries({1, 2, 3}), {1, 3});
  CHECK(rows(single) == Rows{{1, 2, 3}});
  CHECK(single.params() == EmbeddingParams{1, 3});
  CHECK(single.source_length() == 3);
}

TEST_CASE("empty embeddings are rejected") {
  const TimeSeries s({1, 2, 3});
  CHECK_THROWS_AS(delay_embed(s, {1, 4}), Error);
  CHECK_THROWS_AS(delay_embed(s, {2, 3}), Error);
  CHECK_THROWS_AS(delay_embed(s, {0, 2}), Error);
  CHECK_THROWS_AS(delay_embed(s, {1, 0}), Error);
}

TEST_CASE("projection") {
  const PointCloud c = delay_embed(TimeSeries({1, 2, 3}), {1, 3});
  const std::vector<std::size_t> a02{0, 2}, a11{1, 1}, a5{5};
  CHECK(rows(project(c, a02)) == Rows{{1, 3}});
  CHECK(rows(project(c, a11)) == Rows{{2, 2}});
  CHECK_THROWS_AS(project(c, a5), Error);

  const PointCloud plane = delay_embed(TimeSeries({4, 5, 6, 7}), {1, 2});
  const std::vector<std::size_t> a01{0, 1};
  CHECK(project(plane, a01).coords().size() == plane.coords().size());
  CHECK(rows(project(plane, a01)) == rows(plane));
}

TEST_CASE("property: count law, prefix consistency, exact copies") {
  std::mt19937_64 g(17);
  std::normal_distribution<double> z;
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 2 + g() % 400;
    std::vector<double> v(n);
    for (double& x : v) x = z(g) * 1e3;
    const TimeSeries s(v);
    const std::size_t delay = 1 + g() % 20;
    const std::size_t dim = 1 + g() % 12;
    if ((dim - 1) * delay >= n) {
      CHECK_THROWS_AS(delay_embed(s, {delay, dim}), Error);
      continue;
    }
    const PointCloud c = delay_embed(s, {delay, dim});
    REQUIRE(c.size() == n - (dim - 1) * delay);
    for (std::size_t i = 0; i < c.size(); ++i)
      for (std::size_t k = 0; k < dim; ++k) REQUIRE(c.point(i)[k] == v[i + k * delay]);

    if (dim >= 2) {
      const PointCloud lower = delay_embed(s, {delay, dim - 1});
      for (std::size_t i = 0; i < c.size(); ++i) {
        const auto hi = c.point(i).first(dim - 1);
        const auto lo = lower.point(i);
        REQUIRE(std::equal(hi.begin(), hi.end(), lo.begin(), lo.end()));
      }
    }
  }
}

TEST_CASE("cloud bounds") {
  const PointCloud c(2, {0.0, 5.0, 2.0, -1.0, 1.0, 1.0});
  CHECK(c.axis_min() == std::vector<double>{0.0, -1.0});
  CHECK(c.axis_max() == std::vector<double>{2.0, 5.0});
  CHECK(c.extent() == 6.0);
  CHECK_THROWS_AS(PointCloud(2, {1.0, 2.0, 3.0}), Error);
}
