#include <doctest.h>

#include <cmath>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>

#include "chaoskit/error.hpp"
#include "chaoskit/timeseries.hpp"
#include "oracles.hpp"

using namespace chaoskit;

namespace {

TimeSeries from_text(const std::string& text, CsvOptions options = {}) {
  std::istringstream in(text);
  return read_csv(in, options);
}

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected chaoskit::Error");
  return ErrorKind::kInvalidArgument;
}

}  // namespace

TEST_CASE("load_csv reads a plain column") {
  const auto dir = oracle::temp_dir("ts_load");
  const auto path = dir / "prices.csv";
  std::ofstream(path) << "\"1.0\"\n\"2.0\"\n\"3.0\"\n";
  CsvOptions opt;
  opt.missing = MissingPolicy::kDrop;
  const TimeSeries s = load_csv(path, opt);
  CHECK(std::vector<double>(s.values().begin(), s.values().end()) == std::vector<double>{1.0, 2.0, 3.0});
  CHECK(s.label() == "prices.csv");
}

TEST_CASE("missing values follow the policy") {
  CsvOptions ffill;
  ffill.missing = MissingPolicy::kForwardFill;
  CsvOptions drop;
  drop.missing = MissingPolicy::kDrop;

  const TimeSeries filled = from_text("1.0\nNA\n3.0\n", ffill);
  CHECK(std::vector<double>(filled.values().begin(), filled.values().end()) ==
        std::vector<double>{1.0, 1.0, 3.0});
  const TimeSeries dropped = from_text("1.0\nNA\n3.0\n\"\"\n4\n", drop);
  CHECK(std::vector<double>(dropped.values().begin(), dropped.values().end()) ==
        std::vector<double>{1.0, 3.0, 4.0});

  SUBCASE("leading gaps are always dropped") {
    const TimeSeries s = from_text("NA\n,\n2\n3\n", ffill);
    CHECK(s.size() == 2);
    CHECK(s[0] == 2.0);
  }
  SUBCASE("fewer than two values after the policy is an error") {
    CHECK(kind_of([&] { from_text("NA\n5.0\n", ffill); }) == ErrorKind::kTooShort);
  }
}

TEST_CASE("columns by index or header name") {
  const std::string text = "date,close,volume\n2014-11-24,1.5,10\n2014-11-25,1.75,12\n2014-11-26,NA,9\n";
  CsvOptions opt;
  opt.skip_header = true;
  opt.column = std::string("close");
  const TimeSeries s = from_text(text, opt);
  CHECK(std::vector<double>(s.values().begin(), s.values().end()) ==
        std::vector<double>{1.5, 1.75, 1.75});

  opt.column = std::size_t{2};
  CHECK(from_text(text, opt)[2] == 9.0);

  opt.column = std::string("open");
  CHECK(kind_of([&] { from_text(text, opt); }) == ErrorKind::kInvalidArgument);
  opt.column = std::size_t{7};
  CHECK(kind_of([&] { from_text(text, opt); }) == ErrorKind::kInvalidArgument);

  CsvOptions no_header;
  no_header.column = std::string("close");
  CHECK(kind_of([&] { from_text(text, no_header); }) == ErrorKind::kInvalidArgument);
}

TEST_CASE("csv details: delimiter, quotes, comments, bad cells") {
  CsvOptions semi;
  semi.delimiter = ';';
  semi.column = std::size_t{1};
  const TimeSeries s = from_text("# exported\n\"a;b\";1.25\nx;-2e-3\n", semi);
  CHECK(s[0] == 1.25);
  CHECK(s[1] == -0.002);

  CHECK(split_csv_record("\"he said \"\"hi\"\"\",2") == std::vector<std::string>{"he said \"hi\"", "2"});
  CHECK(kind_of([] { from_text("1\nabc\n3\n"); }) == ErrorKind::kParse);
  CHECK(kind_of([] { from_text("1\ninf\n3\n"); }) == ErrorKind::kParse);
  CHECK(kind_of([] { load_csv("/nonexistent/dir/file.csv"); }) == ErrorKind::kIo);
}

TEST_CASE("TimeSeries invariants") {
  CHECK(kind_of([] { TimeSeries({1.0}); }) == ErrorKind::kTooShort);
  CHECK(kind_of([] { TimeSeries({1.0, std::nan("")}); }) == ErrorKind::kInvalidArgument);
  CHECK(kind_of([] { TimeSeries({1.0, std::numeric_limits<double>::infinity()}); }) ==
        ErrorKind::kInvalidArgument);
}

TEST_CASE("stats") {
  const auto check = [](std::vector<double> v, double lo, double hi) {
    const SeriesStats st = stats(TimeSeries(v));
    CHECK(st.x_min == lo);
    CHECK(st.x_max == hi);
    CHECK(st.n == v.size());
  };
  check({1, 2, 3}, 1, 3);
  check({7, 7, 7}, 7, 7);
  check({-1, 4, 0.5}, -1, 4);
}

TEST_CASE("property: write then read is value-identical and stats bracket the data") {
  std::mt19937_64 g(7);
  std::uniform_int_distribution<int> len(2, 300);
  std::uniform_real_distribution<double> mant(-1.0, 1.0);
  std::uniform_int_distribution<int> expo(-300, 300);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> v(static_cast<std::size_t>(len(g)));
    for (double& x : v) x = std::ldexp(mant(g), expo(g) / 3);
    const TimeSeries s(v);
    std::stringstream buf;
    write_csv(buf, s);
    const TimeSeries back = read_csv(buf);
    REQUIRE(back.size() == s.size());
    for (std::size_t i = 0; i < s.size(); ++i) REQUIRE(back[i] == s[i]);
    std::stringstream again;
    write_csv(again, back);
    CHECK(again.str() == buf.str());

    const SeriesStats st = stats(s);
    CHECK(st.n == s.size());
    for (const double x : s.values()) CHECK((st.x_min <= x && x <= st.x_max));
  }
}
