#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "laxjac/flows.hpp"
#include "laxjac/io.hpp"
#include "laxjac/kernels.hpp"

using namespace laxjac;

TEST_CASE("CSV quoting follows RFC 4180") {
  CHECK(csv_field("plain") == "plain");
  CHECK(csv_field("a,b") == "\"a,b\"");
  CHECK(csv_field("say \"hi\"") == "\"say \"\"hi\"\"\"");
  CHECK(csv_field("two\nlines") == "\"two\nlines\"");
  CsvTable t{{"x", "note"}, {}};
  t.add_row({"1", "a,b"});
  CHECK(t.str() == "x,note\r\n1,\"a,b\"\r\n");
  CHECK_THROWS(t.add_row({"only one"}));
}

TEST_CASE("doubles round-trip through text") {
  for (double x : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23}) CHECK(std::stod(format_double(x)) == x);
}

TEST_CASE("CSV files get a metadata sidecar") {
  const std::string path = "io_test_table.csv";
  CsvTable t{{"a"}, {}};
  t.add_row({"1"});
  write_csv(path, t, Json{{"command", "test"}});
  std::ifstream meta(path + ".meta.json");
  std::stringstream ss;
  ss << meta.rdbuf();
  CHECK(Json::parse(ss.str())["command"] == "test");
  std::remove(path.c_str());
  std::remove((path + ".meta.json").c_str());
}

TEST_CASE("complex values and matrices serialize as arrays") {
  CHECK(to_json(cplx(1.5, -2.0)).dump() == "[1.5,-2.0]");
  Eigen::MatrixXi m(2, 2);
  m << 1, 2, 3, 4;
  CHECK(to_json(m).dump() == "[[1,2],[3,4]]");
}

TEST_CASE("parallel kernels reproduce the serial reference exactly") {
  const PendulumState s0{Vec3c(0.6, 0.0, 0.8), Vec3c(0.0, 1.0, 0.0)};
  const QuarticCurve c = curve_from_hk(1.3, 0.6);
  const DivisorPoint base = default_base_point(c);
  const auto traj = integrate_pendulum(s0, 5.0, 1e-12, 40);
  const auto a = abel_sums(c, traj.states, base, false, ExecPolicy::Serial);
  const auto b = abel_sums(c, traj.states, base, false, ExecPolicy::Parallel);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].ok == b[i].ok);
    CHECK(a[i].z == b[i].z);
  }

  std::vector<std::pair<cplx, cplx>> hk{{1.3, 0.6}, {cplx(0.8, 0.2), 0.1}, {1.0, 0.0}};
  const auto ps = batch_periods(hk, ExecPolicy::Serial), pp = batch_periods(hk, ExecPolicy::Parallel);
  for (std::size_t i = 0; i < hk.size(); ++i) {
    CHECK(ps[i].ok == pp[i].ok);
    CHECK(ps[i].periods.omega_a == pp[i].periods.omega_a);
    CHECK(ps[i].periods.eta_b == pp[i].periods.eta_b);
  }
  CHECK_FALSE(ps[2].ok);  // singular curve is reported in its slot

  const GridSpec g{-1.0, 2.0, -1.0, 1.0, 31, 21};
  CHECK(discriminant_grid(g, ExecPolicy::Serial) == discriminant_grid(g, ExecPolicy::Parallel));

  const GridSpec fg{1.2, 1.4, 0.5, 0.7, 2, 2};
  const auto fs = frequency_grid(fg, {}, ExecPolicy::Serial), fp = frequency_grid(fg, {}, ExecPolicy::Parallel);
  for (std::size_t i = 0; i < fs.size(); ++i) {
    CHECK(fs[i].ok);
    CHECK(fs[i].result.omega1 == fp[i].result.omega1);
    CHECK(fs[i].result.omega2 == fp[i].result.omega2);
  }
}
