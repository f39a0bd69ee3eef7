#include <doctest.h>

#include <charconv>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "af/cli.hpp"
#include "af/errors.hpp"
#include "af/problems.hpp"

using namespace af;
namespace fs = std::filesystem;

namespace {

int run(std::vector<std::string> args) {
  args.insert(args.begin(), "active-flux");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  return cli::main(static_cast<int>(argv.size()), argv.data());
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "af_cli_tests";
  fs::create_directories(dir);
  return dir / name;
}

std::vector<std::string> data_lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream is(text);
  for (std::string line; std::getline(is, line);) {
    if (!line.empty() && line[0] != '#') out.push_back(line);
  }
  return out;
}

}  // namespace

TEST_CASE("number formatting round-trips") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(-1e3, 1e3);
  for (int k = 0; k < 1000; ++k) {
    const double v = u(rng) * std::pow(10.0, static_cast<int>(k % 40) - 20);
    const std::string s = cli::format_double(v);
    double back = 0.0;
    std::from_chars(s.data(), s.data() + s.size(), back);
    CHECK(back == v);
  }
  CHECK(cli::format_double(0.1) == "0.1");
  CHECK(cli::format_double(-2.0) == "-2");
}

TEST_CASE("range parsing") {
  CHECK(cli::parse_range("0:1:0.25") == std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0});
  CHECK(cli::parse_range("0.1,0.2") == std::vector<double>{0.1, 0.2});
  CHECK(cli::parse_range("1:0:0.1").empty());
  CHECK(cli::parse_range("0:0.3:0.1").size() == 4);
  CHECK_THROWS_AS(cli::parse_range("0:1:0"), InvalidArgument);
  CHECK_THROWS_AS(cli::parse_range("0:1"), InvalidArgument);
  CHECK_THROWS_AS(cli::parse_range("a,b"), InvalidArgument);
}

TEST_CASE("experimental order of convergence") {
  CHECK(cli::eoc(1e-3, 1.25e-4) == doctest::Approx(3.0));
}

TEST_CASE("run writes the documented columns deterministically") {
  const auto a = scratch("run_a.csv"), b = scratch("run_b.csv");
  const std::vector<std::string> base{"run", "--problem", "burgers-gauss", "--variant", "C", "--order", "5",
                                      "--cells", "16", "--cfl", "0.05", "--t-end", "0.02"};
  auto with_out = [&](const fs::path& p) {
    auto v = base;
    v.push_back("--out");
    v.push_back(p.string());
    return v;
  };
  REQUIRE(run(with_out(a)) == cli::kOk);
  REQUIRE(run(with_out(b)) == cli::kOk);
  const std::string text = slurp(a);
  CHECK(text == slurp(b));
  CHECK(text.rfind("# config problem=burgers-gauss variant=C md=5", 0) == 0);
  const auto lines = data_lines(text);
  REQUIRE(lines.size() == 17);
  CHECK(lines[0] == "i,x_iface,q_iface_1,x_center,q_avg_1,q_moment_1_1,q_moment_2_1");
}

TEST_CASE("zero final time writes the initialization") {
  const auto out = scratch("init.csv");
  REQUIRE(run({"run", "--problem", "advection-gauss", "--variant", "B", "--order", "5", "--cells", "10", "--t-end", "0",
               "--out", out.string()}) == cli::kOk);
  const Problem p = preset("advection-gauss");
  const Grid g(10, p.x_min, p.x_max);
  const State s = init_state(p, g, VariantConfig::variant_b({-0.415, 0.415}, 4).layout());
  const auto lines = data_lines(slurp(out));
  REQUIRE(lines.size() == 11);
  CHECK(lines[0] == "i,x_iface,q_iface_1,x_center,q_avg_1,q_internal_1_1,q_internal_2_1");
  for (int i = 0; i < 10; ++i) {
    using cli::format_double;
    const std::string expect = std::to_string(i) + "," + format_double(g.iface_x(i)) + "," +
                               format_double(s.iface(0, i)) + "," + format_double(g.center_x(i)) + "," +
                               format_double(s.avg()(0, i)) + "," + format_double(s.interior[0](0, i)) + "," +
                               format_double(s.interior[1](0, i));
    CHECK(lines[i + 1] == expect);
  }
}

TEST_CASE("convergence output") {
  const auto out = scratch("conv.csv");
  REQUIRE(run({"converge", "--variant", "A", "--fd", "FD3", "--cfl", "0.1", "--t-end", "0.05", "--grids", "20,40,80",
               "--out", out.string()}) == cli::kOk);
  const auto lines = data_lines(slurp(out));
  REQUIRE(lines.size() == 4);
  CHECK(lines[0] == "n_cells,dx,err_point,err_avg,eoc_point,eoc_avg");
  CHECK(lines[1].substr(lines[1].size() - 2) == ",,");
  const auto rows = cli::converge(
      [] {
        cli::RunSpec s;
        s.config = VariantConfig::variant_a("FD3");
        s.cfl = 0.1;
        s.t_end = 0.05;
        return s;
      }(),
      {20, 40, 80});
  CHECK(*rows[2].eoc_point == doctest::Approx(3.0).epsilon(0.1));
}

TEST_CASE("stability output") {
  const auto out = scratch("stab.csv");
  REQUIRE(run({"stability", "--variant", "A", "--fd", "FD2", "--params", "1,2", "--nu-max", "1", "--nu-step", "0.25",
               "--k-samples", "65", "--out", out.string()}) == cli::kOk);
  const std::string text = slurp(out);
  const auto lines = data_lines(text);
  REQUIRE(lines.size() == 9);
  CHECK(lines[0] == "param,nu,stable");
  CHECK(lines[1] == "1,0.25,1");
  CHECK(text.find("#cfl_max,1,1\n") != std::string::npos);
  CHECK(text.find("#cfl_max,2,1\n") != std::string::npos);
}

TEST_CASE("exit codes") {
  const auto out = scratch("codes.csv").string();
  CHECK(run({"run", "--no-such-flag"}) == cli::kUsage);
  CHECK(run({}) == cli::kUsage);
  CHECK(run({"run", "--problem", "nope"}) == cli::kUsage);
  CHECK(run({"run", "--variant", "C", "--order", "5", "--moments", "2", "--out", out}) == cli::kUsage);
  CHECK(run({"run", "--variant", "A", "--fd", "FD3", "--param", "1", "--out", out}) == cli::kUsage);
  CHECK(run({"stability", "--variant", "A", "--fd", "FD2", "--params", "1:0:0.1", "--out", out}) == cli::kUsage);
  CHECK(run({"converge", "--grids", "40", "--out", out}) == cli::kUsage);
  CHECK(run({"converge", "--problem", "burgers-gauss", "--t-end", "1", "--out", out}) == cli::kUsage);
  CHECK(run({"converge", "--problem", "sod", "--out", out}) == cli::kUsage);
  CHECK(run({"run", "--variant", "B", "--cfl", "1.5", "--t-end", "0.1", "--out", out}) == cli::kSolverFailure);
  CHECK(run({"run", "--problem", "burgers-riemann", "--variant", "A", "--fd", "FD3", "--limiter", "on", "--cfl", "0.4",
             "--out", out}) == cli::kNonPhysical);
  CHECK(run({"--help"}) == cli::kOk);
}
