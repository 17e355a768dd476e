#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "sgp/errors.hpp"
#include "sgp_cli/app.hpp"
#include "sgp_cli/serialize.hpp"
#include "sgp_cli/spec_parser.hpp"

using namespace sgp;
using namespace sgp::cli;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  args.insert(args.begin(), "sgp");
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path tmp(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("sgp_test_" + name);
}

}  // namespace

TEST(SpecParser, Numbers) {
  EXPECT_EQ(parse_vector("1,-2.5,3e2"), make_vector({1, -2.5, 300}));
  Matrix m = parse_matrix("2,1;0,1");
  EXPECT_EQ(m.rows(), 2);
  EXPECT_EQ(m(0, 1), 1.0);
  EXPECT_THROW(parse_number("1.5x"), Error);
  EXPECT_THROW(parse_vector("1,,2"), Error);
  EXPECT_THROW(parse_matrix("1,2;3"), Error);
}

TEST(SpecParser, Functions) {
  EXPECT_EQ(parse_function_spec("pnorm:p=4").name(), "pnorm");
  auto d = parse_function_spec("dist_power:set=ball:c=0,0:r=1:p=2");
  EXPECT_EQ(d.dim(), 2);
  EXPECT_EQ(d.name(), "dist_power");
  auto m = parse_function_spec("max_dist:set=hyperplane:n=0,1:b=0:set=hyperplane:n=1,-1:b=0");
  EXPECT_EQ(m.handle.value(make_vector({2, 1})), 1.0);
  EXPECT_EQ(parse_function_spec("one_d:exp_abs").dim(), 1);
  EXPECT_EQ(parse_function_spec("least_squares:A=2,1;0,1:b=1,0:eps=0.5:p=2").dim(), 2);
}

TEST(SpecParser, Rejections) {
  for (const char* bad : {"nope", "pnorm:q=4", "pnorm:p=4:p=5", "dist_power:set=ball:c=0,0:r=1:r=2",
                          "one_d:what", "huber:dim=x", "affine:u=3,4:beta=0"}) {
    EXPECT_THROW(parse_function_spec(bad), Error) << bad;
  }
}

TEST(Serialize, NumbersAndCsv) {
  EXPECT_EQ(format_number(0.1), "0.10000000000000001");
  EXPECT_EQ(format_number(2.0), "2");
  auto j = to_json(make_vector({0.5, -1}));
  EXPECT_EQ(j.dump(), "[0.5,-1.0]");
}

TEST(Cli, ProjectHuber) {
  auto r = run_cli({"project", "--function", "huber", "--point", "3,0"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = json::parse(r.out);
  EXPECT_EQ(j["Gx"][0].get<double>(), 0.5);
  EXPECT_EQ(j["Gx"][1].get<double>(), 0.0);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run_cli({"project", "--function", "one_d:infeasible", "--point", "0"}).code, 3);
  EXPECT_EQ(run_cli({"project", "--function", "huber", "--point", "1,2,3"}).code, 2);
  EXPECT_EQ(run_cli({"project", "--function", "bogus", "--point", "1"}).code, 2);
  EXPECT_EQ(run_cli({"frobnicate"}).code, 2);
  EXPECT_EQ(run_cli({"check", "--function", "huber", "--property", "firm", "--samples", "0"}).code, 2);
  EXPECT_EQ(run_cli({"check", "--function", "huber", "--property", "firm", "--samples", "2000"}).code, 0);
}

TEST(Cli, CheckWitness) {
  auto r = run_cli({"check", "--function", "ell1", "--property", "monotone", "--samples", "10", "--seed", "3"});
  EXPECT_EQ(r.code, 1);
  auto j = json::parse(r.out);
  EXPECT_GE(j["report"]["violations"].get<int>(), 1);
  EXPECT_NEAR(j["report"]["first_witness"]["margin"].get<double>(), 4.0, 1e-12);

  auto p = run_cli({"check", "--function", "pnorm:p=1.5", "--property", "monotone", "--samples", "10"});
  EXPECT_EQ(p.code, 1);
  auto d = run_cli({"check", "--function", "max_dist", "--property", "decreasing", "--samples", "10"});
  EXPECT_EQ(d.code, 1);
}

TEST(Cli, SeedIsReproducible) {
  auto a = run_cli({"check", "--function", "pnorm:p=8", "--property", "firm", "--samples", "500", "--seed", "9"});
  auto b = run_cli({"check", "--function", "pnorm:p=8", "--property", "firm", "--samples", "500", "--seed", "9"});
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.code, b.code);
}

TEST(Cli, IterateWritesTrace) {
  const auto path = tmp("trace.csv");
  auto r = run_cli({"iterate", "--function", "max_dist:set=halfspace:n=1,0:b=1:set=halfspace:n=0,1:b=1", "--x0",
                    "5,4", "--c-monitor", "0,0", "--out", path.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = json::parse(r.out);
  EXPECT_EQ(j["status"], "converged");
  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, "k,x_0,x_1,f,step_norm,dist_c");
  std::filesystem::remove(path);
}

TEST(Cli, YyWorkedExample) {
  const auto path = tmp("recon.csv");
  auto r = run_cli({"yy", "--function", "one_d:quad_minus_one", "--L", "3", "--rho", "1", "--grid", "4,0.01", "--out",
                    path.string()});
  ASSERT_EQ(r.code, 0) << r.err << r.out;
  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, "x,region,q,y,Zx,G_y_x");
  std::filesystem::remove(path);
}

TEST(Cli, CatalogListing) {
  auto r = run_cli({"catalog"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("ell1"), std::string::npos);
  EXPECT_NE(r.out.find("pnorm"), std::string::npos);
}
