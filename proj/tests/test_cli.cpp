#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

namespace {

struct Result {
  int code = -1;
  std::string out;
};

Result run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " " + PSLAB_BIN + std::string(" ") + args + " 2>/dev/null";
  Result r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream is(s);
  for (std::string l; std::getline(is, l);) {
    if (!l.empty() && l.back() == '\r') l.pop_back();
    out.push_back(l);
  }
  return out;
}

std::filesystem::path temp_file(const std::string& name, const std::string& content) {
  const auto p = std::filesystem::temp_directory_path() / name;
  std::ofstream(p) << content;
  return p;
}

}  // namespace

TEST(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("bogus").code, 2);
  EXPECT_EQ(run("curvature --chart beltrami").code, 2);
  EXPECT_EQ(run("geodesic --chart beltrami --start 0,0 --dir 1,0 --steps 1").code, 2);
  EXPECT_EQ(run("verify --filter constant-curvature --tol nonsense").code, 2);
  EXPECT_EQ(run("--format svg redshift").code, 2);
  EXPECT_EQ(run("curvature --chart beltrami --point 0,0,0").code, 2);
  EXPECT_EQ(run("--help").code, 0);
}

TEST(Cli, DomainErrorsExitThree) {
  EXPECT_EQ(run("curvature --chart quadric:+++- --point 0,0").code, 3);
  EXPECT_EQ(run("curvature --chart beltrami --point 2,0").code, 3);
  EXPECT_EQ(run("redshift --model power --p 0.5 --t0 -1 --t1 1").code, 3);
}

TEST(Cli, CurvatureCsvAndJson) {
  const auto csv = run("curvature --chart beltrami --point 0,0");
  ASSERT_EQ(csv.code, 0);
  const auto ls = lines(csv.out);
  EXPECT_EQ(ls.front(), "quantity,index,value");
  EXPECT_NE(csv.out.find("\r\n"), std::string::npos);
  const auto js = run("--format json curvature --chart beltrami --point 0,0");
  ASSERT_EQ(js.code, 0);
  const auto j = nlohmann::json::parse(js.out);
  EXPECT_NEAR(j["K"].get<double>(), -1.0, 1e-12);
  EXPECT_NEAR(j["scalar"][0].get<double>(), -2.0, 1e-12);
  EXPECT_EQ(j["metric"][0][0][0].get<double>(), 1.0);
}

TEST(Cli, EmbedDs2AndDomainRows) {
  const auto r = run("embed --case ds2 --grid t=0:0:1,x=0:0:1");
  ASSERT_EQ(r.code, 0);
  const auto ls = lines(r.out);
  ASSERT_EQ(ls.size(), 2u);
  EXPECT_EQ(ls[0], "t,x,xi,eta,zeta,residual,status");
  EXPECT_EQ(ls[1], "0,0,0,0,1,0,ok");
  const auto b = run("embed --case br- --grid r=0.5:2:2,t=0:0:1");
  ASSERT_EQ(b.code, 0);
  const auto bl = lines(b.out);
  ASSERT_EQ(bl.size(), 3u);
  EXPECT_EQ(bl[1], "0,0.5,,,,,domain_error");
  EXPECT_NE(bl[2].find(",ok"), std::string::npos);
  const auto j = nlohmann::json::parse(run("--format json embed --case br- --grid r=0.5:0.5:1,t=0:0:1").out);
  EXPECT_EQ(j[0]["status"], "domain_error");
  EXPECT_TRUE(j[0]["xi"].is_null());
}

TEST(Cli, VerifyFilterAndExitCodes) {
  const auto r = run("--format json verify --filter 'br*'");
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  ASSERT_EQ(j.size(), 4u);
  for (const auto& c : j) {
    EXPECT_TRUE(c["passed"].get<bool>());
    EXPECT_FALSE(c.contains("elapsed"));
  }
  EXPECT_EQ(run("verify --filter 'zzz*'").code, 0);
  EXPECT_EQ(lines(run("verify --filter 'zzz*'").out).size(), 1u);
  EXPECT_EQ(run("verify --filter constant-curvature --tol constant-curvature=0").code, 1);
  EXPECT_EQ(run("verify --filter br2-einstein-maxwell --R-plus 1 --R-minus 2").code, 1);
  const auto t = nlohmann::json::parse(run("--format json --timing verify --filter constant-curvature").out);
  EXPECT_TRUE(t[0].contains("elapsed"));
}

TEST(Cli, EnvironmentToleranceAndFlagPrecedence) {
  EXPECT_EQ(run("verify --filter constant-curvature", "PSLAB_TOL=1e-30").code, 1);
  EXPECT_EQ(run("verify --filter constant-curvature", "PSLAB_TOL=1e-3").code, 0);
  EXPECT_EQ(run("verify --filter constant-curvature --default-tol 1e-3", "PSLAB_TOL=1e-30").code, 0);
}

TEST(Cli, JsonConfigFile) {
  const auto cfg = temp_file("pslab_cli_test.json", R"({"format": "json", "verify": {"filter": "br2-einstein-maxwell"}})");
  const auto r = run("--config " + cfg.string() + " verify");
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  ASSERT_EQ(j.size(), 1u);
  EXPECT_EQ(j[0]["name"], "br2-einstein-maxwell");
  std::filesystem::remove(cfg);
}

TEST(Cli, OutputFile) {
  const auto path = std::filesystem::temp_directory_path() / "pslab_cli_out.csv";
  ASSERT_EQ(run("-o " + path.string() + " redshift --model exp --H 1 --t0 0 --t1 1").code, 0);
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  const auto ls = lines(ss.str());
  ASSERT_EQ(ls.size(), 2u);
  EXPECT_EQ(ls[0], "model,t0,t1,ratio,ratio_from_hubble,comoving");
  std::filesystem::remove(path);
}

TEST(Cli, RedshiftExample) {
  const auto j = nlohmann::json::parse(run("--format json redshift --model exp --H 1 --t0 0 --t1 1").out);
  EXPECT_NEAR(j["ratio"].get<double>(), 2.718282, 1e-6);
  EXPECT_NEAR(j["ratio_from_hubble"].get<double>(), j["ratio"].get<double>(), 1e-12);
}

TEST(Cli, PenroseRowsAndPoles) {
  const auto r = run("penrose --grid u=0:0:1,v=0:0:1");
  ASSERT_EQ(r.code, 0);
  const auto ls = lines(r.out);
  EXPECT_EQ(ls[0], "u,v,region,C");
  EXPECT_EQ(ls[1], "0,0,boundary,-1");
  const auto pole = lines(run("penrose --grid u=3.141592653589793:3.141592653589793:1,v=0:0:1").out);
  EXPECT_EQ(pole[1].back(), ',');
  const auto j = nlohmann::json::parse(run("--format json penrose --grid u=3.141592653589793:3.141592653589793:1,v=0:0:1").out);
  EXPECT_TRUE(j[0]["C"].is_null());
}

TEST(Cli, SvgOutputs) {
  const auto g = run("--format svg geodesic --chart beltrami --start 0,0 --dir 1,0.5");
  ASSERT_EQ(g.code, 0);
  EXPECT_EQ(g.out.rfind("<svg", 0), 0u);
  EXPECT_NE(g.out.find("<circle"), std::string::npos);
  EXPECT_NE(g.out.find("<polyline"), std::string::npos);
  const auto p = run("--format svg penrose --grid u=-3:3:7,v=-3:3:7");
  ASSERT_EQ(p.code, 0);
  EXPECT_NE(p.out.find("<rect"), std::string::npos);
  EXPECT_NE(p.out.find("stroke-width=\"3\""), std::string::npos);
  EXPECT_NE(p.out.find("</svg>"), std::string::npos);
}

TEST(Cli, GeodesicCsvColumns) {
  const auto r = run("geodesic --chart beltrami --start 0,0 --dir 1,0 --steps 10 --lambda-max 1");
  ASSERT_EQ(r.code, 0);
  const auto ls = lines(r.out);
  EXPECT_EQ(ls[0], "lambda,x0,x1,norm");
  EXPECT_EQ(ls.size(), 12u);
}

TEST(Cli, Deterministic) {
  const auto a = run("--format json verify --filter '*embedding*'");
  const auto b = run("--format json verify --filter '*embedding*'");
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
}
