#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "flatnorm/gallery.hpp"
#include "flatnorm/io.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Result {
  int code = -1;
  std::string out;
};

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("flatnorm_cli_" + std::to_string(::getpid()) + "_" +
                                        ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  Result run(const std::string& args, bool with_stderr = false) const {
    std::string cmd = std::string(FLATNORM_CLI) + " " + args;
    cmd += with_stderr ? " 2>&1" : " 2>/dev/null";
    Result r;
    FILE* p = ::popen(cmd.c_str(), "r");
    if (!p) return r;
    char buf[4096];
    std::size_t n;
    while ((n = std::fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
    const int status = ::pclose(p);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
  }

  static std::string slurp(const std::string& file) {
    std::ifstream in(file, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  fs::path dir_;
};

}  // namespace

TEST_F(Cli, InfoOnTorus) {
  flatnorm::io::write_json_file(path("torus.json"), flatnorm::io::surface_to_json(flatnorm::gallery::square_torus()));
  const Result r = run("info " + path("torus.json"));
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("genus: 1"), std::string::npos);
  EXPECT_NE(r.out.find("area: 1.0"), std::string::npos);
}

TEST_F(Cli, KwScanCsv) {
  const Result r = run("kw-scan --eps 0.1,0.05");
  EXPECT_EQ(r.code, 0);
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "eps,r,agy,teich_upper,teich_lower,lower_check,upper_check");
  int rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    EXPECT_NE(line.find(",true,true"), std::string::npos) << line;
  }
  EXPECT_EQ(rows, 2);
}

TEST_F(Cli, UnclosedTriangleIsInputError) {
  json doc = flatnorm::io::surface_to_json(flatnorm::gallery::square_torus());
  doc["vectors"]["0"] = json::array({-1, 0});
  flatnorm::io::write_json_file(path("bad.json"), doc);
  flatnorm::io::write_json_file(path("eta.json"), json{{"values", json::object()}});
  const Result r = run("compare " + path("bad.json") + " --cochain " + path("eta.json"), true);
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.out.find("TriangleNotClosed"), std::string::npos) << r.out;
}

TEST_F(Cli, UsageErrors) {
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("frobnicate").code, 2);
  EXPECT_EQ(run("kw-scan --tol -1").code, 2);
  EXPECT_EQ(run("info " + path("missing.json")).code, 2);
  EXPECT_EQ(run("example nonesuch").code, 2);
  EXPECT_EQ(run("--help").code, 0);
}

TEST_F(Cli, JsonIsByteIdentical) {
  ASSERT_EQ(run("example kw --eps 0.1 --emit " + path("kw.json") + " --cochain-out " + path("twist.json")).code, 0);
  const std::string args = "compare " + path("kw.json") + " --cochain " + path("twist.json") + " --json ";
  ASSERT_EQ(run(args + path("a.json")).code, 0);
  ASSERT_EQ(run(args + path("b.json") + " --threads 3").code, 0);
  const std::string a = slurp(path("a.json")), b = slurp(path("b.json"));
  EXPECT_FALSE(a.empty());
  EXPECT_EQ(a, b);
  const json doc = json::parse(a);
  EXPECT_EQ(doc.dump(2) + "\n", a);  // keys already sorted
  EXPECT_TRUE(doc["lower_constant_check"].get<bool>());
}

TEST_F(Cli, CoverEmitsInvolution) {
  ASSERT_EQ(run("example principal-genus2 --emit " + path("p.json")).code, 0);
  const Result r = run("cover " + path("p.json") + " --emit " + path("cover.json") + " --json -");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(json::parse(r.out)["genus"], 5);
  const json cover = json::parse(slurp(path("cover.json")));
  EXPECT_EQ(cover["tau"].size(), cover["proj"].size());
  EXPECT_EQ(flatnorm::io::surface_from_json(cover).genus(), 5);
  EXPECT_EQ(run("cover " + path("p.json") + " --json -").out, r.out);
}

TEST_F(Cli, ValidateSaddlesHomologyAgy) {
  ASSERT_EQ(run("example octagon --emit " + path("o.json") + " --cochain-out " + path("c.json")).code, 0);
  EXPECT_EQ(run("validate " + path("o.json")).code, 0);
  const Result s = run("saddles " + path("o.json") + " -L 1 --json -");
  ASSERT_EQ(s.code, 0);
  EXPECT_EQ(json::parse(s.out)["count"], 4);
  const Result h = run("homology " + path("o.json") + " --json -");
  ASSERT_EQ(h.code, 0);
  EXPECT_EQ(json::parse(h.out)["h1_rank"], 4);
  const Result a = run("agy " + path("o.json") + " --cochain " + path("c.json") + " --json -");
  ASSERT_EQ(a.code, 0);
  EXPECT_NEAR(json::parse(a.out)["value"].get<double>(), 1.0, 1e-9);
  EXPECT_EQ(run("delaunay " + path("o.json") + " --emit " + path("d.json")).code, 0);
}

TEST_F(Cli, HolomorphicDirectionStillExitsZero) {
  ASSERT_EQ(run("example square-torus --emit " + path("t.json") + " --cochain-out " + path("w.json") +
                " --cochain-kind omega")
                .code,
            0);
  const Result r = run("compare " + path("t.json") + " --cochain " + path("w.json") + " --json -");
  EXPECT_EQ(r.code, 0);
  const json doc = json::parse(r.out);
  EXPECT_FALSE(doc["lower_constant_check"].get<bool>());
  EXPECT_TRUE(doc["lower_advisory"].get<bool>());
}
