#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "nikulin/audit.hpp"
#include "nikulin/io.hpp"
#include "nikulin/model.hpp"

namespace nikulin {
namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

class TempDir {
 public:
  TempDir() : path_(std::filesystem::temp_directory_path() / ("nikulin-cli-" + std::to_string(counter_++))) {
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() { std::filesystem::remove_all(path_); }
  std::string file(const std::string& name, const std::string& contents) const {
    const auto p = (path_ / name).string();
    write_text_file(p, contents);
    return p;
  }
  std::string str() const { return path_.string(); }

 private:
  static inline int counter_ = 0;
  std::filesystem::path path_;
};

TEST(Cli, ClassifyExamples) {
  const auto a = run({"classify", "L(1)+e2"});
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(first_line(a.out), "Case9 i=0; isotropic: type A, polarisation (1,2)");
  const auto b = run({"classify", "L(0)"});
  EXPECT_EQ(b.code, 0);
  EXPECT_EQ(first_line(b.out), "Star1 i=0; isotropic: type B, polarisation (1,1)");
  const auto c = run({"classify", "2*L(0)"});
  EXPECT_EQ(c.code, 1);
  EXPECT_NE(c.err.find("vector not primitive"), std::string::npos);
}

TEST(Cli, ClassifyJsonRoundTrips) {
  const auto r = run({"classify", "2*L(1)-deltaY", "--json"});
  ASSERT_EQ(r.code, 0);
  const auto j = Json::parse(r.out);
  EXPECT_EQ(j["case"], "Case2");
  EXPECT_EQ(j["i"], 1);
  EXPECT_TRUE(j["isotropic"].is_null());
  const auto& m = default_model();
  EXPECT_EQ(vector_from_json(j["representative"], model_resolver(m)), Integer(2) * m.L(1) - m.delta_y());
  EXPECT_EQ(vector_from_json(j["vector"], model_resolver(m)), Integer(2) * m.L(1) - m.delta_y());
}

TEST(Cli, CoordinateFilesAsInput) {
  TempDir dir;
  const auto& m = default_model();
  const auto f = dir.file("v.json", vector_to_json(m.L(1) + m.e2()).dump());
  const auto r = run({"classify", "--coords", f});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(first_line(r.out), "Case9 i=0; isotropic: type A, polarisation (1,2)");
  EXPECT_EQ(run({"classify", "--coords", dir.str() + "/missing.json"}).code, 2);
  EXPECT_EQ(run({"classify", "--coords", dir.file("bad.json", "{not json")}).code, 2);
  EXPECT_EQ(run({"classify", "--coords", dir.file("x.json", R"({"lattice":"LY","coords":[1]})")}).code, 2);
  EXPECT_EQ(run({"classify", "L(0)", "--coords", f}).code, 2);
}

TEST(Cli, ProfileAndReflect) {
  const auto p = run({"profile", "SigmaY", "--json"});
  ASSERT_EQ(p.code, 0);
  EXPECT_EQ(Json::parse(p.out)["profile"]["q"], -4);
  const auto r = run({"reflect", "L(1)+e2", "--root", "w", "--json"});
  ASSERT_EQ(r.code, 0);
  const auto& m = default_model();
  EXPECT_EQ(vector_from_json(Json::parse(r.out)["image"], model_resolver(m)),
            m.L(1) + m.e2() + Integer(5) * m.w());
  EXPECT_EQ(run({"reflect", "L(1)", "--root", "L(1)"}).code, 1);
  EXPECT_EQ(run({"reflect", "L(1)"}).code, 2);
}

TEST(Cli, OrbitAndWitness) {
  const auto o = run({"orbit", "gamma1", "--json"});
  ASSERT_EQ(o.code, 0);
  const auto j = Json::parse(o.out);
  EXPECT_GE(j["size"].get<int>(), 2);
  EXPECT_EQ(j["members"].size(), j["size"].get<std::size_t>());

  const auto w = run({"orbit", "L(1)+e2", "--target", "L(1)+e1-gamma1", "--root-window", "U2,E8,G1",
                      "--budget-depth", "2", "--json"});
  ASSERT_EQ(w.code, 0);
  const auto wj = Json::parse(w.out);
  ASSERT_TRUE(wj["word"].is_array());
  EXPECT_EQ(wj["word"].size(), 2u);

  const auto none = run({"orbit", "L(0)", "--target", "L(1)+e2", "--budget-depth", "2"});
  EXPECT_EQ(none.code, 0);
  EXPECT_NE(none.out.find("does not prove"), std::string::npos);

  EXPECT_EQ(run({"orbit", "L(0)", "--budget-depth", "0"}).code, 2);
  EXPECT_EQ(run({"orbit", "L(0)", "--budget-depth", "x"}).code, 2);
  EXPECT_EQ(run({"orbit", "L(0)", "--extra-root", "L(1)"}).code, 1);
}

TEST(Cli, EmbedAndSaturate) {
  const auto e = run({"embed", "--json"});
  ASSERT_EQ(e.code, 0);
  const auto j = Json::parse(e.out)["check"];
  EXPECT_TRUE(j["isometric"].get<bool>());
  EXPECT_FALSE(j["primitive"].get<bool>());
  EXPECT_EQ(j["saturation_index"], 256);
  EXPECT_EQ(run({"embed", "--eta-variant", "nope"}).code, 2);

  TempDir dir;
  const auto f = dir.file("eta.json", eta_variant_to_json({"copy", eta_as_written_matrix()}).dump());
  EXPECT_EQ(run({"embed", "--eta-file", f, "--eta-variant", "copy"}).code, 0);
  EXPECT_EQ(run({"embed", "--eta-file", dir.file("bad.json", R"({"name":"x","matrix":[[1]]})")}).code, 2);

  const auto s = run({"saturate", "deltaY", "SigmaY", "--json"});
  ASSERT_EQ(s.code, 0);
  const auto sj = Json::parse(s.out);
  EXPECT_EQ(sj["total_index"], 2);
  EXPECT_EQ(run({"saturate", "deltaY", "2*deltaY"}).code, 1);
  EXPECT_EQ(run({"saturate"}).code, 2);
}

TEST(Cli, Enumerate) {
  const auto r = run({"enumerate", "--blocks", "U1", "--json"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(Json::parse(r.out)["count"], 4);
  const auto sq = run({"enumerate", "--blocks", "G1,G2", "--square", "-2", "--json"});
  ASSERT_EQ(sq.code, 0);
  EXPECT_EQ(Json::parse(sq.out)["count"], 4);
  EXPECT_EQ(run({"enumerate", "--blocks", "E9"}).code, 2);
  EXPECT_EQ(run({"enumerate", "--lattice", "LQ"}).code, 2);
  EXPECT_EQ(run({"enumerate", "--blocks", "U1", "--bound", "0"}).code, 1);
}

TEST(Cli, UsageAndParseFailures) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"classify"}).code, 2);
  EXPECT_EQ(run({"classify", "L(1)+"}).code, 2);
  EXPECT_EQ(run({"classify", "L(0)", "--lattice", "LX"}).code, 2);
  EXPECT_EQ(run({"classify", "L(0)", "--no-such-flag"}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
  EXPECT_EQ(run({"classify", "L(1)"}).code, 0);  // not isotropic, still classified
  EXPECT_EQ(run({"classify", "0*L(1)"}).code, 1);
}

TEST(Cli, AuditWritesBothReports) {
  TempDir dir;
  const auto r = run({"audit", "--budget-depth", "1", "--budget-frontier", "5000", "--budget-bound", "2", "--out",
                      dir.str(), "--eta-variant", "as-written"});
  EXPECT_EQ(r.code, 0);
  const auto j = read_json_file(dir.str() + "/report.json");
  ASSERT_EQ(j.size(), 11u);
  EXPECT_NE(j[2]["note"].get<std::string>().find("reduced coverage"), std::string::npos);
  EXPECT_EQ(j[5]["computed"]["variants"][0]["saturation_index"], 256);
  EXPECT_TRUE(std::filesystem::exists(dir.str() + "/report.txt"));
  // The file format round-trips.
  std::ostringstream body;
  body << AuditReport::from_json(j).to_json().dump(2) << "\n";
  std::ifstream in(dir.str() + "/report.json");
  std::stringstream raw;
  raw << in.rdbuf();
  EXPECT_EQ(body.str(), raw.str());
}

TEST(Cli, AuditFailurePaths) {
  EXPECT_EQ(run({"audit", "--out", "/nonexistent/dir"}).code, 2);
  EXPECT_EQ(run({"audit", "--eta-variant", "nope", "--out", "/tmp"}).code, 2);
  EXPECT_EQ(run({"audit", "--budget-frontier", "0"}).code, 2);
}

}  // namespace
}  // namespace nikulin
