#include <gtest/gtest.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code = -1;
  std::string out;
};

Outcome run(const std::string& args) {
  const std::string cmd = std::string(CONJLEN_CLI_PATH) + " " + args + " 2>/dev/null";
  Outcome r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("conjlen_cli_" + std::to_string(::getpid()));
    fs::create_directories(dir_);
    write("bs2.json", R"({"family":"bs","m":2})");
    write("sol.json", R"({"family":"semidirect","phi_gens":[[[2,1],[1,1]]]})");
    write("broken.json", R"({"family":"bs"})");
  }
  void TearDown() override { fs::remove_all(dir_); }

  void write(const std::string& name, const std::string& text) { std::ofstream(dir_ / name) << text; }
  std::string cfg(const std::string& name) const { return "--config " + (dir_ / name).string(); }

  fs::path dir_;
};

}  // namespace

TEST_F(Cli, NormalForm) {
  EXPECT_EQ(run("normal-form " + cfg("bs2.json") + " 't a t^-1'").out, "(0,(2),0)\n");
  EXPECT_EQ(run("normal-form " + cfg("bs2.json") + " 't^-1 a t'").out, "(1,(1),0)\n");
  EXPECT_EQ(run("normal-form " + cfg("bs2.json") + " ''").out, "(0,(0),0)\n");
  EXPECT_EQ(run("normal-form " + cfg("bs2.json") + " 'a q'").code, 2);
}

TEST_F(Cli, ConjugateExitCodes) {
  Outcome r = run("conjugate " + cfg("bs2.json") + " a 'a a a a'");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("\"witness_length\":2"), std::string::npos) << r.out;
  EXPECT_EQ(run("conjugate " + cfg("bs2.json") + " a 'a a a'").code, 1);
  r = run("conjugate " + cfg("bs2.json") + " 'a t' 'a t'");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("\"witness_length\":0"), std::string::npos) << r.out;
  EXPECT_EQ(run("conjugate " + cfg("bs2.json") + " a").code, 2);
  EXPECT_EQ(run("conjugate " + cfg("broken.json") + " a a").code, 2);
  EXPECT_EQ(run("conjugate " + cfg("sol.json") + " 'a1 t' 'a2 t'").code, 0);
}

TEST_F(Cli, BallAndCap) {
  EXPECT_EQ(run("ball " + cfg("bs2.json") + " --radius 0").out, "element,length\n\"(0,(0),0)\",0\n");
  EXPECT_EQ(run("ball " + cfg("bs2.json") + " --radius 10 --cap 100").code, 4);
  EXPECT_EQ(run("ball " + cfg("bs2.json") + " --radius x").code, 2);
  const Outcome w = run("wordlen " + cfg("bs2.json") + " 'a^16' --radius 9");
  EXPECT_EQ(w.code, 0);
  EXPECT_NE(w.out.find("\"length\":8"), std::string::npos) << w.out;
}

TEST_F(Cli, ClfWritesCsvAndMetadataDeterministically) {
  const fs::path a = dir_ / "a.csv", b = dir_ / "b.csv";
  ASSERT_EQ(run("clf " + cfg("bs2.json") + " --n-max 8 --out " + a.string()).code, 0);
  ASSERT_EQ(run("clf " + cfg("bs2.json") + " --n-max 8 --out " + b.string()).code, 0);
  const std::string csv = slurp(a);
  EXPECT_EQ(csv, slurp(b));
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "n,clf,u_word,v_word,conjugator_word,certified");
  const std::string meta = slurp(dir_ / "a.json");
  EXPECT_NE(meta.find("\"model\": \"linear\""), std::string::npos) << meta;
  EXPECT_NE(meta.find("\"constant\""), std::string::npos);
  // No temporary files left behind.
  for (const auto& e : fs::directory_iterator(dir_)) EXPECT_EQ(e.path().string().find(".tmp"), std::string::npos);
}

TEST_F(Cli, SeriesCommands) {
  const Outcome r = run("rclf " + cfg("bs2.json") + " --r-max 16");
  EXPECT_EQ(r.code, 0);
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "n,rclf,u,v,witness,certified");
  int rows = 0;
  while (std::getline(in, line)) {
    const long n = std::stol(line.substr(0, line.find(',')));
    const std::string rest = line.substr(line.find(',') + 1);
    const long value = std::stol(rest.substr(0, rest.find(',')));
    EXPECT_LE(n - 2, 2 * value);
    EXPECT_LE(value, 2 * n);
    ++rows;
  }
  EXPECT_GT(rows, 3);
  EXPECT_EQ(run("rclf " + cfg("sol.json") + " --r-max 4").code, 2);
  EXPECT_EQ(run("tclf " + cfg("sol.json") + " --n-max 4").code, 0);
  const Outcome rho = run("rho " + cfg("sol.json") + " 1,0 2");
  EXPECT_EQ(rho.code, 0);
  EXPECT_NE(rho.out.find("\"index\""), std::string::npos);
  EXPECT_EQ(run("distortion " + cfg("bs2.json") + " --n-max 4").code, 0);
  EXPECT_EQ(run("clf " + cfg("bs2.json") + " --n-max 3 --model cubic").code, 2);
}
