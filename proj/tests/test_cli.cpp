#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

const char* kExample =
    R"({"curve":{"components":["v1","v2"],"edges":[{"a":"v1","pa":"0","b":"v2","pb":"0"}]},)"
    R"("rank":2,"splittings":{"v1":[2,0],"v2":[0,2]},"gluings":[{"edge":0,"matrix":[["1","0"],["0","1"]]}]})";

struct Run {
  int status;
  std::string out;
};

struct ScratchDir {
  fs::path path = fs::temp_directory_path() / ("speclab_cli_" + std::to_string(::getpid()));
  ScratchDir() { fs::create_directories(path); }
  ~ScratchDir() {
    std::error_code ignored;
    fs::remove_all(path, ignored);
  }
};

fs::path scratch() {
  static ScratchDir dir;
  return dir.path;
}

fs::path write(const std::string& name, const std::string& text) {
  auto p = scratch() / name;
  std::ofstream(p) << text;
  return p;
}

Run run(const std::string& args) {
  auto out = scratch() / "stdout.txt";
  std::string cmd = std::string(SPECLAB_CLI) + " " + args + " > " + out.string() + " 2>/dev/null";
  int raw = std::system(cmd.c_str());
  std::ifstream in(out);
  std::stringstream buf;
  buf << in.rdbuf();
  std::string text = buf.str();
  while (!text.empty() && text.back() == '\n') text.pop_back();
  return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, text};
}

}  // namespace

TEST_CASE("decide, h0 and dmax on the example") {
  auto ex = write("ex.json", kExample).string();

  auto yes = run("decide -i " + ex + " --target 3,1");
  CHECK(yes.status == 0);
  CHECK(yes.out == R"({"verdict":"yes"})");

  auto no = run("decide -i " + ex + " --target 4,0");
  CHECK(no.status == 3);
  CHECK(no.out == R"({"verdict":"no","witness":{"v1":-2,"v2":-2},"lhs":0,"rhs":1})");

  CHECK(run("decide -i " + ex + " --target 5,0").status == 2);

  auto h = run("h0 -i " + ex + " --twist v1:-2,v2:-2");
  CHECK(h.status == 0);
  CHECK(h.out == R"({"h0":0,"h1":2})");
  CHECK(run("h1 -i " + ex + " --twist v1:-2,v2:-2 --field p:1000003").out == R"({"h0":0,"h1":2})");

  auto d = run("dmax -i " + ex);
  CHECK(d.out == R"({"dmax":3,"witness":{"v1":-2,"v2":-2}})");

  auto box = run("box -i " + ex + " --e -4");
  CHECK(box.status == 0);
  CHECK(box.out.find(R"("size":3)") != std::string::npos);
}

TEST_CASE("certify output verifies and renders") {
  auto ex = write("ex.json", kExample).string();
  auto cert = run("certify -i " + ex + " --target 3,1");
  REQUIRE(cert.status == 0);
  CHECK(run("certify -i " + ex + " --target 3,1").out == cert.out);

  auto path = write("cert.json", cert.out).string();
  auto ok = run("verify -i " + path);
  CHECK(ok.status == 0);
  CHECK(ok.out == R"({"valid":true})");

  auto tampered = cert.out;
  auto at = tampered.find(R"("b":-1)");
  REQUIRE(at != std::string::npos);
  tampered.replace(at, 6, R"("b":0)");
  auto bad = run("verify -i " + write("bad.json", tampered).string());
  CHECK(bad.status == 3);
  CHECK(bad.out.find(R"("valid":false)") != std::string::npos);

  auto dot = run("export-dot -i " + path);
  CHECK(dot.status == 0);
  CHECK(dot.out.rfind("digraph certificate", 0) == 0);
  CHECK(run("export-dot -i " + ex).out.rfind("graph curve", 0) == 0);
}

TEST_CASE("malformed input exits 1") {
  auto broken = write("broken.json", "{\"curve\":").string();
  CHECK(run("h0 -i " + broken).status == 1);
  auto ex = write("ex.json", kExample).string();
  CHECK(run("h0 -i " + ex + " --twist v7:1").status == 1);
  CHECK(run("decide -i " + ex).status == 1);
  CHECK(run("h0 -i /nonexistent/file.json").status == 1);
  CHECK(run("frobnicate").status == 1);
}

TEST_CASE("oracle-check is deterministic") {
  auto a = run("oracle-check --seed 5 --cases 6");
  CHECK(a.status == 0);
  CHECK(a.out.find(R"("h0_discrepancies":[])") != std::string::npos);
  CHECK(run("oracle-check --seed 5 --cases 6").out == a.out);
}
