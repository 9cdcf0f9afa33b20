#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
};

Run gcg(const std::string& args) {
  const auto dir = fs::temp_directory_path() / "gcg_cli_test";
  fs::create_directories(dir);
  const auto out = dir / "stdout.txt";
  const std::string cmd = std::string(GCG_BINARY) + " " + args + " > " + out.string() + " 2> /dev/null";
  const int status = std::system(cmd.c_str());
  std::ifstream in(out);
  std::stringstream ss;
  ss << in.rdbuf();
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, ss.str()};
}

}  // namespace

TEST_CASE("exit code matrix") {
  struct Case {
    const char* args;
    int code;
  };
  const Case cases[] = {
      {"build --group Z4 --alpha 1 --set 1,3", 0},
      {"build --group Z4 --alpha 1 --set 2", 2},
      {"build --group Z1 --alpha 0 --set \"\"", 0},
      {"build --group D8 --alpha 0 --set 1", 2},
      {"build --group Z4 --alpha 7 --set 1", 1},
      {"build --group Q8 --alpha 0 --set 1", 1},
      {"build --group Z4 --alpha 1", 1},
      {"build --group Z4 --alpha 1 --set 9", 1},
      {"", 1},
      {"frobnicate", 1},
      {"group list --max-order 12", 0},
      {"group list --max-order 100000", 3},
      {"enumerate --group Z8 --caps-bits 2", 3},
      {"enumerate --group D6 --alpha 1", 0},
      {"verify ex-3.3 --k 1", 0},
      {"verify ex-3.3 --k 0", 1},
      {"verify thm-9.9", 1},
      {"verify thm-4.3 --p 3", 0},
      {"verify thm-4.3 --p 4", 1},
      {"verify lemma-2.3 --max-order 12", 0},
      {"verify prop-2.4 --group D8", 1},
      {"export --named C4 --canonical", 0},
      {"export --named C4 --format svg", 1},
      {"export --ex33 1 --format dot", 0},
      {"export --group Z4 --alpha 1 --set 2", 2},
      {"export --named C4 --graph6 Cl", 1},
      {"analyze --ex32 1,2", 0},
      {"analyze --graph6 Cr --format json", 0},
      {"--caps-aut 0 analyze --named C5", 1},
      {"census --max-order 100000 --out /tmp/gcg_cli_test/x.jsonl", 3},
      {"census --max-order 3", 1},
  };
  for (const auto& c : cases) {
    INFO(c.args);
    CHECK(gcg(c.args).code == c.code);
  }
}

TEST_CASE("command outputs") {
  CHECK(gcg("export --named C4 --canonical").out == "Cr\n");
  CHECK(gcg("export --named C4").out == "Cl\n");
  CHECK(gcg("export --named E1").out == "@\n");

  const auto dot = gcg("export --ex33 1 --format dot").out;
  int labels = 0;
  for (std::size_t p = dot.find("label="); p != std::string::npos; p = dot.find("label=", p + 1)) ++labels;
  CHECK(labels == 12);
  CHECK(dot.find("label=\"(0,0,0)\"") != std::string::npos);

  auto c4 = nlohmann::json::parse(gcg("--format json build --group Z4 --alpha 1 --set 1,3").out);
  CHECK(c4["unworthy"] == true);
  CHECK(c4["kernel_order"] == 2);
  CHECK(c4["vertices"] == 4);

  auto bad = nlohmann::json::parse(gcg("--format json build --group Z4 --alpha 1 --set 2").out);
  CHECK(bad["validation"]["cond_ii"]["holds"] == false);
  CHECK(bad["validation"]["cond_ii"]["witness"] == "1");

  auto one = nlohmann::json::parse(gcg("--format json build --group Z1 --alpha 0 --set \"\"").out);
  CHECK(one["vertices"] == 1);
  CHECK(one["edges"] == 0);

  std::istringstream lines(gcg("verify thm-4.3 --p 3").out);
  std::string line;
  int reports = 0;
  while (std::getline(lines, line)) {
    auto j = nlohmann::json::parse(line);
    CHECK(j["verdict"] == "verified");
    ++reports;
  }
  CHECK(reports == 2);

  auto ex = nlohmann::json::parse(gcg("verify ex-3.3 --k 1").out);
  CHECK(ex["certificate"].contains("separation"));
}
