#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "qforms/cli.hpp"

namespace {

using Json = nlohmann::ordered_json;

struct Outcome {
  int status;
  std::string text;
};

Outcome run(const std::vector<std::string>& args) {
  std::ostringstream out;
  const int status = qforms::cli::run(args, out);
  return {status, out.str()};
}

Json run_json(const std::vector<std::string>& args, int expected_status = 0) {
  const auto o = run(args);
  EXPECT_EQ(o.status, expected_status) << o.text;
  return Json::parse(o.text);
}

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string w;
  while (in >> w) out.push_back(w);
  return out;
}

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(' ');
  const auto e = s.find_last_not_of(' ');
  return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const std::string kGolden = QFORMS_GOLDEN_DIR;

}  // namespace

TEST(CliGolden, AllCases) {
  std::ifstream cases(kGolden + "/cases.txt");
  ASSERT_TRUE(cases.good());
  const bool update = std::getenv("QFORMS_UPDATE_GOLDEN") != nullptr;
  std::string line;
  int count = 0;
  while (std::getline(cases, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto p1 = line.find('|');
    const auto p2 = line.rfind('|');
    const std::string name = trim(line.substr(0, p1));
    const auto args = split(line.substr(p1 + 1, p2 - p1 - 1));
    const int status = std::stoi(trim(line.substr(p2 + 1)));
    const auto o = run(args);
    EXPECT_EQ(o.status, status) << name << "\n" << o.text;
    const std::string path = kGolden + "/" + name + ".json";
    if (update) {
      std::ofstream(path) << o.text;
    } else {
      EXPECT_EQ(o.text, slurp(path)) << name;
    }
    // Byte stability.
    EXPECT_EQ(run(args).text, o.text) << name;
    ++count;
  }
  EXPECT_GT(count, 30);
}

TEST(Cli, WorkedExamples) {
  const auto inv = run_json({"invariants", "1,1,3,3,-5"});
  EXPECT_EQ(inv["result"]["hasse"]["3"], -1);
  EXPECT_EQ(run_json({"commensurable", "1,1,1,1,-5", "1,1,3,3,-5"})["result"], false);
  const auto en = run_json({"maclachlan", "enumerate", "--n", "2", "--prime-bound", "10"});
  EXPECT_EQ(en["result"]["count"], 8);
}

TEST(Cli, WitnessesVerify) {
  const std::vector<std::vector<std::string>> cmds = {
      {"witness-odd", "1,1,1,1,-5", "1,1,3,3,-5", "--place", "3"},
      {"witness-even1", "1,1,5,-1", "3,3,5,-1", "--place", "3"},
      {"witness-even2", "1,1,1,3,3,-1", "1,1,1,1,1,-5", "--place", "3"},
      {"witness-real", "1,1,1,1,-1", "1,1,1,-1,-1", "--j", "4"},
  };
  for (const auto& c : cmds) {
    const auto doc = run_json(c);
    ASSERT_TRUE(doc.contains("certificate"));
    const auto v = run_json({"verify-cert", doc["certificate"].dump()});
    EXPECT_EQ(v["result"], true) << c[0];
    // The whole response is accepted too.
    EXPECT_EQ(run_json({"verify-cert", doc.dump()})["result"], true);
    Json bad = doc["certificate"];
    bad["q2"] = bad["q1"];
    EXPECT_EQ(run_json({"verify-cert", bad.dump()})["result"], false) << c[0];
  }
}

TEST(Cli, SynthesizeThenInvariants) {
  const auto s = run_json({"synthesize", "--dim", "6", "--det", "-7", "--signature", "3,3", "--minus-set", "2,5,7"});
  std::string form;
  for (const auto& x : s["result"]["form"]) form += (form.empty() ? "" : ",") + x.get<std::string>();
  const auto inv = run_json({"invariants", form});
  EXPECT_EQ(inv["result"]["det"], "-7");
  EXPECT_EQ(inv["result"]["signature"], Json::array({3, 3}));
  Json finite = Json::object();
  for (auto it = inv["result"]["hasse"].begin(); it != inv["result"]["hasse"].end(); ++it) {
    if (it.key() != "inf") finite[it.key()] = it.value();
  }
  EXPECT_EQ(finite, (Json{{"2", -1}, {"5", -1}, {"7", -1}}));
}

TEST(Cli, FormFiles) {
  const std::string path = ::testing::TempDir() + "qforms_form.json";
  std::ofstream(path) << R"(["1", "1", "3", "3", "-5"])";
  const auto a = run_json({"invariants", "@" + path});
  const auto b = run_json({"invariants", "1,1,3,3,-5"});
  EXPECT_EQ(a, b);
  std::ofstream(path) << R"({"form": [1, 1, 3, 3, -5]})";
  EXPECT_EQ(run_json({"invariants", "@" + path}), b);
  std::ofstream(path) << R"([1, "x"])";
  EXPECT_EQ(run_json({"invariants", "@" + path}, 1)["error"]["kind"], "ParseError");
  EXPECT_EQ(run_json({"invariants", "@/nonexistent/form.json"}, 1)["error"]["kind"], "ParseError");
}

TEST(Cli, ExitStatuses) {
  EXPECT_EQ(run({"invariants", "1,,2"}).status, 1);
  EXPECT_EQ(run({"witt", "1,1", "--place", "4"}).status, 2);
  EXPECT_EQ(run({"contains", "1,1,1,3,3,-1", "1,1,-5"}).status, 2);
  EXPECT_EQ(run({"--help"}).status, 0);
  const auto old = std::getenv("QFORMS_SEARCH_BOUND");
  setenv("QFORMS_SEARCH_BOUND", "3", 1);
  EXPECT_EQ(run({"square-exists", "--at", "inf:1", "--at", "3:2", "--at", "5:2", "--at", "7:3"}).status, 3);
  if (old) {
    setenv("QFORMS_SEARCH_BOUND", old, 1);
  } else {
    unsetenv("QFORMS_SEARCH_BOUND");
  }
}
