#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "support.hpp"
#include "tcawp/cli.hpp"

using namespace tcawp;
using json = nlohmann::ordered_json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result cli(std::vector<std::string> args, const std::string& input = "") {
  std::istringstream in(input);
  std::ostringstream out, err;
  const int code = run(args, in, out, err);
  return {code, out.str(), err.str()};
}

std::vector<json> lines(const std::string& text) {
  std::vector<json> out;
  std::istringstream s(text);
  for (std::string l; std::getline(s, l);)
    if (!l.empty()) out.push_back(json::parse(l));
  return out;
}

std::string fixture_lines(std::initializer_list<std::string> ids) {
  std::ifstream f(std::string(TCAWP_FIXTURE_DIR) + "/paper_examples.jsonl");
  std::map<std::string, std::string> by_id;
  for (std::string l; std::getline(f, l);)
    if (!l.empty()) by_id[json::parse(l)["id"].get<std::string>()] = l;
  std::string out;
  for (const auto& id : ids) out += by_id.at(id) + "\n";
  return out;
}

std::map<std::string, json> by_id(const std::vector<json>& records) {
  std::map<std::string, json> out;
  for (const json& r : records) out[r["id"].get<std::string>()] = r;
  return out;
}

}  // namespace

TEST_CASE("template generation is deterministic and independent of --jobs") {
  const auto a = cli({"generate", "--count", "10", "--mode", "template", "--seed", "1"});
  const auto b = cli({"generate", "--count", "10", "--mode", "template", "--seed", "1"});
  const auto c = cli({"generate", "--count", "10", "--mode", "template", "--seed", "1", "--jobs", "4"});
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out == c.out);
  CHECK(lines(a.out).size() == 10);
  CHECK(cli({"generate", "--count", "10", "--seed", "2"}).out != a.out);
  for (const json& r : lines(a.out)) CHECK(r.contains("gold"));
}

TEST_CASE("--out writes the same bytes as stdout") {
  const auto path = std::filesystem::temp_directory_path() / "tcawp_cli_out.jsonl";
  REQUIRE(cli({"generate", "-n", "5", "--seed", "9", "--out", path.string()}).code == 0);
  std::ifstream f(path);
  std::stringstream s;
  s << f.rdbuf();
  CHECK(s.str() == cli({"generate", "-n", "5", "--seed", "9"}).out);
  std::filesystem::remove(path);
}

TEST_CASE("check on the three validity fixtures") {
  const auto r = cli({"check"}, fixture_lines({"table1-row1", "table1-row2", "table1-row3"}));
  REQUIRE(r.code == 0);
  auto recs = by_id(lines(r.out));
  CHECK(recs["table1-row1"]["verdict"] == "consistent");
  CHECK(recs["table1-row2"]["verdict"] == "partial");
  CHECK(recs["table1-row2"]["issues"] == json::parse(R"([{"class":"QsObjTypeMismatch","sentence":4}])"));
  CHECK(recs["table1-row3"]["verdict"] == "unrepairable");
  CHECK(recs["table1-row3"]["reason"] == "StructureBroken");
}

TEST_CASE("repair then check turns row 2 consistent") {
  const auto repaired = cli({"repair"}, fixture_lines({"table1-row2"}));
  REQUIRE(repaired.code == 0);
  const json r = lines(repaired.out).at(0);
  CHECK(r["verdict"] == "consistent");
  CHECK(r["repairs"] == json::parse(R"([{"issue":"QsObjTypeMismatch","sentence":4,"before":"blue balloon","after":"blue marble"}])"));
  CHECK(r["text"].get<std::string>().find("How many blue marbles does Agent1 have now ?") != std::string::npos);
  const json again = lines(cli({"check"}, repaired.out).out).at(0);
  CHECK(again["verdict"] == "consistent");
}

TEST_CASE("unrepairable input is reported, not dropped") {
  const json r = lines(cli({"repair"}, fixture_lines({"table1-row3"})).out).at(0);
  CHECK(r["verdict"] == "unrepairable");
  CHECK(r["error_kind"] == "RepairFailed");
}

TEST_CASE("--noise TrSameAgents:1.0 labels every record partial") {
  const auto g = cli({"generate", "-n", "40", "--noise", "TrSameAgents:1.0", "--seed", "5"});
  REQUIRE(g.code == 0);
  for (const json& r : lines(cli({"check"}, g.out).out)) {
    CHECK(r["verdict"] == "partial");
    CHECK(r["issues"][0]["class"] == "TrSameAgents");
  }
}

TEST_CASE("generate | check | repair | check leaves no partial records") {
  const auto g = cli({"generate", "-n", "120", "--sentences", "4,5", "--seed", "11", "--noise",
                      "QsObjTypeMismatch:0.15,TrSameAgents:0.15,TrUnknownAgent:0.15,TrObjTypeMismatch:0.15,"
                      "AtObjTypeMismatch:0.1,TransferExceedsOwned:0.15"});
  REQUIRE(g.code == 0);
  const auto checked = cli({"check"}, g.out);
  const auto repaired = cli({"repair"}, checked.out);
  const auto final_check = cli({"check"}, repaired.out);
  std::size_t partial_before = 0;
  for (const json& r : lines(checked.out)) partial_before += r["verdict"] == "partial";
  CHECK(partial_before > 80);
  for (const json& r : lines(final_check.out)) CHECK(r["verdict"] == "consistent");
}

TEST_CASE("stats on template output reports 100/0/0") {
  const auto g = cli({"generate", "-n", "60", "--sentences", "3,4,5", "--seed", "3"});
  const auto s = cli({"stats", "--json"}, g.out);
  REQUIRE(s.code == 0);
  const auto rows = lines(s.out);
  REQUIRE(rows.size() == 4);
  for (const json& row : rows) {
    CHECK(row["consistent"] == 100.0);
    CHECK(row["repairable"] == 0.0);
    CHECK(row["unrepairable"] == 0.0);
  }
  CHECK(rows[0]["sentences"] == 3);
  CHECK(rows[3]["count"] == 60);
  const auto table = cli({"stats"}, g.out);
  CHECK(table.out.find("100.0") != std::string::npos);
}

TEST_CASE("solve and classify on the carrot problem") {
  const std::string carrot = fixture_lines({"carrot"});
  CHECK(lines(cli({"solve"}, carrot).out).at(0)["answer"] == "38.0");
  CHECK(lines(cli({"classify"}, carrot).out).at(0)["kinds"] == json::parse(R"(["BT","BT","TR","QS"])"));
  const json refused = lines(cli({"solve"}, fixture_lines({"table1-row2"})).out).at(0);
  CHECK(refused["error_kind"] == "UnsolvableState");
}

TEST_CASE("extend emits one record per combination and prunes only infeasible ones") {
  const auto r = cli({"extend", "--seed", "4"}, fixture_lines({"carrot"}));
  REQUIRE(r.code == 0);
  const auto recs = lines(r.out);
  CHECK(recs.size() == 12);
  for (const json& e : recs) {
    CHECK(e["derived_from"] == "carrot");
    if (e.contains("error")) {
      CHECK(e["error_kind"] == "InfeasibleCombination");
      continue;
    }
    CHECK(lines(cli({"check"}, e.dump() + "\n").out).at(0)["verdict"] == "consistent");
  }
  const auto one = lines(cli({"extend", "--combination", "A3->A2:A2"}, fixture_lines({"carrot"})).out);
  REQUIRE(one.size() == 1);
  CHECK(one[0]["id"] == "carrot:A3->A2:A2");
  CHECK(cli({"extend", "--combination", "A1->A1:A9"}, "").code == exit_code::kUsage);
}

TEST_CASE("per-record errors never abort the batch") {
  const std::string input = fixture_lines({"carrot"}) + "{not json\n" + R"({"id":"x"})" + "\n" +
                            R"({"id":"empty-ish","text":"Nobody knows ."})" + "\n" + fixture_lines({"carrot"});
  const auto r = cli({"check"}, input);
  CHECK(r.code == 0);
  const auto recs = lines(r.out);
  REQUIRE(recs.size() == 5);
  CHECK(recs[0]["verdict"] == "consistent");
  CHECK(recs[1]["line"] == 2);
  CHECK(recs[1]["error"].get<std::string>().rfind("SchemaError", 0) == 0);
  CHECK(recs[2]["line"] == 3);
  CHECK(recs[3]["verdict"] == "unrepairable");
  CHECK(recs[4]["error"].get<std::string>().rfind("DuplicateId", 0) == 0);
}

TEST_CASE("exit codes") {
  CHECK(cli({}).code == exit_code::kUsage);
  CHECK(cli({"frobnicate"}).code == exit_code::kUsage);
  CHECK(cli({"generate", "--sentences", "7"}).code == exit_code::kUsage);
  CHECK(cli({"generate", "--agents", "3", "--sentences", "3"}).code == exit_code::kUsage);
  CHECK(cli({"generate", "--noise", "Bogus:0.5"}).code == exit_code::kUsage);
  CHECK(cli({"generate", "--noise", "TrSameAgents:0.8,TrUnknownAgent:0.8"}).code == exit_code::kUsage);
  CHECK(cli({"check", "--input", "/nonexistent/in.jsonl"}).code == exit_code::kIo);
  CHECK(cli({"generate", "--out", "/nonexistent/dir/out.jsonl"}).code == exit_code::kIo);
  CHECK(cli({"--help"}).code == exit_code::kOk);
}

TEST_CASE("TCAWP_LEXICON replaces the bundled kind lexicon") {
  const auto path = std::filesystem::temp_directory_path() / "tcawp_lexicon.txt";
  {
    std::ofstream f(path);
    f << "[transfer-verbs]\ngave\n[temporal-markers]\nnow\n[question-openers]\nhow\n";
  }
  const std::string row1 = fixture_lines({"table1-row1"});
  CHECK(lines(cli({"classify"}, row1).out).at(0)["kinds"] == json::parse(R"(["BT","TR","QS"])"));
  ::setenv("TCAWP_LEXICON", path.c_str(), 1);
  const auto without_donated = lines(cli({"classify"}, row1).out).at(0)["kinds"];
  ::unsetenv("TCAWP_LEXICON");
  CHECK(without_donated == json::parse(R"(["BT","BT","QS"])"));
  std::filesystem::remove(path);
}

TEST_CASE("chain records carry a verdict and are deterministic") {
  const auto a = cli({"generate", "--mode", "chain", "-n", "30", "--sentences", "4", "--seed", "8"});
  REQUIRE(a.code == 0);
  CHECK(a.out == cli({"generate", "--mode", "chain", "-n", "30", "--sentences", "4", "--seed", "8", "-j", "3"}).out);
  for (const json& r : lines(a.out)) {
    CHECK(r.contains("verdict"));
    if (r["verdict"] == "partial") CHECK((r.contains("repaired_text") || r.contains("repair_error")));
  }
  CHECK(cli({"generate", "--mode", "chain", "--corpus", "/nonexistent.jsonl"}).code == exit_code::kIo);
}
