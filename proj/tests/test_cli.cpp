#include "doctest.h"

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include "json.hpp"

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;
};

const char* hk_bin() {
  const char* bin = std::getenv("HK_BIN");
  REQUIRE_MESSAGE(bin != nullptr, "HK_BIN must point at the hk binary");
  return bin;
}

RunResult run(const std::string& args) {
  std::string cmd = std::string(hk_bin()) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult result;
  std::array<char, 4096> buffer;
  std::size_t n;
  while ((n = fread(buffer.data(), 1, buffer.size(), pipe)) > 0)
    result.output.append(buffer.data(), n);
  int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
}

}  // namespace

TEST_CASE("oracle subcommand emits the documented JSON shape") {
  auto result = run("oracle --curve hesse:p5:l1 --ideal maximal --q 1");
  CHECK(result.exit_code == 0);
  auto j = nlohmann::json::parse(result.output);
  CHECK(j["q"] == 1);
  CHECK(j["total"] == 1);
  CHECK(j["per_degree"].size() == 2);
  CHECK(j["per_degree"][1][1] == 0);

  auto multi = run("oracle --curve fermat:p2 --ideal maximal --q 2,4,8");
  CHECK(multi.exit_code == 0);
  auto arr = nlohmann::json::parse(multi.output);
  REQUIRE(arr.is_array());
  CHECK(arr[0]["total"] == 8);
  CHECK(arr[1]["total"] == 36);
  CHECK(arr[2]["total"] == 144);

  auto cubic = run("oracle --curve hesse:p5:l1 --ideal maximal --q 5,25");
  CHECK(cubic.exit_code == 0);
  auto cj = nlohmann::json::parse(cubic.output);
  CHECK(cj[0]["total"] == 55);
  CHECK(cj[1]["total"] == 1405);
}

TEST_CASE("oracle csv format carries the documented columns") {
  auto result = run("oracle --curve hesse:p5:l1 --ideal maximal --q 5 --format csv");
  CHECK(result.exit_code == 0);
  CHECK(result.output.rfind("q,m,dim_Rm,dim_Iq_m,colength\n", 0) == 0);
  CHECK(result.output.find("5,0,1,0,1\n") != std::string::npos);
  CHECK(result.output.find("5,8,24,24,0\n") != std::string::npos);
}

TEST_CASE("verify exits 0 on catalog matches and is byte-deterministic") {
  auto a = run("verify --curve ci-quartic:p5 --ideal maximal --e-max 1");
  CHECK(a.exit_code == 0);
  auto j = nlohmann::json::parse(a.output);
  CHECK(j["verdict"] == "Match");
  CHECK(j["e_hk"]["num"] == "8");
  CHECK(j["e_hk"]["den"] == "3");
  auto b = run("verify --curve ci-quartic:p5 --ideal maximal --e-max 1");
  CHECK(a.output == b.output);
  CHECK(a.output.find("timing") == std::string::npos);
}

TEST_CASE("formula subcommand and the h1 exit code") {
  write_file("cli_complete.json", R"({"N":2,"p":2})");
  auto unresolved = run("formula --theorem complete --params cli_complete.json --q 2");
  CHECK(unresolved.exit_code == 5);

  write_file("cli_complete_h1.json", R"({"N":2,"p":2,"h1":2})");
  auto ok = run("formula --theorem complete --params cli_complete_h1.json --q 4");
  CHECK(ok.exit_code == 0);
  auto j = nlohmann::json::parse(ok.output);
  CHECK(j["values"][0]["phi"] == "36");

  write_file("cli_complete_n3.json", R"({"N":3,"p":5})");
  auto n3 = run("formula --theorem complete --params cli_complete_n3.json --q 5");
  CHECK(n3.exit_code == 0);
  CHECK(nlohmann::json::parse(n3.output)["values"][0]["phi"] == "65");
  std::remove("cli_complete_n3.json");

  write_file("cli_space.json", R"({"delta":6,"p":5,"case":"indecomposable"})");
  auto space = run("formula --theorem space-curve --params cli_space.json --q 5");
  CHECK(space.exit_code == 0);
  CHECK(nlohmann::json::parse(space.output)["values"][0]["phi"] == "99");

  write_file("cli_general.json",
             R"({"delta":3,"d_list":[1,1,1],"summands":[{"rank":2,"degree":-9}]})");
  auto general = run("formula --theorem general --params cli_general.json --q 5,25");
  CHECK(general.exit_code == 0);
  auto gj = nlohmann::json::parse(general.output);
  CHECK(gj["values"][0]["phi"] == "55");
  CHECK(gj["values"][1]["phi"] == "1405");

  // oracle-backed h1 closes the integral-twist gap of the char-2 cubic
  write_file("cli_oracle_h1.json",
             R"({"delta":3,"d_list":[1,1,1],"summands":[{"rank":2,"degree":-9}],
                 "h1":{"oracle":{"curve":"fermat:p2"}}})");
  auto backed = run("formula --theorem general --params cli_oracle_h1.json --q 2,4");
  CHECK(backed.exit_code == 0);
  auto bj = nlohmann::json::parse(backed.output);
  CHECK(bj["values"][0]["phi"] == "8");
  CHECK(bj["values"][1]["phi"] == "36");

  std::remove("cli_complete.json");
  std::remove("cli_complete_h1.json");
  std::remove("cli_space.json");
  std::remove("cli_general.json");
  std::remove("cli_oracle_h1.json");
}

TEST_CASE("typed exit codes for modeling errors") {
  CHECK(run("oracle --curve no-such-curve --ideal maximal --q 1").exit_code == 2);

  write_file("cli_non_primary.json", R"({"gens":["X0"]})");
  auto stop = run("oracle --curve hesse:p5:l1 --ideal cli_non_primary.json --q 5");
  CHECK(stop.exit_code == 3);
  std::remove("cli_non_primary.json");

  write_file("cli_bad_delta.json",
             R"({"name":"bad","p":5,"num_vars":3,"delta":4,"gens":["X^3 + Y^3 + Z^3 + X*Y*Z"]})");
  auto mismatch = run("oracle --curve cli_bad_delta.json --ideal maximal --q 5");
  CHECK(mismatch.exit_code == 4);
  std::remove("cli_bad_delta.json");
}

TEST_CASE("classify and hasse subcommands") {
  write_file("cli_dd.json", R"({"summands":[{"rank":3,"degree":-4}]})");
  auto yes = run("classify --decomposition cli_dd.json");
  CHECK(yes.exit_code == 0);
  CHECK(nlohmann::json::parse(yes.output)["verdict"] == "Yes");

  write_file("cli_dd_no.json", R"({"summands":[
    {"rank":2,"degree":-4,"kind":{"AtiyahTwist":"l"}},
    {"rank":1,"degree":-2,"kind":{"Line":"l"}}]})");
  auto no = run("classify --decomposition cli_dd_no.json");
  CHECK(no.exit_code == 0);
  auto nj = nlohmann::json::parse(no.output);
  CHECK(nj["verdict"] == "No");
  CHECK(nj["failed_condition"] == "iv");

  std::remove("cli_dd.json");
  std::remove("cli_dd_no.json");

  CHECK(run("hasse --curve fermat:p2").output == "0\n");
  CHECK(run("hasse --curve hesse:p2:lF8").output == "1\n");
}

TEST_CASE("verify honors HK_THREADS") {
  std::string cmd = "HK_THREADS=3 " + std::string(hk_bin()) +
                    " verify --curve fermat:p2 --ideal maximal --e-max 2 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string output;
  std::array<char, 4096> buffer;
  std::size_t n;
  while ((n = fread(buffer.data(), 1, buffer.size(), pipe)) > 0) output.append(buffer.data(), n);
  CHECK(WEXITSTATUS(pclose(pipe)) == 0);
  auto serial = run("verify --curve fermat:p2 --ideal maximal --e-max 2");
  CHECK(output == serial.output);
}
