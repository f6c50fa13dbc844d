#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "theta4/cli.hpp"
#include "theta4/io.hpp"

using namespace theta4;
namespace fs = std::filesystem;

namespace {

std::string data_file(const std::string& name) { return std::string(THETA4_DATA_DIR) + "/" + name; }

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "theta4");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

fs::path scratch() {
  static const fs::path dir = [] {
    auto d = fs::temp_directory_path() / ("theta4_cli_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

const fs::path& built_inventory() {
  static const fs::path p = [] {
    auto out = scratch() / "inv.json";
    auto r = run({"build", "--points", data_file("delpezzo8_points.json"), "--out", out.string(), "--jobs", "1"});
    EXPECT_EQ(r.code, 0) << r.err;
    return out;
  }();
  return p;
}

}  // namespace

TEST(Cli, BuildIsDeterministicAndRoundTrips) {
  auto again = scratch() / "inv2.json";
  ASSERT_EQ(run({"build", "--points", data_file("delpezzo8_points.json"), "--out", again.string()}).code, 0);
  EXPECT_EQ(slurp(built_inventory()), slurp(again));
  auto j = io::read_json_file(built_inventory().string());
  EXPECT_EQ(j["tritangents"].size(), 120u);
  auto inv = io::inventory_from_json(j);
  EXPECT_EQ(io::to_json(inv), j);
}

TEST(Cli, TritangentsFilter) {
  auto r = run({"tritangents", "--inventory", built_inventory().string(), "--type", "(3,3)"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = io::json::parse(r.out);
  EXPECT_EQ(j.size(), 28u);
  auto ref = io::read_json_file(data_file("delpezzo8_reference.json"))["planes_33"];
  for (const auto& want : ref) {
    bool hit = false;
    for (const auto& t : j) hit |= t["label"] == want["label"] && t["plane"] == want["plane"];
    EXPECT_TRUE(hit) << want["label"].dump();
  }
}

TEST(Cli, QuotientFromInventory) {
  auto r = run({"quotient", "--inventory", built_inventory().string(), "--p1", "1,2,3,4,5", "--p2", "3,4,5,6,9"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = io::json::parse(r.out);
  EXPECT_EQ(j["value_rational"], "388285435266921829/1618395584522100000");
  EXPECT_EQ(j["sign_exponent_n"], 0);
  EXPECT_EQ(j["restarts"], 0);
  EXPECT_EQ(j["value_decimal"].get<std::string>().substr(0, 30), "0.2399199793798124993931025790");
  auto seeded = run({"quotient", "--inventory", built_inventory().string(), "--p1", "1,2,3,4,5", "--p2", "3,4,5,6,9",
                     "--seed", "12345"});
  ASSERT_EQ(seeded.code, 0);
  EXPECT_EQ(io::json::parse(seeded.out)["value_rational"], j["value_rational"]);
}

TEST(Cli, QuotientFromRequestFileAndCache) {
  auto req = scratch() / "req.json";
  io::write_json_file(req.string(), io::json{{"p1", {1, 2, 3, 4, 5}}, {"p2", {3, 4, 5, 6, 9}}, {"precision", 40}, {"seed", 0}});
  auto cache = scratch() / "cache";
  auto r = run({"quotient", "--points", data_file("delpezzo8_points.json"), "--request", req.string(), "--cache-dir",
                cache.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(std::distance(fs::directory_iterator(cache), fs::directory_iterator()), 1);
  auto again = run({"quotient", "--points", data_file("delpezzo8_points.json"), "--request", req.string(),
                    "--cache-dir", cache.string()});
  EXPECT_EQ(again.out, r.out);
}

TEST(Cli, InputErrors) {
  auto odd = run({"quotient", "--inventory", built_inventory().string(), "--p1", "1,2,3", "--p2", "3,4,5,6,9"});
  EXPECT_EQ(odd.code, cli::kInputError);
  EXPECT_NE(odd.err.find("label parity"), std::string::npos);
  auto bad = scratch() / "bad.json";
  std::ofstream(bad) << "{\"points\": [";
  EXPECT_EQ(run({"build", "--points", bad.string(), "--out", (scratch() / "x.json").string()}).code, cli::kInputError);
  EXPECT_EQ(run({"frobnicate"}).code, cli::kInputError);
  EXPECT_EQ(run({"build", "--points", "/nonexistent/points.json", "--out", "x"}).code, cli::kInputError);
  // seven points
  auto pts = io::read_json_file(data_file("delpezzo8_points.json"));
  pts["points"].erase(pts["points"].size() - 1);
  auto seven = scratch() / "seven.json";
  io::write_json_file(seven.string(), pts);
  EXPECT_EQ(run({"build", "--points", seven.string(), "--out", (scratch() / "y.json").string()}).code, cli::kInputError);
}

TEST(Cli, SteinerPairs) {
  auto r = run({"steiner", "--p1", "1,2,3,4,5", "--p2", "3,4,5,6,9"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = io::json::parse(r.out);
  EXPECT_EQ(j["subset"], io::json({1, 2, 6, 9}));
  EXPECT_EQ(j["pairs"].size(), 28u);
  EXPECT_EQ(j["coordinate_basis"].size(), 8u);
  EXPECT_EQ(run({"steiner", "--subset", "1,2,3"}).code, cli::kInputError);
}

TEST(Cli, VerifyAgainstRiemannMatrix) {
  auto r = run({"verify", "--inventory", built_inventory().string(), "--riemann", data_file("delpezzo8_riemann.json"),
                "--p1", "1,2,3,4,5", "--p2", "3,4,5,6,9", "--theta-digits", "10"});
  ASSERT_EQ(r.code, 0) << r.err << r.out;
  auto j = io::json::parse(r.out);
  EXPECT_TRUE(j["pass"].get<bool>());
  EXPECT_LT(j["difference"].get<double>(), 1e-3);
  EXPECT_EQ(j["vanishing_count"], 1);
  EXPECT_EQ(j["algebraic_value"].get<std::string>().substr(0, 20), "0.239919979379812499");

  auto tampered = io::read_json_file(data_file("delpezzo8_riemann.json"));
  tampered["tau"][1][1] = "-1.16996i";
  auto bad = scratch() / "tampered.json";
  io::write_json_file(bad.string(), tampered);
  auto t = run({"verify", "--inventory", built_inventory().string(), "--riemann", bad.string(), "--p1", "1,2,3,4,5",
                "--p2", "3,4,5,6,9"});
  EXPECT_EQ(t.code, cli::kInputError);
  EXPECT_NE(t.err.find("positive definite"), std::string::npos);
}

TEST(Io, RiemannAndRequestRoundTrip) {
  auto m = io::riemann_from_json(io::read_json_file(data_file("delpezzo8_riemann.json")));
  auto again = io::riemann_from_json(io::to_json(m));
  EXPECT_EQ(again.tau, m.tau);
  EXPECT_EQ(again.stated_digits, 5);
  quotient::QuotientRequest q;
  q.p1 = {1, 2, 3, 4, 5};
  q.p2 = {3, 4, 5, 6, 9};
  q.seed = 9;
  auto back = io::request_from_json(io::to_json(q));
  EXPECT_EQ(back.p1, q.p1);
  EXPECT_EQ(back.seed, 9u);
  EXPECT_EQ(io::parse_label_list("1,2,9"), (std::vector<int>{1, 2, 9}));
  EXPECT_THROW(io::parse_label_list("1,,2"), io::InputError);
  auto f = io::form_from_json(io::read_json_file(data_file("delpezzo8_reference.json"))["cubic"]);
  EXPECT_EQ(io::form_from_json(io::to_json(f)), f);
}
