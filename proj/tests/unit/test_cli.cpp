#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "helpers.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
  int status;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "trustclust");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int status = trustclust::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {status, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  auto p = fs::temp_directory_path() / ("trustclust_cli_" + name);
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) { return trustclust::read_file(p); }

std::size_t line_count(const fs::path& p) {
  const auto s = slurp(p);
  return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n'));
}

}  // namespace

TEST_CASE("generate writes a reproducible default population") {
  const auto a = scratch("gen_a"), b = scratch("gen_b");
  const auto r = run({"generate", "--out", a.string()});
  CHECK(r.status == 0);
  CHECK(line_count(a / "participants.csv") == 201);
  CHECK(line_count(a / "events.csv") == 2001);
  CHECK(run({"generate", "--out", b.string(), "--seed", "0"}).status == 0);
  CHECK(slurp(a / "participants.csv") == slurp(b / "participants.csv"));
  CHECK(slurp(a / "events.csv") == slurp(b / "events.csv"));
  CHECK(trustclust::ingest_directory(a).participants.size() == 200);

  CHECK(run({"generate", "--out", b.string(), "--seed", "1"}).status == 0);
  CHECK(slurp(a / "events.csv") != slurp(b / "events.csv"));
}

TEST_CASE("generate honours a spec file and --n") {
  const auto dir = scratch("gen_spec");
  fs::create_directories(dir);
  const auto spec = dir / "spec.json";
  trustclust::write_file_atomic(spec, R"({"n_participants": 30, "drive_types": ["G"]})");
  CHECK(run({"generate", "--out", (dir / "d").string(), "--spec", spec.string()}).status == 0);
  CHECK(line_count(dir / "d" / "participants.csv") == 31);
  CHECK(run({"generate", "--out", (dir / "e").string(), "--spec", spec.string(), "--n", "12"}).status == 0);
  CHECK(line_count(dir / "e" / "participants.csv") == 13);

  trustclust::write_file_atomic(spec, R"({"confident_fraction": 2})");
  const auto bad = run({"generate", "--out", (dir / "f").string(), "--spec", spec.string()});
  CHECK(bad.status == 1);
  CHECK(bad.err.find("InvalidSpec") != std::string::npos);
}

TEST_CASE("I/O failures exit with status 2") {
  const auto dir = scratch("io");
  fs::create_directories(dir);
  trustclust::write_file_atomic(dir / "blocker", "x");
  CHECK(run({"generate", "--out", (dir / "blocker" / "sub").string()}).status == 2);
  CHECK(run({"ingest", "--data", (dir / "missing").string()}).status == 2);
}

TEST_CASE("usage errors exit with status 1") {
  CHECK(run({}).status == 1);
  CHECK(run({"frobnicate"}).status == 1);
  CHECK(run({"generate"}).status == 1);
  CHECK(run({"generate", "--out", "x", "-s", "3"}).status == 1);
  CHECK(run({"--help"}).status == 0);
}

TEST_CASE("pipeline end to end") {
  const auto data = scratch("pipe_data"), out = scratch("pipe_out"), again = scratch("pipe_again");
  REQUIRE(run({"generate", "--out", data.string()}).status == 0);

  const auto r = run({"report", "--data", data.string(), "--out", out.string()});
  REQUIRE(r.status == 0);
  for (const char* name : {"General model", "Confident", "Skeptical", "Less than mean age", "At least mean age", "Male",
                           "Female", "Aggressive", "Conservative"})
    CHECK(r.out.find(name) != std::string::npos);
  for (const char* f : {"report.txt", "report.json", "clustering.json", "features.csv", "assignments.csv",
                        "boxstats.csv", "curves.csv"})
    CHECK(fs::exists(out / f));

  const auto r2 = run({"pipeline", "--data", data.string(), "--out", again.string()});
  REQUIRE(r2.status == 0);
  for (const char* f : {"report.txt", "report.json", "clustering.json", "curves.csv", "boxstats.csv"})
    CHECK(slurp(out / f) == slurp(again / f));

  const auto narrow = scratch("pipe_narrow");
  const auto r3 = run({"report", "--data", data.string(), "--out", narrow.string(), "--criteria", "trust-dynamics"});
  REQUIRE(r3.status == 0);
  CHECK(r3.out.find("Confident") != std::string::npos);
  CHECK(r3.out.find("Male") == std::string::npos);
  CHECK(r3.out.find("Aggressive") == std::string::npos);
}

TEST_CASE("pipeline on a dataset without analyzable drives") {
  trustclust::Dataset d;
  for (int i = 0; i < 4; ++i)
    d.participants.push_back(tc_test::make_record("A" + std::to_string(i), trustclust::DriveType::A,
                                                  tc_test::constant_trust(50)));
  const auto data = scratch("drive_a");
  trustclust::write_dataset(data, d);
  const auto r = run({"report", "--data", data.string(), "--out", scratch("drive_a_out").string()});
  CHECK(r.status == 1);
  CHECK(r.err.find("EmptyResult") != std::string::npos);
}

TEST_CASE("individual subcommands") {
  const auto data = scratch("sub_data");
  REQUIRE(run({"generate", "--out", data.string(), "--n", "100", "--seed", "4"}).status == 0);

  const auto ing = run({"ingest", "--data", data.string()});
  CHECK(ing.status == 0);
  CHECK(ing.out.find("100 participants") != std::string::npos);

  const auto feat = scratch("sub_features.csv");
  CHECK(run({"features", "--data", data.string(), "--out", feat.string()}).status == 0);
  CHECK(line_count(feat) == 101);

  const auto clu = scratch("sub_cluster");
  const auto c = run({"cluster", "--data", data.string(), "--out", clu.string(), "--k-range", "2:4"});
  CHECK(c.status == 0);
  CHECK(c.out.find("ground_truth_ari") != std::string::npos);
  CHECK(line_count(clu / "assignments.csv") == 101);
  CHECK(run({"cluster", "--data", data.string(), "--out", clu.string(), "--k-range", "5:3"}).status == 1);

  const auto fit = scratch("sub_fit");
  const auto f = run({"fit", "--data", data.string(), "--out", fit.string(), "--criteria", "general,trust-dynamics",
                      "--models", "lr,ss"});
  CHECK(f.status == 0);
  CHECK(fs::exists(fit / "general__general_lr.json"));
  CHECK(fs::exists(fit / "trustdynamics__confident_ss.json"));
  CHECK_NOTHROW(trustclust::ss_params_from_json(slurp(fit / "general__general_ss.json")));
  CHECK(run({"fit", "--data", data.string(), "--out", fit.string(), "--models", "nn"}).status == 1);

  const auto ev = scratch("sub_eval");
  const auto e = run({"evaluate", "--data", data.string(), "--out", ev.string(), "--models", "lr", "--criteria",
                      "gender"});
  CHECK(e.status == 0);
  CHECK(e.out.find("Female") != std::string::npos);
  CHECK(run({"evaluate", "--data", data.string(), "--out", ev.string(), "--criteria", "height"}).status == 1);
}
