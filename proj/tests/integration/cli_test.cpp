#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "ultrafit_cli/cli.hpp"

namespace fs = std::filesystem;
using ultrafit::cli::run_cli;

namespace {

fs::path tmp_dir() {
  static const fs::path dir = [] {
    const char* env = std::getenv("ULTRAFIT_TEST_TMP");
    fs::path d = env ? fs::path(env) : fs::temp_directory_path() / "ultrafit_cli_test";
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string path(const std::string& name) { return (tmp_dir() / name).string(); }

void write(const std::string& name, const std::string& text) {
  std::ofstream(path(name), std::ios::binary) << text;
}

std::string slurp(const std::string& file) {
  std::ifstream in(file, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

/// Two labelled blobs in the plane, written as a points CSV.
void write_blobs(const std::string& name, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> noise(0.0, 0.5);
  std::ostringstream csv;
  csv << "x,y,label\n";
  for (int i = 0; i < 40; ++i) {
    const int cls = i % 2;
    csv << cls * 6 + noise(rng) << ',' << noise(rng) << ',' << (i % 4 == 0 ? "" : std::to_string(cls))
        << '\n';
  }
  write(name, csv.str());
}

const std::string kFigure1 = "4 4\n0 1 1\n1 2 3\n2 3 2\n1 3 3\n";

}  // namespace

TEST_SUITE_BEGIN("cli");

TEST_CASE("fit on an ultrametric edge list reproduces it") {
  write("fig1.txt", kFigure1);
  const Run r = run({"fit", "--input", path("fig1.txt"), "--output", path("fig1.fit")});
  REQUIRE(r.code == 0);
  CHECK(slurp(path("fig1.fit")) == kFigure1);
  CHECK(slurp(path("fig1.fit.trace.csv")).rfind("iteration,cost\n0,0\n", 0) == 0);
  CHECK(fs::exists(path("fig1.fit.linkage")));
  CHECK_FALSE(fs::exists(path("fig1.fit.svg")));
}

TEST_CASE("cluster the four-vertex linkage into two blocks") {
  write("fig1.txt", kFigure1);
  REQUIRE(run({"fit", "--input", path("fig1.txt"), "--output", path("fig1b.fit"),
               "--iterations", "3"})
              .code == 0);
  const Run r = run({"cluster", "--input", path("fig1b.fit.linkage"), "--k", "2", "--output",
                     path("fig1.labels")});
  REQUIRE(r.code == 0);
  CHECK(slurp(path("fig1.labels")) == "vertex,label\n0,0\n1,0\n2,1\n3,1\n");
}

TEST_CASE("eval of permuted ground truth is 1") {
  write("pred.csv", "vertex,label\n0,1\n1,1\n2,0\n3,0\n");
  write("truth.txt", "0 4\n1 4\n2 9\n3 9\n");
  const Run r = run({"eval", "--input", path("pred.csv"), "--truth", path("truth.txt")});
  REQUIRE(r.code == 0);
  CHECK(r.out == "accuracy 1 over 4 labeled vertices\n");
}

TEST_CASE("check verdicts") {
  write("fig1.txt", kFigure1);
  write("tri.txt", "3 3\n0 1 1\n1 2 2\n0 2 3\n");
  CHECK(run({"check", "--input", path("fig1.txt")}).code == 0);
  const Run r = run({"check", "--input", path("tri.txt")});
  CHECK(r.code == 1);
  CHECK(r.out == "not ultrametric (max deviation 1)\n");
  CHECK(run({"check", "--input", path("tri.txt"), "--tol", "1"}).code == 0);
}

TEST_CASE("full pipeline is byte-identical across runs") {
  write_blobs("blobs.csv", 5);
  auto pipeline = [&](const std::string& tag) {
    REQUIRE(run({"graph-build", "--input", path("blobs.csv"), "--output", path(tag + ".edges"),
                 "--labeled", "--labels-out", path(tag + ".truth")})
                .code == 0);
    REQUIRE(run({"fit", "--input", path(tag + ".edges"), "--output", path(tag + ".fit"),
                 "--cost", "closest+triplet", "--labels", path(tag + ".truth"),
                 "--triplet-count", "50", "--seed", "3", "--iterations", "40", "--svg"})
                .code == 0);
    REQUIRE(run({"cluster", "--input", path(tag + ".fit.linkage"), "--k", "2", "--output",
                 path(tag + ".pred")})
                .code == 0);
    const Run ev = run({"eval", "--input", path(tag + ".pred"), "--truth", path(tag + ".truth")});
    REQUIRE(ev.code == 0);
    return ev.out;
  };
  const std::string a = pipeline("run_a");
  const std::string b = pipeline("run_b");
  CHECK(a == b);
  for (const char* ext : {".edges", ".truth", ".fit", ".fit.linkage", ".fit.trace.csv",
                          ".fit.svg", ".pred"}) {
    CHECK(slurp(path(std::string("run_a") + ext)) == slurp(path(std::string("run_b") + ext)));
  }
  CHECK(slurp(path("run_a.fit.svg")).rfind("<svg", 0) == 0);
}

TEST_CASE("batch mode matches single fits for any job count") {
  write_blobs("b1.csv", 1);
  write_blobs("b2.csv", 2);
  fs::create_directories(path("inputs"));
  for (const char* name : {"b1", "b2"}) {
    REQUIRE(run({"graph-build", "--input", path(std::string(name) + ".csv"), "--output",
                 path(std::string("inputs/") + name + ".txt"), "--labeled"})
                .code == 0);
  }
  const std::vector<std::string> common{"--cost",       "closest+size", "--iterations", "25",
                                        "--input",      path("inputs/b1.txt"), "--input",
                                        path("inputs/b2.txt")};
  auto batch = [&](const std::string& dir, const std::string& jobs) {
    std::vector<std::string> args{"fit", "--output", path(dir), "--jobs", jobs};
    args.insert(args.end(), common.begin(), common.end());
    const Run r = run(args);
    REQUIRE(r.code == 0);
    return r.out;
  };
  const std::string seq = batch("out_seq", "1");
  const std::string par = batch("out_par", "2");
  CHECK(seq == par);
  REQUIRE(run({"fit", "--cost", "closest+size", "--iterations", "25", "--input",
               path("inputs/b2.txt"), "--output", path("single_b2.txt")})
              .code == 0);
  CHECK(slurp(path("out_par/b2.txt")) == slurp(path("single_b2.txt")));
  CHECK(slurp(path("out_seq/b1.txt.linkage")) == slurp(path("out_par/b1.txt.linkage")));
}

TEST_CASE("error exit codes") {
  write("fig1.txt", kFigure1);
  write("bad.txt", "4 4\n0 1 1\n1 2 x\n");
  write("huge.txt", "3 3\n0 1 1e200\n1 2 2e200\n0 2 3e200\n");

  Run r = run({"fit", "--input", path("missing.txt"), "--output", path("o")});
  CHECK(r.code == 2);
  CHECK(r.err.find("cannot open") != std::string::npos);

  r = run({"fit", "--input", path("bad.txt"), "--output", path("o")});
  CHECK(r.code == 2);
  CHECK(r.err.find("line 3") != std::string::npos);

  CHECK(run({"fit", "--input", path("fig1.txt"), "--output", path("o"), "--bogus"}).code == 2);
  CHECK(run({"fit", "--input", path("fig1.txt"), "--output", path("o"), "--cost", "ward"})
            .code == 2);
  CHECK(run({"fit", "--input", path("fig1.txt"), "--output", path("o"), "--step-size", "-1"})
            .code == 2);
  CHECK(run({"fit", "--input", path("fig1.txt"), "--output", path("o"), "--cost",
             "closest+triplet"})
            .code == 2);
  CHECK(run({}).code == 2);
  CHECK(run({"--help"}).code == 0);

  r = run({"fit", "--input", path("huge.txt"), "--output", path("o")});
  CHECK(r.code == 3);
  CHECK(r.err.find("not finite") != std::string::npos);

  write("trip.txt", "0 1 9\n");
  CHECK(run({"fit", "--input", path("fig1.txt"), "--output", path("o"), "--cost",
             "closest+triplet", "--triplets", path("trip.txt")})
            .code == 2);

  write("fig1.linkage", "0 1 1 2\n2 3 2 2\n4 5 3 4\n");
  CHECK(run({"cluster", "--input", path("fig1.linkage"), "--k", "9", "--output", path("o")})
            .code == 2);

  write("points.csv", "x,y\n0,0\n1,1\n");
  CHECK(run({"graph-build", "--input", path("points.csv"), "--output", path("o"), "--knn",
             "2"})
            .code == 2);
}

TEST_SUITE_END();
