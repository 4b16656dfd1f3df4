#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "qroof/cli.hpp"
#include "qroof/errors.hpp"

using namespace qroof;

namespace {

struct Run {
  int code = 0;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "qroof");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

bool contains(const std::string& text, const std::string& part) { return text.find(part) != std::string::npos; }

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> v;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) v.push_back(l);
  return v;
}

const std::string kAxial = R"({"kind":"axial","alpha":0.8,"beta":0.5,"gamma":0.4})";

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("channel parsing") {
    const QubitMap g = parse_channel(R"({"kind":"general","lambda":[[0.5,0,0],[0,0.5,0],[0,0,0.5]],"t":[0,0,0.1]})");
    CHECK(g.lambda(1, 1) == 0.5);
    CHECK(g.t.z() == 0.1);
    const QubitMap a = parse_channel(kAxial);
    CHECK(a.lambda(0, 0) == doctest::Approx(0.5));
    CHECK(a.lambda(2, 2) == doctest::Approx(0.2));
    CHECK(a.t.z() == doctest::Approx(0.4));
    const QubitMap d = parse_channel(R"({"kind":"named","name":"depolarizing","param":0.5})");
    CHECK(d.lambda(0, 0) == doctest::Approx(0.5));
    CHECK_THROWS_AS(parse_channel("{"), ParseError);
    CHECK_THROWS_AS(parse_channel(R"({"kind":"bogus"})"), ParseError);
    CHECK_THROWS_AS(parse_channel(R"({"kind":"general","lambda":[[1,0],[0,1]],"t":[0,0,0]})"), ParseError);
    CHECK_THROWS_AS(parse_channel(R"({"kind":"named","name":"erasure","param":0.5})"), ParseError);
    CHECK_THROWS_AS(parse_channel(R"({"kind":"axial","alpha":"x","beta":0.5,"gamma":0.4})"), ParseError);
  }

  TEST_CASE("grid parsing") {
    const auto g = parse_grid("0:1:0.25");
    REQUIRE(g.size() == 5);
    CHECK(g.back() == 1.0);
    CHECK(parse_grid("0.3").size() == 1);
    CHECK(parse_grid("0:0.3:0.1").size() == 4);
    CHECK_THROWS_AS(parse_grid("0:1:0"), ParseError);
    CHECK_THROWS_AS(parse_grid("0:1:-0.1"), ParseError);
    CHECK_THROWS_AS(parse_grid("1:0:0.1"), ParseError);
    CHECK_THROWS_AS(parse_grid("a:b:c"), ParseError);
    CHECK(parse_triple("0.1,-0.2,0.3") == Vec3(0.1, -0.2, 0.3));
    CHECK_THROWS_AS(parse_triple("0.1,0.2"), ParseError);
  }

  TEST_CASE("number formatting") {
    CHECK(format_number(0.768114575) == "0.768114575");
    CHECK(format_number(-0.0) == "0");
    CHECK(format_number(std::nan("")) == "nan");
    CHECK(format_number(1.0) == "1");
  }

  TEST_CASE("concurrence command") {
    const Run r = run({"concurrence", kAxial, "--state", "0,0,0"});
    CHECK(r.code == 0);
    CHECK(contains(r.out, "C=0.768114575"));
    CHECK(contains(r.out, "w0=0.25"));
    CHECK(contains(r.out, "foliation=Flat"));
    const Run d = run({"concurrence", R"({"kind":"named","name":"depolarizing","param":0})", "--state", "0.3,0.2,0.1"});
    CHECK(d.code == 0);
    CHECK(contains(d.out, "C=1\n"));
  }

  TEST_CASE("error paths") {
    const Run np = run({"concurrence", R"({"kind":"axial","alpha":0.8,"beta":0.95,"gamma":0.4})"});
    CHECK(np.code == 3);
    CHECK(contains(np.err, "beta exceeds beta_max=0.91209"));
    CHECK(np.out.empty());
    const Run bad = run({"concurrence", R"({"kind":"axial","alpha":0.8})"});
    CHECK(bad.code == 2);
    CHECK(contains(bad.err, "beta"));
    const Run missing = run({"concurrence", "/nonexistent/channel.json"});
    CHECK(missing.code == 2);
    CHECK(contains(missing.err, "/nonexistent/channel.json"));
    const Run state = run({"concurrence", kAxial, "--state", "1,1,1"});
    CHECK(state.code == 2);
    const Run base = run({"entanglement", kAxial, "--base", "10"});
    CHECK(base.code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({"--help"}).code == 0);
    const Run len = run({"oracle", kAxial, "--max-length", "7"});
    CHECK(len.code == 2);
    const Run unwritable = run({"phase-diagram", "--gamma", "0.4", "--beta", "0.5", "--out", "/nonexistent/dir/x.csv"});
    CHECK(unwritable.code == 2);
    CHECK(contains(unwritable.err, "/nonexistent/dir/x.csv"));
  }

  TEST_CASE("channel files") {
    const auto path = std::filesystem::temp_directory_path() / "qroof_cli_channel.json";
    std::ofstream(path) << kAxial;
    const Run r = run({"concurrence", path.string()});
    CHECK(r.code == 0);
    CHECK(contains(r.out, "C=0.768114575"));
    std::filesystem::remove(path);
  }

  TEST_CASE("entanglement command") {
    const Run r = run({"entanglement", kAxial});
    CHECK(r.code == 0);
    CHECK(contains(r.out, "E=0.679735193"));
    CHECK(contains(r.out, "method=flat-roof"));
    const Run e = run({"entanglement", kAxial, "--base", "e"});
    CHECK(contains(e.out, "E=0.4711565"));
  }

  TEST_CASE("capacity command") {
    const Run ad = run({"capacity", R"({"kind":"named","name":"amplitude_damping","param":1})"});
    CHECK(ad.code == 0);
    CHECK(contains(ad.out, "chi=1\n"));
    const Run dep = run({"capacity", R"({"kind":"named","name":"depolarizing","param":0.5})"});
    CHECK(contains(dep.out, "chi=0.188721876"));
    const Run sweep = run({"capacity", "--alpha", "0.8", "--gamma", "0.4", "--beta", "0:0.2:0.1"});
    CHECK(sweep.code == 0);
    const auto rows = lines(sweep.out);
    REQUIRE(rows.size() == 4);
    CHECK(rows[0] == "beta,chi,argmax_z,phase");
    const auto chi_of = [](const std::string& row) {
      const auto a = row.find(',') + 1;
      return std::stod(row.substr(a, row.find(',', a) - a));
    };
    CHECK(std::abs(chi_of(rows[1]) - chi_of(rows[3])) < 1e-6);
    CHECK(contains(rows[3], ",III"));
    const Run both = run({"capacity", kAxial, "--alpha", "0.8"});
    CHECK(both.code == 2);
  }

  TEST_CASE("phase diagram rows") {
    const Run r = run({"phase-diagram", "--alpha", "0.8", "--gamma", "0.4:0.8:0.4", "--beta", "0.5"});
    CHECK(r.code == 0);
    const auto rows = lines(r.out);
    REQUIRE(rows.size() == 3);
    CHECK(rows[0] == "gamma,beta,phase,beta_c,beta1,beta2,beta_max");
    CHECK(rows[1].rfind("0.4,0.5,Ia,", 0) == 0);
    CHECK(rows[2].rfind("0.8,0.5,degenerate-unital,", 0) == 0);
    const Run np = run({"phase-diagram", "--gamma", "0.4", "--beta", "0.95"});
    CHECK(contains(np.out, "not-positive"));
  }

  TEST_CASE("CSV output is deterministic") {
    const std::vector<std::string> args{"sweep", "--alpha", "0.8", "--gamma", "0.4", "--beta", "0.1:0.3:0.1",
                                        "--outputs", "concurrence,entanglement,phase", "--state", "0.1,0,0.2"};
    const Run a = run(args), b = run(args);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(lines(a.out).size() == 4);
    const auto path = std::filesystem::temp_directory_path() / "qroof_cli_sweep.csv";
    auto with_out = args;
    with_out.insert(with_out.end(), {"--out", path.string()});
    CHECK(run(with_out).code == 0);
    std::ifstream in(path);
    const std::string file((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    CHECK(file == a.out);
    std::filesystem::remove(path);
  }

  TEST_CASE("oracle command") {
    const Run r = run({"oracle", kAxial, "--functional", "concurrence", "--max-length", "2", "--seed", "7"});
    CHECK(r.code == 0);
    CHECK(contains(r.out, "value=0.7681145"));
    CHECK(run({"oracle", kAxial, "--functional", "volume"}).code == 2);
  }
}
