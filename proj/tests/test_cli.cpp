#include <cstdlib>
#include <filesystem>
#include <nlohmann/json.hpp>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "netsolve/harness.hpp"
#include "netsolve/io.hpp"

using namespace netsolve;

namespace {

namespace fs = std::filesystem;

struct CliFixture {
  fs::path dir;

  CliFixture() {
    dir = fs::temp_directory_path() / ("netsolve_cli_" + std::to_string(::getpid()));
    fs::create_directories(dir);
  }
  ~CliFixture() { fs::remove_all(dir); }

  std::string path(const std::string& name) const { return (dir / name).string(); }

  int run(const std::string& args) const {
    std::string cmd = std::string(NETSOLVE_CLI_PATH) + " " + args + " >" + path("stdout.txt") +
                      " 2>" + path("stderr.txt");
    int status = std::system(cmd.c_str());
    REQUIRE(status != -1);
    REQUIRE(WIFEXITED(status));
    return WEXITSTATUS(status);
  }

  std::string out() const { return read_text_file(path("stdout.txt")); }
  std::string err() const { return read_text_file(path("stderr.txt")); }
};

std::vector<std::string> csv_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string::npos) end = text.size();
    if (end > start) lines.push_back(text.substr(start, end - start));
    start = end + 1;
  }
  return lines;
}

}  // namespace

TEST_CASE("cli help and argument failures use the documented exit codes") {
  CliFixture fx;
  CHECK(fx.run("--help") == 0);
  CHECK(fx.out().find("Subcommands") != std::string::npos);
  CHECK(fx.run("solve --help") == 0);
  CHECK(fx.run("") == 1);                       // missing subcommand
  CHECK(fx.run("gen-graph --bogus 1") == 1);    // unknown flag
  CHECK(fx.run("imaginary-subcommand") == 1);
}

TEST_CASE("gen-graph writes deterministic edge lists and validates parameters") {
  CliFixture fx;
  std::string g1 = fx.path("a.edges"), g2 = fx.path("b.edges");
  CHECK(fx.run("gen-graph --family er --n 15 --p 0.4 --seed 9 --out " + g1) == 0);
  CHECK(fx.run("gen-graph --family er --n 15 --p 0.4 --seed 9 --out " + g2) == 0);
  CHECK(read_text_file(g1) == read_text_file(g2));
  Network net = read_edge_list(g1);
  CHECK(net.size() == 15);
  CHECK(net.connected());

  CHECK(fx.run("gen-graph --family er --n 15 --out " + g1) == 1);  // missing --p
  CHECK(fx.run("gen-graph --family ws --n 10 --k 3 --p 0.1 --out " + g1) == 1);  // odd k
  CHECK(fx.err().find("k must be even") != std::string::npos);
  CHECK(fx.run("gen-graph --family nope --n 10 --out " + g1) == 1);
}

TEST_CASE("stats reports the ring-lattice diameter through the pipeline") {
  CliFixture fx;
  std::string g = fx.path("ring.edges");
  REQUIRE(fx.run("gen-graph --family ws --n 100 --k 4 --p 0 --seed 1 --out " + g) == 0);
  std::string report = fx.path("stats.json");
  CHECK(fx.run("stats --graph " + g + " --out " + report) == 0);
  nlohmann::json j = nlohmann::json::parse(read_text_file(report));
  CHECK(j.at("n") == 100);
  CHECK(j.at("diameter") == 25);
  CHECK(j.at("connected") == true);
  CHECK(j.at("edges") == 200);
  CHECK(j.at("mean_degree_including_self_loop") == doctest::Approx(5.0));
}

TEST_CASE("stats handles disconnected graphs without failing") {
  CliFixture fx;
  write_text_file(fx.path("disc.edges"), "n=4\n1 2\n3 4\n");
  CHECK(fx.run("stats --graph " + fx.path("disc.edges")) == 0);
  nlohmann::json j = nlohmann::json::parse(fx.out());
  CHECK(j.at("connected") == false);
  CHECK(j.at("diameter").is_null());
}

TEST_CASE("solve produces a trace whose relative error starts at one and falls") {
  CliFixture fx;
  LinearSystem sys = test_helpers::orthogonal_system(6, 61);
  write_matrix_csv(fx.path("A.csv"), sys.A);
  write_vector_csv(fx.path("b.csv"), sys.b);
  REQUIRE(fx.run("gen-graph --family er --n 6 --p 0.6 --seed 4 --out " + fx.path("g.edges")) == 0);
  std::string trace = fx.path("trace.csv");
  CHECK(fx.run("solve --system " + fx.path("A.csv") + " --rhs " + fx.path("b.csv") + " --graph " +
               fx.path("g.edges") + " --steps 200 --stride 50 --radius 1 --seed 2 --out " +
               trace) == 0);
  std::vector<std::string> lines = csv_lines(read_text_file(trace));
  REQUIRE(lines.size() == 6);  // header + t = 0,50,100,150,200
  CHECK(lines[0] == "t,eps_1,eps_2,eps_3,eps_4,eps_5,eps_6,R");
  CHECK(lines[1].substr(0, 2) == "0,");
  CHECK(lines[1].substr(lines[1].rfind(',') + 1) == "1");
  double final_r = parse_double(lines.back().substr(lines.back().rfind(',') + 1));
  CHECK(final_r < 1e-3);
}

TEST_CASE("solve rejects mismatched and disconnected inputs") {
  CliFixture fx;
  LinearSystem sys = test_helpers::random_system(4, 71);
  write_matrix_csv(fx.path("A.csv"), sys.A);
  write_vector_csv(fx.path("b.csv"), sys.b);
  REQUIRE(fx.run("gen-graph --family er --n 6 --p 0.8 --seed 1 --out " + fx.path("g6.edges")) == 0);
  CHECK(fx.run("solve --system " + fx.path("A.csv") + " --rhs " + fx.path("b.csv") + " --graph " +
               fx.path("g6.edges") + " --out " + fx.path("t.csv")) == 1);
  CHECK(fx.err().find("4 rows") != std::string::npos);

  write_text_file(fx.path("disc.edges"), "n=4\n1 2\n3 4\n");
  CHECK(fx.run("solve --system " + fx.path("A.csv") + " --rhs " + fx.path("b.csv") + " --graph " +
               fx.path("disc.edges") + " --out " + fx.path("t.csv")) == 1);
  CHECK(fx.err().find("not connected") != std::string::npos);

  CHECK(fx.run("solve --system " + fx.path("missing.csv") + " --rhs " + fx.path("b.csv") +
               " --graph " + fx.path("g6.edges") + " --out " + fx.path("t.csv")) == 2);
}

TEST_CASE("bound reports agree between the two modes and sum their masses to one") {
  CliFixture fx;
  LinearSystem sys = test_helpers::random_system(4, 81);
  write_matrix_csv(fx.path("A.csv"), sys.A);
  REQUIRE(fx.run("gen-graph --family er --n 4 --p 0.7 --seed 2 --out " + fx.path("g.edges")) == 0);
  std::string cmd_base = "bound --system " + fx.path("A.csv") + " --graph " + fx.path("g.edges") +
                         " --source 2 --t 5";
  CHECK(fx.run(cmd_base + " --mode enum --out " + fx.path("enum.json")) == 0);
  CHECK(fx.run(cmd_base + " --mode dp --out " + fx.path("dp.json")) == 0);
  nlohmann::json je = nlohmann::json::parse(read_text_file(fx.path("enum.json")));
  nlohmann::json jd = nlohmann::json::parse(read_text_file(fx.path("dp.json")));
  CHECK(std::fabs(je.at("bound").get<double>() - jd.at("bound").get<double>()) < 1e-12);
  CHECK(je.at("phi").get<double>() == doctest::Approx(phi(sys)).epsilon(1e-12));
  double mass = 0.0;
  for (double m : je.at("mass_by_order").get<std::vector<double>>()) mass += m;
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(je.at("source") == 2);

  CHECK(fx.run(cmd_base + " --mode guess --out " + fx.path("x.json")) == 1);
  CHECK(fx.run("bound --system " + fx.path("A.csv") + " --graph " + fx.path("g.edges") +
               " --source 9 --t 3 --out " + fx.path("x.json")) == 1);
}

TEST_CASE("kaczmarz runs cyclic, file and random schedules") {
  CliFixture fx;
  LinearSystem sys = test_helpers::random_system(4, 91);
  write_matrix_csv(fx.path("A.csv"), sys.A);
  write_vector_csv(fx.path("b.csv"), sys.b);
  std::string base = "kaczmarz --system " + fx.path("A.csv") + " --rhs " + fx.path("b.csv");

  CHECK(fx.run(base + " --schedule cyclic --sweeps 3 --out " + fx.path("cyc.csv")) == 0);
  std::vector<std::string> lines = csv_lines(read_text_file(fx.path("cyc.csv")));
  REQUIRE(lines.size() == 14);  // header + 13 checkpoints (12 steps)
  CHECK(lines[0] == "k,error");
  double prev = 1e300;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    double e = parse_double(lines[i].substr(lines[i].find(',') + 1));
    CHECK(e <= prev * (1.0 + 1e-12) + 1e-300);
    prev = e;
  }

  // a file schedule listing one full sweep reproduces cyclic --sweeps 1
  write_text_file(fx.path("sched.csv"), "1\n2\n3\n4\n");
  CHECK(fx.run(base + " --schedule " + fx.path("sched.csv") + " --out " + fx.path("file.csv")) == 0);
  CHECK(fx.run(base + " --schedule cyclic --sweeps 1 --out " + fx.path("cyc1.csv")) == 0);
  CHECK(read_text_file(fx.path("file.csv")) == read_text_file(fx.path("cyc1.csv")));

  CHECK(fx.run(base + " --schedule random --length 20 --seed 5 --out " + fx.path("r1.csv")) == 0);
  CHECK(fx.run(base + " --schedule random --length 20 --seed 5 --out " + fx.path("r2.csv")) == 0);
  CHECK(read_text_file(fx.path("r1.csv")) == read_text_file(fx.path("r2.csv")));

  write_text_file(fx.path("bad.csv"), "1\n9\n");
  CHECK(fx.run(base + " --schedule " + fx.path("bad.csv") + " --out " + fx.path("x.csv")) == 1);
}

TEST_CASE("experiment consumes a config file and is byte-reproducible") {
  CliFixture fx;
  nlohmann::json cfg = {
      {"n", 8},
      {"trials", 3},
      {"t_max", 40},
      {"checkpoints", {0, 20, 40}},
      {"master_seed", 5},
      {"families",
       nlohmann::json::array({{{"family", "er"}, {"p", 0.5}}, {{"family", "rr"}, {"k", 3}}})},
  };
  write_text_file(fx.path("cfg.json"), cfg.dump(2));
  std::string base = "experiment --config " + fx.path("cfg.json");
  CHECK(fx.run(base + " --out " + fx.path("r1.csv")) == 0);
  CHECK(fx.run(base + " --out " + fx.path("r2.csv")) == 0);
  std::string csv = read_text_file(fx.path("r1.csv"));
  CHECK(csv == read_text_file(fx.path("r2.csv")));
  CHECK(csv_lines(csv).size() == 1 + 2 * 3);
  nlohmann::json meta = nlohmann::json::parse(read_text_file(fx.path("r1.csv.meta.json")));
  CHECK(meta.at("whiskers") == "min-max");

  // the library row order must match the file: group label then checkpoint
  std::vector<std::string> lines = csv_lines(csv);
  CHECK(lines[1].rfind("er(p=0.5),er,p=0.5,0,", 0) == 0);
  CHECK(lines[4].rfind("rr(k=3),rr,k=4", 0) == std::string::npos);
}

TEST_CASE("experiment validation failures name the offending group") {
  CliFixture fx;
  nlohmann::json cfg = {
      {"n", 9},
      {"trials", 2},
      {"t_max", 20},
      {"families", nlohmann::json::array({{{"family", "rr"}, {"k", 3}}})},
  };
  write_text_file(fx.path("cfg.json"), cfg.dump(2));
  CHECK(fx.run("experiment --config " + fx.path("cfg.json") + " --out " + fx.path("r.csv")) == 1);
  CHECK(fx.err().find("rr(k=3)") != std::string::npos);

  CHECK(fx.run("experiment --out " + fx.path("r.csv")) == 1);  // neither config nor preset
  CHECK(fx.run("experiment --config " + fx.path("cfg.json") + " --paper-scale --out " +
               fx.path("r.csv")) == 1);  // mutually exclusive
}
