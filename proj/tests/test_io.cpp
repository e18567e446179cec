#include <Eigen/Dense>
#include <cstdio>
#include <filesystem>
#include <string>

#include "doctest.h"
#include "netsolve/io.hpp"
#include "netsolve/rng.hpp"

using namespace netsolve;

namespace {

struct TempDir {
  std::filesystem::path dir;
  TempDir() {
    dir = std::filesystem::temp_directory_path() /
          ("netsolve_io_" + std::to_string(::getpid()));
    std::filesystem::create_directories(dir);
  }
  ~TempDir() { std::filesystem::remove_all(dir); }
  std::string operator/(const std::string& name) const { return (dir / name).string(); }
};

}  // namespace

TEST_CASE("format_double emits shortest round-trip text") {
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(1.0) == "1");
  CHECK(format_double(-2.5) == "-2.5");
  for (double x : {1.0 / 3.0, 1e-300, -2.5e17, 0.0, 6.02214076e23, 1e308}) {
    CHECK(parse_double(format_double(x)) == x);
  }
}

TEST_CASE("parse_double trims whitespace and rejects junk") {
  CHECK(parse_double("  3.5 ") == 3.5);
  CHECK(parse_double("\t-1e3\r") == -1000.0);
  CHECK_THROWS_AS(parse_double("abc"), FileFormatError);
  CHECK_THROWS_AS(parse_double("1.5x"), FileFormatError);
  CHECK_THROWS_AS(parse_double(""), FileFormatError);
}

TEST_CASE("matrix CSV round-trips bit-exact") {
  TempDir tmp;
  Rng rng(5);
  Eigen::MatrixXd m(4, 3);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 3; ++j) m(i, j) = rng.uniform(-10, 10) * std::pow(10.0, (double)rng.uniform_int(-20, 20));
  std::string path = tmp / "m.csv";
  write_matrix_csv(path, m);
  Eigen::MatrixXd back = read_matrix_csv(path);
  REQUIRE(back.rows() == 4);
  REQUIRE(back.cols() == 3);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 3; ++j) CHECK(back(i, j) == m(i, j));
}

TEST_CASE("vector CSV round-trips and rejects multi-column input") {
  TempDir tmp;
  Eigen::VectorXd v(3);
  v << 1.25, -0.5, 1e-17;
  std::string path = tmp / "v.csv";
  write_vector_csv(path, v);
  Eigen::VectorXd back = read_vector_csv(path);
  REQUIRE(back.size() == 3);
  for (int i = 0; i < 3; ++i) CHECK(back(i) == v(i));

  write_text_file(tmp / "wide.csv", "1,2\n3,4\n");
  CHECK_THROWS_AS(read_vector_csv(tmp / "wide.csv"), FileFormatError);
}

TEST_CASE("matrix CSV parse failures") {
  TempDir tmp;
  write_text_file(tmp / "ragged.csv", "1,2\n3\n");
  CHECK_THROWS_AS(read_matrix_csv(tmp / "ragged.csv"), FileFormatError);
  write_text_file(tmp / "empty.csv", "");
  CHECK_THROWS_AS(read_matrix_csv(tmp / "empty.csv"), FileFormatError);
  write_text_file(tmp / "junk.csv", "1,zzz\n");
  CHECK_THROWS_AS(read_matrix_csv(tmp / "junk.csv"), FileFormatError);
  CHECK_THROWS_AS(read_matrix_csv(tmp / "missing.csv"), IoError);
}

TEST_CASE("edge list round-trips through disk") {
  TempDir tmp;
  std::vector<std::pair<int, int>> edges = {{0, 1}, {1, 2}, {0, 3}};
  Network net = Network::from_edges(4, edges);
  std::string path = tmp / "g.edges";
  write_edge_list(path, net);
  Network back = read_edge_list(path);
  CHECK(back.size() == 4);
  CHECK(back.non_self_edges() == net.non_self_edges());
  for (int i = 0; i < 4; ++i) CHECK(back.has_edge(i, i));
}

TEST_CASE("edge list written files use the documented 1-based format") {
  TempDir tmp;
  std::vector<std::pair<int, int>> edges = {{0, 1}};
  Network net = Network::from_edges(2, edges);
  std::string path = tmp / "tiny.edges";
  write_edge_list(path, net);
  CHECK(read_text_file(path) == "n=2\n1 2\n");
}

TEST_CASE("edge list parse failures") {
  TempDir tmp;
  write_text_file(tmp / "nohdr.edges", "1 2\n");
  CHECK_THROWS_AS(read_edge_list(tmp / "nohdr.edges"), FileFormatError);
  write_text_file(tmp / "badn.edges", "n=abc\n1 2\n");
  CHECK_THROWS_AS(read_edge_list(tmp / "badn.edges"), FileFormatError);
  write_text_file(tmp / "range.edges", "n=3\n1 4\n");
  CHECK_THROWS_AS(read_edge_list(tmp / "range.edges"), FileFormatError);
  write_text_file(tmp / "extra.edges", "n=3\n1 2 3\n");
  CHECK_THROWS_AS(read_edge_list(tmp / "extra.edges"), FileFormatError);
  write_text_file(tmp / "empty.edges", "");
  CHECK_THROWS_AS(read_edge_list(tmp / "empty.edges"), FileFormatError);
}

TEST_CASE("format_double_17 keeps 17 significant digits") {
  std::string s = format_double_17(1.0 / 3.0);
  CHECK(parse_double(s) == 1.0 / 3.0);
  CHECK(s.find("33333333333333") != std::string::npos);
}
