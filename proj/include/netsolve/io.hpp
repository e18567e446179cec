#pragma once

#include <Eigen/Dense>
#include <string>
#include <string_view>

#include "netsolve/errors.hpp"
#include "netsolve/graph.hpp"

namespace netsolve {

// Shortest decimal text that parses back to the same double.
std::string format_double(double x);
// Fixed 17 significant digits, used by result tables.
std::string format_double_17(double x);
double parse_double(std::string_view text);

// Matrix CSV: one row per line, comma separated, no header.
Eigen::MatrixXd read_matrix_csv(const std::string& path);
// Vector CSV: one value per line (a single-column matrix).
Eigen::VectorXd read_vector_csv(const std::string& path);
void write_matrix_csv(const std::string& path, const Eigen::MatrixXd& m);
void write_vector_csv(const std::string& path, const Eigen::VectorXd& v);

// Edge list: header line "n=<count>", then "u v" with 1-based vertices.
// Self-loops are left off disk and restored on load.
Network read_edge_list(const std::string& path);
void write_edge_list(const std::string& path, const Network& net);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view content);

}  // namespace netsolve
