#include "netsolve/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

namespace netsolve {

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::string format_double_17(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

double parse_double(std::string_view text) {
  std::size_t begin = 0;
  while (begin < text.size() && (text[begin] == ' ' || text[begin] == '\t')) ++begin;
  std::size_t end = text.size();
  while (end > begin && (text[end - 1] == ' ' || text[end - 1] == '\t' || text[end - 1] == '\r'))
    --end;
  double out = 0.0;
  const auto res = std::from_chars(text.data() + begin, text.data() + end, out);
  if (res.ec != std::errc() || res.ptr != text.data() + end)
    throw FileFormatError("not a number: '" + std::string(text) + "'");
  return out;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << content;
  if (!out) throw IoError("short write to " + path);
}

namespace {

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!line.empty()) lines.push_back(line);
    pos = nl + 1;
  }
  return lines;
}

}  // namespace

Eigen::MatrixXd read_matrix_csv(const std::string& path) {
  const std::string text = read_text_file(path);
  const auto lines = split_lines(text);
  if (lines.empty()) throw FileFormatError(path + ": empty matrix file");
  std::vector<std::vector<double>> rows;
  for (const auto& line : lines) {
    std::vector<double> row;
    std::size_t pos = 0;
    while (true) {
      std::size_t comma = line.find(',', pos);
      if (comma == std::string_view::npos) {
        row.push_back(parse_double(line.substr(pos)));
        break;
      }
      row.push_back(parse_double(line.substr(pos, comma - pos)));
      pos = comma + 1;
    }
    if (!rows.empty() && row.size() != rows.front().size())
      throw FileFormatError(path + ": ragged rows");
    rows.push_back(std::move(row));
  }
  Eigen::MatrixXd m(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows.front().size(); ++j)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
  return m;
}

Eigen::VectorXd read_vector_csv(const std::string& path) {
  const Eigen::MatrixXd m = read_matrix_csv(path);
  if (m.cols() != 1) throw FileFormatError(path + ": expected a single column");
  return m.col(0);
}

void write_matrix_csv(const std::string& path, const Eigen::MatrixXd& m) {
  std::string out;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) out += ',';
      out += format_double(m(i, j));
    }
    out += '\n';
  }
  write_text_file(path, out);
}

void write_vector_csv(const std::string& path, const Eigen::VectorXd& v) {
  write_matrix_csv(path, v);
}

Network read_edge_list(const std::string& path) {
  const std::string text = read_text_file(path);
  const auto lines = split_lines(text);
  if (lines.empty()) throw FileFormatError(path + ": empty edge list");
  const std::string_view header = lines.front();
  if (header.substr(0, 2) != "n=") throw FileFormatError(path + ": expected header n=<count>");
  int n = 0;
  {
    const auto tail = header.substr(2);
    const auto res = std::from_chars(tail.data(), tail.data() + tail.size(), n);
    if (res.ec != std::errc() || res.ptr != tail.data() + tail.size() || n < 1)
      throw FileFormatError(path + ": bad vertex count in header");
  }
  std::vector<std::pair<int, int>> edges;
  for (std::size_t li = 1; li < lines.size(); ++li) {
    std::istringstream ss{std::string(lines[li])};
    int u = 0, v = 0;
    std::string extra;
    if (!(ss >> u >> v) || (ss >> extra))
      throw FileFormatError(path + ": bad edge line '" + std::string(lines[li]) + "'");
    if (u < 1 || u > n || v < 1 || v > n)
      throw FileFormatError(path + ": vertex outside 1.." + std::to_string(n));
    edges.emplace_back(u - 1, v - 1);
  }
  return Network::from_edges(n, edges);
}

void write_edge_list(const std::string& path, const Network& net) {
  std::string out = "n=" + std::to_string(net.size()) + "\n";
  for (const auto& [u, v] : net.non_self_edges())
    out += std::to_string(u + 1) + " " + std::to_string(v + 1) + "\n";
  write_text_file(path, out);
}

}  // namespace netsolve
