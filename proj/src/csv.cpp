#include "acr/csv.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

namespace acr {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      cells.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  cells.push_back(cur);
  return cells;
}

int parse_rating_cell(const std::string& cell, const std::string& where) {
  int v = 0;
  const char* first = cell.data();
  const char* last = cell.data() + cell.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last)
    throw ConfigError(where + ": expected integer rating, got '" + cell + "'");
  if (!is_valid_rating(v))
    throw ConfigError(where + ": rating out of range 1..5: " + cell);
  return v;
}

}  // namespace

std::string rating_matrix_to_csv(const RatingMatrix& m) {
  std::ostringstream out;
  out << "subject";
  for (std::size_t j = 0; j < m.cols(); ++j) out << ",stim_" << (j + 1);
  out << "\n";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    out << (i + 1);
    for (std::size_t j = 0; j < m.cols(); ++j) out << ',' << m.at(i, j);
    out << "\n";
  }
  return out.str();
}

RatingMatrix rating_matrix_from_csv(std::istream& in, const std::string& source_name) {
  std::string line;
  if (!std::getline(in, line))
    throw ConfigError(source_name + ": empty file");

  const auto header = split_csv_line(line);
  if (header.empty() || header[0] != "subject")
    throw ConfigError(source_name + " line 1: header must start with 'subject'");
  const std::size_t cols = header.size() - 1;
  if (cols == 0)
    throw ConfigError(source_name + " line 1: no stimulus columns");

  std::vector<int> entries;
  std::size_t rows = 0, line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    const auto cells = split_csv_line(line);
    if (cells.size() != cols + 1)
      throw ConfigError(source_name + " line " + std::to_string(line_no) + ": expected " +
                        std::to_string(cols + 1) + " cells, got " + std::to_string(cells.size()));
    for (std::size_t j = 1; j < cells.size(); ++j)
      entries.push_back(
          parse_rating_cell(cells[j], source_name + " line " + std::to_string(line_no)));
    ++rows;
  }
  if (rows == 0)
    throw ConfigError(source_name + ": no observer rows");
  return RatingMatrix(rows, cols, std::move(entries));
}

void write_rating_matrix_csv(const RatingMatrix& m, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << rating_matrix_to_csv(m);
}

RatingMatrix read_rating_matrix_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open " + path);
  return rating_matrix_from_csv(in, path);
}

}  // namespace acr
