#include "uoi/csv.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace uoi {

namespace {

std::vector<std::string> split_cells(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

bool parse_double(const std::string& raw, double& out) {
  std::size_t begin = raw.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return false;
  std::size_t end = raw.find_last_not_of(" \t\r") + 1;
  const char* first = raw.data() + begin;
  const char* last = raw.data() + end;
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc{} && ptr == last;
}

std::vector<std::vector<double>> load_rows(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CsvError(path + ": cannot open file");
  std::vector<std::vector<double>> rows;
  std::string line;
  int line_no = 0;
  bool header_allowed = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto cells = split_cells(line);
    std::vector<double> row(cells.size());
    bool ok = true;
    std::size_t bad_col = 0;
    for (std::size_t j = 0; j < cells.size(); ++j) {
      if (!parse_double(cells[j], row[j])) {
        ok = false;
        bad_col = j;
        break;
      }
    }
    if (!ok) {
      if (header_allowed) {  // single leading header row is skipped
        header_allowed = false;
        continue;
      }
      throw CsvError(path + ":" + std::to_string(line_no) + ": non-numeric cell in column " +
                     std::to_string(bad_col + 1));
    }
    header_allowed = false;
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw CsvError(path + ":" + std::to_string(line_no) + ": ragged row (" +
                     std::to_string(row.size()) + " cells, expected " +
                     std::to_string(rows.front().size()) + ")");
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw CsvError(path + ": no numeric rows");
  return rows;
}

}  // namespace

Matrix load_csv_matrix(const std::string& path) {
  const auto rows = load_rows(path);
  Matrix m(static_cast<Eigen::Index>(rows.size()),
           static_cast<Eigen::Index>(rows.front().size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows[i].size(); ++j) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    }
  }
  return m;
}

Vector load_csv_vector(const std::string& path) {
  Matrix m = load_csv_matrix(path);
  if (m.cols() == 1) return m.col(0);
  if (m.rows() == 1) return m.row(0).transpose();
  throw CsvError(path + ": expected a single column or single row, got " +
                 std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
}

namespace {

void write_value(std::ofstream& out, double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v,
                                 std::chars_format::general, 17);
  out.write(buf, ptr - buf);
}

}  // namespace

void write_csv_matrix(const std::string& path, const Matrix& m) {
  std::ofstream out(path);
  if (!out) throw CsvError(path + ": cannot open for writing");
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) out << ',';
      write_value(out, m(i, j));
    }
    out << '\n';
  }
}

void write_csv_vector(const std::string& path, const Vector& v) {
  write_csv_matrix(path, v);
}

}  // namespace uoi
