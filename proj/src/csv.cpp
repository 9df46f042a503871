#include "beliefs/csv.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <regex>
#include <string_view>
#include <vector>

#include "beliefs/error.hpp"

namespace beliefs::csv {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void fail(const std::string& source, std::size_t line, const std::string& what) {
  throw Error(ErrorCode::ParseError, source + ":" + std::to_string(line) + ": " + what);
}

double parse_number(std::string_view token, const std::string& source, std::size_t line) {
  token = trim(token);
  if (token.empty()) fail(source, line, "empty field");
  if (token.front() == '+') token.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    fail(source, line, "not a number: '" + std::string(token) + "'");
  }
  return value;
}

}  // namespace

Matrix parse(std::istream& in, const std::string& source) {
  static const std::regex header_re(R"(#\s*rows\s*=\s*(\d+)\s+cols\s*=\s*(\d+)\s*)");
  std::size_t declared_rows = 0;
  std::size_t declared_cols = 0;
  bool has_header = false;
  std::size_t cols = 0;
  std::size_t rows = 0;
  std::vector<double> entries;

  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view line = trim(raw);
    if (line.empty()) continue;
    if (line.front() == '#') {
      std::smatch match;
      const std::string text(line);
      if (std::regex_match(text, match, header_re)) {
        if (has_header || rows > 0) fail(source, line_no, "header must come first");
        has_header = true;
        declared_rows = std::stoul(match[1]);
        declared_cols = std::stoul(match[2]);
      }
      continue;
    }
    std::size_t count = 0;
    std::size_t start = 0;
    while (true) {
      const auto comma = line.find(',', start);
      const auto token = line.substr(start, comma == std::string_view::npos ? line.npos : comma - start);
      entries.push_back(parse_number(token, source, line_no));
      ++count;
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (rows == 0) {
      cols = count;
    } else if (count != cols) {
      fail(source, line_no,
           "expected " + std::to_string(cols) + " fields, got " + std::to_string(count));
    }
    ++rows;
  }
  if (rows == 0) fail(source, line_no, "no matrix rows");
  if (has_header && (declared_rows != rows || declared_cols != cols)) {
    fail(source, line_no,
         "header declares " + std::to_string(declared_rows) + "x" + std::to_string(declared_cols) +
             " but body is " + std::to_string(rows) + "x" + std::to_string(cols));
  }
  return Matrix(rows, cols, std::move(entries));
}

Matrix read(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, path.string() + ": cannot open");
  return parse(in, path.string());
}

std::string format_decimal(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v == 0.0 ? 0.0 : v);
  return buf;
}

void write(std::ostream& out, const Matrix& m) {
  out << "# rows=" << m.rows() << " cols=" << m.cols() << '\n';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) out << ',';
      out << format_decimal(m(i, j));
    }
    out << '\n';
  }
}

void write(const std::filesystem::path& path, const Matrix& m) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::InvalidArgument, path.string() + ": cannot write");
  write(out, m);
}

}  // namespace beliefs::csv
