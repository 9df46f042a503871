#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "beliefs/matrix.hpp"

namespace beliefs::csv {

// Matrix text format: an optional header line `# rows=R cols=C` followed by
// one comma-separated line of decimals per row. Blank lines are skipped. When
// the header is present the shape it declares is enforced.
Matrix parse(std::istream& in, const std::string& source = "<stream>");
Matrix read(const std::filesystem::path& path);

// Always writes the header; entries at 12 significant digits.
void write(std::ostream& out, const Matrix& m);
void write(const std::filesystem::path& path, const Matrix& m);

// Shortest round-trip-stable formatting used for every emitted decimal.
std::string format_decimal(double v);

}  // namespace beliefs::csv
