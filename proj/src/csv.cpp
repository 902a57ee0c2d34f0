#include "hdnt/csv.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include "hdnt/config.hpp"
#include "hdnt/errors.hpp"

namespace hdnt {

Orientation orientation_from_string(const std::string& s) {
  if (s == "rows" || s == "rows_are_observations") {
    return Orientation::rows_are_observations;
  }
  if (s == "cols" || s == "columns" || s == "columns_are_observations") {
    return Orientation::columns_are_observations;
  }
  throw InvalidConfig("unknown orientation: " + s);
}

namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::string current;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          current.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        current.push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(current);
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  fields.push_back(current);
  return fields;
}

std::string trim_space(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t");
  return s.substr(begin, end - begin + 1);
}

double parse_cell(const std::string& raw, std::size_t row, std::size_t col) {
  const std::string cell = trim_space(raw);
  double value = 0.0;
  const auto [ptr, ec] =
      std::from_chars(cell.data(), cell.data() + cell.size(), value);
  if (ec != std::errc{} || ptr != cell.data() + cell.size() || cell.empty()) {
    throw ParseError(row, col,
                     "csv cell (" + std::to_string(row) + "," +
                         std::to_string(col) + ") is not numeric: `" + raw + "`");
  }
  if (!std::isfinite(value)) {
    throw ParseError(row, col,
                     "csv cell (" + std::to_string(row) + "," +
                         std::to_string(col) + ") is not finite");
  }
  return value;
}

}  // namespace

CsvDataset parse_csv(const std::string& text, bool has_header,
                     Orientation orientation) {
  std::istringstream in(text);
  std::string line;
  std::size_t file_row = 0;

  std::optional<std::vector<std::string>> names;
  std::vector<std::vector<double>> rows;
  std::size_t width = 0;

  while (std::getline(in, line)) {
    ++file_row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::vector<std::string> fields = split_fields(line);
    if (has_header && !names) {
      names = std::vector<std::string>();
      for (const auto& f : fields) names->push_back(trim_space(f));
      width = fields.size();
      continue;
    }
    if (width == 0) width = fields.size();
    if (fields.size() != width) {
      throw ShapeError("csv row " + std::to_string(file_row) + " has " +
                       std::to_string(fields.size()) + " fields, expected " +
                       std::to_string(width));
    }
    std::vector<double> row(width);
    for (std::size_t c = 0; c < width; ++c) {
      row[c] = parse_cell(fields[c], file_row, c + 1);
    }
    rows.push_back(std::move(row));
  }

  if (width == 0) throw ShapeError("csv contains no data rows");

  RowMajorMatrix parsed(static_cast<Eigen::Index>(rows.size()),
                        static_cast<Eigen::Index>(width));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < width; ++c) {
      parsed(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
    }
  }

  RowMajorMatrix observations =
      orientation == Orientation::rows_are_observations
          ? parsed
          : RowMajorMatrix(parsed.transpose());

  return CsvDataset{"", has_header, orientation,
                    SampleMatrix(std::move(observations)), std::move(names)};
}

CsvDataset load_csv(const std::string& path, bool has_header,
                    Orientation orientation) {
  CsvDataset out = parse_csv(read_text_file(path), has_header, orientation);
  out.path = path;
  return out;
}

std::string write_csv(const SampleMatrix& x) {
  std::ostringstream out;
  for (int i = 0; i < x.n(); ++i) {
    for (int j = 0; j < x.dim(); ++j) {
      if (j > 0) out << ',';
      out << format_double(x(i, j));
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace hdnt
