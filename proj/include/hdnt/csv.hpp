#ifndef HDNT_CSV_HPP
#define HDNT_CSV_HPP

#include <optional>
#include <string>
#include <vector>

#include "hdnt/linalg.hpp"

namespace hdnt {

enum class Orientation { rows_are_observations, columns_are_observations };

Orientation orientation_from_string(const std::string& s);

/// A numeric CSV file normalized so rows are observations.
struct CsvDataset {
  std::string path;
  bool has_header;
  Orientation orientation;
  SampleMatrix matrix;
  std::optional<std::vector<std::string>> column_names;
};

/// Loads comma-separated numeric data. Quoted fields are unwrapped, CRLF
/// endings accepted. A ragged row raises ShapeError; a non-numeric or
/// non-finite cell raises ParseError with 1-based file coordinates.
CsvDataset load_csv(const std::string& path, bool has_header,
                    Orientation orientation);

/// Same parser on in-memory text (the file loader delegates here).
CsvDataset parse_csv(const std::string& text, bool has_header,
                     Orientation orientation);

/// Writes one observation per line with round-trip floating point
/// formatting, so load_csv(write_csv(X)) reproduces X exactly.
std::string write_csv(const SampleMatrix& x);

}  // namespace hdnt

#endif  // HDNT_CSV_HPP
