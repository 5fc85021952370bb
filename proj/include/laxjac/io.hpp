#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "laxjac/types.hpp"

namespace laxjac {

using Json = nlohmann::ordered_json;

/// Complex numbers are written as [re, im].
Json to_json(cplx z);
Json to_json(const Vec2c& z);
Json to_json(const Eigen::MatrixXi& m);
Json to_json(const Eigen::MatrixXd& m);

/// Shortest round-trip text for a double.
std::string format_double(double x);

/// One field with RFC-4180 quoting: quoted only if it holds a comma, quote, CR or LF.
std::string csv_field(const std::string& s);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void add_row(std::vector<std::string> row);
  std::string str() const;  // CRLF line endings
};

/// Writes text to path, or to stdout when path is empty or "-".
void write_text(const std::string& path, const std::string& text);
/// Writes the table to path and the metadata to path + ".meta.json" (stdout gets only the table).
void write_csv(const std::string& path, const CsvTable& table, const Json& meta);

}  // namespace laxjac
