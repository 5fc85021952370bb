#include "laxjac/io.hpp"

#include <charconv>
#include <fstream>
#include <iostream>

#include "laxjac/error.hpp"

namespace laxjac {

Json to_json(cplx z) { return Json::array({z.real(), z.imag()}); }

Json to_json(const Vec2c& z) { return Json::array({to_json(z(0)), to_json(z(1))}); }

Json to_json(const Eigen::MatrixXi& m) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    out.push_back(row);
  }
  return out;
}

Json to_json(const Eigen::MatrixXd& m) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    out.push_back(row);
  }
  return out;
}

std::string format_double(double x) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, r.ptr);
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

void CsvTable::add_row(std::vector<std::string> row) {
  if (row.size() != header.size()) throw Error(ErrorKind::InvalidArgument, "CSV row width differs from header");
  rows.push_back(std::move(row));
}

std::string CsvTable::str() const {
  std::string out;
  auto line = [&](const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (i) out += ',';
      out += csv_field(fields[i]);
    }
    out += "\r\n";
  };
  line(header);
  for (const auto& r : rows) line(r);
  return out;
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorKind::InvalidArgument, "cannot open " + path);
  f << text;
  if (!f) throw Error(ErrorKind::InvalidArgument, "write failed for " + path);
}

void write_csv(const std::string& path, const CsvTable& table, const Json& meta) {
  write_text(path, table.str());
  if (!path.empty() && path != "-") write_text(path + ".meta.json", meta.dump(2) + "\n");
}

}  // namespace laxjac
