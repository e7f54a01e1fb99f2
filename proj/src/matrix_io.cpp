#include "jeek/matrix_io.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace jeek {

std::string format_double(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc())
    throw std::runtime_error("format_double: conversion failed");
  return std::string(buf, ptr);
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) {
    const auto first = field.find_first_not_of(" \t\r");
    const auto last = field.find_last_not_of(" \t\r");
    fields.push_back(first == std::string::npos ? "" : field.substr(first, last - first + 1));
  }
  return fields;
}

bool parse_row(const std::vector<std::string>& fields, std::vector<double>& out) {
  out.clear();
  for (const auto& f : fields) {
    if (f.empty()) return false;
    char* end = nullptr;
    const double v = std::strtod(f.c_str(), &end);
    if (end != f.c_str() + f.size()) return false;
    out.push_back(v);
  }
  return !out.empty();
}

}  // namespace

Matrix read_matrix_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::vector<std::vector<double>> rows;
  std::string line;
  bool first = true;
  std::vector<double> row;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto fields = split_csv_line(line);
    if (!parse_row(fields, row)) {
      if (first) {  // header line
        first = false;
        continue;
      }
      throw std::runtime_error("malformed CSV row in " + path.string());
    }
    first = false;
    if (!rows.empty() && rows.front().size() != row.size())
      throw std::runtime_error("ragged CSV rows in " + path.string());
    rows.push_back(row);
  }
  if (rows.empty()) throw std::runtime_error("empty CSV matrix in " + path.string());
  Matrix m(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows.front().size(); ++j) m(i, j) = rows[i][j];
  return m;
}

void write_matrix_csv(const Matrix& m, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) out << ',';
      out << format_double(m(i, j));
    }
    out << '\n';
  }
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

MatrixBundle read_matrix_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  nlohmann::json j;
  in >> j;
  if (!j.contains("p") || !j.contains("K") || !j.contains("matrices"))
    throw std::runtime_error(path.string() + ": expected keys p, K, matrices");
  MatrixBundle bundle;
  bundle.p = j.at("p").get<int>();
  const auto& mats = j.at("matrices");
  if (static_cast<int>(mats.size()) != j.at("K").get<int>())
    throw std::runtime_error(path.string() + ": K does not match matrix count");
  for (const auto& mj : mats) {
    if (mj.empty()) throw std::runtime_error(path.string() + ": empty matrix");
    Matrix m(mj.size(), bundle.p);
    for (std::size_t r = 0; r < mj.size(); ++r) {
      const auto& rowj = mj.at(r);
      if (static_cast<int>(rowj.size()) != bundle.p)
        throw std::runtime_error(path.string() + ": row width does not match p");
      for (int c = 0; c < bundle.p; ++c) m(r, c) = rowj.at(c).get<double>();
    }
    bundle.matrices.push_back(std::move(m));
  }
  return bundle;
}

void write_matrix_json(const MatrixBundle& bundle, const std::filesystem::path& path) {
  nlohmann::json j;
  j["p"] = bundle.p;
  j["K"] = static_cast<int>(bundle.matrices.size());
  auto& mats = j["matrices"] = nlohmann::json::array();
  for (const auto& m : bundle.matrices) {
    nlohmann::json mj = nlohmann::json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      nlohmann::json rowj = nlohmann::json::array();
      for (Eigen::Index c = 0; c < m.cols(); ++c) rowj.push_back(m(r, c));
      mj.push_back(std::move(rowj));
    }
    mats.push_back(std::move(mj));
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << j.dump(2) << '\n';
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

MatrixBundle read_matrices(const std::filesystem::path& path) {
  if (path.extension() == ".json") return read_matrix_json(path);
  MatrixBundle bundle;
  Matrix m = read_matrix_csv(path);
  bundle.p = static_cast<int>(m.cols());
  bundle.matrices.push_back(std::move(m));
  return bundle;
}

}  // namespace jeek
