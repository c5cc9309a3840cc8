#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "groth/limitshape.hpp"
#include "groth/linalg.hpp"
#include "groth/partition.hpp"
#include "groth/rational.hpp"

namespace groth {

// Partition <-> JSON array of parts
inline nlohmann::json partition_to_json(const Partition& p) {
  return nlohmann::json(p.parts());
}

inline Partition partition_from_json(const nlohmann::json& j) {
  std::vector<long> parts = j.get<std::vector<long>>();
  return Partition(std::move(parts));
}

inline Partition parse_partition(const std::string& csv) {
  std::vector<long> parts;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    parts.push_back(std::stol(tok));
  }
  return Partition(std::move(parts));
}

// Profile -> CSV of (u, v) breakpoints
inline std::string profile_to_csv(const Profile& p) {
  std::ostringstream out;
  out << "u,v\n";
  for (const auto& bp : p.breakpoints()) out << bp.u << "," << bp.v << "\n";
  return out.str();
}

inline std::string shape_to_csv(const ShapeGrid& sg) {
  std::ostringstream out;
  out.precision(12);
  out << "tau,L,u,W\n";
  for (std::size_t i = 0; i < sg.tau.size(); ++i)
    out << sg.tau[i] << "," << sg.L[i] << "," << sg.u[i] << "," << sg.W[i] << "\n";
  return out.str();
}

inline std::string boundary_to_csv(const std::vector<BoundaryPoint>& pts) {
  std::ostringstream out;
  out.precision(12);
  out << "z,xi,tau\n";
  for (const auto& bp : pts) out << bp.z << "," << bp.xi << "," << bp.tau << "\n";
  return out.str();
}

// CSV (tau, L, u, W) -> shape samples (u, W), as emitted by shape_to_csv
inline std::vector<std::pair<double, double>> shape_from_csv(std::istream& in) {
  std::vector<std::pair<double, double>> out;
  std::string line;
  std::getline(in, line);  // header
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string tok;
    std::vector<double> vals;
    while (std::getline(ss, tok, ',')) vals.push_back(std::stod(tok));
    if (vals.size() >= 4) out.emplace_back(vals[2], vals[3]);
  }
  return out;
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open for writing: " + path);
  out << content;
}

// square rational matrix from CSV, entries like "3/4"
inline RatMatrix matrix_from_csv(std::istream& in) {
  std::vector<std::vector<Rational>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<Rational> row;
    std::stringstream ss(line);
    std::string tok;
    while (std::getline(ss, tok, ',')) row.push_back(parse_rational(tok));
    rows.push_back(std::move(row));
  }
  const int n = int(rows.size());
  RatMatrix m(n, n);
  for (int r = 0; r < n; ++r) {
    if (int(rows[std::size_t(r)].size()) != n)
      throw WrongSize("matrix CSV must be square");
    for (int c = 0; c < n; ++c) m.at(r, c) = rows[std::size_t(r)][std::size_t(c)];
  }
  return m;
}

}  // namespace groth
