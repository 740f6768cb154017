#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <fmt/format.h>

#include "kerrcomm/sweep.hpp"

namespace kerrcomm {

namespace {

std::string number(double v) { return std::isfinite(v) ? fmt::format("{:.16e}", v) : ""; }

std::string number(const std::optional<double>& v) { return v ? number(*v) : ""; }

std::string_view status_name(PointStatus s) {
  switch (s) {
    case PointStatus::ok: return "ok";
    case PointStatus::unstable: return "unstable";
    case PointStatus::failed: return "failed";
  }
  return "?";
}

std::string sanitize(std::string text) {
  for (char& ch : text) {
    if (ch == ',' || ch == '\n' || ch == '\r') ch = ';';
  }
  return text;
}

}  // namespace

void export_table(const SweepResult& result, std::ostream& out) {
  std::vector<std::string> header;
  for (SweepParameter p : result.parameters) header.emplace_back(parameter_name(p));
  for (const char* name : {"kerr_sign", "delta_k", "status", "margin", "min_symplectic", "residual"}) {
    header.emplace_back(name);
  }
  for (const auto& pair : result.pairs) header.push_back("EN_" + pair.label());
  if (result.has_contrast) {
    for (const auto& pair : result.pairs) header.push_back("chi_" + pair.label());
  }
  header.emplace_back("error");
  out << fmt::format("{}\n", fmt::join(header, ","));

  const std::size_t n1 = result.axis1_values.size();
  const std::size_t n2 = std::max<std::size_t>(1, result.axis2_values.size());
  std::vector<std::string> row;
  for (std::size_t i1 = 0; i1 < n1; ++i1) {
    for (std::size_t i2 = 0; i2 < n2; ++i2) {
      const std::size_t g = result.grid_index(i1, i2);
      for (std::size_t s = 0; s < result.signs.size(); ++s) {
        const PointResult& p = result.at(g, s);
        row.clear();
        row.push_back(number(result.axis1_values[i1]));
        if (!result.axis2_values.empty()) row.push_back(number(result.axis2_values[i2]));
        row.emplace_back(kerr_sign_name(result.signs[s]));
        row.push_back(number(p.delta_k));
        row.emplace_back(status_name(p.status));
        row.push_back(number(p.margin));
        row.push_back(number(p.min_symplectic));
        row.push_back(number(p.residual));
        for (const auto& en : p.log_negativity) row.push_back(number(en));
        if (result.has_contrast) {
          for (std::size_t k = 0; k < result.pairs.size(); ++k) {
            row.push_back(number(result.contrast[g * result.pairs.size() + k]));
          }
        }
        row.push_back(sanitize(p.error));
        out << fmt::format("{}\n", fmt::join(row, ","));
      }
    }
  }
}

void export_table(const SweepResult& result, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error(fmt::format("cannot open '{}' for writing", path.string()));
  export_table(result, out);
  if (!out) throw std::runtime_error(fmt::format("write to '{}' failed", path.string()));
}

std::size_t Table::column(std::string_view name) const {
  for (std::size_t k = 0; k < header.size(); ++k) {
    if (header[k] == name) return k;
  }
  throw std::out_of_range(fmt::format("table has no column '{}'", name));
}

Table read_table(std::istream& in) {
  auto split = [](const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
  };
  Table table;
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty table");
  table.header = split(line);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto fields = split(line);
    if (fields.size() != table.header.size()) {
      throw std::runtime_error(fmt::format("table row has {} fields, header has {}", fields.size(),
                                           table.header.size()));
    }
    table.rows.push_back(std::move(fields));
  }
  return table;
}

}  // namespace kerrcomm
