#include "signsel/results_io.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>

#include "signsel/errors.hpp"

namespace signsel {

std::string ccdf_csv(const CcdfCurve& curve) {
  std::string out = "metric_db,ccdf\n";
  char line[64];
  for (std::size_t i = 0; i < curve.size(); ++i) {
    std::snprintf(line, sizeof line, "%.17g,%.17g\n", curve.values[i], curve.exceedance[i]);
    out += line;
  }
  return out;
}

namespace {

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot open '" + path + "' for writing: " + std::strerror(errno));
  f << text;
  f.close();
  if (!f) throw IoError("failed writing '" + path + "'");
}

}  // namespace

void emit_results(const RunResult& result, const std::string& path) {
  write_file(path, ccdf_csv(result.curve));
  write_file(path + ".meta.json", result.summary_json().dump(2) + "\n");
}

CcdfCurve read_ccdf_csv(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open '" + path + "' for reading");
  std::string line;
  if (!std::getline(f, line) || line != "metric_db,ccdf") {
    throw IoError("'" + path + "' does not start with the metric_db,ccdf header");
  }
  CcdfCurve curve;
  std::size_t row = 1;
  while (std::getline(f, line)) {
    ++row;
    if (line.empty()) continue;
    const auto comma = line.find(',');
    char* end = nullptr;
    const double v = comma == std::string::npos ? 0.0 : std::strtod(line.c_str(), &end);
    const bool v_ok = comma != std::string::npos && end == line.c_str() + comma;
    const char* p_start = line.c_str() + comma + 1;
    const double p = v_ok ? std::strtod(p_start, &end) : 0.0;
    if (!v_ok || end == p_start || *end != '\0') {
      throw IoError("'" + path + "' line " + std::to_string(row) + ": malformed row");
    }
    curve.values.push_back(v);
    curve.exceedance.push_back(p);
  }
  return curve;
}

}  // namespace signsel
