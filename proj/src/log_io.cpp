#include "origami/log_io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

#include "origami/errors.hpp"
#include "origami/numeric_text.hpp"

namespace origami {
namespace {

using text::format_double;

constexpr std::string_view kBase = "t,v1,v2,v3";
constexpr std::string_view kCodes = ",code1,code2,code3";
constexpr std::string_view kTruth = ",l1,l2,l3,theta,phi,L,x,y,z";
constexpr std::string_view kTrajectory = "t,x,y,z,theta,phi,L";
constexpr int kCalibrationVersion = 1;

std::vector<std::string_view> split_csv(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    cells.push_back(line.substr(start, comma == std::string_view::npos ? line.npos : comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return cells;
}

std::string strip_cr(std::string line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

double cell_double(std::string_view cell, std::size_t row, std::size_t col) {
  if (auto v = text::parse_double(cell)) return *v;
  throw FormatError("row " + std::to_string(row) + ", column " + std::to_string(col + 1) +
                    ": not a number '" + std::string(cell) + "'");
}

std::vector<std::vector<double>> read_rows(std::istream& is, std::size_t columns) {
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t row = 1;
  while (std::getline(is, line)) {
    ++row;
    const bool unterminated = is.eof();
    line = strip_cr(line);
    if (line.empty()) continue;
    if (unterminated)
      throw FormatError("row " + std::to_string(row) + ": truncated (no line terminator)");
    const auto cells = split_csv(line);
    if (cells.size() != columns)
      throw FormatError("row " + std::to_string(row) + ": expected " + std::to_string(columns) +
                        " columns, found " + std::to_string(cells.size()));
    std::vector<double> vals(columns);
    for (std::size_t c = 0; c < columns; ++c) vals[c] = cell_double(cells[c], row, c);
    rows.push_back(std::move(vals));
  }
  if (is.bad()) throw FormatError("read error");
  return rows;
}

void put(std::ostream& os, double v) { os << format_double(v); }

std::int32_t as_code(double v, std::size_t row) {
  const auto code = static_cast<std::int32_t>(v);
  if (static_cast<double>(code) != v || v < 0)
    throw FormatError("row " + std::to_string(row) + ": ADC code is not a non-negative integer");
  return code;
}

}  // namespace

void write_log(std::ostream& os, const SensorLog& log) {
  validate(log);
  os << kBase;
  if (log.codes) os << kCodes;
  if (log.truth) os << kTruth;
  os << '\n';
  for (std::size_t i = 0; i < log.size(); ++i) {
    put(os, log.t[i]);
    for (const auto& ch : log.volts) os << ',' << format_double(ch[i]);
    if (log.codes)
      for (const auto& ch : *log.codes) os << ',' << ch[i];
    if (log.truth) {
      const auto& g = *log.truth;
      for (double l : g.tendon_lengths[i]) os << ',' << format_double(l);
      const auto& c = g.configs[i];
      const auto& p = g.tips[i];
      for (double v : {c.theta, c.phi, c.length, p.x, p.y, p.z}) os << ',' << format_double(v);
    }
    os << '\n';
  }
}

SensorLog read_log(std::istream& is) {
  std::string header;
  if (!std::getline(is, header)) throw FormatError("log is empty");
  header = strip_cr(header);
  const std::string base(kBase), codes(kCodes), truth(kTruth);
  bool has_codes = false, has_truth = false;
  if (header == base) {
  } else if (header == base + codes) {
    has_codes = true;
  } else if (header == base + truth) {
    has_truth = true;
  } else if (header == base + codes + truth) {
    has_codes = has_truth = true;
  } else {
    throw FormatError("unrecognized log header '" + header + "'");
  }
  const std::size_t columns = 4 + (has_codes ? 3 : 0) + (has_truth ? 9 : 0);
  const auto rows = read_rows(is, columns);

  SensorLog log;
  if (has_codes) log.codes.emplace();
  if (has_truth) log.truth.emplace();
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const auto& v = rows[r];
    log.t.push_back(v[0]);
    for (std::size_t ch = 0; ch < 3; ++ch) log.volts[ch].push_back(v[1 + ch]);
    std::size_t col = 4;
    if (has_codes) {
      for (std::size_t ch = 0; ch < 3; ++ch) (*log.codes)[ch].push_back(as_code(v[col + ch], r + 2));
      col += 3;
    }
    if (has_truth) {
      auto& g = *log.truth;
      g.tendon_lengths.push_back({v[col], v[col + 1], v[col + 2]});
      g.configs.push_back({v[col + 3], v[col + 4], v[col + 5]});
      g.tips.push_back({v[col + 6], v[col + 7], v[col + 8]});
    }
  }
  try {
    validate(log);
  } catch (const InvalidArgument& e) {
    throw FormatError(std::string("log: ") + e.what());
  }
  return log;
}

void write_trajectory(std::ostream& os, const Trajectory& traj) {
  validate(traj);
  os << kTrajectory << '\n';
  for (std::size_t i = 0; i < traj.size(); ++i) {
    const auto& p = traj.points[i];
    const auto& c = traj.configs[i];
    put(os, traj.t[i]);
    for (double v : {p.x, p.y, p.z, c.theta, c.phi, c.length}) os << ',' << format_double(v);
    os << '\n';
  }
}

Trajectory read_trajectory(std::istream& is) {
  std::string header;
  if (!std::getline(is, header)) throw FormatError("trajectory file is empty");
  header = strip_cr(header);
  if (header != kTrajectory) {
    // A log with ground truth doubles as a truth trajectory.
    std::stringstream rest;
    rest << header << '\n' << is.rdbuf();
    const SensorLog log = read_log(rest);
    if (!log.truth) throw FormatError("log has no ground-truth columns");
    return truth_trajectory(log);
  }
  const auto rows = read_rows(is, 7);
  Trajectory traj;
  for (const auto& v : rows) {
    traj.t.push_back(v[0]);
    traj.points.push_back({v[1], v[2], v[3]});
    traj.configs.push_back({v[4], v[5], v[6]});
  }
  try {
    validate(traj);
  } catch (const InvalidArgument& e) {
    throw FormatError(std::string("trajectory: ") + e.what());
  }
  return traj;
}

void write_calibration(std::ostream& os, const CalibrationRecord& record) {
  validate(record);
  os << "# origami resistance-to-length calibration\n";
  os << "version=" << kCalibrationVersion << '\n';
  os << "fit=" << (record.mode == FitMode::shared ? "shared" : "per-tendon") << '\n';
  os << "tendons=" << record.tendons.size() << '\n';
  os << "r_squared=" << format_double(record.r_squared) << '\n';
  os << "rmse=" << format_double(record.rmse) << '\n';
  for (std::size_t i = 0; i < record.tendons.size(); ++i) {
    const auto& t = record.tendons[i];
    os << "\n[tendon" << i + 1 << "]\n";
    os << "r_min=" << format_double(t.range.r_min) << '\n';
    os << "r_max=" << format_double(t.range.r_max) << '\n';
    os << "base_length=" << format_double(t.base_length) << '\n';
    os << "a=" << format_double(t.map.a) << '\n';
    os << "b=" << format_double(t.map.b) << '\n';
    os << "c=" << format_double(t.map.c) << '\n';
    os << "d=" << format_double(t.map.d) << '\n';
    os << "scale=" << format_double(t.map.scale) << '\n';
    os << "offset=" << format_double(t.map.offset) << '\n';
    os << "r_squared=" << format_double(t.r_squared) << '\n';
    os << "rmse=" << format_double(t.rmse) << '\n';
  }
}

CalibrationRecord read_calibration(std::istream& is) {
  // Section "" holds the preamble, "tendonN" the per-tendon blocks.
  std::vector<std::pair<std::string, std::vector<std::pair<std::string, std::string>>>> blocks;
  blocks.emplace_back("", std::vector<std::pair<std::string, std::string>>{});
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    line = strip_cr(line);
    const auto l = text::trim(line);
    if (l.empty() || l.front() == '#') continue;
    if (l.front() == '[') {
      if (l.back() != ']') throw FormatError("calibration line " + std::to_string(line_no) + ": bad section");
      blocks.emplace_back(std::string(l.substr(1, l.size() - 2)),
                          std::vector<std::pair<std::string, std::string>>{});
      continue;
    }
    const auto eq = l.find('=');
    if (eq == std::string_view::npos)
      throw FormatError("calibration line " + std::to_string(line_no) + ": expected key=value");
    blocks.back().second.emplace_back(std::string(text::trim(l.substr(0, eq))),
                                      std::string(text::trim(l.substr(eq + 1))));
  }

  auto lookup = [](const auto& kv, std::string_view section, std::string_view key) {
    for (const auto& [k, v] : kv)
      if (k == key) return v;
    throw FormatError("calibration [" + std::string(section) + "] is missing '" + std::string(key) + "'");
  };
  auto number = [&](const auto& kv, std::string_view section, std::string_view key) {
    const auto v = lookup(kv, section, key);
    if (auto d = text::parse_double(v)) return *d;
    throw FormatError("calibration '" + std::string(key) + "' is not a number");
  };
  auto check_keys = [](const auto& kv, std::initializer_list<std::string_view> allowed,
                       std::string_view section) {
    for (const auto& [k, v] : kv) {
      bool ok = false;
      for (auto a : allowed) ok = ok || k == a;
      if (!ok) throw FormatError("calibration [" + std::string(section) + "]: unknown key '" + k + "'");
    }
  };

  const auto& pre = blocks.front().second;
  check_keys(pre, {"version", "fit", "tendons", "r_squared", "rmse"}, "preamble");
  if (lookup(pre, "preamble", "version") != std::to_string(kCalibrationVersion))
    throw FormatError("unsupported calibration version");
  CalibrationRecord rec;
  const auto fit = lookup(pre, "preamble", "fit");
  if (fit == "per-tendon") rec.mode = FitMode::per_tendon;
  else if (fit == "shared") rec.mode = FitMode::shared;
  else throw FormatError("calibration fit must be per-tendon or shared");
  const auto count = text::parse_uint(lookup(pre, "preamble", "tendons"));
  if (!count || *count != blocks.size() - 1)
    throw FormatError("calibration tendon count does not match the tendon sections");
  rec.r_squared = number(pre, "preamble", "r_squared");
  rec.rmse = number(pre, "preamble", "rmse");

  for (std::size_t i = 1; i < blocks.size(); ++i) {
    const auto& [name, kv] = blocks[i];
    if (name != "tendon" + std::to_string(i))
      throw FormatError("calibration section [" + name + "] out of order");
    check_keys(kv, {"r_min", "r_max", "base_length", "a", "b", "c", "d", "scale", "offset",
                    "r_squared", "rmse"},
               name);
    TendonCalibration t;
    t.range = {number(kv, name, "r_min"), number(kv, name, "r_max")};
    t.base_length = number(kv, name, "base_length");
    t.map = {number(kv, name, "a"),     number(kv, name, "b"),     number(kv, name, "c"),
             number(kv, name, "d"),     number(kv, name, "scale"), number(kv, name, "offset")};
    t.r_squared = number(kv, name, "r_squared");
    t.rmse = number(kv, name, "rmse");
    rec.tendons.push_back(t);
  }
  try {
    validate(rec);
  } catch (const InvalidArgument& e) {
    throw FormatError(std::string("calibration: ") + e.what());
  }
  return rec;
}

void write_file_atomic(const std::filesystem::path& path, const std::string& contents) {
  auto tmp = path;
  tmp += ".partial";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write '" + tmp.string() + "'");
    out << contents;
    out.flush();
    if (!out) {
      std::filesystem::remove(tmp);
      throw std::runtime_error("write failed for '" + tmp.string() + "'");
    }
  }
  std::filesystem::rename(tmp, path);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace origami
