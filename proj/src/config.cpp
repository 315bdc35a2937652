#include "origami/config.hpp"

#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "origami/errors.hpp"
#include "origami/numeric_text.hpp"

namespace origami {
namespace {

using text::format_double;

struct Setter {
  std::function<void(RunConfig&, std::string_view)> set;
};

[[noreturn]] void bad_value(std::string_view key, std::string_view value) {
  throw FormatError("invalid value '" + std::string(value) + "' for key '" + std::string(key) +
                    "'");
}

double as_double(std::string_view key, std::string_view v) {
  if (auto d = text::parse_double(v)) return *d;
  bad_value(key, v);
}

std::uint64_t as_uint(std::string_view key, std::string_view v) {
  if (auto d = text::parse_uint(v)) return *d;
  bad_value(key, v);
}

bool as_bool(std::string_view key, std::string_view v) {
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  bad_value(key, v);
}

ProtocolKind as_kind(std::string_view v) {
  if (v == "cyclic") return ProtocolKind::cyclic;
  if (v == "increasing-amplitude") return ProtocolKind::increasing_amplitude;
  if (v == "tendon-combination") return ProtocolKind::tendon_combination;
  if (v == "constant") return ProtocolKind::constant;
  bad_value("kind", v);
}

std::array<bool, 3> as_mask(std::string_view v) {
  std::array<bool, 3> mask{false, false, false};
  std::string s(v);
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto idx = text::parse_uint(item);
    if (!idx || *idx < 1 || *idx > 3) bad_value("mask", v);
    mask[*idx - 1] = true;
  }
  return mask;
}

std::string mask_text(const std::array<bool, 3>& mask) {
  std::string out;
  for (std::size_t i = 0; i < 3; ++i)
    if (mask[i]) out += (out.empty() ? "" : ",") + std::to_string(i + 1);
  return out;
}

using Table = std::map<std::string, std::map<std::string, Setter>, std::less<>>;

#define D(field) [](RunConfig& c, std::string_view v) { c.field = as_double(#field, v); }

const Table& setters() {
  static const Table t = {
      {"geometry",
       {{"base_length", {D(geometry.base_length)}},
        {"d", {D(geometry.d)}},
        {"n_links", {[](RunConfig& c, std::string_view v) { c.geometry.n_links = as_uint("n_links", v); }}},
        {"tendon_slack_length", {D(geometry.tendon_slack_length)}}}},
      {"sensor",
       {{"lambda", {D(sensor.resistor.lambda)}},
        {"r_contact", {D(sensor.resistor.r_contact)}},
        {"r1", {D(sensor.bridge.r1)}},
        {"r2", {D(sensor.bridge.r2)}},
        {"r4", {D(sensor.bridge.r4)}},
        {"v_in", {D(sensor.bridge.v_in)}},
        {"adc_bits",
         {[](RunConfig& c, std::string_view v) {
           const auto bits = as_uint("adc_bits", v);
           if (bits == 0) {
             c.sensor.adc.reset();
           } else {
             const double v_ref = c.sensor.adc ? c.sensor.adc->v_ref : AdcModel{}.v_ref;
             c.sensor.adc = AdcModel{static_cast<int>(bits), v_ref};
           }
         }}},
        {"v_ref",
         {[](RunConfig& c, std::string_view v) {
           const double r = as_double("v_ref", v);
           if (c.sensor.adc) c.sensor.adc->v_ref = r;
         }}},
        {"v_offset", {D(sensor.v_offset)}},
        {"noise_sigma", {D(sensor.noise.sigma)}}}},
      {"protocol",
       {{"kind", {[](RunConfig& c, std::string_view v) { c.protocol.kind = as_kind(v); }}},
        {"frequency", {D(protocol.frequency)}},
        {"phase_shift", {D(protocol.phase_shift)}},
        {"amplitude", {D(protocol.amplitude)}},
        {"duration", {D(protocol.duration)}},
        {"sample_rate", {D(protocol.sample_rate)}},
        {"mask", {[](RunConfig& c, std::string_view v) { c.protocol.mask = as_mask(v); }}}}},
      {"filter",
       {{"kind",
         {[](RunConfig&, std::string_view v) {
           if (v != "moving-average") bad_value("kind", v);
         }}},
        {"window", {[](RunConfig& c, std::string_view v) { c.filter.window = as_uint("window", v); }}}}},
      {"reconstruction",
       {{"length_mode",
         {[](RunConfig& c, std::string_view v) {
           if (v == "delta") c.length_mode = LengthMode::delta;
           else if (v == "absolute") c.length_mode = LengthMode::absolute;
           else bad_value("length_mode", v);
         }}},
        {"clamp", {[](RunConfig& c, std::string_view v) { c.clamp = as_bool("clamp", v); }}},
        {"max_invalid_fraction", {D(max_invalid_fraction)}}}},
      {"calibration",
       {{"sweep_angle", {D(calibration.max_theta)}},
        {"steps", {[](RunConfig& c, std::string_view v) { c.calibration.steps = as_uint("steps", v); }}},
        {"averaging",
         {[](RunConfig& c, std::string_view v) { c.calibration.averaging = as_uint("averaging", v); }}},
        {"fit",
         {[](RunConfig& c, std::string_view v) {
           if (v == "per-tendon") c.calibration.fit = FitMode::per_tendon;
           else if (v == "shared") c.calibration.fit = FitMode::shared;
           else bad_value("fit", v);
         }}}}},
      {"output",
       {{"log", {[](RunConfig& c, std::string_view v) { c.output.log = std::string(v); }}},
        {"calibration", {[](RunConfig& c, std::string_view v) { c.output.calibration = std::string(v); }}},
        {"trajectory", {[](RunConfig& c, std::string_view v) { c.output.trajectory = std::string(v); }}},
        {"plot", {[](RunConfig& c, std::string_view v) { c.output.plot = std::string(v); }}}}},
      {"run",
       {{"seed", {[](RunConfig& c, std::string_view v) { c.seed = as_uint("seed", v); }}},
        {"max_rmse_fraction", {D(max_rmse_fraction)}}}},
  };
  return t;
}

#undef D

void check(const RunConfig& c) {
  try {
    validate(c.geometry);
    validate(c.sensor);
    validate(c.protocol);
    if (c.filter.window == 0 || c.filter.window % 2 == 0)
      throw InvalidArgument("filter window must be odd and >= 1");
    if (!(c.max_invalid_fraction >= 0.0 && c.max_invalid_fraction <= 1.0))
      throw InvalidArgument("max_invalid_fraction must be in [0, 1]");
  } catch (const InvalidArgument& e) {
    throw FormatError(std::string("config: ") + e.what());
  }
}

}  // namespace

ReconstructionOptions RunConfig::reconstruction() const {
  ReconstructionOptions o;
  o.filter = filter;
  o.mode = length_mode;
  o.clamp = clamp;
  o.max_invalid_fraction = max_invalid_fraction;
  o.d = geometry.d;
  o.n_links = geometry.n_links;
  return o;
}

std::string_view protocol_kind_name(ProtocolKind k) {
  switch (k) {
    case ProtocolKind::cyclic: return "cyclic";
    case ProtocolKind::increasing_amplitude: return "increasing-amplitude";
    case ProtocolKind::tendon_combination: return "tendon-combination";
    case ProtocolKind::constant: return "constant";
  }
  return "unknown";
}

RunConfig parse_config(std::string_view text) {
  RunConfig c;
  const auto& table = setters();
  const std::map<std::string, Setter>* section = nullptr;
  std::string section_name;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto end = text.find('\n', pos);
    const auto raw = text.substr(pos, end == std::string_view::npos ? text.npos : end - pos);
    pos = end == std::string_view::npos ? text.size() + 1 : end + 1;
    ++line_no;
    const auto line = text::trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const std::string where = "config line " + std::to_string(line_no) + ": ";
    if (line.front() == '[') {
      if (line.back() != ']') throw FormatError(where + "unterminated section header");
      section_name = std::string(text::trim(line.substr(1, line.size() - 2)));
      const auto it = table.find(section_name);
      if (it == table.end()) throw FormatError(where + "unknown section [" + section_name + "]");
      if (!c.sections.insert(section_name).second)
        throw FormatError(where + "duplicate section [" + section_name + "]");
      section = &it->second;
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw FormatError(where + "expected key=value");
    if (!section) throw FormatError(where + "key outside of a section");
    const std::string key(text::trim(line.substr(0, eq)));
    const auto value = text::trim(line.substr(eq + 1));
    const auto it = section->find(key);
    if (it == section->end())
      throw FormatError(where + "unknown key '" + key + "' in [" + section_name + "]");
    try {
      it->second.set(c, value);
    } catch (const FormatError& e) {
      throw FormatError(where + e.what());
    }
  }
  c.sensor.noise.seed = c.seed;
  check(c);
  return c;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot read config file '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string format_config(const RunConfig& c) {
  std::ostringstream os;
  const auto& g = c.geometry;
  os << "[geometry]\nbase_length=" << format_double(g.base_length) << "\nd=" << format_double(g.d)
     << "\nn_links=" << g.n_links << "\ntendon_slack_length=" << format_double(g.tendon_slack_length)
     << "\n\n";
  const auto& s = c.sensor;
  os << "[sensor]\nlambda=" << format_double(s.resistor.lambda)
     << "\nr_contact=" << format_double(s.resistor.r_contact) << "\nr1=" << format_double(s.bridge.r1)
     << "\nr2=" << format_double(s.bridge.r2) << "\nr4=" << format_double(s.bridge.r4)
     << "\nv_in=" << format_double(s.bridge.v_in) << "\nadc_bits=" << (s.adc ? s.adc->bits : 0)
     << "\nv_ref=" << format_double(s.adc ? s.adc->v_ref : AdcModel{}.v_ref)
     << "\nv_offset=" << format_double(s.v_offset) << "\nnoise_sigma=" << format_double(s.noise.sigma)
     << "\n\n";
  const auto& p = c.protocol;
  os << "[protocol]\nkind=" << protocol_kind_name(p.kind) << "\nfrequency=" << format_double(p.frequency)
     << "\nphase_shift=" << format_double(p.phase_shift) << "\namplitude=" << format_double(p.amplitude)
     << "\nduration=" << format_double(p.duration) << "\nsample_rate=" << format_double(p.sample_rate)
     << "\nmask=" << mask_text(p.mask) << "\n\n";
  os << "[filter]\nkind=moving-average\nwindow=" << c.filter.window << "\n\n";
  os << "[reconstruction]\nlength_mode=" << (c.length_mode == LengthMode::delta ? "delta" : "absolute")
     << "\nclamp=" << (c.clamp ? "true" : "false")
     << "\nmax_invalid_fraction=" << format_double(c.max_invalid_fraction) << "\n\n";
  os << "[calibration]\nsweep_angle=" << format_double(c.calibration.max_theta)
     << "\nsteps=" << c.calibration.steps << "\naveraging=" << c.calibration.averaging
     << "\nfit=" << (c.calibration.fit == FitMode::shared ? "shared" : "per-tendon") << "\n\n";
  os << "[output]\nlog=" << c.output.log << "\ncalibration=" << c.output.calibration
     << "\ntrajectory=" << c.output.trajectory << "\nplot=" << c.output.plot << "\n\n";
  os << "[run]\nseed=" << c.seed << "\nmax_rmse_fraction=" << format_double(c.max_rmse_fraction)
     << "\n";
  return os.str();
}

void require_sections(const RunConfig& c, std::initializer_list<std::string_view> names) {
  for (auto n : names)
    if (!c.sections.contains(std::string(n)))
      throw FormatError("config is missing required section [" + std::string(n) + "]");
}

}  // namespace origami
