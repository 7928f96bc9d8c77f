#include "dcd/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <system_error>

#include "dcd/errors.hpp"
#include "json.hpp"

namespace dcd {

using nlohmann::json;

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

namespace {

double parse_plain(std::string_view s, std::string_view whole) {
  double v = 0.0;
  const char* end = s.data() + s.size();
  const auto res = std::from_chars(s.data(), end, v);
  if (res.ec != std::errc() || res.ptr != end || s.empty()) {
    throw ConfigError("not a number: \"" + std::string(whole) + "\"");
  }
  return v;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

}  // namespace

double parse_coefficient(std::string_view text) {
  std::string_view s = trim(text);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  const auto slash = s.find('/');
  if (slash == std::string_view::npos) return parse_plain(s, text);
  const double p = parse_plain(trim(s.substr(0, slash)), text);
  const double q = parse_plain(trim(s.substr(slash + 1)), text);
  if (q == 0.0) throw ConfigError("zero denominator in \"" + std::string(text) + "\"");
  return p / q;
}

namespace {

double number_of(const json& j, const std::string& what) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) return parse_coefficient(j.get<std::string>());
  throw ConfigError(what + " must be a number or a numeric string");
}

void only_keys(const json& j, std::initializer_list<std::string_view> allowed, const std::string& what) {
  if (!j.is_object()) throw ConfigError(what + " must be an object");
  for (const auto& [key, _] : j.items()) {
    bool ok = false;
    for (auto a : allowed) ok = ok || key == a;
    if (!ok) throw ConfigError("unknown key \"" + key + "\" in " + what);
  }
}

json parse_json(std::string_view text, const std::string& what) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ConfigError(what + ": " + e.what());
  }
}

json pp_json(const PiecewisePoly& p) {
  json j;
  json bp = json::array();
  for (double b : p.breakpoints()) bp.push_back(b);
  j["breakpoints"] = bp;
  json pieces = json::array();
  bool centered = false;
  for (const auto& q : p.pieces()) {
    json c = json::array();
    for (double v : q.coeffs()) c.push_back(v);
    pieces.push_back(c);
    centered = centered || q.center() != 0.0;
  }
  j["pieces"] = pieces;
  if (centered) {
    json cs = json::array();
    for (const auto& q : p.pieces()) cs.push_back(q.center());
    j["centers"] = cs;
  }
  if (p.extension() == Extension::kStrict) j["extension"] = "strict";
  return j;
}

PiecewisePoly pp_from(const json& j, const std::string& what) {
  only_keys(j, {"breakpoints", "pieces", "centers", "extension", "continuous"}, what);
  if (!j.contains("breakpoints") || !j.contains("pieces")) {
    throw ConfigError(what + " needs breakpoints and pieces");
  }
  std::vector<double> bp;
  for (const auto& b : j.at("breakpoints")) bp.push_back(number_of(b, what + " breakpoint"));
  const json& pj = j.at("pieces");
  if (!pj.is_array()) throw ConfigError(what + " pieces must be an array");
  std::vector<double> centers(pj.size(), 0.0);
  if (j.contains("centers")) {
    const json& cj = j.at("centers");
    if (!cj.is_array() || cj.size() != pj.size()) throw ConfigError(what + " centers must match pieces");
    for (std::size_t i = 0; i < cj.size(); ++i) centers[i] = number_of(cj[i], what + " center");
  }
  std::vector<Polynomial> pieces;
  for (std::size_t i = 0; i < pj.size(); ++i) {
    if (!pj[i].is_array() || pj[i].empty()) throw ConfigError(what + " pieces need >= 1 coefficient");
    std::vector<double> c;
    for (const auto& v : pj[i]) c.push_back(number_of(v, what + " coefficient"));
    pieces.emplace_back(std::move(c), centers[i]);
  }
  Extension ext = Extension::kExtend;
  if (j.contains("extension")) {
    const std::string e = j.at("extension").get<std::string>();
    if (e == "strict") {
      ext = Extension::kStrict;
    } else if (e != "extend") {
      throw ConfigError(what + " extension must be \"extend\" or \"strict\"");
    }
  }
  PiecewisePoly p(std::move(bp), std::move(pieces), ext);
  if (j.value("continuous", false) && !p.is_continuous()) {
    throw ConfigError(what + " is flagged continuous but jumps");
  }
  return p;
}

}  // namespace

std::string piecewise_to_json(const PiecewisePoly& p) { return pp_json(p).dump(); }

PiecewisePoly piecewise_from_json(std::string_view text) {
  return pp_from(parse_json(text, "piecewise polynomial"), "piecewise polynomial");
}

std::string model_to_json(const ScalarModel& m) {
  json j;
  j["dim"] = m.dim();
  j["urange"] = {m.urange().lo, m.urange().hi};
  json f = json::array();
  for (const auto& p : m.flux()) f.push_back(pp_json(p));
  j["flux"] = f;
  json d = json::array();
  for (const auto& p : m.diffusion()) d.push_back(pp_json(p));
  j["diffusion"] = d;
  if (!m.name().empty()) j["name"] = m.name();
  return j.dump(2);
}

ScalarModel model_from_json(std::string_view text) {
  const json j = parse_json(text, "model");
  only_keys(j, {"dim", "urange", "flux", "diffusion", "name"}, "model");
  for (const char* key : {"dim", "urange", "flux", "diffusion"}) {
    if (!j.contains(key)) throw ConfigError(std::string("model needs \"") + key + "\"");
  }
  const int dim = j.at("dim").get<int>();
  const json& ur = j.at("urange");
  if (!ur.is_array() || ur.size() != 2) throw ConfigError("urange must be [lo, hi]");
  const Interval urange{number_of(ur[0], "urange"), number_of(ur[1], "urange")};
  std::vector<PiecewisePoly> flux, diffusion;
  for (std::size_t i = 0; i < j.at("flux").size(); ++i) {
    flux.push_back(pp_from(j.at("flux")[i], "flux[" + std::to_string(i) + "]"));
  }
  for (std::size_t i = 0; i < j.at("diffusion").size(); ++i) {
    diffusion.push_back(pp_from(j.at("diffusion")[i], "diffusion[" + std::to_string(i) + "]"));
  }
  return ScalarModel(dim, std::move(flux), std::move(diffusion), urange, j.value("name", std::string()));
}

ScalarModel load_model(const std::filesystem::path& path) { return model_from_json(read_file(path)); }

// ---------------------------------------------------------------------------

std::string grid_csv(const GridFunction& g) {
  std::string out = g.dim() == 2 ? "x,y,value\n" : "x,value\n";
  for (std::size_t k = 0; k < g.size(); ++k) {
    const Vec2 c = g.center_of(k);
    out += format_double(c[0]);
    out += ',';
    if (g.dim() == 2) {
      out += format_double(c[1]);
      out += ',';
    }
    out += format_double(g[k]);
    out += '\n';
  }
  return out;
}

std::string grid_sidecar(const GridFunction& g) {
  json j;
  j["dim"] = g.dim();
  j["origin"] = g.dim() == 2 ? json{g.origin()[0], g.origin()[1]} : json{g.origin()[0]};
  j["cell_size"] = g.cell_size();
  j["shape"] = g.dim() == 2 ? json{g.nx(), g.ny()} : json{g.nx()};
  if (g.bc().is_periodic()) {
    j["bc"] = "periodic";
  } else {
    j["bc"] = json{{"far_field", g.bc().value}};
  }
  return j.dump(2);
}

namespace {

std::filesystem::path sidecar_path(const std::filesystem::path& csv) {
  std::filesystem::path p = csv;
  p += ".json";
  return p;
}

}  // namespace

void write_grid(const std::filesystem::path& csv_path, const GridFunction& g) {
  atomic_write(csv_path, grid_csv(g));
  atomic_write(sidecar_path(csv_path), grid_sidecar(g));
}

GridFunction read_grid(const std::filesystem::path& csv_path) {
  return grid_from_text(read_file(csv_path), read_file(sidecar_path(csv_path)));
}

GridFunction grid_from_text(std::string_view csv, std::string_view sidecar) {
  const json j = parse_json(sidecar, "grid sidecar");
  only_keys(j, {"dim", "origin", "cell_size", "shape", "bc"}, "grid sidecar");
  const int dim = j.at("dim").get<int>();
  Vec2 origin{0.0, 0.0};
  Shape shape{1, 1};
  for (int a = 0; a < dim; ++a) {
    origin[a] = j.at("origin").at(a).get<double>();
    shape[a] = j.at("shape").at(a).get<std::size_t>();
  }
  Boundary bc = Boundary::periodic();
  const json& b = j.at("bc");
  if (b.is_object()) {
    bc = Boundary::far_field(b.at("far_field").get<double>());
  } else if (b != "periodic") {
    throw ConfigError("grid bc must be \"periodic\" or {\"far_field\": v}");
  }

  std::vector<double> values;
  std::istringstream in{std::string(csv)};
  std::string line;
  if (!std::getline(in, line)) throw ConfigError("grid CSV is empty");
  const std::string expected = dim == 2 ? "x,y,value" : "x,value";
  if (std::string(trim(line)) != expected) throw ConfigError("grid CSV header must be " + expected);
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    const auto comma = line.rfind(',');
    if (comma == std::string::npos) throw ConfigError("malformed grid CSV row");
    values.push_back(parse_coefficient(std::string_view(line).substr(comma + 1)));
  }
  return GridFunction(dim, origin, j.at("cell_size").get<double>(), shape, std::move(values), bc);
}

std::string decay_csv(const DecaySeries& s) {
  s.validate();
  std::string out = "t,x_norm,l1_norm,min,max";
  if (s.bound_rhs) out += ",bound_rhs";
  out += '\n';
  for (std::size_t i = 0; i < s.size(); ++i) {
    out += format_double(s.t[i]) + ',' + format_double(s.x_norm[i]) + ',' + format_double(s.l1_norm[i]) +
           ',' + format_double(s.min[i]) + ',' + format_double(s.max[i]);
    if (s.bound_rhs) out += ',' + format_double((*s.bound_rhs)[i]);
    out += '\n';
  }
  return out;
}

DecaySeries decay_from_csv(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line)) throw ConfigError("decay CSV is empty");
  const std::string head(trim(line));
  bool bound = false;
  if (head == "t,x_norm,l1_norm,min,max,bound_rhs") {
    bound = true;
  } else if (head != "t,x_norm,l1_norm,min,max") {
    throw ConfigError("unexpected decay CSV header: " + head);
  }
  DecaySeries s;
  if (bound) s.bound_rhs.emplace();
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    std::vector<double> cols;
    std::size_t start = 0;
    while (true) {
      const auto comma = line.find(',', start);
      cols.push_back(parse_coefficient(std::string_view(line).substr(start, comma - start)));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (cols.size() != (bound ? 6u : 5u)) throw ConfigError("decay CSV row has the wrong width");
    s.t.push_back(cols[0]);
    s.x_norm.push_back(cols[1]);
    s.l1_norm.push_back(cols[2]);
    s.min.push_back(cols[3]);
    s.max.push_back(cols[4]);
    if (bound) s.bound_rhs->push_back(cols[5]);
  }
  s.validate();
  return s;
}

namespace {

json finite_or_string(double v) {
  if (std::isfinite(v)) return v;
  return v > 0 ? "inf" : (v < 0 ? "-inf" : "nan");
}

}  // namespace

std::string report_to_json(const PropertyReport& r) {
  json j;
  j["pass"] = r.all_pass();
  json checks = json::array();
  for (const auto& c : r.checks()) {
    checks.push_back({{"name", c.name},
                      {"pass", c.pass},
                      {"slack", finite_or_string(c.slack)},
                      {"tolerance", c.tolerance},
                      {"detail", c.detail}});
  }
  j["checks"] = checks;
  json inputs = json::object();
  for (const auto& [k, v] : r.inputs) inputs[k] = v;
  j["inputs"] = inputs;
  return j.dump(2);
}

std::string gn_report_to_json(const GNReport& r) {
  json j;
  j["holds"] = r.holds;
  j["urange"] = {r.urange.lo, r.urange.hi};
  if (r.witness) {
    j["witness"] = {r.witness->lo, r.witness->hi};
  } else {
    j["witness"] = nullptr;
  }
  json deg = json::array(), f = json::array();
  for (const auto& d : r.degenerate) deg.push_back({d.lo, d.hi});
  for (const auto& d : r.f_set) f.push_back({d.lo, d.hi});
  j["degenerate"] = deg;
  j["f_set"] = f;
  j["sup_f_minus"] = finite_or_string(r.sup_f_minus);
  j["inf_f_plus"] = finite_or_string(r.inf_f_plus);
  return j.dump(2);
}

std::uint64_t fnv1a(std::string_view bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hash_hex(std::string_view bytes) {
  static const char* digits = "0123456789abcdef";
  std::uint64_t h = fnv1a(bytes);
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = digits[h & 0xf];
    h >>= 4;
  }
  return out;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void atomic_write(const std::filesystem::path& path, std::string_view content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw Error("short write to " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace dcd
