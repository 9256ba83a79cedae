#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "elliptic_dyson/harness.hpp"

namespace edyson {

namespace {

using ojson = nlohmann::ordered_json;

constexpr int kSchema = 1;
constexpr const char* kVersion = "0.1.0";

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

ojson number(double v) { return std::isfinite(v) ? ojson(v) : ojson(nullptr); }

std::string fmt_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

ojson tolerances_json(const Tolerances& t) {
  ojson j;
  j["factorization_rel"] = t.factorization_rel;
  j["theta_rel"] = t.theta_rel;
  j["heat_residual"] = t.heat_residual;
  j["asymptotic_rel"] = t.asymptotic_rel;
  j["interp_delta"] = t.interp_delta;
  j["interp_matrix"] = t.interp_matrix;
  j["mc_sigmas"] = t.mc_sigmas;
  j["kolmogorov_residual"] = t.kolmogorov_residual;
  j["integral_n2"] = t.integral_n2;
  j["integral_n3"] = t.integral_n3;
  j["kernel_bins_required"] = t.kernel_bins_required;
  j["equilibrium_mass"] = t.equilibrium_mass;
  j["pinning_sigmas"] = t.pinning_sigmas;
  j["gauge_abs"] = t.gauge_abs;
  j["gap_slack"] = t.gap_slack;
  return j;
}

template <class T>
void read_opt(const ojson& j, const char* key, T& out) {
  if (j.contains(key) && !j[key].is_null()) out = j[key].get<T>();
}

Tolerances tolerances_from(const ojson& j) {
  Tolerances t;
  read_opt(j, "factorization_rel", t.factorization_rel);
  read_opt(j, "theta_rel", t.theta_rel);
  read_opt(j, "heat_residual", t.heat_residual);
  read_opt(j, "asymptotic_rel", t.asymptotic_rel);
  read_opt(j, "interp_delta", t.interp_delta);
  read_opt(j, "interp_matrix", t.interp_matrix);
  read_opt(j, "mc_sigmas", t.mc_sigmas);
  read_opt(j, "kolmogorov_residual", t.kolmogorov_residual);
  read_opt(j, "integral_n2", t.integral_n2);
  read_opt(j, "integral_n3", t.integral_n3);
  read_opt(j, "kernel_bins_required", t.kernel_bins_required);
  read_opt(j, "equilibrium_mass", t.equilibrium_mass);
  read_opt(j, "pinning_sigmas", t.pinning_sigmas);
  read_opt(j, "gauge_abs", t.gauge_abs);
  read_opt(j, "gap_slack", t.gap_slack);
  return t;
}

ojson config_json(const RunConfig& c) {
  ojson j;
  j["suite"] = to_string(c.suite);
  ojson fams = ojson::array();
  for (FamilyTag f : c.families) fams.push_back(to_string(f));
  j["families"] = fams;
  j["n"] = c.ns;
  j["t_star"] = c.t_star;
  j["r"] = c.r;
  j["seed"] = c.seed;
  j["mc_paths"] = c.mc_paths;
  j["dt"] = c.dt;
  j["format"] = to_string(c.format);
  j["tolerances"] = tolerances_json(c.tol);
  return j;
}

}  // namespace

const char* to_string(Suite s) {
  switch (s) {
    case Suite::Identities: return "identities";
    case Suite::MartingaleMc: return "martingale_mc";
    case Suite::Kolmogorov: return "kolmogorov";
    case Suite::IntegralIdentity: return "integral_identity";
    case Suite::KernelVsMc: return "kernel_vs_mc";
    case Suite::Relaxation: return "relaxation";
    case Suite::Pinning: return "pinning";
    case Suite::Fredholm: return "fredholm";
    case Suite::All: return "all";
  }
  return "unknown";
}

Suite parse_suite(std::string_view name) {
  const std::string s = lower(name);
  for (Suite v : {Suite::Identities, Suite::MartingaleMc, Suite::Kolmogorov, Suite::IntegralIdentity, Suite::KernelVsMc,
                  Suite::Relaxation, Suite::Pinning, Suite::Fredholm, Suite::All})
    if (s == to_string(v)) return v;
  fail(ErrorKind::InvalidArgument, "unknown suite: " + std::string(name));
}

const char* to_string(ReportFormat f) { return f == ReportFormat::Json ? "json" : "csv"; }

ReportFormat parse_format(std::string_view name) {
  const std::string s = lower(name);
  if (s == "json") return ReportFormat::Json;
  if (s == "csv") return ReportFormat::Csv;
  fail(ErrorKind::InvalidArgument, "unknown report format: " + std::string(name));
}

void RunConfig::validate() const {
  require(t_star > 0.0 && std::isfinite(t_star), "t_star must be positive and finite");
  require(r > 0.0 && std::isfinite(r), "r must be positive and finite");
  require(mc_paths >= 100, "mc_paths must be at least 100");
  require(dt > 0.0, "dt must be positive");
  for (int n : ns) require(n >= 2, "N must be at least 2");
  const double pos[] = {tol.factorization_rel, tol.theta_rel,     tol.heat_residual,     tol.asymptotic_rel,
                        tol.interp_delta,      tol.interp_matrix, tol.mc_sigmas,         tol.kolmogorov_residual,
                        tol.integral_n2,       tol.integral_n3,   tol.equilibrium_mass,  tol.pinning_sigmas,
                        tol.gauge_abs,         tol.gap_slack};
  for (double v : pos) require(v > 0.0, "tolerances must be positive");
  require(tol.kernel_bins_required > 0, "tolerances must be positive");
}

bool RunConfig::family_selected(FamilyTag tag) const {
  return families.empty() || std::find(families.begin(), families.end(), tag) != families.end();
}

bool RunConfig::n_selected(int n) const { return ns.empty() || std::find(ns.begin(), ns.end(), n) != ns.end(); }

bool Report::all_pass() const {
  return std::all_of(records.begin(), records.end(), [](const Record& r) { return r.pass; });
}

std::vector<const Record*> Report::criterion(int k) const {
  std::vector<const Record*> out;
  for (const Record& r : records)
    if (r.criterion == k) out.push_back(&r);
  return out;
}

std::string to_json(const Report& rep) {
  ojson j;
  j["schema"] = kSchema;
  j["tool"] = "elliptic-dyson";
  j["version"] = kVersion;
  ojson env;
#if defined(__clang__)
  env["compiler"] = std::string("clang ") + __clang_version__;
#elif defined(__GNUC__)
  env["compiler"] = std::string("gcc ") + __VERSION__;
#else
  env["compiler"] = "unknown";
#endif
  env["cxx_standard"] = static_cast<long>(__cplusplus);
  j["environment"] = env;
  j["config"] = config_json(rep.config);
  ojson recs = ojson::array();
  size_t passed = 0;
  for (const Record& r : rep.records) {
    ojson o;
    o["name"] = r.name;
    o["anchor"] = r.anchor;
    o["criterion"] = r.criterion;
    o["measured"] = number(r.measured);
    o["expected"] = number(r.expected);
    o["tolerance"] = number(r.tolerance);
    o["comparison"] = r.comparison;
    o["pass"] = r.pass;
    if (!r.note.empty()) o["note"] = r.note;
    recs.push_back(o);
    if (r.pass) ++passed;
  }
  j["records"] = recs;
  j["summary"] = {{"total", rep.records.size()}, {"passed", passed}, {"failed", rep.records.size() - passed},
                  {"all_pass", rep.all_pass()}};
  return j.dump(2) + "\n";
}

std::string to_csv(const Report& rep) {
  std::ostringstream out;
  out << "name,anchor,criterion,measured,expected,tolerance,comparison,pass,note\n";
  for (const Record& r : rep.records) {
    out << csv_field(r.name) << ',' << csv_field(r.anchor) << ',' << r.criterion << ',' << fmt_double(r.measured) << ','
        << fmt_double(r.expected) << ',' << fmt_double(r.tolerance) << ',' << r.comparison << ','
        << (r.pass ? "true" : "false") << ',' << csv_field(r.note) << '\n';
  }
  return out.str();
}

std::string serialize(const Report& rep, ReportFormat fmt) { return fmt == ReportFormat::Json ? to_json(rep) : to_csv(rep); }

RunConfig config_from_report_json(const std::string& text) {
  ojson j;
  try {
    j = ojson::parse(text);
  } catch (const std::exception& e) {
    fail(ErrorKind::InvalidArgument, std::string("report is not valid JSON: ") + e.what());
  }
  require(j.is_object() && j.contains("schema") && j["schema"] == kSchema, "unsupported report schema");
  require(j.contains("config") && j["config"].is_object(), "report has no embedded config");
  const ojson& c = j["config"];
  RunConfig cfg;
  try {
    cfg.suite = parse_suite(c.at("suite").get<std::string>());
    for (const auto& f : c.at("families")) cfg.families.push_back(parse_family(f.get<std::string>()));
    cfg.ns = c.at("n").get<std::vector<int>>();
    cfg.t_star = c.at("t_star").get<double>();
    cfg.r = c.at("r").get<double>();
    cfg.seed = c.at("seed").get<uint64_t>();
    cfg.mc_paths = c.at("mc_paths").get<int>();
    cfg.dt = c.at("dt").get<double>();
    if (c.contains("format")) cfg.format = parse_format(c["format"].get<std::string>());
    if (c.contains("tolerances")) cfg.tol = tolerances_from(c["tolerances"]);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::InvalidArgument, std::string("malformed embedded config: ") + e.what());
  }
  cfg.validate();
  return cfg;
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::Io, "cannot open " + path + " for writing");
  out << text;
  if (!out) fail(ErrorKind::Io, "write failed for " + path);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::Io, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace edyson
