#include "pmm/cli/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "pmm/cli/csv.hpp"

namespace pmm::cli {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) parts.push_back(trim(cur));
  if (!s.empty() && s.back() == sep) parts.emplace_back();
  return parts;
}

struct Entry {
  std::string value;
  int line;
};

class Reader {
 public:
  Reader(std::map<std::string, Entry> entries, std::string source)
      : entries_(std::move(entries)), source_(std::move(source)) {}

  [[noreturn]] void fail(const std::string& key, const std::string& what) const {
    const auto it = entries_.find(key);
    const std::string where =
        it == entries_.end() ? source_ : source_ + ":" + std::to_string(it->second.line);
    throw ConfigError(where + ": " + key + ": " + what);
  }

  const std::string* get(const std::string& key) {
    used_.insert(key);
    const auto it = entries_.find(key);
    return it == entries_.end() ? nullptr : &it->second.value;
  }

  double number(const std::string& key, const std::string& text) const {
    double v = 0.0;
    const char* first = text.data();
    const char* last = first + text.size();
    if (!text.empty() && *first == '+') ++first;
    const auto res = std::from_chars(first, last, v);
    if (res.ec != std::errc() || res.ptr != last || !std::isfinite(v)) {
      fail(key, "not a finite number: '" + text + "'");
    }
    return v;
  }

  std::optional<double> number(const std::string& key) {
    const std::string* s = get(key);
    if (!s) return std::nullopt;
    return number(key, *s);
  }

  std::optional<long long> integer(const std::string& key) {
    const std::string* s = get(key);
    if (!s) return std::nullopt;
    long long v = 0;
    const auto res = std::from_chars(s->data(), s->data() + s->size(), v);
    if (res.ec != std::errc() || res.ptr != s->data() + s->size()) {
      fail(key, "not an integer: '" + *s + "'");
    }
    return v;
  }

  std::optional<std::size_t> size(const std::string& key) {
    const auto v = integer(key);
    if (!v) return std::nullopt;
    if (*v < 1) fail(key, "must be >= 1");
    return static_cast<std::size_t>(*v);
  }

  std::optional<bool> boolean(const std::string& key) {
    const std::string* s = get(key);
    if (!s) return std::nullopt;
    if (*s == "true" || *s == "1" || *s == "yes") return true;
    if (*s == "false" || *s == "0" || *s == "no") return false;
    fail(key, "expected true or false, got '" + *s + "'");
  }

  std::vector<double> list(const std::string& key, const std::string& text) const {
    std::vector<double> out;
    for (const std::string& part : split(text, ',')) out.push_back(number(key, part));
    return out;
  }

  void reject_unknown() const {
    for (const auto& [key, entry] : entries_) {
      if (!used_.count(key)) {
        throw ConfigError(source_ + ":" + std::to_string(entry.line) + ": unknown key '" + key +
                          "'");
      }
    }
  }

 private:
  std::map<std::string, Entry> entries_;
  std::set<std::string> used_;
  std::string source_;
};

}  // namespace

RhoDescriptor RhoDescriptor::parse(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) {
    throw ConfigError("rho: expected const:<x> or list:<a,b,...>, got '" + text + "'");
  }
  const std::string kind = trim(text.substr(0, colon));
  const std::string body = trim(text.substr(colon + 1));
  RhoDescriptor d;
  Reader scratch({}, "rho");
  if (kind == "const") {
    d.values = {scratch.number("rho", body)};
    d.is_list = false;
  } else if (kind == "list") {
    d.values = scratch.list("rho", body);
    d.is_list = true;
  } else {
    throw ConfigError("rho: unknown schedule kind '" + kind + "'");
  }
  if (d.values.empty()) throw ConfigError("rho: empty schedule");
  return d;
}

RhoSchedule RhoDescriptor::schedule() const {
  return is_list ? list_rho(values) : constant_rho(values.front());
}

double RhoDescriptor::max_deviation() const {
  double dev = 0.0;
  for (double r : values) dev = std::max(dev, std::fabs(r - 1.0));
  return dev;
}

std::string RhoDescriptor::to_string() const {
  std::string s = is_list ? "list:" : "const:";
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) s += ",";
    s += format_number(values[i]);
  }
  return s;
}

double ExperimentConfig::effective_zeta() const {
  if (zeta) return *zeta;
  switch (problem) {
    case ProblemKind::tv: return 20.0;
    case ProblemKind::cs: return 500.0;
    case ProblemKind::custom_tiny: return 0.2;
  }
  return 1.0;
}

Boundary ExperimentConfig::effective_bc() const {
  if (bc) return *bc;
  return problem == ProblemKind::cs ? Boundary::periodic : Boundary::reflexive;
}

double ExperimentConfig::effective_intensity_scale() const {
  if (intensity_scale) return *intensity_scale;
  return problem == ProblemKind::tv ? 255.0 : 1.0;
}

double ExperimentConfig::effective_rho_bar() const {
  return rho_bar ? *rho_bar : rho.max_deviation();
}

double ExperimentConfig::effective_admm_rho() const {
  return admm_rho ? *admm_rho : rho.values.front();
}

void ExperimentConfig::validate() const {
  if (!(lambda > 0.0)) throw ConfigError("lambda must be positive");
  const double rb = effective_rho_bar();
  if (!(rb >= 0.0 && rb < 1.0)) throw ConfigError("rho_bar must lie in [0, 1)");
  for (double r : rho.values) {
    if (std::fabs(r - 1.0) > rb) {
      throw ConfigError("rho value " + format_number(r) + " lies outside [1 - rho_bar, 1 + rho_bar]");
    }
  }
  const double ar = effective_admm_rho();
  if (solver != SolverChoice::pmm && !(ar > 0.0 && ar < 2.0)) {
    throw ConfigError("admm_rho must lie in (0, 2)");
  }
  if (effective_zeta() <= 0.0) throw ConfigError("zeta must be positive");
  if (!(fraction > 0.0 && fraction <= 1.0)) throw ConfigError("fraction must lie in (0, 1]");
  if (noise_variance < 0.0) throw ConfigError("noise_variance must be >= 0");
  if (!(effective_intensity_scale() > 0.0)) throw ConfigError("intensity_scale must be positive");
  if (noise_sigma < 0.0) throw ConfigError("noise_sigma must be >= 0");
  if (max_iterations < 1) throw ConfigError("max_iter must be >= 1");
  if (image && problem != ProblemKind::tv) throw ConfigError("image is only used by problem=tv");
  if (image && !std::filesystem::exists(*image)) {
    throw ConfigError("image not found: " + image->string());
  }
  if (problem == ProblemKind::custom_tiny) {
    if (values.size() != rows * cols) {
      throw ConfigError("values has " + std::to_string(values.size()) + " entries, rows*cols is " +
                        std::to_string(rows * cols));
    }
  } else if (!image && (rows < 8 || cols < 8)) {
    throw ConfigError("phantom size must be at least 8x8");
  }
  if (d0_bound && !(*d0_bound > 0.0)) throw ConfigError("d0_bound must be positive");
  try {
    cg.validate();
  } catch (const InvalidArgument& e) {
    throw ConfigError(e.what());
  }
}

ExperimentConfig parse_config(std::istream& in, const std::string& source) {
  std::map<std::string, Entry> entries;
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto hash = raw.find('#');
    const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(source + ":" + std::to_string(line_no) + ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError(source + ":" + std::to_string(line_no) + ": empty key");
    if (!entries.emplace(key, Entry{value, line_no}).second) {
      throw ConfigError(source + ":" + std::to_string(line_no) + ": duplicate key '" + key + "'");
    }
  }

  Reader r(std::move(entries), source);
  ExperimentConfig cfg;

  if (const auto* s = r.get("problem")) {
    if (*s == "tv") cfg.problem = ProblemKind::tv;
    else if (*s == "cs") cfg.problem = ProblemKind::cs;
    else if (*s == "custom-tiny") cfg.problem = ProblemKind::custom_tiny;
    else r.fail("problem", "expected tv, cs or custom-tiny, got '" + *s + "'");
  }
  if (cfg.problem == ProblemKind::cs) cfg.phantom = PhantomKind::shepp_logan;
  if (const auto* s = r.get("image")) cfg.image = *s;
  if (const auto* s = r.get("phantom")) {
    if (*s == "piecewise") cfg.phantom = PhantomKind::piecewise;
    else if (*s == "shepp-logan") cfg.phantom = PhantomKind::shepp_logan;
    else r.fail("phantom", "expected piecewise or shepp-logan, got '" + *s + "'");
    cfg.phantom_set = true;
  }
  if (const auto v = r.size("size")) cfg.rows = cfg.cols = *v;
  if (const auto v = r.size("rows")) cfg.rows = *v;
  if (const auto v = r.size("cols")) cfg.cols = *v;
  if (const auto* s = r.get("values")) cfg.values = r.list("values", *s);
  cfg.zeta = r.number("zeta");
  if (const auto v = r.number("noise_variance")) cfg.noise_variance = *v;
  cfg.intensity_scale = r.number("intensity_scale");
  if (const auto v = r.number("fraction")) cfg.fraction = *v;
  if (const auto v = r.number("noise_sigma")) cfg.noise_sigma = *v;
  if (const auto* s = r.get("bc")) {
    if (*s == "reflexive") cfg.bc = Boundary::reflexive;
    else if (*s == "periodic") cfg.bc = Boundary::periodic;
    else r.fail("bc", "expected reflexive or periodic, got '" + *s + "'");
  }
  if (const auto v = r.integer("seed")) {
    if (*v < 0) r.fail("seed", "must be >= 0");
    cfg.seed = static_cast<std::uint64_t>(*v);
  }

  if (const auto* s = r.get("solver")) {
    if (*s == "pmm") cfg.solver = SolverChoice::pmm;
    else if (*s == "admm") cfg.solver = SolverChoice::admm;
    else if (*s == "both") cfg.solver = SolverChoice::both;
    else r.fail("solver", "expected pmm, admm or both, got '" + *s + "'");
  }
  if (const auto v = r.number("lambda")) cfg.lambda = *v;
  if (const auto* s = r.get("rho")) {
    try {
      cfg.rho = RhoDescriptor::parse(*s);
    } catch (const ConfigError& e) {
      r.fail("rho", e.what());
    }
  }
  cfg.rho_bar = r.number("rho_bar");
  cfg.admm_rho = r.number("admm_rho");

  const auto kkt_p = r.number("kkt_primal");
  const auto kkt_d = r.number("kkt_dual");
  const auto rel = r.number("rel_tol");
  const auto dual_scaled = r.number("dual_scaled_tol");
  if (const auto* s = r.get("stop")) {
    for (const std::string& part : split(*s, ',')) {
      if (part == "kkt") {
        cfg.stopping.kkt = KktTolerance{kkt_p.value_or(1e-6), kkt_d.value_or(1e-6)};
      } else if (part == "relative_change") {
        cfg.stopping.relative_change = rel.value_or(1e-3);
      } else if (part == "dual_scaled") {
        cfg.stopping.dual_scaled = dual_scaled.value_or(1e-6);
      } else if (part != "none") {
        r.fail("stop", "unknown criterion '" + part + "'");
      }
    }
  }
  if (const auto v = r.integer("max_iter")) {
    if (*v < 1 || *v > 100000000) r.fail("max_iter", "out of range");
    cfg.max_iterations = static_cast<int>(*v);
  }

  if (const auto* s = r.get("cg_mode")) {
    if (*s == "tolerance") cfg.cg.mode = CgMode::to_tolerance;
    else if (*s == "fixed") cfg.cg.mode = CgMode::fixed_iterations;
    else r.fail("cg_mode", "expected tolerance or fixed, got '" + *s + "'");
  }
  if (const auto v = r.number("cg_tol")) cfg.cg.tolerance = *v;
  if (const auto v = r.integer("cg_max_iter")) cfg.cg.max_iterations = static_cast<int>(*v);
  if (const auto v = r.integer("cg_fixed")) cfg.cg.fixed_count = static_cast<int>(*v);

  if (const auto v = r.boolean("certify")) cfg.certify = *v;
  cfg.d0_bound = r.number("d0_bound");
  if (const auto* s = r.get("out")) cfg.out = *s;

  r.reject_unknown();
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path.string());
  ExperimentConfig cfg = parse_config(in, path.string());
  const auto base = path.parent_path();
  if (cfg.image && cfg.image->is_relative()) cfg.image = base / *cfg.image;
  cfg.validate();
  return cfg;
}

std::string to_string(ProblemKind k) {
  switch (k) {
    case ProblemKind::tv: return "tv";
    case ProblemKind::cs: return "cs";
    case ProblemKind::custom_tiny: return "custom-tiny";
  }
  return "?";
}

std::string to_string(SolverChoice s) {
  switch (s) {
    case SolverChoice::pmm: return "pmm";
    case SolverChoice::admm: return "admm";
    case SolverChoice::both: return "both";
  }
  return "?";
}

}  // namespace pmm::cli
