#include "pps/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace pps {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void fail(const std::string& origin, const std::string& section,
                       const std::string& key, const std::string& why) {
  throw std::runtime_error(origin + ": [" + section + "] " + key + ": " + why);
}

double to_double(const std::string& origin, const std::string& sec,
                 const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const double d = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("trailing characters");
    return d;
  } catch (const std::exception&) {
    fail(origin, sec, key, "expected a number, got '" + v + "'");
  }
}

long to_long(const std::string& origin, const std::string& sec,
             const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const long d = std::stol(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("trailing characters");
    return d;
  } catch (const std::exception&) {
    fail(origin, sec, key, "expected an integer, got '" + v + "'");
  }
}

bool to_bool(const std::string& origin, const std::string& sec,
             const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  fail(origin, sec, key, "expected true/false, got '" + v + "'");
}

}  // namespace

RunConfig parse_config(std::istream& in, const std::string& origin) {
  RunConfig cfg;
  std::string section;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw std::runtime_error(origin + ":" + std::to_string(lineno) +
                                 ": malformed section header");
      section = trim(line.substr(1, line.size() - 2));
      if (section != "model" && section != "ansatz" && section != "optimizer" &&
          section != "schedule" && section != "report")
        throw std::runtime_error(origin + ": unknown section [" + section + "]");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error(origin + ":" + std::to_string(lineno) +
                               ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (section == "model") {
      if (key == "kind") cfg.model.kind = value;
      else if (key == "n") cfg.model.n = static_cast<int>(to_long(origin, section, key, value));
      else if (key == "nx") cfg.model.nx = static_cast<int>(to_long(origin, section, key, value));
      else if (key == "ny") cfg.model.ny = static_cast<int>(to_long(origin, section, key, value));
      else if (key == "gx") cfg.model.gx = to_double(origin, section, key, value);
      else if (key == "gz") cfg.model.gz = to_double(origin, section, key, value);
      else if (key == "jx") cfg.model.jx = to_double(origin, section, key, value);
      else if (key == "jy") cfg.model.jy = to_double(origin, section, key, value);
      else if (key == "jz") cfg.model.jz = to_double(origin, section, key, value);
      else if (key == "lattice_file") cfg.model.lattice_file = value;
      else fail(origin, section, key, "unknown key");
    } else if (section == "ansatz") {
      if (key == "reps") cfg.ansatz.reps = static_cast<int>(to_long(origin, section, key, value));
      else if (key == "proxy") cfg.ansatz.proxy = to_bool(origin, section, key, value);
      else fail(origin, section, key, "unknown key");
    } else if (section == "optimizer") {
      if (key == "eta") cfg.adam.eta = to_double(origin, section, key, value);
      else if (key == "beta1") cfg.adam.beta1 = to_double(origin, section, key, value);
      else if (key == "beta2") cfg.adam.beta2 = to_double(origin, section, key, value);
      else if (key == "eps") cfg.adam.eps = to_double(origin, section, key, value);
      else if (key == "spsa_delta") cfg.spsa.delta = to_double(origin, section, key, value);
      else if (key == "seed") cfg.seed = static_cast<std::uint64_t>(to_long(origin, section, key, value));
      else if (key == "record_every") cfg.record_every = static_cast<int>(to_long(origin, section, key, value));
      else if (key == "checkpoint_every") cfg.checkpoint_every = static_cast<int>(to_long(origin, section, key, value));
      else fail(origin, section, key, "unknown key");
    } else if (section == "schedule") {
      if (key != "stage") fail(origin, section, key, "unknown key (only 'stage')");
      std::istringstream ss(value);
      Stage st;
      std::string a, b, c;
      if (!(ss >> a >> b)) fail(origin, section, key, "want '<iterations> <delta_c> [eta]'");
      st.iterations = static_cast<int>(to_long(origin, section, key, a));
      st.delta_c = to_double(origin, section, key, b);
      if (ss >> c) st.eta = to_double(origin, section, key, c);
      std::string extra;
      if (ss >> extra) fail(origin, section, key, "trailing tokens after eta");
      if (st.iterations < 1) fail(origin, section, key, "iterations must be >= 1");
      if (st.delta_c < 0) fail(origin, section, key, "delta_c must be >= 0");
      cfg.stages.push_back(st);
    } else if (section == "report") {
      if (key == "delta_c") cfg.report_delta_c = to_double(origin, section, key, value);
      else if (key == "shards") cfg.shards = static_cast<int>(to_long(origin, section, key, value));
      else fail(origin, section, key, "unknown key");
    } else {
      throw std::runtime_error(origin + ":" + std::to_string(lineno) +
                               ": key outside any section");
    }
  }
  if (cfg.model.kind.empty())
    throw std::runtime_error(origin + ": [model] kind is required");
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_config: cannot open " + path);
  return parse_config(in, path);
}

void save_config(const RunConfig& cfg, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("save_config: cannot open " + path);
  out << "[model]\n";
  out << "kind = " << cfg.model.kind << "\n";
  if (cfg.model.n) out << "n = " << cfg.model.n << "\n";
  if (cfg.model.nx) out << "nx = " << cfg.model.nx << "\n";
  if (cfg.model.ny) out << "ny = " << cfg.model.ny << "\n";
  out << "gx = " << cfg.model.gx << "\n";
  out << "gz = " << cfg.model.gz << "\n";
  out << "jx = " << cfg.model.jx << "\n";
  out << "jy = " << cfg.model.jy << "\n";
  out << "jz = " << cfg.model.jz << "\n";
  if (!cfg.model.lattice_file.empty())
    out << "lattice_file = " << cfg.model.lattice_file << "\n";
  out << "\n[ansatz]\n";
  out << "reps = " << cfg.ansatz.reps << "\n";
  out << "proxy = " << (cfg.ansatz.proxy ? "true" : "false") << "\n";
  out << "\n[optimizer]\n";
  out << "eta = " << cfg.adam.eta << "\n";
  out << "beta1 = " << cfg.adam.beta1 << "\n";
  out << "beta2 = " << cfg.adam.beta2 << "\n";
  out << "eps = " << cfg.adam.eps << "\n";
  out << "spsa_delta = " << cfg.spsa.delta << "\n";
  out << "seed = " << cfg.seed << "\n";
  out << "record_every = " << cfg.record_every << "\n";
  out << "checkpoint_every = " << cfg.checkpoint_every << "\n";
  out << "\n[schedule]\n";
  for (const Stage& s : cfg.stages) {
    out << "stage = " << s.iterations << " " << s.delta_c;
    if (s.eta) out << " " << *s.eta;
    out << "\n";
  }
  out << "\n[report]\n";
  out << "delta_c = " << cfg.report_delta_c << "\n";
  out << "shards = " << cfg.shards << "\n";
}

}  // namespace pps
