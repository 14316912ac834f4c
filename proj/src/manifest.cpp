#include "rcork/manifest.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "rcork/errors.hpp"
#include "rcork/io_util.hpp"
#include "rcork/matrix_market.hpp"

namespace rcork {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) {
    return {};
  }
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// Drops a trailing comment that is not inside a quoted string.
std::string strip_comment(const std::string& s) {
  bool quoted = false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '"') {
      quoted = !quoted;
    } else if (s[i] == '#' && !quoted) {
      return s.substr(0, i);
    }
  }
  return s;
}

long long parse_int(const std::string& file, long line, const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const long long x = std::stoll(v, &used);
    if (used != v.size()) {
      throw std::invalid_argument("trailing");
    }
    return x;
  } catch (const std::exception&) {
    throw ParseError(file, line, "value of '" + key + "' is not an integer");
  }
}

}  // namespace

ProblemManifest parse_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError(path, 0, "cannot open manifest");
  }
  struct Entry {
    std::string value;
    long line;
  };
  std::map<std::string, Entry> entries;
  std::string raw;
  long lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    const std::string line = trim(strip_comment(raw));
    if (line.empty()) {
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ParseError(path, lineno, "expected 'key = value'");
    }
    const std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty()) {
      throw ParseError(path, lineno, "empty key");
    }
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') {
      value = value.substr(1, value.size() - 2);
    } else if (!value.empty() && (value.front() == '"' || value.back() == '"')) {
      throw ParseError(path, lineno, "unterminated string for '" + key + "'");
    }
    if (value.empty()) {
      throw ParseError(path, lineno, "empty value for '" + key + "'");
    }
    if (entries.count(key) != 0) {
      throw ParseError(path, lineno, "duplicate key '" + key + "'");
    }
    entries[key] = {value, lineno};
  }

  ProblemManifest m;
  m.path = path;
  const auto deg = entries.find("degree");
  if (deg == entries.end()) {
    throw ParseError(path, 0, "missing required entry \"degree\"");
  }
  const long long d = parse_int(path, deg->second.line, "degree", deg->second.value);
  if (d < 1) {
    throw ParseError(path, deg->second.line, "degree must be at least 1");
  }
  m.degree = static_cast<int>(d);
  for (const char* key : {"n", "s"}) {
    const auto it = entries.find(key);
    if (it != entries.end()) {
      const long long v = parse_int(path, it->second.line, key, it->second.value);
      if (v < 0) {
        throw ParseError(path, it->second.line, std::string("'") + key + "' must be non-negative");
      }
      (std::string(key) == "n" ? m.n : m.s) = static_cast<Index>(v);
    }
  }
  for (int i = 0; i <= m.degree; ++i) {
    const std::string key = "P" + std::to_string(i);
    const auto it = entries.find(key);
    if (it == entries.end()) {
      throw ParseError(path, 0, "missing required entry \"" + key + "\"");
    }
    m.coeff_files.push_back(it->second.value);
  }
  std::optional<std::string>* slots[] = {&m.E, &m.F, &m.C, &m.D};
  const char* names[] = {"E", "F", "C", "D"};
  bool any = false;
  for (int i = 0; i < 4; ++i) {
    const auto it = entries.find(names[i]);
    if (it != entries.end()) {
      *slots[i] = it->second.value;
      any = true;
    }
  }
  if (m.s && *m.s > 0) {
    any = true;
  }
  if (any) {
    for (int i = 0; i < 4; ++i) {
      if (!*slots[i]) {
        throw ParseError(path, 0, std::string("missing required entry \"") + names[i] + "\"");
      }
    }
  }
  const auto ev = entries.find("eigenvalues");
  if (ev != entries.end()) {
    m.eigenvalues = ev->second.value;
  }
  for (const auto& [key, entry] : entries) {
    const bool known = key == "degree" || key == "n" || key == "s" || key == "E" || key == "F" || key == "C" ||
                       key == "D" || key == "eigenvalues" ||
                       (key.size() > 1 && key[0] == 'P' && key.find_first_not_of("0123456789", 1) == std::string::npos &&
                        std::stoll(key.substr(1)) <= m.degree);
    if (!known) {
      throw ParseError(path, entry.line, "unknown key '" + key + "'");
    }
  }
  return m;
}

std::vector<Complex> read_eigenvalues(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError(path, 0, "cannot open eigenvalue file");
  }
  std::vector<Complex> out;
  std::string raw;
  long lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    const std::string line = trim(strip_comment(raw));
    if (line.empty()) {
      continue;
    }
    std::istringstream ss(line);
    double re = 0.0;
    double im = 0.0;
    if (!(ss >> re >> im)) {
      throw ParseError(path, lineno, "expected 're im'");
    }
    out.emplace_back(re, im);
  }
  return out;
}

LoadedProblem load_problem(const std::string& manifest_path) {
  const ProblemManifest m = parse_manifest(manifest_path);
  const std::filesystem::path base = std::filesystem::path(manifest_path).parent_path();
  auto resolve = [&](const std::string& f) {
    const std::filesystem::path p(f);
    return (p.is_absolute() ? p : base / p).string();
  };
  std::vector<SpMat> coeffs;
  for (const auto& f : m.coeff_files) {
    coeffs.push_back(read_matrix_market(resolve(f)));
  }
  const Index n = coeffs.front().rows();
  if (m.n && *m.n != n) {
    throw DimensionError("matrix P0 has " + std::to_string(n) + " rows but the manifest declares n = " +
                         std::to_string(*m.n));
  }
  LoadedProblem out;
  if (m.E) {
    SpMat E = read_matrix_market(resolve(*m.E));
    SpMat F = read_matrix_market(resolve(*m.F));
    SpMat C = read_matrix_market(resolve(*m.C));
    SpMat D = read_matrix_market(resolve(*m.D));
    if (m.s && *m.s != C.rows()) {
      throw DimensionError("matrix C has " + std::to_string(C.rows()) + " rows but the manifest declares s = " +
                           std::to_string(*m.s));
    }
    out.problem = std::make_shared<const RationalEigenproblem>(std::move(coeffs), std::move(E), std::move(F),
                                                               std::move(C), std::move(D));
  } else {
    out.problem = std::make_shared<const RationalEigenproblem>(RationalEigenproblem::polynomial(std::move(coeffs)));
  }
  if (m.eigenvalues) {
    out.prescribed = read_eigenvalues(resolve(*m.eigenvalues));
  }
  return out;
}

std::string export_problem(const RationalEigenproblem& rep, const std::vector<Complex>& prescribed,
                           const std::string& dir) {
  std::filesystem::create_directories(dir);
  const std::filesystem::path base(dir);
  std::ostringstream man;
  man << "degree = " << rep.degree() << "\n";
  man << "n = " << rep.n() << "\n";
  man << "s = " << rep.s() << "\n";
  for (int i = 0; i <= rep.degree(); ++i) {
    const std::string name = "P" + std::to_string(i) + ".mtx";
    write_matrix_market((base / name).string(), rep.coeff(i));
    man << "P" << i << " = \"" << name << "\"\n";
  }
  if (rep.s() > 0) {
    const std::pair<const char*, const SpMat*> parts[] = {
        {"E", &rep.E()}, {"F", &rep.F()}, {"C", &rep.C()}, {"D", &rep.D()}};
    for (const auto& [key, mat] : parts) {
      const std::string name = std::string(key) + ".mtx";
      write_matrix_market((base / name).string(), *mat);
      man << key << " = \"" << name << "\"\n";
    }
  }
  if (!prescribed.empty()) {
    std::ostringstream ev;
    char buf[96];
    for (const Complex& z : prescribed) {
      std::snprintf(buf, sizeof(buf), "%.17g %.17g\n", z.real(), z.imag());
      ev << buf;
    }
    write_file_atomic((base / "eigenvalues.txt").string(), ev.str());
    man << "eigenvalues = \"eigenvalues.txt\"\n";
  }
  const std::string path = (base / "manifest.toml").string();
  write_file_atomic(path, man.str());
  return path;
}

}  // namespace rcork
