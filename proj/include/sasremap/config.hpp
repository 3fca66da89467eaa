#pragma once

// Run configuration: sectioned key=value text.
//
//   # comment
//   [mesh]
//   kind = tensor
//   imax = 65
//   limiter.kind = sas        # a dotted key names its section explicitly
//
// A dotted key also becomes the current section for following undotted
// keys, and several assignments may share a line separated by commas:
//
//   mesh.kind=tensor, imax=65, jmax=65, nmax=320
//
// Sections and keys (defaults in parentheses):
//   mesh:    kind tensor|random_smooth (tensor), imax (33), jmax (33),
//            nmax (160), gamma (1.0), seed (12345), rerandomize (false)
//   limiter: kind none|barth_jespersen|sas (sas), beta_smooth (1.0),
//            beta_steep (2.9), p (2), epsilon (1e-40),
//            eta_scaling relative|absolute (relative)
//   field:   kind sine|shock|affine|constant (sine), a b c (0) for
//            a + b x + c y, k (1) for constant, lo (0.05), hi (0.95)
//   output:  dir (out), stride (0 = no intermediate dumps), vtk (false)

#include <charconv>
#include <cstdint>
#include <cstdio>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>

#include "sasremap/error.hpp"
#include "sasremap/fields.hpp"
#include "sasremap/meshgen.hpp"
#include "sasremap/reconstruct.hpp"

namespace sasremap {

struct OutputConfig {
  std::string dir = "out";
  int stride = 0;
  bool vtk = false;
};

struct RunConfig {
  MeshSeriesSpec mesh;
  LimiterConfig limiter;
  FieldSpec field;
  double lo = 0.05;
  double hi = 0.95;
  OutputConfig output;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

class ConfigParser {
 public:
  RunConfig parse(std::string_view text) {
    std::size_t pos = 0;
    while (pos <= text.size()) {
      const auto nl = text.find('\n', pos);
      std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
      ++line_no_;
      if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
      handle_line(trim(line));
      if (nl == std::string_view::npos) break;
      pos = nl + 1;
    }
    finish();
    return config_;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ConfigError("config line " + std::to_string(line_no_) + " [" + (section_.empty() ? "-" : section_) +
                      "]: " + msg);
  }

  void handle_line(std::string_view line) {
    if (line.empty()) return;
    if (line.front() == '[') {
      if (line.back() != ']') fail("malformed section header");
      set_section(std::string(trim(line.substr(1, line.size() - 2))));
      return;
    }
    std::size_t start = 0;
    while (start <= line.size()) {
      const auto comma = line.find(',', start);
      const auto item = trim(line.substr(start, comma == std::string_view::npos ? std::string_view::npos
                                                                                : comma - start));
      if (!item.empty()) assign(item);
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
  }

  void set_section(std::string name) {
    if (name != "mesh" && name != "limiter" && name != "field" && name != "output") {
      section_ = name;
      fail("unknown section '" + name + "'");
    }
    section_ = std::move(name);
  }

  void assign(std::string_view item) {
    const auto eq = item.find('=');
    if (eq == std::string_view::npos) fail("expected key=value, got '" + std::string(item) + "'");
    std::string key(trim(item.substr(0, eq)));
    const std::string value(trim(item.substr(eq + 1)));
    if (const auto dot = key.find('.'); dot != std::string::npos) {
      set_section(key.substr(0, dot));
      key = key.substr(dot + 1);
    }
    if (section_.empty()) fail("key '" + key + "' outside any section");
    if (value.empty()) fail("empty value for '" + key + "'");
    if (section_ == "mesh") {
      mesh_key(key, value);
    } else if (section_ == "limiter") {
      limiter_key(key, value);
    } else if (section_ == "field") {
      field_key(key, value);
    } else {
      output_key(key, value);
    }
  }

  double real(const std::string& key, const std::string& v) const {
    double out = 0.0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || ptr != v.data() + v.size()) fail("'" + key + "' expects a number, got '" + v + "'");
    return out;
  }

  template <class Int>
  Int integer(const std::string& key, const std::string& v) const {
    Int out = 0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || ptr != v.data() + v.size()) fail("'" + key + "' expects an integer, got '" + v + "'");
    return out;
  }

  bool boolean(const std::string& key, const std::string& v) const {
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    fail("'" + key + "' expects true/false, got '" + v + "'");
  }

  void mesh_key(const std::string& key, const std::string& v) {
    auto& m = config_.mesh;
    if (key == "kind") {
      if (v == "tensor") m.kind = SeriesKind::tensor;
      else if (v == "random_smooth") m.kind = SeriesKind::random_smooth;
      else fail("unknown mesh kind '" + v + "'");
    } else if (key == "imax" || key == "jmax") {
      const int n = integer<int>(key, v);
      if (n < 3) fail(key + " must be >= 3");
      (key == "imax" ? m.imax : m.jmax) = n;
    } else if (key == "nmax") {
      m.nmax = integer<int>(key, v);
      if (m.nmax < 1) fail("nmax must be >= 1");
    } else if (key == "gamma") {
      m.gamma = real(key, v);
      if (!(m.gamma >= 0.0) || !(m.gamma * 0.25 < 0.5)) fail("gamma must satisfy 0 <= gamma < 2");
    } else if (key == "seed") {
      m.seed = integer<std::uint64_t>(key, v);
    } else if (key == "rerandomize") {
      m.rerandomize = boolean(key, v);
    } else {
      fail("unknown key '" + key + "'");
    }
  }

  void limiter_key(const std::string& key, const std::string& v) {
    auto& l = config_.limiter;
    if (key == "kind") {
      if (v == "none") l.kind = LimiterKind::none;
      else if (v == "barth_jespersen") l.kind = LimiterKind::barth_jespersen;
      else if (v == "sas") l.kind = LimiterKind::sas;
      else fail("unknown limiter kind '" + v + "'");
    } else if (key == "beta_smooth") {
      l.beta_smooth = real(key, v);
      if (!(l.beta_smooth > 0.0)) fail("beta_smooth must be positive");
    } else if (key == "beta_steep") {
      l.beta_steep = real(key, v);
      if (!(l.beta_steep > 0.0)) fail("beta_steep must be positive");
    } else if (key == "p") {
      l.p = real(key, v);
      if (!(l.p >= 1.0)) fail("p must be >= 1");
    } else if (key == "eta_scaling") {
      if (v == "absolute") l.eta_scaling = EtaScaling::absolute;
      else if (v == "relative") l.eta_scaling = EtaScaling::relative;
      else fail("unknown eta_scaling '" + v + "'");
    } else if (key == "epsilon") {
      l.epsilon = real(key, v);
      if (!(l.epsilon > 0.0)) fail("epsilon must be positive");
    } else {
      fail("unknown key '" + key + "'");
    }
  }

  void field_key(const std::string& key, const std::string& v) {
    auto& f = config_.field;
    if (key == "kind") {
      if (v == "sine") f.kind = FieldKind::sine;
      else if (v == "shock") f.kind = FieldKind::shock;
      else if (v == "affine") f.kind = FieldKind::affine;
      else if (v == "constant") f.kind = FieldKind::constant;
      else fail("unknown field kind '" + v + "'");
    } else if (key == "a") {
      f.a = real(key, v);
    } else if (key == "b") {
      f.b = real(key, v);
    } else if (key == "c") {
      f.c = real(key, v);
    } else if (key == "k") {
      f.k = real(key, v);
    } else if (key == "lo") {
      config_.lo = real(key, v);
    } else if (key == "hi") {
      config_.hi = real(key, v);
    } else {
      fail("unknown key '" + key + "'");
    }
  }

  void output_key(const std::string& key, const std::string& v) {
    auto& o = config_.output;
    if (key == "dir") {
      o.dir = v;
    } else if (key == "stride") {
      o.stride = integer<int>(key, v);
      if (o.stride < 0) fail("stride must be >= 0");
    } else if (key == "vtk") {
      o.vtk = boolean(key, v);
    } else {
      fail("unknown key '" + key + "'");
    }
  }

  void finish() {
    const auto& l = config_.limiter;
    if (!(l.beta_steep >= l.beta_smooth)) {
      section_ = "limiter";
      fail("beta_steep must be >= beta_smooth");
    }
    if (!(config_.lo < config_.hi)) {
      section_ = "field";
      fail("lo must be < hi");
    }
  }

  RunConfig config_;
  std::string section_;
  int line_no_ = 0;
};

inline std::string format_real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace detail

inline RunConfig parse_config(std::string_view text) { return detail::ConfigParser().parse(text); }

/// Canonical text form; parse_config(format_config(c)) reproduces c.
inline std::string format_config(const RunConfig& c) {
  using detail::format_real;
  std::ostringstream os;
  os << "[mesh]\n"
     << "kind = " << to_string(c.mesh.kind) << "\n"
     << "imax = " << c.mesh.imax << "\n"
     << "jmax = " << c.mesh.jmax << "\n"
     << "nmax = " << c.mesh.nmax << "\n"
     << "gamma = " << format_real(c.mesh.gamma) << "\n"
     << "seed = " << c.mesh.seed << "\n"
     << "rerandomize = " << (c.mesh.rerandomize ? "true" : "false") << "\n"
     << "\n[limiter]\n"
     << "kind = " << to_string(c.limiter.kind) << "\n"
     << "beta_smooth = " << format_real(c.limiter.beta_smooth) << "\n"
     << "beta_steep = " << format_real(c.limiter.beta_steep) << "\n"
     << "p = " << format_real(c.limiter.p) << "\n"
     << "epsilon = " << format_real(c.limiter.epsilon) << "\n"
     << "eta_scaling = " << (c.limiter.eta_scaling == EtaScaling::absolute ? "absolute" : "relative") << "\n"
     << "\n[field]\n"
     << "kind = " << to_string(c.field.kind) << "\n"
     << "a = " << format_real(c.field.a) << "\n"
     << "b = " << format_real(c.field.b) << "\n"
     << "c = " << format_real(c.field.c) << "\n"
     << "k = " << format_real(c.field.k) << "\n"
     << "lo = " << format_real(c.lo) << "\n"
     << "hi = " << format_real(c.hi) << "\n"
     << "\n[output]\n"
     << "dir = " << c.output.dir << "\n"
     << "stride = " << c.output.stride << "\n"
     << "vtk = " << (c.output.vtk ? "true" : "false") << "\n";
  return os.str();
}

}  // namespace sasremap
