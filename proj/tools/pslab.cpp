// pslab command-line front end.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "pslab/br.hpp"
#include "pslab/curvature.hpp"
#include "pslab/desitter.hpp"
#include "pslab/errors.hpp"
#include "pslab/geodesic.hpp"
#include "pslab/horizon.hpp"
#include "pslab/quadric.hpp"
#include "pslab/verify.hpp"

namespace {

using json = nlohmann::ordered_json;
using pslab::cplx;

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitDomain = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// JSON config loader for CLI11: nested objects map onto subcommands.
class ConfigJSON : public CLI::Config {
 public:
  std::string to_config(const CLI::App*, bool, bool, std::string) const override { return {}; }

  std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
    json j;
    try {
      input >> j;
    } catch (const json::exception& e) {
      throw CLI::ConversionError(std::string("config: ") + e.what());
    }
    if (!j.is_object()) throw CLI::ConversionError("config: top level must be an object");
    std::vector<CLI::ConfigItem> out;
    collect(j, {}, out);
    return out;
  }

 private:
  static std::string scalar(const json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    if (v.is_number()) return v.dump();
    throw CLI::ConversionError("config: unsupported value " + v.dump());
  }

  static void collect(const json& j, const std::vector<std::string>& parents, std::vector<CLI::ConfigItem>& out) {
    for (const auto& [key, value] : j.items()) {
      if (value.is_object()) {
        auto p = parents;
        p.push_back(key);
        collect(value, p, out);
        continue;
      }
      CLI::ConfigItem item;
      item.parents = parents;
      item.name = key;
      if (value.is_array()) {
        // Arrays of numbers become the comma-joined form the flags accept.
        std::string joined;
        for (const auto& e : value) joined += (joined.empty() ? "" : ",") + scalar(e);
        item.inputs = {joined};
      } else {
        item.inputs = {scalar(value)};
      }
      out.push_back(std::move(item));
    }
  }
};

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string num(cplx z) {
  if (z.imag() == 0.0) return num(z.real());
  std::string im = num(z.imag());
  if (im.front() != '-') im = "+" + im;
  return num(z.real()) + im + "i";
}

json jnum(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }
json jnum(cplx z) { return json::array({jnum(z.real()), jnum(z.imag())}); }

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

void csv_row(std::ostream& os, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) os << (i ? "," : "") << csv_field(fields[i]);
  os << "\r\n";
}

struct GridAxis {
  std::string name;
  std::vector<double> values;
};

// name=a:b:n,name=a:b:n
std::vector<GridAxis> parse_grid(const std::string& text) {
  std::vector<GridAxis> axes;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    const auto eq = part.find('=');
    if (eq == std::string::npos) throw UsageError("grid axis '" + part + "' is not name=a:b:n");
    GridAxis ax{part.substr(0, eq), {}};
    std::vector<std::string> f;
    std::stringstream rs(part.substr(eq + 1));
    for (std::string s; std::getline(rs, s, ':');) f.push_back(s);
    if (f.size() != 3) throw UsageError("grid axis '" + part + "' is not name=a:b:n");
    double a = 0, b = 0;
    long n = 0;
    try {
      a = std::stod(f[0]);
      b = std::stod(f[1]);
      n = std::stol(f[2]);
    } catch (const std::exception&) {
      throw UsageError("grid axis '" + part + "' has a malformed number");
    }
    if (n < 1) throw UsageError("grid axis '" + ax.name + "' needs n >= 1");
    for (long i = 0; i < n; ++i) ax.values.push_back(n == 1 ? a : a + (b - a) * static_cast<double>(i) / (n - 1));
    axes.push_back(std::move(ax));
  }
  return axes;
}

const GridAxis& axis_named(const std::vector<GridAxis>& axes, std::initializer_list<const char*> names) {
  for (const auto& ax : axes)
    for (const char* n : names)
      if (ax.name == n) return ax;
  throw UsageError(std::string("grid is missing axis '") + *names.begin() + "'");
}

struct Params {
  double R = 1.0;
  double H = 1.0;
  double M = 1.0;
  double p = 2.0 / 3.0;
  double a2 = 1.0;
  double R_plus = 1.0;
  double R_minus = 1.0;
  std::optional<double> Lambda;
  int dim = 4;
  std::string model = "exp";

  void add_to(CLI::App* app) {
    app->add_option("--R", R, "Radius of curvature")->capture_default_str();
    app->add_option("--H", H, "Hubble rate")->capture_default_str();
    app->add_option("--M", M, "Horizon scale")->capture_default_str();
    app->add_option("--p", p, "Power-law exponent")->capture_default_str();
    app->add_option("--a2", a2, "JT constant a^2")->capture_default_str();
    app->add_option("--R-plus,--R_plus", R_plus, "BR radius R+")->capture_default_str();
    app->add_option("--R-minus,--R_minus", R_minus, "BR radius R-")->capture_default_str();
    app->add_option("--Lambda", Lambda, "Cosmological constant");
    app->add_option("--dim", dim, "Steady-state dimension (2 or 4)")->check(CLI::IsMember({2, 4}));
    app->add_option("--model", model, "Scale history for rw/redshift")
        ->check(CLI::IsMember({"exp", "power", "steady-state"}));
  }

  pslab::ScaleHistory history() const {
    return model == "power" ? pslab::power_law_history(p) : pslab::exponential_history(H);
  }

  pslab::BRSpec br(pslab::BRVariant v) const {
    return Lambda ? pslab::BRSpec::make(v, R_plus, R_minus, *Lambda) : pslab::BRSpec::consistent(v, R_plus, R_minus);
  }
};

pslab::Chart make_chart(const std::string& name, const Params& P) {
  using namespace pslab;
  if (name == "beltrami") return beltrami_metric(P.R);
  if (name == "beltrami2") return beltrami2_metric(P.R);
  if (name == "sphere") return hyperbolic_chart(QuadricSpec::parse("++++", P.R));
  if (name.rfind("quadric:", 0) == 0) return hyperbolic_chart(QuadricSpec::parse(name.substr(8), P.R));
  if (name == "minding") return minding_chart(P.R);
  if (name == "rw") return rw_chart(P.history());
  if (name == "steady-state") return steady_state_chart(P.H, P.dim);
  if (name == "br1") return br_chart(P.br(BRVariant::BR1));
  if (name == "br2") return br_chart(P.br(BRVariant::BR2));
  if (name == "rn-extremal") return rn_extremal_chart(P.M);
  if (name == "near-horizon") return near_horizon_chart(P.M);
  if (name == "br-minus") return br_minus_chart(P.M);
  if (name == "br-plus") return br_plus_chart(P.M);
  if (name == "jt") return jt_solution(P.Lambda.value_or(1.0), P.a2).chart();
  if (name == "dyonic") return dyonic_solution(P.R_plus, P.R_minus).chart();
  throw UsageError("unknown chart '" + name + "'");
}

struct Output {
  std::string format = "csv";
  std::string path;
  std::ofstream file;

  std::ostream& stream() {
    if (path.empty()) return std::cout;
    if (!file.is_open()) {
      file.open(path, std::ios::binary);
      if (!file) throw UsageError("cannot open output file '" + path + "'");
    }
    return file;
  }
};

void require_format(const Output& out, std::initializer_list<const char*> allowed) {
  for (const char* f : allowed)
    if (out.format == f) return;
  throw UsageError("format '" + out.format + "' is not available for this command");
}

std::string index_label(std::span<const int> idx) {
  std::string s;
  for (int i : idx) s += (s.empty() ? "" : ".") + std::to_string(i);
  return s;
}

json tensor_json(const pslab::TensorValue& t) {
  if (t.rank() == 0) return jnum(t.components()[0]);
  json arr = json::array();
  const int n = t.dim();
  const int stride = static_cast<int>(t.components().size()) / n;
  for (int i = 0; i < n; ++i) {
    // Nest one level per index.
    pslab::TensorValue sub(t.dim(), std::vector<pslab::Variance>(t.variances().begin() + 1, t.variances().end()),
                           t.point());
    std::copy_n(t.components().begin() + i * stride, stride, sub.components().begin());
    arr.push_back(tensor_json(sub));
  }
  return arr;
}

void tensor_csv(std::ostream& os, const std::string& qty, const pslab::TensorValue& t) {
  pslab::for_each_index(t.rank(), t.dim(),
                        [&](std::span<const int> idx) { csv_row(os, {qty, index_label(idx), num(t.at(idx))}); });
}

int cmd_curvature(const std::string& chart_name, const Params& P, const std::vector<double>& point, Output& out) {
  require_format(out, {"csv", "json"});
  const pslab::Chart chart = make_chart(chart_name, P);
  chart.require(point);
  const pslab::Geometry geo = pslab::geometry_at(chart, point);
  pslab::TensorValue gamma(chart.dim, {pslab::Variance::Upper, pslab::Variance::Lower, pslab::Variance::Lower}, point);
  pslab::for_each_index(3, chart.dim, [&](std::span<const int> i) { gamma(i[0], i[1], i[2]) = geo.gamma(i[0], i[1], i[2]); });
  auto& os = out.stream();
  if (out.format == "json") {
    json j;
    j["chart"] = chart.name;
    j["point"] = point;
    j["metric"] = tensor_json(geo.metric);
    j["gamma"] = tensor_json(gamma);
    j["riemann"] = tensor_json(geo.riemann);
    j["ricci"] = tensor_json(geo.ricci);
    j["scalar"] = jnum(geo.scalar);
    if (chart.dim == 2) j["K"] = jnum(0.5 * geo.scalar.real());
    os << j.dump(2) << "\n";
    return kExitOk;
  }
  csv_row(os, {"quantity", "index", "value"});
  tensor_csv(os, "metric", geo.metric);
  tensor_csv(os, "gamma", gamma);
  tensor_csv(os, "riemann", geo.riemann);
  tensor_csv(os, "ricci", geo.ricci);
  csv_row(os, {"scalar", "", num(geo.scalar)});
  if (chart.dim == 2) csv_row(os, {"K", "", num(0.5 * geo.scalar.real())});
  return kExitOk;
}

// Minimal SVG canvas mapping a user-space box onto a fixed pixel frame.
class Svg {
 public:
  Svg(double x0, double x1, double y0, double y1) : x0_(x0), x1_(x1), y0_(y0), y1_(y1) {
    if (x1_ <= x0_) x1_ = x0_ + 1.0;
    if (y1_ <= y0_) y1_ = y0_ + 1.0;
  }
  double px(double x) const { return kPad + (x - x0_) / (x1_ - x0_) * kSize; }
  double py(double y) const { return kPad + (y1_ - y) / (y1_ - y0_) * kSize; }
  double scale() const { return kSize / (x1_ - x0_); }

  void line(double xa, double ya, double xb, double yb, const char* stroke, double width) {
    body_ << "<line x1=\"" << num(px(xa)) << "\" y1=\"" << num(py(ya)) << "\" x2=\"" << num(px(xb)) << "\" y2=\""
          << num(py(yb)) << "\" stroke=\"" << stroke << "\" stroke-width=\"" << width << "\"/>\n";
  }
  void circle(double cx, double cy, double r) {
    body_ << "<circle cx=\"" << num(px(cx)) << "\" cy=\"" << num(py(cy)) << "\" r=\"" << num(r * scale())
          << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";
  }
  void rect(double x, double y, double w, double h, const char* fill) {
    body_ << "<rect x=\"" << num(px(x)) << "\" y=\"" << num(py(y + h)) << "\" width=\"" << num(w * scale())
          << "\" height=\"" << num(h * kSize / (y1_ - y0_)) << "\" fill=\"" << fill << "\" stroke=\"none\"/>\n";
  }
  void polyline(const std::vector<std::array<double, 2>>& pts, const char* stroke) {
    body_ << "<polyline fill=\"none\" stroke=\"" << stroke << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i) body_ << (i ? " " : "") << num(px(pts[i][0])) << "," << num(py(pts[i][1]));
    body_ << "\"/>\n";
  }
  void text(double x, double y, const std::string& s) {
    body_ << "<text x=\"" << num(px(x)) << "\" y=\"" << num(py(y)) << "\" font-size=\"12\">" << s << "</text>\n";
  }
  void write(std::ostream& os) const {
    const double side = kSize + 2 * kPad;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << side << "\" height=\"" << side << "\" viewBox=\"0 0 "
       << side << " " << side << "\">\n"
       << body_.str() << "</svg>\n";
  }

 private:
  static constexpr double kSize = 480.0;
  static constexpr double kPad = 20.0;
  double x0_, x1_, y0_, y1_;
  std::ostringstream body_;
};

int cmd_geodesic(const std::string& chart_name, const Params& P, const std::vector<double>& start,
                 const std::vector<double>& dir, double lambda_max, int steps, Output& out) {
  require_format(out, {"csv", "json", "svg"});
  if (steps < 2) throw UsageError("--steps must be at least 2");
  const pslab::Chart chart = make_chart(chart_name, P);
  if (static_cast<int>(dir.size()) != chart.dim)
    throw UsageError("--dir needs " + std::to_string(chart.dim) + " components");
  const pslab::Trajectory tr = pslab::geodesic_integrate(chart, start, dir, lambda_max, steps);
  auto& os = out.stream();
  if (out.format == "svg") {
    if (chart.dim != 2) throw UsageError("svg output needs a 2D chart");
    const bool disk = chart_name == "beltrami" || chart_name == "beltrami2";
    double x0 = disk ? -P.R : INFINITY, x1 = disk ? P.R : -INFINITY, y0 = x0, y1 = x1;
    std::vector<std::array<double, 2>> pts;
    for (const auto& s : tr.samples) {
      pts.push_back({s.x[0], s.x[1]});
      x0 = std::min(x0, s.x[0]), x1 = std::max(x1, s.x[0]);
      y0 = std::min(y0, s.x[1]), y1 = std::max(y1, s.x[1]);
    }
    const double side = std::max(x1 - x0, y1 - y0);
    Svg svg(x0, x0 + side, y0, y0 + side);
    if (disk) svg.circle(0.0, 0.0, P.R);
    svg.polyline(pts, "steelblue");
    svg.write(os);
    return kExitOk;
  }
  if (out.format == "json") {
    json j;
    j["chart"] = chart.name;
    j["hit_boundary"] = tr.hit_boundary;
    json rows = json::array();
    for (const auto& s : tr.samples) {
      json r;
      r["lambda"] = jnum(s.lambda);
      json xs = json::array();
      for (double x : s.x) xs.push_back(jnum(x));
      r["x"] = xs;
      r["norm"] = jnum(pslab::speed_squared(chart, s));
      rows.push_back(r);
    }
    j["samples"] = rows;
    os << j.dump(2) << "\n";
    return kExitOk;
  }
  std::vector<std::string> head{"lambda"};
  for (int i = 0; i < chart.dim; ++i) head.push_back("x" + std::to_string(i));
  head.push_back("norm");
  csv_row(os, head);
  for (const auto& s : tr.samples) {
    std::vector<std::string> row{num(s.lambda)};
    for (double x : s.x) row.push_back(num(x));
    row.push_back(num(pslab::speed_squared(chart, s)));
    csv_row(os, row);
  }
  return kExitOk;
}

struct EmbedRow {
  std::vector<double> coords;
  std::array<double, 3> ambient{};
  double residual = 0.0;
  std::string status = "ok";
};

int cmd_embed(const std::string& which, const Params& P, const std::string& signs, const std::string& grid_text,
              Output& out) {
  require_format(out, {"csv", "json", "svg"});
  const auto axes = parse_grid(grid_text);
  std::vector<std::string> names;
  std::vector<EmbedRow> rows;
  auto run = [&](const std::vector<double>& c, auto&& f) {
    EmbedRow row;
    row.coords = c;
    try {
      f(row);
    } catch (const pslab::DomainError& e) {
      row.status = "domain_error";
      row.residual = NAN;
      row.ambient = {NAN, NAN, NAN};
    }
    rows.push_back(std::move(row));
  };
  if (which == "tractrix") {
    const auto& chi = axis_named(axes, {"chi"});
    names = {"chi"};
    if (out.format == "svg") {
      std::vector<std::array<double, 2>> pts;
      double zmax = 0.0;
      for (double c : chi.values) {
        const auto p = pslab::tractrix_point(c, P.R);
        pts.push_back(p);
        zmax = std::max(zmax, std::abs(p[1]));
      }
      const double side = std::max(P.R, zmax);
      Svg svg(-0.05 * side, 1.05 * side, -0.55 * side - zmax / 2, 0.55 * side + zmax / 2);
      svg.line(0.0, -zmax, 0.0, zmax, "gray", 1.0);
      svg.polyline(pts, "darkred");
      svg.write(out.stream());
      return kExitOk;
    }
    for (double c : chi.values)
      run({c}, [&](EmbedRow& r) {
        const auto p = pslab::tractrix_point(c, P.R);
        r.ambient = {p[0], 0.0, p[1]};
      });
  } else {
    if (out.format == "svg") throw UsageError("svg output is only available for the tractrix profile");
    if (which == "ds2") {
      const auto& t = axis_named(axes, {"tbar", "t"});
      const auto& x = axis_named(axes, {"xbar", "x"});
      names = {t.name, x.name};
      for (double a : t.values)
        for (double b : x.values)
          run({a, b}, [&](EmbedRow& r) {
            r.ambient = pslab::ds2_embed<double>(a, b);
            r.residual = pslab::ds2_residual(r.ambient);
          });
    } else if (which == "br0" || which == "br+" || which == "br-") {
      const auto kind = pslab::parse_embedding_kind(which);
      const auto& t = axis_named(axes, {"t"});
      const auto& rr = axis_named(axes, {"r"});
      names = {"t", "r"};
      for (double a : t.values)
        for (double b : rr.values)
          run({a, b}, [&](EmbedRow& r) {
            r.ambient = pslab::embed<double>(kind, P.M, b, a);
            r.residual = pslab::horizon_quadric_residual(r.ambient, P.M);
          });
    } else if (which == "quadric") {
      const auto q = pslab::QuadricSpec::parse(signs, P.R);
      q.validate();
      if (axes.size() != 2) throw UsageError("quadric embedding needs two grid axes");
      names = {axes[0].name, axes[1].name};
      for (double a : axes[0].values)
        for (double b : axes[1].values)
          run({a, b}, [&](EmbedRow& r) {
            r.ambient = pslab::embed_point<double>(q, a, b);
            r.residual = pslab::quadric_residual(q, r.ambient);
          });
    } else {
      throw UsageError("unknown embedding case '" + which + "'");
    }
  }
  auto& os = out.stream();
  if (out.format == "json") {
    json arr = json::array();
    for (const auto& r : rows) {
      json j;
      for (std::size_t i = 0; i < names.size(); ++i) j[names[i]] = jnum(r.coords[i]);
      j["xi"] = jnum(r.ambient[0]);
      j["eta"] = jnum(r.ambient[1]);
      j["zeta"] = jnum(r.ambient[2]);
      j["residual"] = jnum(r.residual);
      j["status"] = r.status;
      arr.push_back(j);
    }
    os << arr.dump(2) << "\n";
    return kExitOk;
  }
  std::vector<std::string> head = names;
  for (const char* h : {"xi", "eta", "zeta", "residual", "status"}) head.push_back(h);
  csv_row(os, head);
  for (const auto& r : rows) {
    std::vector<std::string> f;
    for (double c : r.coords) f.push_back(num(c));
    const bool ok = r.status == "ok";
    for (double a : r.ambient) f.push_back(ok ? num(a) : "");
    f.push_back(ok ? num(r.residual) : "");
    f.push_back(r.status);
    csv_row(os, f);
  }
  return kExitOk;
}

int cmd_verify(const std::string& filter, const std::vector<std::string>& tols, std::optional<double> default_tol,
               const Params& P, bool r_plus_set, bool r_minus_set, bool timing, Output& out) {
  require_format(out, {"csv", "json"});
  pslab::CheckOptions opts;
  opts.default_tolerance = default_tol;
  if (r_plus_set) opts.params["R_plus"] = P.R_plus;
  if (r_minus_set) opts.params["R_minus"] = P.R_minus;
  if (P.Lambda) opts.params["Lambda"] = *P.Lambda;
  for (const auto& t : tols) {
    const auto eq = t.find('=');
    if (eq == std::string::npos) throw UsageError("--tol expects name=value");
    try {
      opts.tolerance_for[t.substr(0, eq)] = std::stod(t.substr(eq + 1));
    } catch (const std::exception&) {
      throw UsageError("--tol value '" + t.substr(eq + 1) + "' is not a number");
    }
  }
  const auto reports = pslab::run_all(filter, opts);
  bool all = true;
  auto& os = out.stream();
  if (out.format == "json") {
    json arr = json::array();
    for (const auto& r : reports) {
      json j;
      j["name"] = r.name;
      j["residual"] = jnum(r.residual);
      j["tolerance"] = jnum(r.tolerance);
      j["passed"] = r.passed;
      j["grid_spec"] = r.grid_spec;
      j["detail"] = r.detail;
      if (timing) j["elapsed"] = r.elapsed;
      arr.push_back(j);
      all = all && r.passed;
    }
    os << arr.dump(2) << "\n";
  } else {
    std::vector<std::string> head{"name", "residual", "tolerance", "passed", "grid_spec", "detail"};
    if (timing) head.push_back("elapsed");
    csv_row(os, head);
    for (const auto& r : reports) {
      std::vector<std::string> f{r.name, num(r.residual), num(r.tolerance), r.passed ? "true" : "false", r.grid_spec,
                                 r.detail};
      if (timing) f.push_back(num(r.elapsed));
      csv_row(os, f);
      all = all && r.passed;
    }
  }
  return all ? kExitOk : kExitFailed;
}

int cmd_redshift(const Params& P, double t0, double t1, Output& out) {
  require_format(out, {"csv", "json"});
  const pslab::ScaleHistory h = P.history();
  if (!h.contains(t0) || !h.contains(t1)) throw pslab::DomainError("times outside the scale history domain");
  const double ratio = pslab::redshift(h, t0, t1);
  const double comoving = pslab::comoving_distance(h, t0, t1);
  auto& os = out.stream();
  if (out.format == "json") {
    json j;
    j["model"] = P.model;
    j["t0"] = t0;
    j["t1"] = t1;
    j["ratio"] = jnum(ratio);
    j["ratio_from_hubble"] = jnum(pslab::redshift_from_hubble(h, t0, t1));
    j["comoving"] = jnum(comoving);
    os << j.dump(2) << "\n";
  } else {
    csv_row(os, {"model", "t0", "t1", "ratio", "ratio_from_hubble", "comoving"});
    csv_row(os, {P.model, num(t0), num(t1), num(ratio), num(pslab::redshift_from_hubble(h, t0, t1)), num(comoving)});
  }
  return kExitOk;
}

std::optional<double> safe_factor(double u, double v) {
  try {
    return pslab::conformal_factor(u, v);
  } catch (const pslab::DomainError&) {
    return std::nullopt;
  }
}

// Rows on u - v = pi (mod 2 pi) sit at x = +-infinity.
std::string safe_region(double u, double v, double M) {
  if (!safe_factor(u, v)) return "infinity";
  return std::string(pslab::to_string(pslab::region_classify(u, v, M)));
}

const char* region_fill(pslab::Region r) {
  switch (r) {
    case pslab::Region::I:
      return "#9ecae1";
    case pslab::Region::II:
      return "#fdae6b";
    case pslab::Region::III:
      return "#a1d99b";
    case pslab::Region::Boundary:
      break;
  }
  return "#636363";
}

int cmd_penrose(const Params& P, const std::string& grid_text, Output& out) {
  require_format(out, {"csv", "json", "svg"});
  const auto axes = parse_grid(grid_text);
  const auto& us = axis_named(axes, {"u"});
  const auto& vs = axis_named(axes, {"v"});
  auto& os = out.stream();
  if (out.format == "svg") {
    const double u0 = us.values.front(), u1 = us.values.back();
    const double v0 = vs.values.front(), v1 = vs.values.back();
    Svg svg(v0, v1, u0, u1);
    const double du = us.values.size() > 1 ? (u1 - u0) / (us.values.size() - 1) : 1.0;
    const double dv = vs.values.size() > 1 ? (v1 - v0) / (vs.values.size() - 1) : 1.0;
    for (double u : us.values)
      for (double v : vs.values)
        svg.rect(v - dv / 2, u - du / 2, dv, du,
                 safe_factor(u, v) ? region_fill(pslab::region_classify(u, v, P.M)) : "#ffffff");
    // r = 0 where u - v = 2 pi k.
    const double two_pi = 2.0 * std::numbers::pi;
    for (double k = std::ceil((u0 - v1) / two_pi); k * two_pi <= u1 - v0; k += 1.0) {
      const double c = k * two_pi;
      const double va = std::max(v0, u0 - c), vb = std::min(v1, u1 - c);
      if (va < vb) svg.line(va, va + c, vb, vb + c, "black", 3.0);
    }
    svg.text(v0, u1, "u vertical, v horizontal; I blue, II orange, III green");
    svg.write(os);
    return kExitOk;
  }
  if (out.format == "json") {
    json arr = json::array();
    for (double u : us.values)
      for (double v : vs.values) {
        json j;
        j["u"] = jnum(u);
        j["v"] = jnum(v);
        j["region"] = safe_region(u, v, P.M);
        const auto C = safe_factor(u, v);
        j["C"] = C ? jnum(*C) : json(nullptr);
        arr.push_back(j);
      }
    os << arr.dump(2) << "\n";
    return kExitOk;
  }
  csv_row(os, {"u", "v", "region", "C"});
  for (double u : us.values)
    for (double v : vs.values) {
      const auto C = safe_factor(u, v);
      csv_row(os, {num(u), num(v), safe_region(u, v, P.M), C ? num(*C) : ""});
    }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pslab: pseudosphere and constant-curvature spacetime toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  app.config_formatter(std::make_shared<ConfigJSON>());
  app.set_config("--config", "", "JSON file preloading options; flags override it");
  Output out;
  bool timing = false;
  app.add_option("--format", out.format, "csv | json | svg")
      ->check(CLI::IsMember({"csv", "json", "svg"}))
      ->capture_default_str();
  app.add_option("-o,--output", out.path, "Output file (default stdout)");
  app.add_flag("--timing", timing, "Report wall time on stderr and elapsed per check");

  Params P;
  std::string chart_name;
  std::vector<double> point, start, dir;
  double lambda_max = 1.0;
  int steps = 100;
  std::string embed_case, signs = "++++", grid;
  std::string filter;
  std::vector<std::string> tols;
  std::optional<double> default_tol;
  double t0 = 0.0, t1 = 1.0;

  auto* curv = app.add_subcommand("curvature", "Metric, Christoffel symbols, Riemann, Ricci and scalar curvature");
  curv->add_option("--chart", chart_name, "Chart name")->required();
  curv->add_option("--point", point, "Comma-separated coordinates")->delimiter(',')->required();
  P.add_to(curv);

  auto* geo = app.add_subcommand("geodesic", "Integrate a geodesic with RK4");
  geo->add_option("--chart", chart_name, "Chart name")->required();
  geo->add_option("--start", start, "Start point")->delimiter(',')->required();
  geo->add_option("--dir", dir, "Initial velocity")->delimiter(',')->required();
  geo->add_option("--lambda-max", lambda_max, "Affine parameter range")->capture_default_str();
  geo->add_option("--steps", steps, "RK4 steps (>= 2)")->capture_default_str();
  P.add_to(geo);

  auto* emb = app.add_subcommand("embed", "Ambient coordinates over a grid with the quadric residual");
  emb->add_option("--case", embed_case, "ds2 | br0 | br+ | br- | quadric | tractrix")->required();
  emb->add_option("--signs", signs, "Quadric signs, e.g. --++")->capture_default_str();
  emb->add_option("--grid", grid, "name=a:b:n,...")->required();
  P.add_to(emb);

  auto* ver = app.add_subcommand("verify", "Run the named verification checks");
  ver->add_option("--filter", filter, "Shell-style glob on check names");
  ver->add_option("--tol", tols, "Per-check tolerance name=value");
  ver->add_option("--default-tol", default_tol, "Replaces the default tolerance")->envname("PSLAB_TOL");
  auto* rp = ver->add_option("--R-plus,--R_plus", P.R_plus, "BR radius R+");
  auto* rm = ver->add_option("--R-minus,--R_minus", P.R_minus, "BR radius R-");
  ver->add_option("--Lambda", P.Lambda, "Cosmological constant");

  auto* red = app.add_subcommand("redshift", "R(t1)/R(t0) and comoving distance");
  red->add_option("--t0", t0)->capture_default_str();
  red->add_option("--t1", t1)->capture_default_str();
  P.add_to(red);

  auto* pen = app.add_subcommand("penrose", "Penrose coordinates, regions and conformal factor");
  pen->add_option("--grid", grid, "u=a:b:n,v=a:b:n")->required();
  pen->add_option("--M", P.M, "Horizon scale")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitUsage;
  }

  const auto t_start = std::chrono::steady_clock::now();
  int code = kExitOk;
  try {
    if (*curv) code = cmd_curvature(chart_name, P, point, out);
    else if (*geo) code = cmd_geodesic(chart_name, P, start, dir, lambda_max, steps, out);
    else if (*emb) code = cmd_embed(embed_case, P, signs, grid, out);
    else if (*ver) code = cmd_verify(filter, tols, default_tol, P, rp->count() > 0, rm->count() > 0, timing, out);
    else if (*red) code = cmd_redshift(P, t0, t1, out);
    else if (*pen) code = cmd_penrose(P, grid, out);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const pslab::DimensionError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const pslab::UnknownCheckError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const pslab::Error& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return kExitDomain;
  }
  if (timing)
    std::cerr << "elapsed " << std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count()
              << " s\n";
  return code;
}
