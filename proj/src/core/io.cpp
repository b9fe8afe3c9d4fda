#include "core/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "core/pca.hpp"

namespace mppc {

namespace {

using nlohmann::json;

std::vector<std::string> split_csv_row(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char ch = line[i];
    if (quoted) {
      if (ch == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur.push_back(ch);
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      fields.push_back(cur);
      cur.clear();
    } else if (ch != '\r') {
      cur.push_back(ch);
    }
  }
  fields.push_back(cur);
  return fields;
}

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

bool parse_double(const std::string& field, double& out) {
  std::string t = trim(field);
  if (t.empty()) return false;
  const char* begin = t.data();
  const char* end = begin + t.size();
  auto [ptr, ec] = std::from_chars(begin, end, out);
  return ec == std::errc{} && ptr == end;
}

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

json params_to_json(const Params& p) {
  return json{{"lambda1", p.lambda1},
              {"lambda2", p.lambda2},
              {"p", p.p},
              {"rho", p.rho},
              {"top_period", p.top_period},
              {"reparam_period", p.reparam_period},
              {"inner_admm_iters", p.inner_admm_iters},
              {"max_inner_admm_iters", p.max_inner_admm_iters},
              {"max_outer_iters", p.max_outer_iters},
              {"energy_rtol", p.energy_rtol},
              {"fix_endpoints", p.fix_endpoints},
              {"turning_angle_check", p.turning_angle_check},
              {"turning_angle_threshold", p.turning_angle_threshold},
              {"ppc_only", p.ppc_only},
              {"seed", p.seed},
              {"threads", p.threads}};
}

Params params_from_json(const json& j) {
  Params p;
  p.lambda1 = j.at("lambda1").get<double>();
  p.lambda2 = j.at("lambda2").get<double>();
  p.p = j.value("p", 2.0);
  p.rho = j.value("rho", 0.0);
  p.top_period = j.value("top_period", 10);
  p.reparam_period = j.value("reparam_period", 5);
  p.inner_admm_iters = j.value("inner_admm_iters", 1);
  p.max_inner_admm_iters = j.value("max_inner_admm_iters", 64);
  p.max_outer_iters = j.value("max_outer_iters", 2000);
  p.energy_rtol = j.value("energy_rtol", 1e-6);
  p.fix_endpoints = j.value("fix_endpoints", false);
  p.turning_angle_check = j.value("turning_angle_check", false);
  p.turning_angle_threshold = j.value("turning_angle_threshold", M_PI / 10);
  p.ppc_only = j.value("ppc_only", false);
  p.seed = j.value("seed", std::uint64_t{0});
  p.threads = j.value("threads", 0);
  return p;
}

TopoEventKind kind_from_string(const std::string& s) {
  for (TopoEventKind k :
       {TopoEventKind::CutEdge, TopoEventKind::CutWindow,
        TopoEventKind::Connect, TopoEventKind::SpawnSingleton,
        TopoEventKind::SplitSingleton, TopoEventKind::RemoveSingleton,
        TopoEventKind::GrowSingleton, TopoEventKind::RemoveEmptyComponent})
    if (s == to_string(k)) return k;
  fail(ErrorCode::SchemaError, "unknown topology event kind: " + s);
}

}  // namespace

PointCloud load_csv(const std::string& path, std::optional<bool> has_header,
                    const std::optional<std::string>& weight_column,
                    bool do_normalize) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::IoError, "cannot open " + path);

  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line))
    if (!trim(line).empty()) lines.push_back(line);
  if (lines.empty()) fail(ErrorCode::EmptyCloud, path + " contains no rows");

  std::vector<std::string> header;
  bool with_header;
  if (has_header.has_value()) {
    with_header = *has_header;
  } else {
    with_header = false;
    for (const std::string& f : split_csv_row(lines[0])) {
      double tmp;
      if (!parse_double(f, tmp)) {
        with_header = true;
        break;
      }
    }
  }
  std::size_t first_row = 0;
  if (with_header) {
    header = split_csv_row(lines[0]);
    for (std::string& h : header) h = trim(h);
    first_row = 1;
  }
  if (first_row >= lines.size())
    fail(ErrorCode::EmptyCloud, path + " contains a header but no rows");

  int wcol = -1;
  if (weight_column.has_value()) {
    if (!with_header)
      fail(ErrorCode::ParseError,
           "a weight column was requested but the file has no header");
    for (std::size_t c = 0; c < header.size(); ++c)
      if (header[c] == *weight_column) wcol = static_cast<int>(c);
    if (wcol < 0)
      fail(ErrorCode::ParseError, "no column named '" + *weight_column + "'");
  }

  std::size_t arity = split_csv_row(lines[first_row]).size();
  if (wcol >= 0 && arity < 2)
    fail(ErrorCode::ParseError, "weight column leaves no coordinates");

  PointCloud cloud;
  cloud.n = static_cast<std::int64_t>(lines.size() - first_row);
  cloud.d = static_cast<int>(arity) - (wcol >= 0 ? 1 : 0);
  cloud.xs.reserve(cloud.n * cloud.d);
  cloud.w.reserve(cloud.n);
  bool any_weight = wcol >= 0;

  for (std::size_t r = first_row; r < lines.size(); ++r) {
    std::vector<std::string> fields = split_csv_row(lines[r]);
    std::size_t row_no = r - first_row + 1;
    if (fields.size() != arity)
      fail(ErrorCode::ArityMismatch,
           "row " + std::to_string(row_no) + " has " +
               std::to_string(fields.size()) + " fields, expected " +
               std::to_string(arity));
    double weight = 1.0;
    for (std::size_t c = 0; c < fields.size(); ++c) {
      double v;
      if (!parse_double(fields[c], v))
        fail(ErrorCode::ParseError, "row " + std::to_string(row_no) +
                                        ", column " + std::to_string(c + 1) +
                                        ": cannot parse '" + fields[c] + "'");
      if (static_cast<int>(c) == wcol)
        weight = v;
      else
        cloud.xs.push_back(v);
    }
    cloud.w.push_back(any_weight ? weight : 1.0);
  }
  if (!any_weight) {
    double u = 1.0 / static_cast<double>(cloud.n);
    for (double& wi : cloud.w) wi = u;
  }
  validate_cloud(cloud);
  return do_normalize ? normalize(cloud) : cloud;
}

void save_csv(const PointCloud& cloud, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::IoError, "cannot write " + path);
  for (int t = 0; t < cloud.d; ++t) out << "x" << (t + 1) << ",";
  out << "weight\n";
  for (std::int64_t i = 0; i < cloud.n; ++i) {
    for (int t = 0; t < cloud.d; ++t) out << fmt17(cloud.point(i)[t]) << ",";
    out << fmt17(cloud.w[i]) << "\n";
  }
}

void save_result(const std::string& path, const MultiCurve& curves,
                 const FitReport& report, const Params& params) {
  json comps = json::array();
  for (int c = 0; c < curves.component_count(); ++c) {
    json verts = json::array();
    for (std::int64_t j = 0; j < curves.comp_size(c); ++j) {
      json v = json::array();
      for (int t = 0; t < curves.d; ++t) v.push_back(curves.vertex(c, j)[t]);
      verts.push_back(std::move(v));
    }
    comps.push_back(json{{"singleton", curves.singleton(c)},
                         {"vertices", std::move(verts)}});
  }
  json events = json::array();
  for (const TopoEvent& ev : report.events)
    events.push_back(json{{"kind", to_string(ev.kind)},
                          {"iteration", ev.iteration},
                          {"energy_before", ev.energy_before},
                          {"energy_after", ev.energy_after},
                          {"continuum_before", ev.continuum_before},
                          {"continuum_after", ev.continuum_after}});
  json doc{{"format", "mppc-result/1"},
           {"params", params_to_json(params)},
           {"dimension", curves.d},
           {"energy",
            {{"fidelity", report.final_energy.fidelity},
             {"length", report.final_energy.length},
             {"components", report.final_energy.components},
             {"total", report.final_energy.total}}},
           {"components", std::move(comps)},
           {"iterations", report.outer_iterations},
           {"converged", report.converged},
           {"energy_history", report.energy_history},
           {"refinement_iterations", report.refinement_iterations},
           {"events", std::move(events)},
           {"wall_time_seconds", report.wall_time_seconds}};
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::IoError, "cannot write " + path);
  out << doc.dump(2) << "\n";
}

LoadedResult load_result(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::IoError, "cannot open " + path);
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    fail(ErrorCode::SchemaError, std::string("malformed result file: ") +
                                     e.what());
  }
  try {
    if (doc.at("format").get<std::string>() != "mppc-result/1")
      fail(ErrorCode::SchemaError, "unsupported result format");
    LoadedResult res;
    res.params = params_from_json(doc.at("params"));
    res.curves.d = doc.at("dimension").get<int>();
    for (const json& comp : doc.at("components")) {
      std::vector<double> v;
      for (const json& vert : comp.at("vertices")) {
        if (static_cast<int>(vert.size()) != res.curves.d)
          fail(ErrorCode::SchemaError, "vertex arity mismatch");
        for (const json& x : vert) v.push_back(x.get<double>());
      }
      if (v.empty()) fail(ErrorCode::SchemaError, "empty component");
      res.curves.comps.push_back(std::move(v));
    }
    if (res.curves.comps.empty())
      fail(ErrorCode::SchemaError, "result has no components");
    const json& en = doc.at("energy");
    res.report.final_energy.fidelity = en.at("fidelity").get<double>();
    res.report.final_energy.length = en.at("length").get<double>();
    res.report.final_energy.components = en.at("components").get<double>();
    res.report.final_energy.total = en.at("total").get<double>();
    res.report.outer_iterations = doc.at("iterations").get<int>();
    res.report.converged = doc.at("converged").get<bool>();
    res.report.energy_history =
        doc.at("energy_history").get<std::vector<double>>();
    res.report.refinement_iterations =
        doc.at("refinement_iterations").get<std::vector<int>>();
    for (const json& ev : doc.at("events")) {
      TopoEvent e;
      e.kind = kind_from_string(ev.at("kind").get<std::string>());
      e.iteration = ev.at("iteration").get<int>();
      e.energy_before = ev.at("energy_before").get<double>();
      e.energy_after = ev.at("energy_after").get<double>();
      e.continuum_before = ev.value("continuum_before", 0.0);
      e.continuum_after = ev.value("continuum_after", 0.0);
      res.report.events.push_back(e);
    }
    res.report.wall_time_seconds = doc.value("wall_time_seconds", 0.0);
    return res;
  } catch (const json::exception& e) {
    fail(ErrorCode::SchemaError, std::string("invalid result file: ") +
                                     e.what());
  }
}

void render_svg(const std::string& path, const PointCloud& cloud,
                const MultiCurve& curves, const SvgOptions& options) {
  const int d = cloud.d;
  if (curves.d != d)
    fail(ErrorCode::InvalidArgument, "cloud and curves dimension mismatch");

  // projection to the plane
  auto project = [&](const double* x, double* out2) {
    if (d == 1) {
      out2[0] = x[0];
      out2[1] = 0.0;
      return;
    }
    out2[0] = x[0];
    out2[1] = x[1];
  };
  Pca2 basis;
  bool use_pca = d > 2 && options.projection == SvgOptions::Projection::Pca2;
  if (d > 2 && !use_pca && options.projection != SvgOptions::Projection::First2)
    fail(ErrorCode::InvalidArgument, "d > 2 requires a projection");
  if (use_pca) basis = pca2_basis(cloud);
  auto project_any = [&](const double* x, double* out2) {
    if (!use_pca) {
      project(x, out2);
      return;
    }
    out2[0] = out2[1] = 0.0;
    for (int t = 0; t < d; ++t) {
      out2[0] += (x[t] - basis.mean[t]) * basis.axis1[t];
      out2[1] += (x[t] - basis.mean[t]) * basis.axis2[t];
    }
  };

  double lo[2] = {0, 0}, hi[2] = {0, 0};
  bool first = true;
  auto extend = [&](const double* p) {
    if (first) {
      lo[0] = hi[0] = p[0];
      lo[1] = hi[1] = p[1];
      first = false;
      return;
    }
    for (int t = 0; t < 2; ++t) {
      lo[t] = std::min(lo[t], p[t]);
      hi[t] = std::max(hi[t], p[t]);
    }
  };
  std::vector<double> pts(static_cast<std::size_t>(cloud.n) * 2);
  for (std::int64_t i = 0; i < cloud.n; ++i) {
    project_any(cloud.point(i), &pts[2 * i]);
    extend(&pts[2 * i]);
  }
  std::vector<std::vector<double>> cpts(curves.component_count());
  for (int c = 0; c < curves.component_count(); ++c) {
    cpts[c].resize(curves.comp_size(c) * 2);
    for (std::int64_t j = 0; j < curves.comp_size(c); ++j) {
      project_any(curves.vertex(c, j), &cpts[c][2 * j]);
      extend(&cpts[c][2 * j]);
    }
  }

  double span_x = hi[0] - lo[0], span_y = hi[1] - lo[1];
  if (span_x <= 0.0) span_x = 1.0;
  if (span_y <= 0.0) span_y = 1.0;
  const double pad = 0.05;  // 5% viewport padding
  double x0 = lo[0] - pad * span_x, x1 = hi[0] + pad * span_x;
  double y0 = lo[1] - pad * span_y, y1 = hi[1] + pad * span_y;
  const int W = options.width;
  const int H = std::max(
      64, static_cast<int>(std::lround(W * (y1 - y0) / (x1 - x0))));

  auto px = [&](double x) { return (x - x0) / (x1 - x0) * W; };
  auto py = [&](double y) { return H - (y - y0) / (y1 - y0) * H; };
  auto fmt = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return std::string(buf);
  };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W
      << "\" height=\"" << H << "\" viewBox=\"0 0 " << W << " " << H
      << "\">\n";
  svg << "<rect width=\"" << W << "\" height=\"" << H
      << "\" fill=\"white\"/>\n";
  for (std::int64_t i = 0; i < cloud.n; ++i)
    svg << "<circle class=\"pt\" cx=\"" << fmt(px(pts[2 * i])) << "\" cy=\""
        << fmt(py(pts[2 * i + 1])) << "\" r=\"1.4\" fill=\"#9a9a9a\"/>\n";
  for (int c = 0; c < curves.component_count(); ++c) {
    if (curves.comp_size(c) == 1) {
      svg << "<circle class=\"singleton\" cx=\"" << fmt(px(cpts[c][0]))
          << "\" cy=\"" << fmt(py(cpts[c][1]))
          << "\" r=\"3.2\" fill=\"#1f9e3c\"/>\n";
      continue;
    }
    svg << "<polyline class=\"curve\" fill=\"none\" stroke=\"#1f9e3c\" "
           "stroke-width=\"2\" points=\"";
    for (std::int64_t j = 0; j < curves.comp_size(c); ++j) {
      if (j) svg << " ";
      svg << fmt(px(cpts[c][2 * j])) << "," << fmt(py(cpts[c][2 * j + 1]));
    }
    svg << "\"/>\n";
  }
  svg << "</svg>\n";

  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::IoError, "cannot write " + path);
  out << svg.str();
}

}  // namespace mppc
