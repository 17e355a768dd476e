#include "sgp_cli/serialize.hpp"

#include <cstdio>

namespace sgp::cli {

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json to_json(const Vector& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

json to_json(const ProjectorEvaluation& ev) {
  json j;
  j["x"] = to_json(ev.x);
  j["f"] = ev.fx;
  j["s"] = to_json(ev.sx);
  j["Gx"] = to_json(ev.Gx);
  j["moved"] = ev.moved();
  if (ev.halfspace_normal.size() > 0 && ev.halfspace_normal.squaredNorm() > 0.0) {
    j["halfspace"] = {{"normal", to_json(ev.halfspace_normal)}, {"offset", ev.halfspace_offset}};
  } else {
    j["halfspace"] = nullptr;
  }
  return j;
}

json to_json(const analysis::PropertyReport& r) {
  json j;
  j["property"] = r.property_id;
  j["samples_run"] = r.samples_run;
  j["violations"] = r.violations;
  j["passed"] = r.passed();
  j["seed"] = r.seed;
  j["tolerance"] = r.tolerance;
  if (std::isfinite(r.worst_normalized_margin)) {
    j["worst_normalized_margin"] = r.worst_normalized_margin;
  } else {
    j["worst_normalized_margin"] = nullptr;
  }
  if (r.first_witness) {
    const auto& w = *r.first_witness;
    json pts = json::array();
    for (const auto& p : w.points) pts.push_back(to_json(p));
    json vals = json::object();
    for (const auto& [k, v] : w.values) vals[k] = v;
    j["first_witness"] = {{"sample_index", w.sample_index}, {"item", w.item}, {"points", pts},
                          {"values", vals},                 {"margin", w.margin}, {"scale", w.scale}};
  } else {
    j["first_witness"] = nullptr;
  }
  return j;
}

json to_json(const catalog::CatalogEntry& e) {
  json props = json::array();
  for (const auto& k : e.known_properties) {
    props.push_back({{"property", catalog::to_string(k.flag)}, {"holds", k.holds}, {"note", k.note}});
  }
  return {{"name", e.name()},
          {"dim", e.dim()},
          {"parameters", e.parameters},
          {"smooth_region", e.smooth_region},
          {"strictly_convex", e.strictly_convex},
          {"known_properties", props}};
}

void write_trace_csv(const solver::IterationTrace& trace, std::ostream& os) {
  const int n = trace.records.empty() ? 0 : static_cast<int>(trace.records.front().x.size());
  const bool has_c = !trace.records.empty() && trace.records.front().dist_c.has_value();
  os << "k";
  for (int i = 0; i < n; ++i) os << ",x_" << i;
  os << ",f,step_norm";
  if (has_c) os << ",dist_c";
  os << '\n';
  for (const auto& r : trace.records) {
    os << r.k;
    for (int i = 0; i < n; ++i) os << ',' << format_number(r.x[i]);
    os << ',' << format_number(r.fx) << ',' << format_number(r.step_norm);
    if (has_c) os << ',' << format_number(r.dist_c.value_or(0.0));
    os << '\n';
  }
}

void write_reconstruction_csv(const yy::ReconstructedY& recon, std::ostream& os) {
  os << "x,region,q,y,Zx,G_y_x\n";
  for (const auto& r : recon.rows()) {
    os << format_number(r.x) << ',' << yy::to_string(r.region) << ',';
    if (r.q) os << format_number(*r.q);
    os << ',' << format_number(r.y) << ',' << format_number(r.Zx) << ',' << format_number(r.Gy_x) << '\n';
  }
}

}  // namespace sgp::cli
