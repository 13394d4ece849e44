#include <json.hpp>

#include "pencils/spectrum.hpp"

namespace pencils {

namespace {

using json = nlohmann::ordered_json;

json point_json(const ProjectivePoint& p) {
  return json{{"mu", p.mu.str()}, {"lambda", p.lambda.str()}};
}

json stats_json(const MemberStatistics& st) {
  json classes = json::array();
  for (const auto& c : st.classes)
    classes.push_back(json{{"multiplicity", c.multiplicity},
                           {"factor_count", c.factor_count},
                           {"degree", c.degree}});
  return json{{"n", st.n},
              {"m", st.m},
              {"omega", st.omega},
              {"theta", st.theta},
              {"e_infinity", st.e_infinity},
              {"kernel_dim", st.kernel_dim},
              {"affine_classes", classes},
              {"provenance", "computed"}};
}

json polygon_json(const LatticePolygon& p) {
  json verts = json::array();
  for (const auto& v : p.vertices()) verts.push_back(json::array({v.x, v.y}));
  return json{{"vertices", verts},
              {"N", p.count_total()},
              {"N_X", p.count_x_axis()},
              {"N_Y", p.count_y_axis()}};
}

}  // namespace

std::string report_to_json(const PencilReport& rep) {
  json j;
  j["schema_version"] = 1;
  j["field"] = rep.field.is_rationals() ? "Q" : "Fp";
  j["characteristic"] = rep.field.characteristic;
  j["seed"] = rep.seed;
  j["mode"] = rep.mode == AnalysisMode::Dense ? "dense" : "sparse";
  j["f"] = rep.f_text;
  j["g"] = rep.g_text;
  j["degree"] = rep.degree;

  json pts = json::array();
  for (const SpectralPoint& sp : rep.spectral_points) {
    json p;
    p["point"] = point_json(sp.point);
    p["kernel_dim"] = sp.kernel_dim;
    p["degree_deficient"] = sp.degree_deficient;
    p["e_infinity"] = sp.e_infinity;
    if (sp.stats) p["stats"] = stats_json(*sp.stats);
    pts.push_back(std::move(p));
  }
  j["spectral_points"] = std::move(pts);

  if (rep.spect) {
    json s;
    s["degree"] = rep.spect->form.degree();
    json coeffs = json::array();
    for (const auto& c : rep.spect->form.coeffs) coeffs.push_back(c.str());
    s["coefficients"] = std::move(coeffs);
    json roots = json::array();
    for (const auto& [pt, mult] : rep.spect->verified_roots)
      roots.push_back(json{{"point", point_json(pt)},
                           {"multiplicity", mult}});
    s["verified_roots"] = std::move(roots);
    json blocks = json::array();
    for (const auto& [deg, mult] : rep.spect->nonrational_blocks)
      blocks.push_back(json{{"degree", deg}, {"multiplicity", mult}});
    s["nonrational_factors"] = std::move(blocks);
    j["spect_poly"] = std::move(s);
  }

  j["rho"] = rep.rho;
  j["m"] = rep.m;
  j["omega"] = rep.omega;
  j["theta"] = rep.theta;
  j["kappa"] = rep.kappa.kappa;
  j["e_infinity"] = rep.kappa.e_infinity;
  if (rep.kappa.member)
    j["line_at_infinity_member"] = point_json(*rep.kappa.member);
  j["aggregates_complete"] = rep.aggregates_complete;

  json bounds = json::array();
  for (const BoundVerdict& b : rep.bounds)
    bounds.push_back(json{{"name", b.name},
                          {"lhs", b.lhs},
                          {"rhs", b.rhs},
                          {"holds", b.holds},
                          {"applicable", b.applicable},
                          {"note", b.note}});
  j["bounds"] = std::move(bounds);

  if (rep.sparse) {
    const SparseData& sd = *rep.sparse;
    json s;
    s["polygon_choice"] = sd.choice == PolygonChoice::Auto
                              ? "auto"
                              : (sd.choice == PolygonChoice::Newton
                                     ? "newton"
                                     : "superior");
    s["region"] = polygon_json(sd.region);
    s["N"] = sd.n_total;
    s["N_X"] = sd.n_x;
    s["N_Y"] = sd.n_y;
    s["N_E"] = sd.n_edge;
    if (sd.edge)
      s["good_edge"] = json{{"a", sd.edge->a},
                            {"b", sd.edge->b},
                            {"level", sd.edge->level},
                            {"points_on_edge", sd.edge->points_on_edge}};
    s["dim_E_N"] = sd.dim_E_N;
    s["bound_rhs"] = sd.bound_rhs;
    s["contains_newton_polygons"] = sd.contains_newton;
    s["contains_superior_envelopes"] = sd.contains_superior;
    if (sd.origin_point_spectral)
      s["origin_point_spectral"] = *sd.origin_point_spectral;
    j["sparse"] = std::move(s);
  }

  j["warnings"] = rep.warnings;
  return j.dump(2) + "\n";
}

}  // namespace pencils
