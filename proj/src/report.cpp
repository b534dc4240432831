#include "polyrad/report.hpp"

#include <cmath>
#include <cstdio>

#include "json.hpp"

namespace polyrad {

namespace {

using json = nlohmann::ordered_json;

json scalar_value(const Scalar& s) {
  if (s.exact) return json(rat_to_string(s.rational));
  return json(s.approx);
}

json rat_array(const std::vector<Rat>& v) {
  json out = json::array();
  for (const Rat& q : v) out.push_back(rat_to_string(q));
  return out;
}

json point_array(const std::vector<std::vector<Rat>>& pts) {
  json out = json::array();
  for (const auto& p : pts) out.push_back(rat_array(p));
  return out;
}

const char* case_name(CaseFlag f) {
  switch (f) {
    case CaseFlag::Subcritical: return "subcritical";
    case CaseFlag::Critical: return "critical";
    case CaseFlag::Supercritical: return "supercritical";
  }
  return "?";
}

const char* source_name(A0Source s) {
  switch (s) {
    case A0Source::Exact: return "exact";
    case A0Source::Fitted: return "fitted";
    case A0Source::UserOverride: return "user-override";
  }
  return "?";
}

std::string csv_num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json fit_body(const GrowthFit& fit) {
  json out;
  out["a0_hat"] = fit.a0Hat;
  out["d0_hat"] = fit.d0Hat;
  out["env_lo"] = fit.envLo;
  out["env_hi"] = fit.envHi;
  out["residual"] = fit.residual;
  out["stable"] = fit.stable;
  out["r"] = fit.rBox;
  out["eps_schedule"] = fit.epsSchedule;
  return out;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace

bool fit_agrees(const GrowthFit& fit, const Rat& predicted) {
  return std::abs(fit.a0Hat - rat_to_double(predicted)) <= 0.05;
}

std::string analysis_json(const ProblemSpec& spec, const AnalysisResult& res) {
  json out;
  out["name"] = spec.name;
  out["dimension"] = spec.dimension;
  out["d"] = rat_to_string(res.d);
  out["o"] = res.o;
  out["g"] = scalar_value(res.profile.g);
  out["k"] = rat_to_string(res.profile.k);
  out["a0"] = scalar_value(res.a0);
  out["a0_source"] = source_name(res.a0Source);
  out["d0"] = res.d0;
  out["o_bar"] = res.profile.oBar();
  out["case"] = case_name(res.profile.caseFlag);
  out["low_confidence"] = res.profile.lowConfidence;
  out["sharpness_applies"] = res.profile.sharpnessApplies();

  out["diagonal_b"] = rat_array(res.support.b);
  out["vertices"] = point_array(res.poly.vertices());

  json faces = json::array();
  for (const auto& f : res.faces) {
    json fj;
    fj["dim"] = f.dim;
    fj["normal"] = rat_array(f.normal);
    fj["value"] = rat_to_string(f.value);
    fj["vertex_ids"] = f.vertex_ids;
    faces.push_back(std::move(fj));
  }
  out["faces"] = std::move(faces);

  json zeros;
  zeros["order"] = res.zeros.order;
  zeros["method"] = zero_method_name(res.zeros.method);
  zeros["low_confidence"] = res.zeros.lowConfidence;
  json perFace = json::array();
  for (const auto& fr : res.zeros.perFace) {
    json fj;
    fj["order"] = fr.order;
    fj["method"] = zero_method_name(fr.method);
    fj["zeros_found"] = fr.zerosFound;
    perFace.push_back(std::move(fj));
  }
  zeros["per_face"] = std::move(perFace);
  out["zero_order"] = std::move(zeros);

  json blocks;
  blocks["sizes"] = spec.blocks.sizes;
  blocks["alphas"] = rat_array(spec.blocks.alphas);
  out["blocks"] = std::move(blocks);

  json kernel;
  kernel["kind"] = spec.kernel.kind == KernelSpec::Kind::WeightOnly
                       ? "weight-only"
                       : "weight-times-bounded";
  kernel["radius"] = rat_to_string(spec.kernel.radius);
  kernel["floor"] = rat_to_string(spec.kernel.floor);
  out["kernel"] = std::move(kernel);

  if (res.fit) out["fit"] = fit_body(*res.fit);
  return dump(out);
}

std::string region_json(const AnalysisResult& res) {
  const RegionSet& rs = res.regions;
  json out;
  out["branch"] = case_name(rs.branch);
  out["k"] = rat_to_string(rs.k);
  out["sharpness_applies"] = rs.sharpnessApplies;
  out["embedding_note"] = rs.embeddingNote;

  json plane;
  plane["slope"] = scalar_value(rs.planeP.slope);
  plane["rhs"] = scalar_value(rs.planeP.rhs);
  out["plane"] = std::move(plane);

  json pieces = json::array();
  for (const auto& piece : rs.pieces) {
    json pj;
    pj["label"] = piece.label;
    json verts = json::array();
    for (const auto& v : piece.vertices) {
      verts.push_back(json::array(
          {scalar_value(v.x), scalar_value(v.y), scalar_value(v.z)}));
    }
    pj["vertices"] = std::move(verts);
    pieces.push_back(std::move(pj));
  }
  out["pieces"] = std::move(pieces);

  auto diag = [](const std::vector<std::array<Scalar, 2>>& pts) {
    json arr = json::array();
    for (const auto& p : pts)
      arr.push_back(json::array({scalar_value(p[0]), scalar_value(p[1])}));
    return arr;
  };
  out["diagonal_a"] = diag(rs.diagonalA);
  out["diagonal_b"] = diag(rs.diagonalB);
  return dump(out);
}

std::string slice_json(const AnalysisResult& res) {
  SliceResult slice = lq_slice(res.regions);
  json out;
  json poly = json::array();
  for (const auto& p : slice.polygon)
    poly.push_back(json::array({scalar_value(p[0]), scalar_value(p[1])}));
  out["polygon"] = std::move(poly);
  out["excluded_line_applies"] = slice.excludedLineApplies;
  if (slice.excludedLineApplies)
    out["excluded_offset"] = scalar_value(slice.excludedOffset);
  else
    out["excluded_offset"] = nullptr;
  return dump(out);
}

std::string sublevel_csv(const std::vector<GrowthPoint>& points) {
  std::string out = "eps,measure,stderr\n";
  for (const auto& p : points) {
    out += csv_num(p.eps);
    out += ',';
    out += csv_num(p.measure);
    out += ',';
    out += csv_num(p.stderror);
    out += '\n';
  }
  return out;
}

std::string growth_fit_json(const GrowthFit& fit,
                            const std::optional<Rat>& predicted) {
  json out = fit_body(fit);
  if (predicted) {
    out["predicted_a0"] = rat_to_string(*predicted);
    out["agrees_with_predicted"] = fit_agrees(fit, *predicted);
  } else {
    out["predicted_a0"] = nullptr;
    out["agrees_with_predicted"] = nullptr;
  }
  const char* verdict = "measured";
  if (!fit.stable) {
    verdict = "inconclusive";
  } else if (predicted) {
    verdict = fit_agrees(fit, *predicted) ? "consistent" : "mismatch";
  }
  out["verdict"] = verdict;
  return dump(out);
}

std::string sharpness_csv(const SharpnessReport& report) {
  std::string out = "r,ratio,windowLB\n";
  for (const auto& p : report.points) {
    out += csv_num(p.r);
    out += ',';
    out += csv_num(p.ratio);
    out += ',';
    out += csv_num(p.windowLB);
    out += '\n';
  }
  return out;
}

std::string sharpness_json(const SharpnessReport& report) {
  json out;
  out["b"] = report.b;
  out["used_n"] = report.usedN;
  out["predicted_exponent"] = rat_to_string(report.predictedExponent);
  out["predicted_value"] = report.predictedValue;
  out["observed_slope"] = report.observedSlope;
  out["fit_residual"] = report.fitResidual;
  out["verdict"] = verdict_name(report.verdict);
  out["note"] = report.note;
  json points = json::array();
  for (const auto& p : report.points) {
    json pj;
    pj["r"] = p.r;
    pj["ratio"] = p.ratio;
    pj["window_lb"] = p.windowLB;
    pj["measured_floor"] = p.measuredFloor;
    points.push_back(std::move(pj));
  }
  out["points"] = std::move(points);
  return dump(out);
}

namespace {

// Map a unit-square point into the 480x480 viewport (40px margin, y up).
struct SvgMap {
  double px(double x) const { return 40.0 + 400.0 * x; }
  double py(double y) const { return 440.0 - 400.0 * y; }
};

std::string svg_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

}  // namespace

std::string region_svg(const AnalysisResult& res) {
  const SvgMap m;
  SliceResult slice = lq_slice(res.regions);

  std::string out;
  out +=
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"480\" "
      "height=\"480\" viewBox=\"0 0 480 480\">\n";
  out += "<rect x=\"0\" y=\"0\" width=\"480\" height=\"480\" fill=\"#ffffff\"/>\n";

  // quarter gridlines
  for (int i = 1; i < 4; ++i) {
    const double t = i / 4.0;
    out += "<line x1=\"" + svg_num(m.px(t)) + "\" y1=\"" + svg_num(m.py(0)) +
           "\" x2=\"" + svg_num(m.px(t)) + "\" y2=\"" + svg_num(m.py(1)) +
           "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
    out += "<line x1=\"" + svg_num(m.px(0)) + "\" y1=\"" + svg_num(m.py(t)) +
           "\" x2=\"" + svg_num(m.px(1)) + "\" y2=\"" + svg_num(m.py(t)) +
           "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
  }

  // slice polygon (s = 0 cross-section)
  out += "<polygon points=\"";
  for (size_t i = 0; i < slice.polygon.size(); ++i) {
    if (i) out += ' ';
    out += svg_num(m.px(slice.polygon[i][0].approx));
    out += ',';
    out += svg_num(m.py(slice.polygon[i][1].approx));
  }
  out += "\" fill=\"#aecbe8\" fill-opacity=\"0.6\" stroke=\"#31557f\" "
         "stroke-width=\"2\"/>\n";

  // shadows of the 3d pieces onto (x, y), dashed outlines
  for (const auto& piece : res.regions.pieces) {
    if (piece.vertices.size() < 3) continue;
    out += "<polygon points=\"";
    for (size_t i = 0; i < piece.vertices.size(); ++i) {
      if (i) out += ' ';
      out += svg_num(m.px(piece.vertices[i].x.approx));
      out += ',';
      out += svg_num(m.py(piece.vertices[i].y.approx));
    }
    out += "\" fill=\"none\" stroke=\"#888888\" stroke-width=\"1\" "
           "stroke-dasharray=\"6,3\"/>\n";
  }

  // excluded line y = x - offset, clipped to the square
  if (slice.excludedLineApplies) {
    const double c = slice.excludedOffset.approx;
    if (c < 1.0) {
      out += "<line x1=\"" + svg_num(m.px(c)) + "\" y1=\"" + svg_num(m.py(0)) +
             "\" x2=\"" + svg_num(m.px(1)) + "\" y2=\"" +
             svg_num(m.py(1.0 - c)) +
             "\" stroke=\"#c03030\" stroke-width=\"2\" "
             "stroke-dasharray=\"4,4\"/>\n";
    }
  }

  // frame and diagonal
  out += "<rect x=\"" + svg_num(m.px(0)) + "\" y=\"" + svg_num(m.py(1)) +
         "\" width=\"400\" height=\"400\" fill=\"none\" stroke=\"#000000\" "
         "stroke-width=\"1.5\"/>\n";
  out += "<line x1=\"" + svg_num(m.px(0)) + "\" y1=\"" + svg_num(m.py(0)) +
         "\" x2=\"" + svg_num(m.px(1)) + "\" y2=\"" + svg_num(m.py(1)) +
         "\" stroke=\"#bbbbbb\" stroke-width=\"1\"/>\n";

  out += "<text x=\"440\" y=\"466\" font-family=\"sans-serif\" "
         "font-size=\"15\">1/p</text>\n";
  out += "<text x=\"10\" y=\"48\" font-family=\"sans-serif\" "
         "font-size=\"15\">1/q</text>\n";
  out += "<text x=\"44\" y=\"30\" font-family=\"sans-serif\" "
         "font-size=\"14\">branch: ";
  out += case_name(res.regions.branch);
  out += "</text>\n";
  out += "</svg>\n";
  return out;
}

}  // namespace polyrad
