#pragma once

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "circumfeas/crm.hpp"
#include "circumfeas/scenario.hpp"
#include "circumfeas/sphere.hpp"

namespace circumfeas {
namespace svg {

// Fixed-precision formatting keeps the output byte-stable for identical
// inputs; no timestamps or ids anywhere in the file.
inline std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

constexpr double kCanvas = 640.0;
constexpr double kMargin = 46.0;

struct Frame {
  double xmin, xmax, ymin, ymax;

  double sx(double x) const {
    return kMargin + (x - xmin) / (xmax - xmin) * (kCanvas - 2 * kMargin);
  }
  double sy(double y) const {  // svg y grows downward
    return kCanvas - kMargin - (y - ymin) / (ymax - ymin) * (kCanvas - 2 * kMargin);
  }
};

inline Frame fit_frame(const std::vector<Vec>& pts) {
  Frame f{-1.0, 1.0, -1.0, 1.0};
  bool first = true;
  for (const Vec& p : pts) {
    if (first) { f.xmin = f.xmax = p[0]; f.ymin = f.ymax = p[1]; first = false; }
    f.xmin = std::min(f.xmin, p[0]); f.xmax = std::max(f.xmax, p[0]);
    f.ymin = std::min(f.ymin, p[1]); f.ymax = std::max(f.ymax, p[1]);
  }
  double spanx = f.xmax - f.xmin, spany = f.ymax - f.ymin;
  double span = std::max({spanx, spany, 2.0});
  double cx = 0.5 * (f.xmin + f.xmax), cy = 0.5 * (f.ymin + f.ymax);
  double half = 0.5 * span * 1.3;
  return Frame{cx - half, cx + half, cy - half, cy + half};
}

// polygon clip against a*p <= b (Sutherland-Hodgman, one edge)
inline std::vector<Vec> clip_halfplane(const std::vector<Vec>& poly, const Vec& a, double b) {
  std::vector<Vec> out;
  size_t n = poly.size();
  for (size_t i = 0; i < n; ++i) {
    const Vec& p = poly[i];
    const Vec& q = poly[(i + 1) % n];
    double dp = dot(a, p) - b, dq = dot(a, q) - b;
    bool inp = dp <= 0, inq = dq <= 0;
    if (inp) out.push_back(p);
    if (inp != inq) {
      double t = dp / (dp - dq);
      out.push_back(Vec{p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])});
    }
  }
  return out;
}

// Planar footprint of a set inside the frame rectangle, as a polygon.
// Sector cones become two homogeneous half-planes first.
inline std::vector<Vec> planar_region(const ConvexSet& set, const Frame& f) {
  std::vector<Vec> poly{{f.xmin, f.ymin}, {f.xmax, f.ymin}, {f.xmax, f.ymax}, {f.xmin, f.ymax}};
  auto clip_hs = [&](const Vec& a, double b) { poly = clip_halfplane(poly, a, b); };
  if (const auto* h = std::get_if<HalfSpace>(&set)) {
    clip_hs(h->a, h->b);
  } else if (const auto* p = std::get_if<Polyhedron>(&set)) {
    for (const HalfSpace& h : p->halfspaces) clip_hs(h.a, h.b);
  } else if (const auto* c = std::get_if<ConeV>(&set)) {
    // each extreme ray contributes the half-plane on the other ray's side
    for (size_t i = 0; i < c->generators.size() && poly.size() >= 3; ++i) {
      const Vec& g = c->generators[i];
      Vec n{-g[1], g[0]};
      bool all_le = true, all_ge = true;
      for (const Vec& o : c->generators) {
        double s = dot(n, o);
        all_le = all_le && s <= 1e-12;
        all_ge = all_ge && s >= -1e-12;
      }
      if (all_le) clip_hs(n, 0.0);            // cone on the n <= 0 side
      else if (all_ge) clip_hs(scale(-1.0, n), 0.0);
      // rays interior to the cone support no edge and clip nothing
    }
  }
  return poly;
}

inline void emit_polygon(std::ostringstream& o, const Frame& f, const std::vector<Vec>& poly,
                         const char* fill, const char* stroke) {
  if (poly.size() < 3) return;
  o << "<polygon points=\"";
  for (size_t i = 0; i < poly.size(); ++i) {
    if (i) o << ' ';
    o << num(f.sx(poly[i][0])) << ',' << num(f.sy(poly[i][1]));
  }
  o << "\" fill=\"" << fill << "\" stroke=\"" << stroke << "\" stroke-width=\"1.4\"/>\n";
}

inline std::vector<Vec> trace_polyline(const IterationTrace& t) {
  std::vector<Vec> pts;
  for (const CrmStep& s : t.steps) pts.push_back(s.x);
  if (!t.final_point.empty()) pts.push_back(t.final_point);
  return pts;
}

// Trajectory of a planar run over the two filled sets.
inline std::string render_plane(const Scenario& scen, const IterationTrace& t,
                                const std::string& method) {
  std::vector<Vec> pts = trace_polyline(t);
  std::vector<Vec> frame_pts = pts;
  frame_pts.push_back(Vec{0.0, 0.0});
  Frame f = fit_frame(frame_pts);
  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << (int)kCanvas << "\" height=\""
    << (int)kCanvas << "\" viewBox=\"0 0 " << (int)kCanvas << ' ' << (int)kCanvas << "\">\n";
  o << "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";
  emit_polygon(o, f, planar_region(scen.set_a, f), "rgba(31,119,180,0.16)", "#1f77b4");
  emit_polygon(o, f, planar_region(scen.set_b, f), "rgba(255,127,14,0.16)", "#ff7f0e");
  if (pts.size() >= 2) {
    o << "<polyline fill=\"none\" stroke=\"#2ca02c\" stroke-width=\"1.6\" points=\"";
    for (size_t i = 0; i < pts.size(); ++i) {
      if (i) o << ' ';
      o << num(f.sx(pts[i][0])) << ',' << num(f.sy(pts[i][1]));
    }
    o << "\"/>\n";
  }
  for (size_t i = 0; i < pts.size(); ++i) {
    o << "<circle cx=\"" << num(f.sx(pts[i][0])) << "\" cy=\"" << num(f.sy(pts[i][1]))
      << "\" r=\"" << (i + 1 == pts.size() ? "4.5" : "3") << "\" fill=\""
      << (i == 0 ? "#d62728" : (i + 1 == pts.size() ? "#2ca02c" : "#555555")) << "\"/>\n";
  }
  o << "<text x=\"12\" y=\"20\" font-family=\"monospace\" font-size=\"13\">" << scen.name
    << " / " << method << " / " << terminated_name(t.terminated) << " in " << t.iterations_used
    << " iter</text>\n";
  o << "<text x=\"12\" y=\"38\" font-family=\"monospace\" font-size=\"11\" fill=\"#1f77b4\">"
       "set A</text>\n";
  o << "<text x=\"60\" y=\"38\" font-family=\"monospace\" font-size=\"11\" fill=\"#ff7f0e\">"
       "set B</text>\n";
  o << "</svg>\n";
  return o.str();
}

// Orthographic look along +y: a sphere point (x,y,z) lands at (x,z); the far
// hemisphere (y < 0) is drawn dashed or hollow.
inline void emit_arc(std::ostringstream& o, const Frame& f, const GreatArc& arc,
                     const char* color) {
  constexpr int kSegs = 64;
  double ang = geodesic_distance(arc.u, arc.v);
  Vec axis = arc.plane_normal;
  // rotate u toward v inside the arc plane
  Vec e1 = arc.u;
  Vec e2 = cross(axis, e1);
  double proj_v = dot(arc.v, e2);
  if (proj_v < 0) { e2 = scale(-1.0, e2); }
  auto pt = [&](double s) {
    Vec p = scale(std::cos(s * ang), e1);
    axpy(std::sin(s * ang), e2, p);
    return p;
  };
  for (int seg = 0; seg < kSegs; ++seg) {
    Vec a = pt(seg / double(kSegs)), b = pt((seg + 1) / double(kSegs));
    bool hidden = 0.5 * (a[1] + b[1]) < 0;
    o << "<line x1=\"" << num(f.sx(a[0])) << "\" y1=\"" << num(f.sy(a[2])) << "\" x2=\""
      << num(f.sx(b[0])) << "\" y2=\"" << num(f.sy(b[2])) << "\" stroke=\"" << color
      << "\" stroke-width=\"1.4\"" << (hidden ? " stroke-dasharray=\"2.5,3\" opacity=\"0.55\"" : "")
      << "/>\n";
  }
}

inline std::string render_sphere_orthographic(const Scenario& scen, const IterationTrace& t,
                                              const std::string& method) {
  Frame f{-1.45, 1.45, -1.45, 1.45};
  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << (int)kCanvas << "\" height=\""
    << (int)kCanvas << "\" viewBox=\"0 0 " << (int)kCanvas << ' ' << (int)kCanvas << "\">\n";
  o << "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";
  double r_px = (1.0 - f.xmin) / (f.xmax - f.xmin) * (kCanvas - 2 * kMargin) -
                (0.0 - f.xmin) / (f.xmax - f.xmin) * (kCanvas - 2 * kMargin);
  o << "<circle cx=\"" << num(f.sx(0)) << "\" cy=\"" << num(f.sy(0)) << "\" r=\"" << num(r_px)
    << "\" fill=\"none\" stroke=\"#bbbbbb\" stroke-width=\"1\"/>\n";
  const char* colors[2] = {"#1f77b4", "#ff7f0e"};
  const ConvexSet* sets[2] = {&scen.set_a, &scen.set_b};
  for (int i = 0; i < 2; ++i) {
    if (const auto* cone = std::get_if<ConeV>(sets[i])) {
      try {
        SphericalPolytope sp = build_spherical_polytope(*cone, scen.tol);
        for (const GreatArc& e : sp.edges) emit_arc(o, f, e, colors[i]);
      } catch (const Error&) {
        // improper cone: no spherical outline to draw
      }
    }
  }
  std::vector<Vec> pts;
  for (const Vec& raw : trace_polyline(t))
    if (norm(raw) > 1e-14) pts.push_back(normalized(raw));
  for (size_t i = 0; i + 1 < pts.size(); ++i) {
    bool hidden = 0.5 * (pts[i][1] + pts[i + 1][1]) < 0;
    o << "<line x1=\"" << num(f.sx(pts[i][0])) << "\" y1=\"" << num(f.sy(pts[i][2]))
      << "\" x2=\"" << num(f.sx(pts[i + 1][0])) << "\" y2=\"" << num(f.sy(pts[i + 1][2]))
      << "\" stroke=\"#2ca02c\" stroke-width=\"1.5\""
      << (hidden ? " stroke-dasharray=\"2.5,3\" opacity=\"0.55\"" : "") << "/>\n";
  }
  for (size_t i = 0; i < pts.size(); ++i) {
    bool hidden = pts[i][1] < 0;
    o << "<circle cx=\"" << num(f.sx(pts[i][0])) << "\" cy=\"" << num(f.sy(pts[i][2]))
      << "\" r=\"" << (i + 1 == pts.size() ? "4.5" : "3") << "\" fill=\""
      << (i == 0 ? "#d62728" : (i + 1 == pts.size() ? "#2ca02c" : "#555555")) << "\""
      << (hidden ? " fill-opacity=\"0.35\"" : "") << "/>\n";
  }
  o << "<text x=\"12\" y=\"20\" font-family=\"monospace\" font-size=\"13\">" << scen.name
    << " / " << method << " / view along +y, far side dashed</text>\n";
  o << "</svg>\n";
  return o.str();
}

}  // namespace svg
}  // namespace circumfeas
