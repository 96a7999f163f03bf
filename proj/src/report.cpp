#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

#include "romp/errors.hpp"
#include "romp/harness.hpp"
#include "romp/serialize.hpp"

namespace romp {

namespace {

std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string short_fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c == '\n' ? ' ' : c;
  }
  return out + "\"";
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

const char* kPalette[] = {"#d62728", "#1f77b4", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b",
                          "#17becf", "#7f7f7f"};

}  // namespace

std::string records_csv(const std::vector<TrialRecord>& records) {
  std::ostringstream out;
  out << "estimator,n1,n1_fraction,trial,seed,support_recovery,relative_l2_error,lambda,gamma,"
         "failed,message\n";
  for (const auto& r : records) {
    out << csv_escape(r.estimator) << ',' << r.n1 << ',' << fmt(r.n1_fraction) << ',' << r.trial
        << ',' << r.seed << ',' << fmt(r.support_recovery) << ',' << fmt(r.relative_l2_error)
        << ',' << fmt(r.lambda) << ',' << fmt(r.gamma) << ',' << (r.failed ? 1 : 0) << ','
        << csv_escape(r.message) << '\n';
  }
  return out.str();
}

std::string render_svg(const SweepReport& report, bool recovery_panel) {
  constexpr double W = 640, H = 420, L = 70, R = 150, T = 40, B = 60;
  const double pw = W - L - R, ph = H - T - B;

  std::vector<std::string> names;
  std::map<std::string, std::vector<const Aggregate*>> by_name;
  for (const auto& a : report.aggregates) {
    if (!by_name.count(a.estimator)) names.push_back(a.estimator);
    by_name[a.estimator].push_back(&a);
  }
  double xmin = 0, xmax = 0, ymin = 0, ymax = 1;
  bool first = true;
  for (const auto& a : report.aggregates) {
    if (first) xmin = xmax = a.n1_fraction;
    xmin = std::min(xmin, a.n1_fraction);
    xmax = std::max(xmax, a.n1_fraction);
    first = false;
    if (!recovery_panel && a.count > 0) ymax = std::max(ymax, a.error_mean + a.error_std);
  }
  if (recovery_panel) ymax = 1.05;
  if (xmax <= xmin) xmax = xmin + 1;
  auto sx = [&](double x) { return L + (x - xmin) / (xmax - xmin) * pw; };
  auto sy = [&](double y) { return T + ph - (y - ymin) / (ymax - ymin) * ph; };

  std::ostringstream s;
  const std::string title = recovery_panel ? "Support recovery" : "Relative l2 error";
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
    << "\" viewBox=\"0 0 " << W << ' ' << H << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  s << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  s << "<text x=\"" << L + pw / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">"
    << title << "</text>\n";
  s << "<g stroke=\"black\" fill=\"none\"><rect x=\"" << L << "\" y=\"" << T << "\" width=\""
    << pw << "\" height=\"" << ph << "\"/></g>\n";
  for (int i = 0; i <= 5; ++i) {
    const double yv = ymin + (ymax - ymin) * i / 5.0;
    s << "<text x=\"" << L - 6 << "\" y=\"" << sy(yv) + 4 << "\" text-anchor=\"end\">"
      << short_fmt(yv) << "</text>\n";
  }
  std::vector<double> xs;
  for (const auto& a : report.aggregates) xs.push_back(a.n1_fraction);
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  for (double xv : xs) {
    s << "<text x=\"" << sx(xv) << "\" y=\"" << T + ph + 18 << "\" text-anchor=\"middle\">"
      << short_fmt(xv) << "</text>\n";
  }
  s << "<text x=\"" << L + pw / 2 << "\" y=\"" << H - 16
    << "\" text-anchor=\"middle\">outlier fraction n1/n</text>\n";

  for (std::size_t e = 0; e < names.size(); ++e) {
    const char* color = kPalette[e % std::size(kPalette)];
    auto pts = by_name[names[e]];
    std::sort(pts.begin(), pts.end(),
              [](const Aggregate* a, const Aggregate* b) { return a->n1_fraction < b->n1_fraction; });
    s << "<g class=\"series\" data-estimator=\"" << xml_escape(names[e]) << "\" stroke=\""
      << color << "\" fill=\"" << color << "\">\n";
    s << "<polyline fill=\"none\" stroke-width=\"2\" points=\"";
    bool lead = true;
    for (const Aggregate* a : pts) {
      if (a->count == 0) continue;
      const double m = recovery_panel ? a->recovery_mean : a->error_mean;
      s << (lead ? "" : " ") << sx(a->n1_fraction) << ',' << sy(m);
      lead = false;
    }
    s << "\"/>\n";
    for (const Aggregate* a : pts) {
      if (a->count == 0) continue;
      const double m = recovery_panel ? a->recovery_mean : a->error_mean;
      const double sd = recovery_panel ? a->recovery_std : a->error_std;
      const double x = sx(a->n1_fraction);
      s << "<line x1=\"" << x << "\" y1=\"" << sy(m - sd) << "\" x2=\"" << x << "\" y2=\""
        << sy(m + sd) << "\"/>";
      s << "<circle cx=\"" << x << "\" cy=\"" << sy(m) << "\" r=\"3\"/>\n";
    }
    s << "</g>\n";
    const double ly = T + 10 + 20.0 * static_cast<double>(e);
    s << "<line x1=\"" << L + pw + 12 << "\" y1=\"" << ly << "\" x2=\"" << L + pw + 36
      << "\" y2=\"" << ly << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>";
    s << "<text x=\"" << L + pw + 42 << "\" y=\"" << ly + 4 << "\">" << xml_escape(names[e])
      << "</text>\n";
  }
  s << "</svg>\n";
  return s.str();
}

std::vector<std::filesystem::path> emit_report(const SweepReport& report,
                                               const std::filesystem::path& dir,
                                               const ReportFormats& formats) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error("cannot create " + dir.string() + ": " + ec.message());
  std::vector<std::filesystem::path> written;
  auto put = [&](const std::string& name, const std::string& text) {
    const auto path = dir / name;
    write_text_file(path, text);
    written.push_back(path);
  };
  if (formats.csv) put("records.csv", records_csv(report.records));
  if (formats.json) put("report.json", Json(report).dump(2) + "\n");
  if (formats.svg) {
    put("support_recovery.svg", render_svg(report, true));
    put("relative_l2_error.svg", render_svg(report, false));
  }
  std::ostringstream timing;
  timing << "estimator,n1,trial,wall_time_s\n";
  for (const auto& r : report.records) {
    timing << csv_escape(r.estimator) << ',' << r.n1 << ',' << r.trial << ','
           << fmt(r.wall_time_s) << '\n';
  }
  put("timings.csv", timing.str());
  return written;
}

}  // namespace romp
