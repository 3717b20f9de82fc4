#include "mwfapf/output.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace mwfapf {

std::string format_number(double v) {
  if (v == 0.0) v = 0.0;  // folds -0 into 0
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v,
                                 std::chars_format::fixed, 6);
  std::string s(buf.data(), res.ptr);
  if (s == "-0.000000") s = "0.000000";
  return s;
}

void write_csv(std::ostream& os, const std::vector<StepRecord>& records) {
  os << kCsvHeader << '\n';
  for (const StepRecord& r : records) {
    os << r.tick << ',' << format_number(r.t) << ',' << format_number(r.position.x()) << ','
       << format_number(r.position.y()) << ',' << format_number(r.velocity.x()) << ','
       << format_number(r.velocity.y()) << ',' << to_string(r.mode) << ','
       << format_number(r.force.x()) << ',' << format_number(r.force.y()) << ','
       << format_number(r.min_reading) << ',' << (r.keyframe ? 1 : 0) << ',' << r.event << '\n';
  }
}

void write_csv(const std::string& path, const std::vector<StepRecord>& records) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  write_csv(out, records);
  if (!out) throw std::runtime_error("failed writing " + path);
}

RunSummary summarize(const World& world, const RunResult& run, std::string policy,
                     double radius) {
  int wfm_ticks = 0;
  int moving_ticks = 0;
  for (const StepRecord& r : run.records) {
    if (r.event == to_string(run.outcome.kind)) continue;
    ++moving_ticks;
    if (r.mode == Mode::WFM) ++wfm_ticks;
  }
  return RunSummary{std::move(policy),
                    run.outcome.kind,
                    run.outcome.final_tick,
                    run.outcome.path_length,
                    run.switches,
                    moving_ticks > 0 ? static_cast<double>(wfm_ticks) / moving_ticks : 0.0,
                    clearance(world, run.records, radius)};
}

void write_comparison_csv(std::ostream& os, const std::vector<RunSummary>& rows) {
  os << "policy,outcome,ticks,path_length,switches,wall_follow_fraction,min_clearance\n";
  for (const RunSummary& r : rows) {
    os << r.policy << ',' << to_string(r.outcome) << ',' << r.ticks << ','
       << format_number(r.path_length) << ',' << r.switches << ','
       << format_number(r.wall_follow_fraction) << ',' << format_number(r.min_clearance) << '\n';
  }
}

namespace {

constexpr double kPxPerMeter = 80.0;
constexpr double kMargin = 20.0;
constexpr std::array<const char*, 4> kPalette = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd"};

struct Frame {
  Bounds b;
  double x(double wx) const { return kMargin + (wx - b.min.x()) * kPxPerMeter; }
  double y(double wy) const { return kMargin + (b.max.y() - wy) * kPxPerMeter; }
  std::string pt(const Point2& p) const {
    return format_number(x(p.x())) + "," + format_number(y(p.y()));
  }
};

}  // namespace

std::string render_svg(const World& world, const std::vector<SvgPath>& paths) {
  const Frame f{world.bounds()};
  const double width = 2 * kMargin + (f.b.max.x() - f.b.min.x()) * kPxPerMeter;
  const double height = 2 * kMargin + (f.b.max.y() - f.b.min.y()) * kPxPerMeter;

  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << format_number(width)
     << "\" height=\"" << format_number(height) << "\" viewBox=\"0 0 " << format_number(width)
     << " " << format_number(height) << "\">\n";
  os << "  <rect x=\"" << format_number(f.x(f.b.min.x())) << "\" y=\""
     << format_number(f.y(f.b.max.y())) << "\" width=\""
     << format_number((f.b.max.x() - f.b.min.x()) * kPxPerMeter) << "\" height=\""
     << format_number((f.b.max.y() - f.b.min.y()) * kPxPerMeter)
     << "\" fill=\"white\" stroke=\"black\" stroke-width=\"2\"/>\n";

  for (const Polygon& poly : world.obstacles()) {
    os << "  <polygon points=\"";
    for (std::size_t i = 0; i < poly.size(); ++i) os << (i ? " " : "") << f.pt(poly[i]);
    os << "\" fill=\"#808080\" stroke=\"#404040\"/>\n";
  }

  for (std::size_t k = 0; k < paths.size(); ++k) {
    const SvgPath& path = paths[k];
    const char* color = kPalette[k % kPalette.size()];
    const auto& recs = *path.records;
    os << "  <g class=\"path\" data-label=\"" << path.label << "\">\n";
    std::size_t i = 0;
    while (i + 1 < recs.size()) {
      const Mode mode = recs[i].mode;
      std::size_t j = i;
      while (j + 1 < recs.size() && recs[j].mode == mode) ++j;
      os << "    <polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\""
         << (mode == Mode::WFM ? " stroke-dasharray=\"6,4\"" : "") << " points=\"";
      for (std::size_t m = i; m <= j; ++m) os << (m > i ? " " : "") << f.pt(recs[m].position);
      os << "\"/>\n";
      i = j;
    }
    if (path.memory) {
      for (const KeyFrame& kf : path.memory->frames()) {
        const double cx = f.x(kf.p.x());
        const double cy = f.y(kf.p.y());
        if (kf.is_local_min) {
          os << "    <path d=\"M" << format_number(cx - 5) << "," << format_number(cy - 5) << " L"
             << format_number(cx + 5) << "," << format_number(cy + 5) << " M"
             << format_number(cx - 5) << "," << format_number(cy + 5) << " L"
             << format_number(cx + 5) << "," << format_number(cy - 5)
             << "\" stroke=\"black\" stroke-width=\"2\"/>\n";
        } else {
          os << "    <circle cx=\"" << format_number(cx) << "\" cy=\"" << format_number(cy)
             << "\" r=\"2\" fill=\"" << color << "\"/>\n";
        }
      }
    }
    os << "  </g>\n";
    if (paths.size() > 1) {
      os << "  <text x=\"" << format_number(kMargin + 10) << "\" y=\""
         << format_number(kMargin + 18 * (k + 1)) << "\" fill=\"" << color
         << "\" font-family=\"sans-serif\" font-size=\"14\">" << path.label << "</text>\n";
    }
  }

  os << "  <circle cx=\"" << format_number(f.x(world.start().x())) << "\" cy=\""
     << format_number(f.y(world.start().y())) << "\" r=\"6\" fill=\"#2ca02c\"/>\n";
  os << "  <circle cx=\"" << format_number(f.x(world.goal().x())) << "\" cy=\""
     << format_number(f.y(world.goal().y())) << "\" r=\"6\" fill=\"#d62728\"/>\n";
  os << "</svg>\n";
  return os.str();
}

void render_svg(const World& world, const std::vector<StepRecord>& records,
                const TrajectoryMemory& memory, const std::string& out_path) {
  if (records.empty()) throw std::invalid_argument("render_svg: no records");
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + out_path);
  out << render_svg(world, {SvgPath{"run", &records, &memory}});
  if (!out) throw std::runtime_error("failed writing " + out_path);
}

}  // namespace mwfapf
