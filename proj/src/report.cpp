#include "paracontact/report.hpp"

#include <cmath>
#include <sstream>

#include "json.hpp"

namespace paracontact {

namespace {

using json = nlohmann::ordered_json;

json number(double v) {
  if (std::isfinite(v)) return v;
  return format_number(v);
}

}  // namespace

std::string report_json(const CheckReport& report) {
  json doc;
  doc["model"] = report.model;
  doc["suite"] = report.suite;
  doc["seed"] = report.seed;
  doc["points"] = report.points;
  doc["engine_version"] = report.engine_version;
  json checks = json::array();
  for (const auto& c : report.checks) {
    json rec;
    rec["id"] = c.id;
    rec["anchor"] = c.anchor;
    rec["residual"] = number(c.residual);
    rec["tolerance"] = number(c.tolerance);
    rec["status"] = std::string(to_string(c.status));
    rec["note"] = c.note;
    checks.push_back(std::move(rec));
  }
  doc["checks"] = std::move(checks);
  return doc.dump(2) + "\n";
}

std::string report_text(const CheckReport& report) {
  std::ostringstream out;
  out << "model " << report.model << "  suite " << report.suite << "  seed " << report.seed
      << "  points " << report.points << "  engine " << report.engine_version << "\n";
  std::size_t width = 0;
  for (const auto& c : report.checks) width = std::max(width, c.id.size());
  int failed = 0;
  for (const auto& c : report.checks) {
    if (c.status == CheckStatus::Fail) ++failed;
    const std::string status(to_string(c.status));
    out << status << std::string(22 - std::min<std::size_t>(status.size(), 21), ' ') << c.id
        << std::string(width - c.id.size() + 2, ' ') << format_number(c.residual)
        << " <= " << format_number(c.tolerance) << "  " << c.anchor;
    if (!c.note.empty()) out << "  [" << c.note << "]";
    out << "\n";
  }
  out << report.checks.size() << " checks, " << failed << " failed\n";
  return out.str();
}

}  // namespace paracontact
