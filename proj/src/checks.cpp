#include "paracontact/checks.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <stdexcept>

namespace paracontact {

std::string_view to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::Vacuous: return "vacuous";
    case CheckStatus::NotApplicable: return "not-applicable";
    case CheckStatus::PrintedFormMismatch: return "printed-form-mismatch";
  }
  return "fail";
}

CheckRecord make_record(std::string id, std::string anchor, double residual, double tolerance,
                        std::string note) {
  const bool ok = std::isfinite(residual) && residual <= tolerance;
  return {std::move(id), std::move(anchor), residual, tolerance,
          ok ? CheckStatus::Pass : CheckStatus::Fail, std::move(note)};
}

CheckRecord make_printed_record(std::string id, std::string anchor, double residual,
                                double tolerance, std::string note) {
  const bool ok = std::isfinite(residual) && residual <= tolerance;
  return {std::move(id), std::move(anchor), residual, tolerance,
          ok ? CheckStatus::Pass : CheckStatus::PrintedFormMismatch, std::move(note)};
}

CheckRecord make_status_record(std::string id, std::string anchor, CheckStatus status,
                               std::string note) {
  return {std::move(id), std::move(anchor), 0.0, 0.0, status, std::move(note)};
}

bool StructureCheckResult::passed() const {
  return std::none_of(records.begin(), records.end(),
                      [](const CheckRecord& r) { return r.status == CheckStatus::Fail; });
}

const CheckRecord* StructureCheckResult::find(std::string_view id) const {
  for (const auto& r : records) {
    if (r.id == id) return &r;
  }
  return nullptr;
}

const CheckRecord& StructureCheckResult::at(std::string_view id) const {
  if (const auto* r = find(id)) return *r;
  throw std::out_of_range("no check record '" + std::string(id) + "'");
}

void StructureCheckResult::append(const StructureCheckResult& other) {
  records.insert(records.end(), other.records.begin(), other.records.end());
}

std::mt19937_64 make_rng(std::uint64_t seed, std::string_view stream, std::uint64_t counter) {
  // FNV-1a of the stream name keeps derivation independent of call order.
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : stream) {
    h ^= c;
    h *= 1099511628211ull;
  }
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(h), static_cast<std::uint32_t>(h >> 32),
                    static_cast<std::uint32_t>(counter),
                    static_cast<std::uint32_t>(counter >> 32)};
  return std::mt19937_64(seq);
}

std::vector<double> random_vector(std::mt19937_64& rng, int dim) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> v(dim);
  for (;;) {
    double norm2 = 0.0;
    for (double& x : v) {
      x = u(rng);
      norm2 += x * x;
    }
    if (norm2 >= 1e-6) return v;
  }
}

double normalized(double gap, double scale) { return std::abs(gap) / (1.0 + std::abs(scale)); }

double max_abs(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) v = 0.0;  // drop the sign of negative zero
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace paracontact
