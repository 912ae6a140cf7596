// Check records, tolerance policy and seeded randomness shared by every
// verification module.
#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace paracontact {

enum class CheckStatus { Pass, Fail, Vacuous, NotApplicable, PrintedFormMismatch };

std::string_view to_string(CheckStatus s);

struct CheckRecord {
  std::string id;
  std::string anchor;  // where the checked statement lives, e.g. "scalar curvature ODE: b xi r - 2cr"
  double residual = 0.0;
  double tolerance = 0.0;
  CheckStatus status = CheckStatus::Pass;
  std::string note;
};

/// Pass/fail from residual <= tolerance.
CheckRecord make_record(std::string id, std::string anchor, double residual, double tolerance,
                        std::string note = {});
/// Informational comparison against a printed formula: Pass when it holds,
/// PrintedFormMismatch otherwise. Never Fail.
CheckRecord make_printed_record(std::string id, std::string anchor, double residual,
                                double tolerance, std::string note = {});
CheckRecord make_status_record(std::string id, std::string anchor, CheckStatus status,
                               std::string note);

struct StructureCheckResult {
  std::vector<CheckRecord> records;

  /// True when no record has status Fail.
  bool passed() const;
  const CheckRecord& at(std::string_view id) const;
  const CheckRecord* find(std::string_view id) const;
  void append(const StructureCheckResult& other);
  void add(CheckRecord r) { records.push_back(std::move(r)); }
};

/// Default tolerances by how many metric derivatives an identity involves.
struct Tolerances {
  double algebraic = 1e-9;
  double first = 1e-8;
  double second = 1e-7;
  double third = 1e-6;

  Tolerances scaled(double factor) const {
    return {algebraic * factor, first * factor, second * factor, third * factor};
  }
};

struct CheckOptions {
  Tolerances tol;
  int vectors = 20;  // random vector tuples per point
  std::uint64_t seed = 42;
};

/// Counter-mode stream derivation: every (seed, stream, counter) triple gets
/// an independent, reproducible generator.
std::mt19937_64 make_rng(std::uint64_t seed, std::string_view stream, std::uint64_t counter = 0);

/// Components uniform in [-1, 1], rejected while the Euclidean norm < 1e-3.
std::vector<double> random_vector(std::mt19937_64& rng, int dim);

/// max|gap| / (1 + scale): scale-stable residual.
double normalized(double gap, double scale);
double max_abs(std::span<const double> v);

/// Shortest round-trip decimal form.
std::string format_number(double v);

}  // namespace paracontact
