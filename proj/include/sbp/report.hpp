#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace sbp {

/// Outcome of one family of checks (e.g. one inequality over a parameter grid).
struct CheckFamily {
  std::size_t checked = 0;
  std::size_t failed = 0;
  /// Witnesses for the first few failures.
  std::vector<std::string> witnesses;
  bool skipped = false;
  std::string note;

  bool passed() const { return failed == 0; }
};

/// Pass/fail summary of a verification routine, grouped by check family.
class VerificationReport {
 public:
  explicit VerificationReport(std::string name) : name_(std::move(name)) {}

  /// Records one check; `witness` is only evaluated when the check fails.
  void record(const std::string& family, bool ok, const std::function<std::string()>& witness);
  void record(const std::string& family, bool ok, const std::string& witness) {
    record(family, ok, [&] { return witness; });
  }
  /// Marks a family as not applicable (e.g. outside a hypothesis range).
  void skip(const std::string& family, std::string reason);
  void note(const std::string& family, std::string text);
  void merge(const VerificationReport& other);

  const std::string& name() const { return name_; }
  const std::map<std::string, CheckFamily>& families() const { return families_; }
  const CheckFamily& family(const std::string& name) const;
  bool has_family(const std::string& name) const { return families_.count(name) != 0; }
  bool passed() const;
  std::size_t total_checked() const;
  std::string summary() const;

  static constexpr std::size_t kMaxWitnesses = 8;

 private:
  std::string name_;
  std::map<std::string, CheckFamily> families_;
};

}  // namespace sbp
