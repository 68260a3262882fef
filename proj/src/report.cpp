#include "sbp/report.hpp"

#include <sstream>
#include <stdexcept>

namespace sbp {

void VerificationReport::record(const std::string& family, bool ok, const std::function<std::string()>& witness) {
  auto& f = families_[family];
  ++f.checked;
  if (ok) return;
  ++f.failed;
  if (f.witnesses.size() < kMaxWitnesses) f.witnesses.push_back(witness());
}

void VerificationReport::skip(const std::string& family, std::string reason) {
  auto& f = families_[family];
  f.skipped = true;
  f.note = std::move(reason);
}

void VerificationReport::note(const std::string& family, std::string text) { families_[family].note = std::move(text); }

void VerificationReport::merge(const VerificationReport& other) {
  for (const auto& [name, theirs] : other.families_) {
    auto& ours = families_[name];
    ours.checked += theirs.checked;
    ours.failed += theirs.failed;
    for (const auto& w : theirs.witnesses) {
      if (ours.witnesses.size() < kMaxWitnesses) ours.witnesses.push_back(w);
    }
    ours.skipped = ours.skipped || theirs.skipped;
    if (ours.note.empty()) ours.note = theirs.note;
  }
}

const CheckFamily& VerificationReport::family(const std::string& name) const {
  auto it = families_.find(name);
  if (it == families_.end()) throw std::out_of_range("no check family '" + name + "' in report " + name_);
  return it->second;
}

bool VerificationReport::passed() const {
  for (const auto& [_, f] : families_) {
    if (!f.passed()) return false;
  }
  return true;
}

std::size_t VerificationReport::total_checked() const {
  std::size_t n = 0;
  for (const auto& [_, f] : families_) n += f.checked;
  return n;
}

std::string VerificationReport::summary() const {
  std::ostringstream os;
  os << name_ << ": " << (passed() ? "PASS" : "FAIL");
  for (const auto& [name, f] : families_) {
    os << "\n  " << name << ": ";
    if (f.skipped) {
      os << "skipped (" << f.note << ")";
      continue;
    }
    if (f.checked == 0 && !f.note.empty()) {
      os << f.note;
      continue;
    }
    os << (f.checked - f.failed) << "/" << f.checked << " passed";
    if (!f.note.empty()) os << " (" << f.note << ")";
    for (const auto& w : f.witnesses) os << "\n    witness: " << w;
  }
  os << "\n";
  return os.str();
}

}  // namespace sbp
