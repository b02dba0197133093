#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace theta {

struct Check {
  std::string name;
  bool pass = true;
  std::string detail;
};

/// Ordered list of named pass/fail entries. Verification failures are entries, not exceptions.
class CheckReport {
 public:
  void add(std::string name, bool pass, std::string detail = {}) {
    checks_.push_back({std::move(name), pass, std::move(detail)});
  }
  void add(Check c) { checks_.push_back(std::move(c)); }
  void merge(const CheckReport& other) { checks_.insert(checks_.end(), other.checks_.begin(), other.checks_.end()); }

  bool passed() const {
    for (const auto& c : checks_)
      if (!c.pass) return false;
    return true;
  }
  const std::vector<Check>& checks() const { return checks_; }
  const Check* find(const std::string& name) const {
    for (const auto& c : checks_)
      if (c.name == name) return &c;
    return nullptr;
  }

 private:
  std::vector<Check> checks_;
};

/// Collects cases of one named property; keeps the first failing witness.
class CheckTally {
 public:
  explicit CheckTally(std::string name) : name_(std::move(name)) {}

  template <class WitnessFn>
  bool expect(bool ok, WitnessFn&& witness) {
    ++cases_;
    if (!ok) {
      if (failures_ == 0) first_witness_ = witness();
      ++failures_;
    }
    return ok;
  }
  bool expect(bool ok) {
    return expect(ok, [] { return std::string{}; });
  }

  const std::string& name() const { return name_; }
  std::size_t cases() const { return cases_; }
  std::size_t failures() const { return failures_; }

  Check finish() const {
    if (failures_ == 0) return {name_, true, std::to_string(cases_) + " cases"};
    return {name_, false,
            std::to_string(failures_) + " of " + std::to_string(cases_) + " cases failed; first witness: " +
                first_witness_};
  }

 private:
  std::string name_;
  std::size_t cases_ = 0;
  std::size_t failures_ = 0;
  std::string first_witness_;
};

inline CheckReport& operator<<(CheckReport& r, const CheckTally& t) {
  r.add(t.finish());
  return r;
}

}  // namespace theta
