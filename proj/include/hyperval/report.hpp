#pragma once

#include <nlohmann/json.hpp>

#include <concepts>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace hv {

enum class Status { Pass, Fail, Skipped };

struct AxiomResult {
  std::string axiom;
  Status status = Status::Pass;
  std::optional<std::string> witness;
  std::uint64_t seed = 0;
  std::size_t trials = 0;
};

struct Report {
  std::string subject;
  std::vector<AxiomResult> results;

  bool passed() const;
  // Pass or skipped for the named axiom; false when absent.
  bool passed(const std::string& axiom) const;
  const AxiomResult* find(const std::string& axiom) const;
  void append(const Report& other);
  nlohmann::ordered_json to_json() const;
  std::string summary() const;
};

struct Scope {
  bool exhaustive = false;
  std::size_t samples = 200;
  std::uint64_t seed = 1;
  std::size_t probes = 6;

  static Scope all() { return {true, 0, 0, 0}; }
  static Scope sampled(std::size_t n, std::uint64_t seed) { return {false, n, seed, 6}; }
};

// Accumulates trials and the first counterexample for one axiom.
class AxiomTally {
 public:
  AxiomTally(std::string axiom, std::uint64_t seed) : r_{std::move(axiom), Status::Pass, std::nullopt, seed, 0} {}
  void trial() { ++r_.trials; }
  void check(bool ok, const std::string& witness) {
    ++r_.trials;
    if (!ok && r_.status != Status::Fail) {
      r_.status = Status::Fail;
      r_.witness = witness;
    }
  }
  template <std::invocable F>
  void check(bool ok, F&& witness) {
    ++r_.trials;
    if (!ok && r_.status != Status::Fail) {
      r_.status = Status::Fail;
      r_.witness = witness();
    }
  }
  bool failed() const { return r_.status == Status::Fail; }
  void skip(const std::string& why) {
    r_.status = Status::Skipped;
    r_.witness = why;
  }
  AxiomResult done() const { return r_; }

 private:
  AxiomResult r_;
};

const char* status_name(Status s);

}  // namespace hv
