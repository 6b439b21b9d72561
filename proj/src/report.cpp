#include "hyperval/report.hpp"

namespace hv {

const char* status_name(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Skipped: return "skipped";
  }
  return "?";
}

bool Report::passed() const {
  for (const auto& r : results)
    if (r.status == Status::Fail) return false;
  return true;
}

const AxiomResult* Report::find(const std::string& axiom) const {
  for (const auto& r : results)
    if (r.axiom == axiom) return &r;
  return nullptr;
}

bool Report::passed(const std::string& axiom) const {
  auto* r = find(axiom);
  return r && r->status != Status::Fail;
}

void Report::append(const Report& other) {
  results.insert(results.end(), other.results.begin(), other.results.end());
}

nlohmann::ordered_json Report::to_json() const {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& r : results) {
    nlohmann::ordered_json o;
    o["axiom"] = r.axiom;
    o["status"] = status_name(r.status);
    if (r.witness) o["witness"] = *r.witness;
    o["seed"] = r.seed;
    o["trials"] = r.trials;
    arr.push_back(o);
  }
  nlohmann::ordered_json out;
  out["subject"] = subject;
  out["results"] = arr;
  return out;
}

std::string Report::summary() const {
  std::string s = subject + ":";
  for (const auto& r : results) {
    s += " " + r.axiom + "=" + status_name(r.status);
    if (r.status == Status::Fail && r.witness) s += " [" + *r.witness + "]";
  }
  return s;
}

}  // namespace hv
