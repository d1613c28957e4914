#include "nbihom/report_io.hpp"

#include <openssl/evp.h>

#include <iomanip>
#include <sstream>
#include <stdexcept>

#include "nbihom/document.hpp"

namespace nbihom {

using nlohmann::json;

Status overall_status(const Report& r) {
  if (r.any_failed()) return Status::Fail;
  if (r.any_hypothesis_not_met()) return Status::HypothesisNotMet;
  return Status::Pass;
}

json check_to_json(const CheckResult& c) {
  json j;
  j["name"] = c.name;
  j["status"] = to_string(c.status);
  j["instances"] = c.instances;
  j["failures"] = c.failures.size();
  if (!c.note.empty()) j["note"] = c.note;
  if (!c.failures.empty()) {
    json ws = json::array();
    for (const auto& w : c.failures) {
      json wj;
      wj["indices"] = w.indices;
      if (w.position) wj["position"] = *w.position;
      if (!w.lhs.empty()) wj["lhs"] = to_json(w.lhs);
      if (!w.rhs.empty()) wj["rhs"] = to_json(w.rhs);
      if (!w.detail.empty()) wj["detail"] = w.detail;
      ws.push_back(std::move(wj));
    }
    j["witnesses"] = std::move(ws);
  }
  return j;
}

json report_to_json(const Report& r) {
  json j;
  j["subject"] = r.subject;
  j["status"] = to_string(overall_status(r));
  json cs = json::array();
  for (const auto& c : r.checks) cs.push_back(check_to_json(c));
  j["checks"] = std::move(cs);
  return j;
}

namespace {

bool scalar(const json& j) { return !j.is_object() && !j.is_array(); }

std::string scalar_text(const json& j) { return j.is_string() ? j.get<std::string>() : j.dump(); }

bool flat_array(const json& j) {
  if (!j.is_array()) return false;
  for (const auto& e : j)
    if (!scalar(e)) return false;
  return true;
}

std::string inline_text(const json& j) {
  if (scalar(j)) return scalar_text(j);
  std::string s = "[";
  for (std::size_t i = 0; i < j.size(); ++i) s += (i ? ", " : "") + inline_text(j[i]);
  return s + "]";
}

// Arrays of flat arrays (vectors, matrices) stay on one line.
bool compact(const json& j) {
  if (scalar(j) || flat_array(j)) return true;
  if (!j.is_array()) return false;
  for (const auto& e : j)
    if (!flat_array(e)) return false;
  return true;
}

void render(const json& j, int indent, std::ostringstream& os) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) {
      if (compact(v)) {
        os << pad << k << ": " << inline_text(v) << "\n";
      } else {
        os << pad << k << ":\n";
        render(v, indent + 2, os);
      }
    }
  } else if (j.is_array()) {
    for (const auto& e : j) {
      if (compact(e)) {
        os << pad << "- " << inline_text(e) << "\n";
      } else {
        os << pad << "-\n";
        render(e, indent + 2, os);
      }
    }
  } else {
    os << pad << scalar_text(j) << "\n";
  }
}

}  // namespace

std::string render_text(const json& j) {
  std::ostringstream os;
  render(j, 0, os);
  return os.str();
}

std::string sha256_hex(const std::string& bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 digest failed");
  }
  std::ostringstream os;
  for (unsigned int i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
  return os.str();
}

}  // namespace nbihom
