#ifndef GRAYPASTE_ERROR_HPP
#define GRAYPASTE_ERROR_HPP

#include <stdexcept>
#include <string>
#include <utility>

#include <json.hpp>

namespace graypaste {

// Every engine failure carries a stable machine-readable kind plus a free-form
// message. The CLI serialises these as {"kind": ..., "message": ..., "detail": ...}.
class SchemeError : public std::runtime_error {
 public:
  SchemeError(std::string kind, const std::string& message,
              nlohmann::json detail = nlohmann::json::object())
      : std::runtime_error(message), kind_(std::move(kind)), detail_(std::move(detail)) {}

  const std::string& kind() const { return kind_; }
  const nlohmann::json& detail() const { return detail_; }

  nlohmann::json to_json() const {
    nlohmann::json j;
    j["kind"] = kind_;
    j["message"] = what();
    if (!detail_.empty()) j["detail"] = detail_;
    return j;
  }

 private:
  std::string kind_;
  nlohmann::json detail_;
};

// Violation of an internal invariant: not user input's fault.
inline SchemeError engine_bug(const std::string& message,
                              nlohmann::json detail = nlohmann::json::object()) {
  return SchemeError("engine-bug", message, std::move(detail));
}

}  // namespace graypaste

#endif
