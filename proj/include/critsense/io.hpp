#ifndef CRITSENSE_IO_HPP
#define CRITSENSE_IO_HPP

// JSON (de)serialization of model specs and results, locale-free CSV output.

#include "critsense/common.hpp"
#include "critsense/experiments.hpp"
#include "critsense/metrology.hpp"
#include "critsense/models.hpp"

#include <json.hpp>

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <string>
#include <vector>

namespace critsense {

using Json = nlohmann::ordered_json;

namespace detail {

template <class T>
T field(const Json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("field '") + key + "': " + e.what());
  }
}

}  // namespace detail

inline Json to_json(const ModelSpec& spec) {
  if (const auto* g = std::get_if<Grover>(&spec)) return {{"model", "grover"}, {"qubits", g->qubits}};
  if (const auto* m = std::get_if<PSpin>(&spec))
    return {{"model", "pspin"}, {"qubits", m->qubits}, {"p", m->p}, {"k", m->k}, {"lambda", m->lambda}};
  const auto& b = std::get<Biclique>(spec);
  return {{"model", "biclique"}, {"size_a", b.size_a},       {"size_b", b.size_b},
          {"coupling", b.coupling}, {"weight_a", b.weight_a}, {"weight_b", b.weight_b}};
}

/// Parses {"model": "grover" | "pspin" | "biclique", ...}; missing fields take defaults.
inline ModelSpec model_from_json(const Json& j) {
  detail::require(j.is_object(), "model spec must be a JSON object");
  detail::require(j.contains("model") && j.at("model").is_string(), "model spec needs a \"model\" name");
  const auto name = j.at("model").get<std::string>();
  ModelSpec spec;
  if (name == "grover") {
    spec = Grover{detail::field(j, "qubits", 1)};
  } else if (name == "pspin") {
    PSpin m;
    spec = PSpin{detail::field(j, "qubits", m.qubits), detail::field(j, "p", m.p), detail::field(j, "k", m.k),
                 detail::field(j, "lambda", m.lambda)};
  } else if (name == "biclique") {
    Biclique b;
    spec = Biclique{detail::field(j, "size_a", b.size_a), detail::field(j, "size_b", b.size_b),
                    detail::field(j, "coupling", b.coupling), detail::field(j, "weight_a", b.weight_a),
                    detail::field(j, "weight_b", b.weight_b)};
  } else {
    throw InvalidArgument("unknown model '" + name + "'");
  }
  validate(spec);
  return spec;
}

inline Json to_json(const FisherEstimate& f) {
  Json j{{"value", f.value}, {"method", to_string(f.method)}};
  j["delta"] = f.delta ? Json(*f.delta) : Json(nullptr);
  return j;
}

inline Json to_json(const ScalingResult& r) {
  Json pts = Json::array();
  for (const auto& p : r.points) pts.push_back({p.size, p.value});
  return {{"fit_kind", to_string(r.fit_kind)}, {"exponent", r.exponent}, {"prefactor", r.prefactor},
          {"r_squared", r.r_squared},         {"flagged", r.flagged()},  {"points", pts}};
}

inline Json to_json(const BetaTwoAlphaReport& r) {
  Json j{{"alpha", r.alpha}, {"beta", r.beta}, {"defined", r.defined}};
  j["relative_deviation"] = r.defined ? Json(r.relative_deviation) : Json(nullptr);
  j["within_tolerance"] = r.within_tolerance;
  j["figure_of_merit"] = r.figure_of_merit;
  return j;
}

/// Shortest round-trip text is not wanted here: always 17 significant digits.
inline std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x, std::chars_format::general, 17);
  return {buf.data(), res.ptr};
}

inline std::string format_number(long long x) {
  std::array<char, 32> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return {buf.data(), res.ptr};
}

class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> columns) : columns_(std::move(columns)) {
    detail::require(!columns_.empty(), "CSV needs at least one column");
  }

  class Row {
   public:
    Row& operator<<(double x) { return push(format_number(x)); }
    Row& operator<<(int x) { return push(format_number(static_cast<long long>(x))); }
    Row& operator<<(long long x) { return push(format_number(x)); }
    Row& operator<<(std::size_t x) { return push(format_number(static_cast<long long>(x))); }
    Row& operator<<(bool x) { return push(x ? "1" : "0"); }
    Row& operator<<(const std::string& x) { return push(x); }
    Row& operator<<(const char* x) { return push(x); }

   private:
    friend class CsvTable;
    explicit Row(std::vector<std::string>& cells) : cells_(cells) {}
    Row& push(std::string s) {
      cells_.push_back(std::move(s));
      return *this;
    }
    std::vector<std::string>& cells_;
  };

  Row row() {
    detail::require(rows_.empty() || rows_.back().size() == columns_.size(), "previous CSV row is incomplete");
    rows_.emplace_back();
    return Row(rows_.back());
  }

  const std::vector<std::string>& columns() const { return columns_; }
  std::size_t size() const { return rows_.size(); }
  const std::vector<std::string>& at(std::size_t i) const { return rows_.at(i); }

  std::string str() const {
    std::string out;
    auto line = [&](const std::vector<std::string>& cells) {
      detail::require(cells.size() == columns_.size(), "CSV row width differs from header");
      for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) out += ',';
        out += quote(cells[i]);
      }
      out += '\n';
    };
    line(columns_);
    for (const auto& r : rows_) line(r);
    return out;
  }

 private:
  static std::string quote(const std::string& cell) {
    if (cell.find_first_of(",\"\n") == std::string::npos) return cell;
    std::string q = "\"";
    for (char ch : cell) {
      if (ch == '"') q += '"';
      q += ch;
    }
    return q + '"';
  }

  std::vector<std::string> columns_;
  std::vector<std::vector<std::string>> rows_;
};

inline void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw Error("cannot open '" + path + "' for writing");
  f << text;
  if (!f) throw Error("write to '" + path + "' failed");
}

inline Json read_json_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw InvalidArgument("cannot read config '" + path + "'");
  try {
    return Json::parse(f);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument("config '" + path + "' is not valid JSON: " + e.what());
  }
}

}  // namespace critsense

#endif  // CRITSENSE_IO_HPP
