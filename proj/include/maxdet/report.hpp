#ifndef MAXDET_REPORT_HPP
#define MAXDET_REPORT_HPP

#include "maxdet/bounds.hpp"
#include "maxdet/construction.hpp"
#include "maxdet/exactmath.hpp"

#include <json.hpp>

#include <cstdio>
#include <string>

namespace maxdet {

inline constexpr int kJsonSchema = 1;

inline std::string fixed(double v, int decimals)
{
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

inline std::string sci(double v, int digits)
{
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*e", digits, v);
  return buf;
}

inline std::string pad_left(const std::string& s, std::size_t w) { return s.size() >= w ? s : std::string(w - s.size(), ' ') + s; }
inline std::string pad_right(const std::string& s, std::size_t w) { return s.size() >= w ? s : s + std::string(w - s.size(), ' '); }

inline std::string render_moments_text(const MomentStats& m, bool exact)
{
  std::string out = "h = " + std::to_string(m.h) + "\n";
  out += "mu      = " + fixed(m.mu_f, 5) + "\n";
  out += "sigma^2 = " + fixed(m.sigma2_f, 8) + "\n";
  out += "tau     = " + fixed(m.tau_f, 8) + "\n";
  if (exact) {
    out += "mu (exact)      = " + m.mu.get_str() + "\n";
    out += "sigma^2 (exact) = " + m.sigma2.get_str() + "\n";
  }
  return out;
}

inline nlohmann::json moments_json(const MomentStats& m)
{
  return {{"schema", kJsonSchema},
          {"h", m.h},
          {"mu", m.mu_f},
          {"sigma2", m.sigma2_f},
          {"tau", m.tau_f},
          {"mu_num", m.mu.get_num().get_str()},
          {"mu_den", m.mu.get_den().get_str()},
          {"sigma2_num", m.sigma2.get_num().get_str()},
          {"sigma2_den", m.sigma2.get_den().get_str()}};
}

/// Aligned text: one block per d with ratio, lambda, t and the D-bar bound.
/// Ratio and t use `precision` decimals, lambda one more; dashes mark
/// inapplicable methods.
inline std::string render_table_text(const BoundTable& table, int precision = 4)
{
  const std::string dash = "---";
  std::string out = "h = " + std::to_string(table.stats.h) + "   mu = " + fixed(table.stats.mu_f, 5) +
                    "   sigma^2 = " + fixed(table.stats.sigma2_f, 8) + "\n";
  for (const BoundColumn& col : table.columns) {
    out += "\nd = " + std::to_string(col.d) + ", n = " + std::to_string(col.n) +
           "   mu^d h^(h/2) / n^(n/2) = " + fixed(col.proportionality, 5) + "\n";
    out += pad_right("method", 26) + pad_left("ratio", 10) + pad_left("lambda", 10) + pad_left("t", 9) + pad_left("dbar", 13) + "\n";
    for (const BoundReport& r : col.rows) {
      std::string line = pad_right(std::string(method_id(r.method)), 26);
      if (r.applicable) {
        line += pad_left(fixed(r.ratio_bound, precision), 10);
        line += pad_left(r.lambda ? fixed(*r.lambda, precision + 1) : dash, 10);
        line += pad_left(r.t ? fixed(*r.t, precision) : dash, 9);
        line += pad_left(sci(r.dbar_bound, 4), 13);
      } else {
        line += pad_left(dash, 10) + pad_left(dash, 10) + pad_left(dash, 9) + pad_left(dash, 13);
      }
      out += line + "\n";
    }
  }
  return out;
}

inline nlohmann::json report_json(const BoundReport& r)
{
  nlohmann::json j;
  j["applicable"] = r.applicable;
  j["ratio"] = std::isfinite(r.ratio_bound) ? nlohmann::json(r.ratio_bound) : nlohmann::json(nullptr);
  j["lambda"] = r.lambda ? nlohmann::json(*r.lambda) : nlohmann::json(nullptr);
  j["t"] = r.t ? nlohmann::json(*r.t) : nlohmann::json(nullptr);
  j["dbar"] = r.applicable ? nlohmann::json(r.dbar_bound) : nlohmann::json(nullptr);
  if (!r.notes.empty()) j["notes"] = r.notes;
  return j;
}

inline nlohmann::json table_json(const BoundTable& table)
{
  nlohmann::json cols = nlohmann::json::array();
  for (const BoundColumn& col : table.columns) {
    nlohmann::json methods = nlohmann::json::object();
    for (const BoundReport& r : col.rows) methods[std::string(method_id(r.method))] = report_json(r);
    cols.push_back({{"d", col.d}, {"n", col.n}, {"proportionality", col.proportionality}, {"methods", methods}});
  }
  return {{"schema", kJsonSchema},
          {"h", table.stats.h},
          {"mu", table.stats.mu_f},
          {"sigma2", table.stats.sigma2_f},
          {"columns", cols}};
}

inline nlohmann::json outcome_json(const ConstructionOutcome& o, long trials)
{
  nlohmann::json j = {{"schema", kJsonSchema},
                      {"n", o.n},
                      {"h", o.h},
                      {"d", o.d},
                      {"seed", o.seed},
                      {"detG_num", o.detG.get_num().get_str()},
                      {"detG_den", o.detG.get_den().get_str()},
                      {"det_complement_num", o.det_complement.get_num().get_str()},
                      {"det_complement_den", o.det_complement.get_den().get_str()},
                      {"log_det_full", o.log_det_full},
                      {"dbar", o.dbar},
                      {"ratio_to_mu_d", o.ratio_to_mu_d},
                      {"trials", trials}};
  return j;
}

}  // namespace maxdet

#endif  // MAXDET_REPORT_HPP
