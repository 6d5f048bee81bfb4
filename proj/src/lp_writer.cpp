#include <fmt/format.h>

#include "mrtamp/mip.hpp"

namespace mrtamp {

namespace {

std::string linear_expr(const MipModel& model, const std::vector<std::pair<int, int>>& terms) {
  if (terms.empty()) return model.num_vars() > 0 ? "0 " + model.var_name(0) : "0";
  std::string out;
  for (size_t i = 0; i < terms.size(); ++i) {
    const auto [v, c] = terms[i];
    const char* sign = c < 0 ? "-" : "+";
    if (i == 0) {
      out += c < 0 ? "- " : "";
    } else {
      out += fmt::format(" {} ", sign);
    }
    const int mag = c < 0 ? -c : c;
    if (mag != 1) out += fmt::format("{} ", mag);
    out += model.var_name(v);
  }
  return out;
}

}  // namespace

std::string write_lp(const MipModel& model) {
  std::string out = fmt::format("\\ task graph model, horizon {}\n", model.T);
  out += "Minimize\n";
  out += " moved: " + linear_expr(model, model.objective) + "\n";
  out += "Subject To\n";
  for (size_t i = 0; i < model.constraints.size(); ++i) {
    const auto& c = model.constraints[i];
    const char* op = c.sense == Sense::kLe ? "<=" : c.sense == Sense::kGe ? ">=" : "=";
    out += fmt::format(" {}_{}: {} {} {}\n", c.family, i, linear_expr(model, c.terms), op, c.rhs);
  }
  out += "Binary\n";
  for (int v = 0; v < model.num_vars(); ++v) out += " " + model.var_name(v) + "\n";
  out += "End\n";
  return out;
}

}  // namespace mrtamp
