#include "stablevar/config.hpp"

#include <stdexcept>

namespace stablevar {

std::string mode_name(InputMode mode) { return mode == InputMode::levels ? "levels" : "increments"; }

InputMode parse_mode(const std::string& name) {
  if (name == "levels") return InputMode::levels;
  if (name == "increments") return InputMode::increments;
  throw std::invalid_argument("unknown input mode '" + name + "'");
}

nlohmann::json to_json(const RunConfig& c) {
  nlohmann::json j{
      {"command", c.command},
      {"alpha", c.alpha},
      {"scale", c.scale},
      {"beta", c.beta},
      {"n", c.n},
      {"m", c.m},
      {"T", c.horizon},
      {"fine_multiplier", c.fine_multiplier},
      {"drift", c.drift},
      {"x0", c.x0},
      {"p", c.p},
      {"grid",
       {{"p_min", c.grid.p_min},
        {"p_max", c.grid.p_max},
        {"p_step", c.grid.p_step},
        {"c_min", c.grid.c_min},
        {"c_max", c.grid.c_max},
        {"c_step", c.grid.c_step}}},
      {"seed", c.seed},
      {"input", c.input},
      {"output", c.output},
      {"mode", mode_name(c.mode)},
      {"demean", c.demean},
      {"scenario", c.scenario},
      {"gnuplot", c.gnuplot},
  };
  j["slice_c"] = c.slice_c ? nlohmann::json(*c.slice_c) : nlohmann::json(nullptr);
  return j;
}

RunConfig config_from_json(const nlohmann::json& j) {
  RunConfig c;
  const auto get = [&](const char* key, auto& field) {
    if (j.contains(key)) j.at(key).get_to(field);
  };
  get("command", c.command);
  get("alpha", c.alpha);
  get("scale", c.scale);
  get("beta", c.beta);
  get("n", c.n);
  get("m", c.m);
  get("T", c.horizon);
  get("fine_multiplier", c.fine_multiplier);
  get("drift", c.drift);
  get("x0", c.x0);
  get("p", c.p);
  if (j.contains("grid")) {
    const auto& g = j.at("grid");
    const auto grid_get = [&](const char* key, double& field) {
      if (g.contains(key)) g.at(key).get_to(field);
    };
    grid_get("p_min", c.grid.p_min);
    grid_get("p_max", c.grid.p_max);
    grid_get("p_step", c.grid.p_step);
    grid_get("c_min", c.grid.c_min);
    grid_get("c_max", c.grid.c_max);
    grid_get("c_step", c.grid.c_step);
  }
  get("seed", c.seed);
  get("input", c.input);
  get("output", c.output);
  if (j.contains("mode")) c.mode = parse_mode(j.at("mode").get<std::string>());
  get("demean", c.demean);
  get("scenario", c.scenario);
  get("gnuplot", c.gnuplot);
  if (j.contains("slice_c") && !j.at("slice_c").is_null()) c.slice_c = j.at("slice_c").get<double>();
  return c;
}

}  // namespace stablevar
