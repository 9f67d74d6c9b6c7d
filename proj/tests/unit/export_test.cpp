#include <doctest.h>

#include <json.hpp>
#include <sstream>

#include <coopaloha/export.hpp>
#include <coopaloha/peak_search.hpp>

using namespace coopaloha;

namespace {

std::vector<std::string> data_lines(const std::string& csv) {
  std::vector<std::string> out;
  std::istringstream in(csv);
  for (std::string line; std::getline(in, line);)
    if (!line.empty() && line[0] != '#') out.push_back(line);
  return out;
}

}  // namespace

TEST_CASE("curve CSV layout and metadata") {
  const network_topology t(2, {{0b01, 100}, {0b10, 100}, {0b11, 100}});
  const std::vector<double> g{1.8, 1.8, 1.7};
  const analyzer an(t, analysis_mode::coop, {});
  const std::vector<std::uint64_t> grid{150, 170};
  const auto curve = compute_plr_curve(an, g, grid);
  const auto meta = make_metadata("analyze", "{}", 5);
  const auto csv = curve_csv(curve, meta);
  CHECK(csv.find("# config_hash=" + meta.config_hash) != std::string::npos);
  CHECK(csv.find("# seed=5") != std::string::npos);
  const auto lines = data_lines(csv);
  REQUIRE(lines.size() == 3);
  CHECK(lines[0] == "T,plr_avg,plr_g1,plr_g2,plr_g3,throughput");
  CHECK(lines[1].rfind("150,", 0) == 0);

  const auto js = nlohmann::json::parse(peak_json(curve, find_peak(an, g), analysis_mode::coop, meta));
  CHECK(js["metadata"]["config_hash"] == meta.config_hash);
  CHECK(js["metadata"]["rng"] == "mt19937_64+splitmix64");
  CHECK(js["curve"].size() == 2);
  CHECK(js["mode"] == "coop");
}

TEST_CASE("simulation CSV and JSON") {
  const network_topology t(1, {{0b1, 50}});
  simulation_spec spec(t, frame_kind::frameless, {3.0});
  const auto s = monte_carlo(spec, 3, 1, 1);
  const auto meta = make_metadata("simulate", "cfg", 1);
  const auto lines = data_lines(simulation_csv(s, t, meta));
  REQUIRE(lines.size() == 4);
  CHECK(lines[0] == "trial,seed,T,n_ret,throughput,plr_g1");
  const auto js = nlohmann::json::parse(simulation_json(s, t, meta, true));
  CHECK(js["trials"] == 3);
  CHECK(js["records"].size() == 3);
  CHECK(js["throughput"]["mean"].get<double>() == doctest::Approx(s.throughput.mean));
  CHECK(simulation_csv(s, t, meta) == simulation_csv(monte_carlo(spec, 3, 1, 2), t, meta));
}

TEST_CASE("optimization exports") {
  optimization_result r;
  r.g = {1.5, 1.5, 2.0};
  r.class_values = {1.5, 2.0};
  r.best.feasible = true;
  r.best.slots = 100;
  r.best.throughput = 1.25;
  r.best.plr_avg = 0.1;
  r.history = {1.0, 1.25};
  CHECK(optimization_csv_header(3) == "label,feasible,G1,G2,G3,T,throughput,plr_avg\n");
  CHECK(optimization_csv_row("x", r) == "x,1,1.5,1.5,2,100,1.25,0.1\n");
  const auto js = nlohmann::json::parse(optimization_json(r, make_metadata("optimize", "", 3)));
  CHECK(js["T"] == 100);
  CHECK(js["history"].size() == 2);
}

TEST_CASE("doubles round trip") {
  for (double v : {0.1, 1.0 / 3.0, 2.366, 1e-17}) CHECK(std::stod(format_double(v)) == v);
}
