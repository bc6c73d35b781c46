#include <doctest.h>

#include <cmath>
#include <sstream>

#include "cmlab/campaign.hpp"
#include "cmlab/errors.hpp"
#include "cmlab/io.hpp"
#include "helpers.hpp"

using namespace cmlab;
using testing::max_abs;
using testing::random_tuple;

namespace {

CampaignConfig small_config(std::vector<Suite> suites) {
  CampaignConfig c = preset_config();
  c.suites = std::move(suites);
  c.p_grid = {1.5, 3.0};
  c.n_grid = {2, 3};
  c.dims = {1, 3};
  c.trials = 2;
  c.threads = 1;
  return c;
}

}  // namespace

TEST_CASE("io: tuple round trip is bit exact") {
  const auto T = random_tuple(101, 3, 4);
  const Json j = Json::parse(tuple_to_json(T).dump());
  const OperatorTuple back = tuple_from_json(j);
  REQUIRE(back.size() == T.size());
  for (std::size_t i = 0; i < T.size(); ++i) CHECK((back[i].array() == T[i].array()).all());
}

TEST_CASE("io: malformed tuples are input errors") {
  CHECK_THROWS_AS(tuple_from_json(Json::parse(R"({"matrices": []})")), InputError);
  CHECK_THROWS_AS(tuple_from_json(Json::parse(R"([[[[1,0],[2,0]],[[3,0]]]])")), InputError);
  CHECK_THROWS_AS(tuple_from_json(Json::parse(R"([[[["a",0]]]])")), InputError);
  CHECK_THROWS_AS(tuple_from_json(Json::parse(R"([[[[1,0],[0,0]],[[0,0],[1,0]]],[[[1,0]]]])")),
                  InputError);
  CHECK_THROWS_AS(read_json_file("/nonexistent/tuple.json"), InputError);
  const OperatorTuple plain = tuple_from_json(Json::parse("[[[2.5]]]"));
  CHECK(plain[0](0, 0) == Complex(2.5, 0.0));
}

TEST_CASE("io: shortest round-trip formatting") {
  for (double v : {0.1, 1.0 / 3.0, 1e-300, 6.02214076e23, -2.5}) {
    CHECK(std::stod(format_double(v)) == v);
  }
  CHECK(format_double(0.1) == "0.1");
}

TEST_CASE("config: json overlay, canonical hash and errors") {
  const CampaignConfig base = preset_config();
  const CampaignConfig c = apply_config_json(
      base, Json::parse(R"({"suites": ["ak"], "p_grid": [1.5], "trials": 4, "seed": 7,
                            "ensembles": ["ginibre", {"kind": "near_equal", "epsilon": 0.01}],
                            "tol": {"margin": 1e-8}})"));
  CHECK(c.suites == std::vector<Suite>{Suite::ak});
  CHECK(c.trials == 4);
  CHECK(c.seed == 7);
  CHECK(c.ensembles.size() == 2);
  CHECK(c.ensembles[1].epsilon == 0.01);
  CHECK(c.tol.margin == 1e-8);
  CHECK(c.dims == base.dims);

  CampaignConfig other = c;
  other.out = "elsewhere.json";
  other.threads = 3;
  CHECK(config_hash(other) == config_hash(c));
  other.seed = 8;
  CHECK(config_hash(other) != config_hash(c));

  CHECK_THROWS_AS(apply_config_json(base, Json::parse(R"({"bogus": 1})")), InputError);
  CHECK_THROWS_AS(apply_config_json(base, Json::parse(R"({"suites": ["nope"]})")), InputError);
  CHECK_THROWS_AS(apply_config_json(base, Json::parse(R"({"trials": "x"})")), InputError);
}

TEST_CASE("config: validation") {
  CampaignConfig c = small_config({Suite::ak});
  CHECK_NOTHROW(c.validate());
  c.suites.clear();
  CHECK_THROWS_AS(c.validate(), InputError);
  c = small_config({Suite::ak});
  c.p_grid = {0.5, 1.0};
  CHECK_THROWS_AS(c.validate(), InputError);  // no p > 1 for ak
  c.p_grid = {1.0005};
  CHECK_THROWS_AS(c.validate(), InputError);
  c = small_config({Suite::hk});
  c.n_grid = {1};
  CHECK_THROWS_AS(c.validate(), InputError);
  c = small_config({Suite::ak});
  c.trials = 0;
  CHECK_THROWS_AS(c.validate(), InputError);
}

TEST_CASE("suite domains") {
  CHECK(suite_accepts(Suite::clarkson, 0.5));
  CHECK_FALSE(suite_accepts(Suite::ak, 1.0));
  CHECK(suite_accepts(Suite::bcl, 1.0));
  CHECK_FALSE(suite_accepts(Suite::bcl_dominates_clarkson, 2.5));
  CHECK(suite_accepts(Suite::parallelogram, 2.0));
  CHECK_FALSE(suite_accepts(Suite::parallelogram, 1.5));
  CHECK_FALSE(suite_accepts(Suite::duality, 1.5));
  CHECK_FALSE(suite_accepts(Suite::interpolation, 2.5));
  for (Suite s : all_suites()) CHECK(parse_suite(to_string(s)) == s);
}

TEST_CASE("campaign: equal-tuple ak is sharp") {
  CampaignConfig c = small_config({Suite::ak});
  c.ensembles = {EnsembleChoice{EnsembleKind::equal_tuple}};
  c.p_grid = {1.3, 1.5, 2.0, 2.5, 3.0, 4.0};
  const CampaignReport r = run_campaign(c);
  CHECK(r.violations == 0);
  for (const auto& t : r.results) CHECK(std::abs(t.margin) <= 1e-8);
}

TEST_CASE("campaign: parallelogram defects stay tiny") {
  CampaignConfig c = small_config({Suite::parallelogram});
  c.p_grid = {2.0};
  c.dims = {1, 4, 8};
  const CampaignReport r = run_campaign(c);
  CHECK(r.violations == 0);
  CHECK(r.results.size() == 8 * 3 * 2);
  for (const auto& t : r.results) CHECK(-t.margin <= 1e-10);
}

TEST_CASE("campaign: fault injection produces violations") {
  CampaignConfig c = small_config({Suite::ak});
  c.ensembles = {EnsembleChoice{EnsembleKind::ginibre}};
  c.fault = Fault::flip_ak_direction;
  std::ostringstream log;
  CHECK(run_verify(c, log) == kExitViolation);
  c.fault = Fault::none;
  CHECK(run_verify(c, log) == kExitOk);
  c.suites.clear();
  CHECK(run_verify(c, log) == kExitInvalid);
}

TEST_CASE("campaign: results do not depend on the thread count") {
  CampaignConfig c = small_config({Suite::clarkson, Suite::ak, Suite::duality, Suite::conjecture});
  c.p_grid = {0.5, 1.5, 2.0, 3.0};
  const Json one = results_to_json(run_campaign(c).results);
  c.threads = 4;
  const Json four = results_to_json(run_campaign(c).results);
  CHECK(one.dump() == four.dump());
}

TEST_CASE("campaign: report schema") {
  CampaignConfig c = small_config({Suite::hk, Suite::pairing_bound});
  const Json j = campaign_report_to_json(run_campaign(c));
  REQUIRE(j.contains("meta"));
  for (const char* key : {"seed", "config_hash", "version", "generated_at"}) {
    CHECK(j["meta"].contains(key));
  }
  REQUIRE(j["results"].is_array());
  REQUIRE_FALSE(j["results"].empty());
  for (const char* key :
       {"suite", "tag", "p", "n", "d", "kind", "trial", "lhs", "rhs", "margin", "satisfied"}) {
    CHECK(j["results"][0].contains(key));
  }
  CHECK(j["summary"]["suites"].size() == 2);
  CHECK(j["summary"]["suites"][0].contains("worst_margin"));
  CHECK(j["summary"]["suites"][0].contains("violations"));
}

TEST_CASE("run_witness and run_interpolate: exit codes") {
  const auto T = random_tuple(102, 3, 2);
  std::ostringstream log, csv;
  CHECK(run_witness(T, 1.5, "", log) == kExitOk);
  CHECK(run_witness(T, 2.5, "", log) == kExitInvalid);

  const auto xs = linspace(0.5, 1.0, 5);
  const auto ys = linspace(-2.0, 2.0, 5);
  CHECK(run_interpolate(T, 1.5, xs, ys, "", csv, log) == kExitOk);
  std::istringstream lines(csv.str());
  std::string header;
  std::getline(lines, header);
  CHECK(header == "x,y,re_f,im_f,abs_f,bound");
  const std::vector<double> bad{0.2, 0.6, 1.0};
  CHECK(run_interpolate(T, 1.5, bad, ys, "", csv, log) == kExitInvalid);
}

TEST_CASE("run_interpolate: p = 2 bound column at x = 1/2 equals M2") {
  const auto T = random_tuple(103, 2, 2);
  const auto xs = linspace(0.5, 1.0, 3);
  const std::vector<double> ys{0.0};
  std::ostringstream csv, log;
  REQUIRE(run_interpolate(T, 2.0, xs, ys, "", csv, log) == kExitOk);
  const ConvexityScan scan = convexity_scan(T, witness_set(T, 2.0), 2.0, xs, ys);
  CHECK(scan.samples.front().bound_at_x == doctest::Approx(scan.M2));
}

TEST_CASE("conjecture campaign: n = 2 instances are all feasible") {
  CampaignConfig c = conjecture_preset();
  c.n_grid = {2};
  c.dims = {2, 3};
  c.p_grid = {2.5, 3.0};
  c.trials = 1;
  const auto records = run_conjecture_campaign(c);
  CHECK(records.size() == 8 * 2 * 2);
  for (const auto& r : records) {
    CHECK(r.certificate.status == CertificateStatus::feasible);
    CHECK(r.verified);
    if (r.kind == "equal_tuple") CHECK(r.certificate.iterations == 0);
  }
  std::ostringstream log;
  CHECK(run_conjecture(c, log) == kExitOk);
}
