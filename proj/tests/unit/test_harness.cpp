#include <doctest.h>

#include <atomic>
#include <cmath>
#include <sstream>

#include <nlohmann/json.hpp>

#include "splab/config.hpp"
#include "splab/errors.hpp"
#include "splab/family.hpp"
#include "splab/parallel.hpp"
#include "splab/registry.hpp"
#include "splab/report.hpp"

using namespace splab;

namespace {

std::string csv_body(const SweepOutcome& o) {
  std::ostringstream os;
  write_csv(os, o.rows, false);
  return os.str();
}

}  // namespace

TEST_CASE("config parsing") {
  const Config kv = Config::parse("# comment\nn = 2\n dilations=0.5, 1 ,2\ntranslations = 1 0; 0 -1\nflag = yes\n");
  CHECK(kv.integer("n") == 2);
  CHECK(kv.list("dilations") == std::vector<double>{0.5, 1.0, 2.0});
  const auto v = kv.vectors("translations");
  REQUIRE(v.size() == 2);
  CHECK(v[1][1] == -1.0);
  CHECK(kv.flag("flag"));
  CHECK_THROWS_AS(kv.num("missing"), ConfigError);
  CHECK_THROWS_AS(Config::parse("n 2"), ConfigError);
  CHECK_THROWS_AS(Config::parse("n = two").integer("n"), ConfigError);
  CHECK_THROWS_AS(Config::parse("n = 2.5").integer("n"), ConfigError);

  const Config js = Config::parse(R"({"n": 2, "dilations": [0.5, 1], "modulations": [[1, 0], [0, 2]], "refine": true})");
  CHECK(js.num("n") == 2.0);
  CHECK(js.list("dilations").size() == 2);
  CHECK(js.vectors("modulations")[1][1] == 2.0);
  CHECK(js.flag("refine"));
  CHECK_THROWS_AS(Config::parse("{\"n\": "), ConfigError);

  CHECK(Config::parse("x = 1/0, 0/1").vectors("x")[1][1] == 1.0);
  const Config m = kv.merged(Config::parse("n = 3"));
  CHECK(m.integer("n") == 3);
  CHECK(m.has("dilations"));
}

TEST_CASE("family members") {
  FamilySpec spec;
  spec.dilations = {0.5, 1.0, 2.0};
  spec.translations = {Vec{0, 0, 0}, Vec{1, -1, 0}};
  const GridSpec g(2, 18.0, 128);
  const auto fam = make_family(spec, g);
  REQUIRE(fam.size() == 6);
  for (const FamilyMember& m : fam) CHECK(std::abs(m.field.norm() - 1.0) < 1e-12);
  CHECK(fam[3].id == "gaussian:lam=1:x0=1/-1:xi0=0/0");
  CHECK(fam[0].lambda == 0.5);

  // The unit Gaussian member equals pi^{-n/4} e^{-|x|^2/2}.
  FamilySpec one;
  const FamilyMember u = make_family(one, GridSpec(1, 10.0, 64)).front();
  const std::size_t o = u.field.grid().origin_index();
  CHECK(u.field[o].real() == doctest::Approx(std::pow(kPi, -0.25)).epsilon(1e-12));

  FamilySpec wide;
  wide.dilations = {0.25};
  CHECK_THROWS_WITH_AS(make_family(wide, GridSpec(2, 8.0, 64)), doctest::Contains("larger L"), ConfigError);
  FamilySpec fast;
  fast.modulations = {Vec{12.0, 0, 0}};
  CHECK_THROWS_WITH_AS(make_family(fast, GridSpec(2, 8.0, 64)), doctest::Contains("Nyquist"), ConfigError);

  FamilySpec centred;
  centred.dilations = spec.dilations;
  const auto fitted = make_fitted_family(centred, 2, 8.0, 64);
  CHECK(fitted[0].field.grid().half_width() == doctest::Approx(16.0));
  CHECK(fitted[2].field.grid().half_width() == doctest::Approx(4.0));

  FamilySpec h;
  h.base = FamilyBase::hermite;
  h.hermite_order = 3;
  const auto hm = make_family(h, GridSpec(1, 12.0, 128));
  CHECK(std::abs(hm[0].field.norm() - 1.0) < 1e-12);
  CHECK(parse_family_base("random") == FamilyBase::random_bandlimited);
  CHECK_THROWS_AS(parse_family_base("box"), ConfigError);
}

TEST_CASE("random family is reproducible") {
  FamilySpec spec;
  spec.base = FamilyBase::random_bandlimited;
  spec.seed = 7;
  const GridSpec g(2, 12.0, 64);
  const auto a = make_family(spec, g);
  const auto b = make_family(spec, g);
  for (std::size_t i = 0; i < a[0].field.size(); ++i) CHECK(a[0].field[i] == b[0].field[i]);
  CHECK(unit_uniform(0) == 0.0);
  CHECK(unit_uniform(~std::uint64_t{0}) < 1.0);
}

TEST_CASE("report formats") {
  RatioReport r;
  r.estimate_id = "x";
  r.member_id = "m,1";
  r.point = "p";
  r.params["n"] = 2;
  r.set_ratio(1.0, 4.0);
  r.extra["k"] = 0.5;
  std::ostringstream os;
  write_csv(os, {r});
  std::istringstream is(os.str());
  std::string first, header, row;
  std::getline(is, first);
  std::getline(is, header);
  std::getline(is, row);
  CHECK(first.rfind("# generated ", 0) == 0);
  CHECK(header == csv_header());
  CHECK(header.rfind("estimate_id,member_id,point,n,m,delta,theta,kappa,alpha,beta,gamma,L,N,T,M,resolution,lhs,rhs,ratio", 0) == 0);
  CHECK(row.find("\"m,1\"") != std::string::npos);
  CHECK(row.find(",0.25,") != std::string::npos);
  CHECK(row.find("k=0.5") != std::string::npos);

  SweepOutcome o;
  o.estimate_id = "x";
  o.rows = {r};
  o.checks.push_back({"c", 0.1, 1.0});
  Check info{"info", 5.0, 1.0};
  info.gating = false;
  o.checks.push_back(info);
  CHECK(o.pass());
  const auto j = nlohmann::json::parse(summary_json(o));
  CHECK(j["schema_version"] == 1);
  CHECK(j["estimate_id"] == "x");
  CHECK(j["pass"] == true);
  o.rows[0].ratio = NAN;
  CHECK(std::isnan(o.sup_ratio()));
  o.checks.push_back({"bad", NAN, 1.0});
  CHECK_FALSE(o.pass());
}

TEST_CASE("registry") {
  CHECK(estimates().size() >= 20);
  CHECK_THROWS_WITH_AS(find_estimate("nope"), doctest::Contains("plancherel"), ConfigError);
  CHECK_THROWS_WITH_AS(run_estimate("plancherel", Config::parse("bogus = 1")), doctest::Contains("no parameter"),
                       ConfigError);
  CHECK_THROWS_WITH_AS(run_estimate("plancherel", Config::parse("count = 2"), true), doctest::Contains("must set"),
                       ConfigError);
  const SweepOutcome o = run_estimate("plancherel", Config::parse("count = 3\nN = 32"));
  CHECK(o.pass());
  CHECK(o.rows.size() == 3);
  CHECK(o.rows[0].estimate_id == "plancherel");
  CHECK(o.config.at("N") == "32");

  SUBCASE("identical configs give identical CSV") {
    const Config c = Config::parse("n = 2");
    CHECK(csv_body(run_estimate("SW22", c)) == csv_body(run_estimate("SW22", c)));
  }
  SUBCASE("hypothesis violations throw unless waived") {
    CHECK_THROWS_WITH_AS(run_estimate("L23", Config::parse("kappa = 1.2")), doctest::Contains("0 < kappa < 1"),
                         HypothesisError);
    const SweepOutcome w = run_estimate("L23", Config::parse("kappa = 1.2\nnegative_control = true\nrefine = false"));
    CHECK(w.negative_control);
    REQUIRE(w.violations.size() == 1);
    CHECK(w.violations[0].find("kappa") != std::string::npos);
    CHECK(w.pass());
  }
}

TEST_CASE("family export helper") {
  const auto fam = family_members(Config::parse("n = 1\ndilations = 1, 2"));
  CHECK(fam.size() == 2);
  CHECK_THROWS_AS(family_members(Config{}), ConfigError);
}

TEST_CASE("parallel_for") {
  std::vector<int> hit(1000, 0);
  parallel_for(hit.size(), [&](std::size_t i) { hit[i] += 1; });
  for (int h : hit) CHECK(h == 1);
  CHECK_THROWS_AS(parallel_for(10, [](std::size_t i) { if (i == 7) throw NumericError("x"); }), NumericError);

  // Nested loops run and workers see the caller's waiver.
  std::atomic<int> count{0};
  HypothesisWaiver waiver;
  parallel_for(8, [&](std::size_t) {
    parallel_for(8, [&](std::size_t) { ++count; });
    require_hypothesis(false, "waived inside a worker");
  });
  CHECK(count == 64);
  CHECK(waiver.violations().size() == 1);
}

TEST_CASE("waiver scope") {
  CHECK_THROWS_AS(require_hypothesis(false, "x"), HypothesisError);
  {
    HypothesisWaiver w;
    CHECK_NOTHROW(require_hypothesis(false, "x"));
    CHECK_NOTHROW(require_hypothesis(false, "x"));
    CHECK(w.violations().size() == 1);
  }
  CHECK_THROWS_AS(require_hypothesis(false, "x"), HypothesisError);
}
