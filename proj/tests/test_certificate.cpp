#include <cstdio>
#include <filesystem>

#include "doctest.h"
#include "hjm/certificate.hpp"
#include "hjm/construct.hpp"
#include "hjm/optimize.hpp"

using namespace hjm;

TEST_CASE("E_0 certificate round trip") {
  auto e = e_sets();
  Certificate c = make_certificate(e.e0, CertKind::kLineFree, {"e_sets", std::nullopt, "1.0"});
  CHECK(*c.size == 52);
  std::string text = to_json(c);
  Certificate back = certificate_from_json(text);
  CHECK(to_json(back) == text);
  auto rep = verify_certificate(back);
  CHECK(rep.pass);
  CHECK(rep.str().rfind("PASS", 0) == 0);
}

TEST_CASE("tampered point names the violated line") {
  PointSet a = PointSet::from_strings(Shape(2, 3), {"12", "13", "21", "22", "31", "33"});
  Certificate c = make_certificate(a, CertKind::kLineFree, {"test", 7, "1.0"});
  CHECK(verify_certificate(c).pass);
  c.points = {"11", "12", "13", "21", "22", "31"};
  auto rep = verify_certificate(c);
  CHECK(!rep.pass);
  CHECK(rep.violation.find("combinatorial line") != std::string::npos);
  CHECK(rep.violation.find("11") != std::string::npos);
}

TEST_CASE("claim mismatches are reported by field") {
  PointSet a = sphere_members(2, Parity::kAll, 3);
  Certificate c = make_certificate(a, CertKind::kMoser, {"sphere", std::nullopt, "1.0"});
  c.size = 13;
  auto rep = verify_certificate(c);
  CHECK(!rep.pass);
  bool saw = false;
  for (const auto& f : rep.fields)
    if (f.field == "size") {
      CHECK(!f.ok);
      CHECK(f.claimed == "13");
      CHECK(f.actual == "12");
      saw = true;
    }
  CHECK(saw);
  c.size = 12;
  c.statistics = std::vector<std::int64_t>{0, 12, 0, 1};
  CHECK(!verify_certificate(c).pass);
}

TEST_CASE("124-point Moser certificate") {
  PointSet a = augment_ab(moser_b5(), 5, moser_b5_extra());
  Certificate c = make_certificate(a, CertKind::kMoser, {"augment_ab", std::nullopt, "1.0"});
  auto rep = verify_certificate(certificate_from_json(to_json(c)));
  CHECK(rep.pass);
  CHECK(*c.size == 124);
}

TEST_CASE("simplex certificates") {
  auto f = max_fujimura(6);
  Certificate c = make_simplex_certificate(f.best, 6, CertKind::kFujimura, {"opt", std::nullopt, "1.0"});
  CHECK(*c.weight == 450);
  CHECK(verify_certificate(certificate_from_json(to_json(c))).pass);
  c.weight = mpz_class(451);
  CHECK(!verify_certificate(c).pass);

  auto m = max_moser_b(5);
  Certificate d = make_simplex_certificate(m.best, 5, CertKind::kMoserB, {"opt", std::nullopt, "1.0"});
  CHECK(verify_certificate(d).pass);
  d.simplex_points.push_back(SimplexPoint{0, 5, 0});
  std::sort(d.simplex_points.begin(), d.simplex_points.end());
  auto rep = verify_certificate(d);
  if (find_isosceles(d.simplex_points)) {
    CHECK(!rep.pass);
    CHECK(rep.violation.rfind("isosceles", 0) == 0);
  }
}

TEST_CASE("cap-set certificate") {
  PointSet a = PointSet::from_strings(Shape(2, 3), {"11", "12", "21", "22"});
  Certificate c = make_certificate(a, CertKind::kCapSet, {"test", std::nullopt, "1.0"});
  CHECK(verify_certificate(c).pass);
  c.points = {"11", "12", "13"};
  c.size.reset();
  c.statistics.reset();
  auto rep = verify_certificate(c);
  CHECK(!rep.pass);
  CHECK(rep.violation.rfind("affine line", 0) == 0);
}

TEST_CASE("malformed certificates") {
  CHECK_THROWS_AS(certificate_from_json("{"), Error);
  CHECK_THROWS_AS(certificate_from_json(R"({"version":1,"n":2,"k":3,"kind":"bogus","points":[],"claim":{}})"),
                  Error);
  Certificate c = certificate_from_json(
      R"({"version":1,"n":2,"k":3,"kind":"moser","points":["14"],"claim":{}})");
  CHECK_THROWS_AS(verify_certificate(c), Error);
}

TEST_CASE("file output is byte reproducible") {
  auto dir = std::filesystem::temp_directory_path();
  auto p1 = (dir / "hjm_cert_a.json").string();
  auto p2 = (dir / "hjm_cert_b.json").string();
  PointSet a = xyz_set();
  write_certificate(p1, make_certificate(a, CertKind::kLineFree, {"xyz", 1, "1.0"}));
  write_certificate(p2, make_certificate(a, CertKind::kLineFree, {"xyz", 1, "1.0"}));
  Certificate r = read_certificate(p1);
  CHECK(to_json(r) == to_json(read_certificate(p2)));
  CHECK(verify_certificate(r).pass);
  std::remove(p1.c_str());
  std::remove(p2.c_str());
}
