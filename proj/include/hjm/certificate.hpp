#pragma once

// Certificates: self-contained JSON records of a set or simplex subset
// together with the claims made about it.

#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "hjm/cube.hpp"
#include "hjm/verify.hpp"

namespace hjm {

enum class CertKind { kLineFree, kMoser, kCapSet, kFujimura, kMoserB };

std::string cert_kind_name(CertKind k);
CertKind parse_cert_kind(const std::string& name);

struct Provenance {
  std::string generator;
  std::optional<std::uint64_t> seed;
  std::string version = "1.0";
};

struct Certificate {
  int n = 0;
  int k = 3;
  CertKind kind = CertKind::kMoser;
  std::vector<std::string> points;  // set kinds, sorted
  SimplexSet simplex_points;        // fujimura / moser-b, sorted
  // Claims; absent fields are not checked.
  std::optional<std::int64_t> size;
  std::optional<std::vector<std::int64_t>> statistics;
  std::optional<mpz_class> weight;
  Provenance provenance;

  bool is_simplex() const {
    return kind == CertKind::kFujimura || kind == CertKind::kMoserB;
  }
  PointSet set() const;
};

// Builds a certificate with every claim filled in from the data.
Certificate make_certificate(const PointSet& a, CertKind kind, Provenance prov);
Certificate make_simplex_certificate(const SimplexSet& b, int n, CertKind kind,
                                     Provenance prov);

// Canonical JSON text (two-space indent, trailing newline).
std::string to_json(const Certificate& c);
Certificate certificate_from_json(const std::string& text);
Certificate read_certificate(const std::string& path);
void write_certificate(const std::string& path, const Certificate& c);

struct FieldCheck {
  std::string field;
  bool ok = true;
  std::string claimed;
  std::string actual;
};

struct CertReport {
  bool pass = true;
  std::vector<FieldCheck> fields;
  // Offending line or pattern when the predicate fails.
  std::string violation;
  std::string str() const;
};

CertReport verify_certificate(const Certificate& c);

}  // namespace hjm
