#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "wkp/classify.hpp"
#include "wkp/krange.hpp"
#include "wkp/maps.hpp"
#include "wkp/papersuite.hpp"

// File formats. All matrices are stored row-major as [re, im] pairs and
// doubles are written with round-trip precision.
//
//   matrix:     {"dim": d, "entries": [[re, im], ...]}
//   map:        {"m": m, "n": n, "k": k, "dim": (mn)^2, "entries": [...]}
//   canonical:  {"varphi": "id|t|pt_right|pt_left", "affine": bool,
//                "unitary": <matrix payload> | "identity"}

namespace wkp::io {

std::string matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const std::string& text);

std::string map_to_json(const LinearMapMatrix& phi);
LinearMapMatrix map_from_json(const std::string& text);

std::string canonical_to_json(const CanonicalFormSpec& spec);
/// The descriptor does not carry (m, n, k); the caller supplies the shape.
CanonicalFormSpec canonical_from_json(const std::string& text, const BipartiteShape& shape);

/// Header `theta,support,boundary_re,boundary_im`, 17 significant digits.
std::string profile_to_csv(const SupportProfile& p);
/// Closed polyline through the boundary points with axes.
std::string profile_to_svg(const SupportProfile& p);

std::string report_to_json(const VerificationReport& r);
std::string report_to_json(const ClassificationReport& r);
std::string report_to_json(const FalsifySummary& s);
std::string report_to_json(const Example1Report& r);
/// `[{"item": name, "pass": bool, "detail": {...}}, ...]`
std::string suite_to_json(const std::vector<SuiteItem>& items);

/// Combined verification + classification document written by `verify`.
std::string verify_document(const VerificationReport& v, const ClassificationReport* c);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& text);

}  // namespace wkp::io
