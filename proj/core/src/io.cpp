#include "wkp/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace wkp::io {

using nlohmann::json;

namespace {

json entries_json(const Eigen::MatrixXcd& m) {
  json entries = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) entries.push_back({m(i, j).real(), m(i, j).imag()});
  }
  return entries;
}

json matrix_json(const ComplexMatrix& m) { return {{"dim", m.dim()}, {"entries", entries_json(m.mat())}}; }

Eigen::MatrixXcd entries_from_json(const json& j, int dim) {
  if (dim < 1) throw ParseError("dim must be >= 1");
  const json& entries = j.at("entries");
  if (!entries.is_array() || entries.size() != static_cast<std::size_t>(dim) * dim) {
    throw ParseError("entries must hold dim^2 = " + std::to_string(dim * dim) + " pairs");
  }
  Eigen::MatrixXcd m(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int c = 0; c < dim; ++c) {
      const json& e = entries[static_cast<std::size_t>(i) * dim + c];
      if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
        throw ParseError("each entry must be a [re, im] pair of numbers");
      }
      m(i, c) = Complex(e[0].get<double>(), e[1].get<double>());
    }
  }
  return m;
}

ComplexMatrix matrix_from(const json& j) {
  try {
    return ComplexMatrix(entries_from_json(j, j.at("dim").get<int>()));
  } catch (const json::exception& e) {
    throw ParseError(std::string("matrix payload: ") + e.what());
  } catch (const DomainError& e) {
    throw ParseError(std::string("matrix payload: ") + e.what());
  }
}

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

// JSON has no infinity; unbounded diagnostics become null.
json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json witness_json(const Witness& w) {
  return {{"trial", w.trial},
          {"theta", w.theta},
          {"defect", w.defect},
          {"a", matrix_json(w.a)},
          {"b", matrix_json(w.b)}};
}

json verification_json(const VerificationReport& r) {
  json ws = json::array();
  for (const Witness& w : r.witnesses) ws.push_back(witness_json(w));
  return {{"verdict", r.pass() ? "pass" : "fail"},
          {"trials", r.trials},
          {"tol", r.tol},
          {"max_support_defect", r.max_support_defect},
          {"witnesses", ws}};
}

json classification_json(const ClassificationReport& r) {
  json cands = json::array();
  for (const CandidateResult& c : r.candidates) {
    cands.push_back({{"varphi", std::string(to_string(c.varphi))},
                     {"affine", c.affine},
                     {"choi_gap", number_or_null(c.choi_gap)},
                     {"residual", number_or_null(c.residual)},
                     {"matched", c.matched}});
  }
  json out = {{"verdict", std::string(to_string(r.verdict))}, {"tol", r.tol}, {"choi_gaps", cands}};
  if (r.matched) {
    out["matched"] = {{"varphi", std::string(to_string(r.matched->varphi))},
                      {"affine", r.matched->affine},
                      {"residual", r.matched->residual},
                      {"unitary", matrix_json(r.matched->unitary)}};
  } else {
    out["matched"] = nullptr;
  }
  return out;
}

}  // namespace

std::string matrix_to_json(const ComplexMatrix& m) { return matrix_json(m).dump(); }

ComplexMatrix matrix_from_json(const std::string& text) { return matrix_from(parse(text)); }

std::string map_to_json(const LinearMapMatrix& phi) {
  const BipartiteShape& s = phi.shape();
  const json j = {{"m", s.m()},
                  {"n", s.n()},
                  {"k", s.k()},
                  {"dim", phi.matrix().dim()},
                  {"entries", entries_json(phi.matrix().mat())}};
  return j.dump();
}

LinearMapMatrix map_from_json(const std::string& text) {
  const json j = parse(text);
  try {
    const BipartiteShape shape(j.at("m").get<int>(), j.at("n").get<int>(), j.at("k").get<int>());
    const int dim = j.at("dim").get<int>();
    if (dim != shape.dim() * shape.dim()) {
      throw ParseError("map file: dim " + std::to_string(dim) + " is not (mn)^2");
    }
    return {shape, ComplexMatrix(entries_from_json(j, dim))};
  } catch (const json::exception& e) {
    throw ParseError(std::string("map file: ") + e.what());
  } catch (const DomainError& e) {
    throw ParseError(std::string("map file: ") + e.what());
  }
}

std::string canonical_to_json(const CanonicalFormSpec& spec) {
  const json j = {{"varphi", std::string(to_string(spec.varphi))},
                  {"affine", spec.affine},
                  {"unitary", matrix_json(spec.unitary)}};
  return j.dump();
}

CanonicalFormSpec canonical_from_json(const std::string& text, const BipartiteShape& shape) {
  const json j = parse(text);
  try {
    const Varphi v = varphi_from_string(j.at("varphi").get<std::string>());
    const bool affine = j.value("affine", false);
    const json& u = j.at("unitary");
    if (u.is_string()) {
      if (u.get<std::string>() != "identity") throw ParseError("unitary must be a matrix or \"identity\"");
      return {v, ComplexMatrix::identity(shape.dim()), affine, shape};
    }
    return {v, matrix_from(u), affine, shape};
  } catch (const json::exception& e) {
    throw ParseError(std::string("canonical descriptor: ") + e.what());
  }
}

std::string profile_to_csv(const SupportProfile& p) {
  std::ostringstream out;
  out << "theta,support,boundary_re,boundary_im\n";
  for (int j = 0; j < p.num_angles(); ++j) {
    const auto i = static_cast<std::size_t>(j);
    out << fmt17(p.angles[i]) << ',' << fmt17(p.support[i]) << ',' << fmt17(p.boundary[i].real())
        << ',' << fmt17(p.boundary[i].imag()) << '\n';
  }
  return out.str();
}

std::string profile_to_svg(const SupportProfile& p) {
  constexpr double size = 480.0;
  constexpr double margin = 40.0;
  double xmin = 0.0, xmax = 0.0, ymin = 0.0, ymax = 0.0;
  for (const Complex z : p.boundary) {
    xmin = std::min(xmin, z.real());
    xmax = std::max(xmax, z.real());
    ymin = std::min(ymin, z.imag());
    ymax = std::max(ymax, z.imag());
  }
  const double span = std::max({xmax - xmin, ymax - ymin, 1e-12});
  const double scale = (size - 2 * margin) / span;
  auto sx = [&](double x) { return margin + (x - xmin) * scale; };
  auto sy = [&](double y) { return size - margin - (y - ymin) * scale; };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size
      << "\" viewBox=\"0 0 " << size << ' ' << size << "\">\n";
  out << "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "  <line x1=\"" << sx(xmin) << "\" y1=\"" << sy(0) << "\" x2=\"" << sx(xmin + span)
      << "\" y2=\"" << sy(0) << "\" stroke=\"#888\" stroke-width=\"1\"/>\n";
  out << "  <line x1=\"" << sx(0) << "\" y1=\"" << sy(ymin) << "\" x2=\"" << sx(0) << "\" y2=\""
      << sy(ymin + span) << "\" stroke=\"#888\" stroke-width=\"1\"/>\n";
  out << "  <polygon fill=\"#cfe2f3\" fill-opacity=\"0.6\" stroke=\"#1f4e79\" stroke-width=\"1.5\" points=\"";
  for (const Complex z : p.boundary) out << sx(z.real()) << ',' << sy(z.imag()) << ' ';
  out << "\"/>\n";
  out << "  <text x=\"" << margin << "\" y=\"" << margin / 2 << "\" font-family=\"sans-serif\" "
      << "font-size=\"14\">W_" << p.k << " boundary (" << p.num_angles() << " angles)</text>\n";
  out << "</svg>\n";
  return out.str();
}

std::string report_to_json(const VerificationReport& r) { return verification_json(r).dump(2); }

std::string report_to_json(const ClassificationReport& r) { return classification_json(r).dump(2); }

std::string report_to_json(const FalsifySummary& s) {
  const json j = {{"count", s.count},
                  {"passes", s.passes},
                  {"passes_classified_canonical", s.passes_classified_canonical},
                  {"rejected_near_canonical", s.rejected_near_canonical},
                  {"defects", s.defects}};
  return j.dump(2);
}

std::string report_to_json(const Example1Report& r) {
  const json j = {{"m", r.m},
                  {"n", r.n},
                  {"tol", r.tol},
                  {"spectrum_ab", r.spectrum_ab},
                  {"spectrum_abt", r.spectrum_abt},
                  {"expected_ab", r.expected_ab},
                  {"expected_abt", r.expected_abt},
                  {"spectrum_error_ab", r.spectrum_error_ab},
                  {"spectrum_error_abt", r.spectrum_error_abt},
                  {"re_gap_per_k", r.re_gap_per_k},
                  {"pass", r.pass}};
  return j.dump(2);
}

std::string suite_to_json(const std::vector<SuiteItem>& items) {
  json arr = json::array();
  for (const SuiteItem& it : items) {
    json detail = json::object();
    for (const auto& [key, value] : it.metrics) {
      // Counts are stored as doubles; write them back as integers.
      if (std::isfinite(value) && value == std::floor(value) && std::abs(value) < 9e15) {
        detail[key] = static_cast<std::int64_t>(value);
      } else {
        detail[key] = number_or_null(value);
      }
    }
    if (!it.note.empty()) detail["note"] = it.note;
    arr.push_back({{"item", it.item}, {"pass", it.pass}, {"detail", detail}});
  }
  return arr.dump(2);
}

std::string verify_document(const VerificationReport& v, const ClassificationReport* c) {
  json j = {{"verification", verification_json(v)}};
  j["classification"] = c ? classification_json(*c) : json(nullptr);
  return j.dump(2);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << text;
}

}  // namespace wkp::io
