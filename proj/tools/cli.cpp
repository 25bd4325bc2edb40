#include "cli.hpp"

#include <filesystem>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "wkp/classify.hpp"
#include "wkp/io.hpp"
#include "wkp/krange.hpp"
#include "wkp/papersuite.hpp"

namespace wkp::cli {

namespace fs = std::filesystem;

namespace {

struct RangeArgs {
  std::string input;
  int k = 1;
  int angles = kDefaultAngles;
  std::string out;
  std::string format = "csv";
};

struct VerifyArgs {
  std::string map_file;
  std::string canonical_file;
  std::optional<int> m, n, k;
  int trials = 50;
  int angles = kDefaultAngles;
  double tol = kDefaultRangeTol;
  std::uint64_t seed = kDefaultSeed;
  std::string out;
};

struct PaperArgs {
  int m = 3, n = 3, k = 2;
  std::uint64_t seed = kDefaultSeed;
  int trials = 20;
  int angles = kDefaultAngles;
  double tol = kDefaultRangeTol;
  std::string out = "paper_out";
};

struct FalsifyArgs {
  int m = 2, n = 2, k = 2;
  int count = 100;
  std::uint64_t seed = kDefaultSeed;
  int trials = 50;
  int angles = kDefaultAngles;
  double tol = kDefaultRangeTol;
  std::string out;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw UsageError("cannot create directory '" + dir.string() + "': " + ec.message());
}

int cmd_range(const RangeArgs& a, std::ostream& out) {
  const ComplexMatrix mat = io::matrix_from_json(io::read_file(a.input));
  if (a.format != "csv" && a.format != "svg") throw UsageError("range: --format must be csv or svg");
  const SupportProfile profile = krange_profile(mat, a.k, a.angles);

  const std::string path = a.out.empty() ? "profile." + a.format : a.out;
  io::write_file(path, a.format == "csv" ? io::profile_to_csv(profile) : io::profile_to_svg(profile));

  double hmax = profile.support.front();
  for (double h : profile.support) hmax = std::max(hmax, h);
  out << std::setprecision(15);
  out << "dim " << mat.dim() << ", k " << a.k << ", angles " << a.angles << '\n';
  out << "max support " << hmax << '\n';
  out << "k-numerical radius (grid) " << hmax << '\n';
  if (is_hermitian(mat)) {
    const KInterval iv = krange_hermitian(mat, a.k);
    out << "hermitian: W_k = [" << iv.lo << ", " << iv.hi << "]\n";
  }
  out << "wrote " << path << '\n';
  return kSuccess;
}

int cmd_verify(const VerifyArgs& a, std::ostream& out) {
  if (a.map_file.empty() == a.canonical_file.empty()) {
    throw UsageError("verify: give exactly one of --map or --canonical");
  }
  std::optional<LinearMapMatrix> phi;
  std::optional<BipartiteShape> shape;
  if (!a.map_file.empty()) {
    phi = io::map_from_json(io::read_file(a.map_file));
    const BipartiteShape& s = phi->shape();
    if ((a.m && *a.m != s.m()) || (a.n && *a.n != s.n())) {
      throw UsageError("verify: --m/--n disagree with the map file");
    }
    if (a.k && *a.k != s.k()) throw UsageError("verify: --k disagrees with the map file");
    shape = s;
  } else {
    if (!a.m || !a.n || !a.k) throw UsageError("verify: --canonical needs --m, --n and --k");
    shape = BipartiteShape(*a.m, *a.n, *a.k);
    const CanonicalFormSpec spec = io::canonical_from_json(io::read_file(a.canonical_file), *shape);
    phi = build_canonical(spec);
  }

  VerifyOptions opts;
  opts.trials = a.trials;
  opts.num_angles = a.angles;
  opts.tol = a.tol;
  opts.seed = a.seed;
  const VerificationReport ver = verify_preserver(*phi, *shape, opts);
  std::optional<ClassificationReport> cls;
  if (ver.pass()) cls = classify_preserver(*phi, *shape, a.tol);

  const std::string doc = io::verify_document(ver, cls ? &*cls : nullptr);
  out << doc << '\n';
  if (!a.out.empty()) io::write_file(a.out, doc);
  return (ver.pass() && cls && cls->verdict == ClassVerdict::Classified) ? kSuccess : kFailedVerdict;
}

int cmd_paper(const PaperArgs& a, std::ostream& out) {
  const BipartiteShape shape(a.m, a.n, a.k);
  SuiteOptions opts;
  opts.trials = a.trials;
  opts.num_angles = a.angles;
  opts.tol = a.tol;
  const std::vector<SuiteItem> items = theorem_suite(shape, a.seed, opts);

  const fs::path dir(a.out);
  ensure_dir(dir);
  io::write_file(dir / "summary.json", io::suite_to_json(items));

  // Example matrices are padded to at least 3 x 3.
  const int em = std::max(a.m, 3), en = std::max(a.n, 3);
  const auto [ea, eb] = example1_matrices(em, en);
  io::write_file(dir / "example1_A.json", io::matrix_to_json(ea));
  io::write_file(dir / "example1_B.json", io::matrix_to_json(eb));
  io::write_file(dir / "example1_AB.json", io::matrix_to_json(kron(ea, eb)));
  io::write_file(dir / "example1_ABt.json", io::matrix_to_json(kron(ea, transpose(eb))));
  io::write_file(dir / "example1_report.json", io::report_to_json(check_example1(em, en)));

  for (const SuiteItem& it : items) out << (it.pass ? "PASS " : "FAIL ") << it.item << '\n';
  const bool ok = all_pass(items);
  out << (ok ? "all items pass" : "some items failed") << "; wrote " << dir.string() << '\n';
  return ok ? kSuccess : kFailedVerdict;
}

int cmd_falsify(const FalsifyArgs& a, std::ostream& out) {
  const BipartiteShape shape(a.m, a.n, a.k);
  std::optional<fs::path> dir;
  if (!a.out.empty()) {
    dir = fs::path(a.out);
    ensure_dir(*dir);
  }
  const FalsifySummary summary = falsify_random(
      shape, a.count, a.seed, a.tol, a.trials, a.angles, [&](int i, const LinearMapMatrix& phi) {
        if (dir) {
          std::ostringstream name;
          name << "map_" << std::setw(3) << std::setfill('0') << i << ".json";
          io::write_file(*dir / name.str(), io::map_to_json(phi));
        }
      });
  const std::string doc = io::report_to_json(summary);
  if (dir) io::write_file(*dir / "summary.json", doc);
  out << "maps " << summary.count << ", passing verification " << summary.passes
      << " (classified canonical " << summary.passes_classified_canonical << "), redrawn "
      << summary.rejected_near_canonical << '\n';
  return summary.passes == 0 ? kSuccess : kFailedVerdict;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"k-numerical ranges and their linear preservers on tensor products", "wkpres"};
  app.require_subcommand(1);

  RangeArgs range;
  CLI::App* range_cmd = app.add_subcommand("range", "Support profile of W_k(A) as CSV or SVG");
  range_cmd->add_option("input", range.input, "Matrix JSON file")->required();
  range_cmd->add_option("--k", range.k, "Range index k")->required();
  range_cmd->add_option("--angles", range.angles, "Number of support directions")->capture_default_str();
  range_cmd->add_option("--out", range.out, "Output path (default profile.<format>)");
  range_cmd->add_option("--format", range.format, "csv or svg")->capture_default_str();

  VerifyArgs verify;
  int vm = 0, vn = 0, vk = 0;
  CLI::App* verify_cmd = app.add_subcommand("verify", "Verify and classify a candidate preserver");
  verify_cmd->add_option("--map", verify.map_file, "Map JSON file");
  verify_cmd->add_option("--canonical", verify.canonical_file, "Canonical descriptor JSON file");
  CLI::Option* vm_opt = verify_cmd->add_option("--m", vm, "First factor dimension");
  CLI::Option* vn_opt = verify_cmd->add_option("--n", vn, "Second factor dimension");
  CLI::Option* vk_opt = verify_cmd->add_option("--k", vk, "Range index k");
  verify_cmd->add_option("--trials", verify.trials)->capture_default_str();
  verify_cmd->add_option("--angles", verify.angles)->capture_default_str();
  verify_cmd->add_option("--tol", verify.tol)->capture_default_str();
  verify_cmd->add_option("--seed", verify.seed)->capture_default_str();
  verify_cmd->add_option("--out", verify.out, "Also write the JSON report here");

  PaperArgs paper;
  CLI::App* paper_cmd = app.add_subcommand("paper", "Run the theorem and example checks");
  paper_cmd->add_option("--m", paper.m)->capture_default_str();
  paper_cmd->add_option("--n", paper.n)->capture_default_str();
  paper_cmd->add_option("--k", paper.k)->capture_default_str();
  paper_cmd->add_option("--seed", paper.seed)->capture_default_str();
  paper_cmd->add_option("--trials", paper.trials)->capture_default_str();
  paper_cmd->add_option("--angles", paper.angles)->capture_default_str();
  paper_cmd->add_option("--tol", paper.tol)->capture_default_str();
  paper_cmd->add_option("--out", paper.out, "Output directory")->capture_default_str();

  FalsifyArgs falsify;
  CLI::App* falsify_cmd = app.add_subcommand("falsify", "Check random non-canonical maps");
  falsify_cmd->add_option("--m", falsify.m)->capture_default_str();
  falsify_cmd->add_option("--n", falsify.n)->capture_default_str();
  falsify_cmd->add_option("--k", falsify.k)->capture_default_str();
  falsify_cmd->add_option("--count", falsify.count)->capture_default_str();
  falsify_cmd->add_option("--seed", falsify.seed)->capture_default_str();
  falsify_cmd->add_option("--trials", falsify.trials)->capture_default_str();
  falsify_cmd->add_option("--angles", falsify.angles)->capture_default_str();
  falsify_cmd->add_option("--tol", falsify.tol)->capture_default_str();
  falsify_cmd->add_option("--out", falsify.out, "Directory for summary.json and the map files");

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const std::string& s : args) argv.push_back(s.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsageError;
  }

  if (*vm_opt) verify.m = vm;
  if (*vn_opt) verify.n = vn;
  if (*vk_opt) verify.k = vk;

  try {
    if (*range_cmd) return cmd_range(range, out);
    if (*verify_cmd) return cmd_verify(verify, out);
    if (*paper_cmd) return cmd_paper(paper, out);
    if (*falsify_cmd) return cmd_falsify(falsify, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
  } catch (const ShapeError& e) {
    err << "error: " << e.what() << '\n';
  }
  return kUsageError;
}

}  // namespace wkp::cli
