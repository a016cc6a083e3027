// cli.hpp
// The `sicpovm` command line: search, verify, orbit, report, moment-demo.
// run_cli() is the whole program; tools/sicpovm.cpp only forwards argv.
//
// Exit codes:
//   0  success / verification passed
//   1  verification failed
//   2  search did not converge (best attempt written to <out>.unconverged.json)
//   64 usage error
//   65 data-format error
//   74 I/O error

#pragma once

#include <algorithm>
#include <ctime>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sicpovm/io.hpp"
#include "sicpovm/search.hpp"
#include "sicpovm/simplex.hpp"
#include "sicpovm/verify.hpp"
#include "sicpovm/weyl_heisenberg.hpp"

namespace sicpovm::cli {

enum ExitCode : int {
  kOk = 0,
  kVerificationFailed = 1,
  kNotConverged = 2,
  kUsage = 64,
  kDataFormat = 65,
  kIo = 74,
};

inline std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

inline ReportFile build_report(const StateVector& fiducial, double tol) {
  const auto ens = orbit(fiducial);
  return {verify(ens, tol), sic_simplex_report(ens)};
}

/// Search loss threshold implied by a certification tolerance: a loss of
/// (tol/10)^2 bounds every overlap deviation by tol/10.
inline double loss_tolerance_for(double tol) {
  return std::min(SearchConfig{}.loss_tolerance, (tol / 10.0) * (tol / 10.0));
}

struct Options {
  std::size_t dim = 0;
  std::uint64_t seed = 1;
  std::size_t restarts = 20;
  double tol = kDefaultVerifyTolerance;
  std::string out;
  std::string in;
  bool no_timestamp = false;
};

inline int cmd_search(const Options& o, std::ostream& out, std::ostream& err) {
  SearchConfig cfg;
  cfg.dim = o.dim;
  cfg.seed = o.seed;
  cfg.restarts = o.restarts;
  cfg.loss_tolerance = loss_tolerance_for(o.tol);
  const auto result = search(cfg);
  const auto report = build_report(result.fiducial, o.tol);
  const bool ok = result.converged && report.verification.pass;

  FiducialFile file{result.fiducial, {}};
  file.metadata.seed = o.seed;
  file.metadata.restarts = o.restarts;
  file.metadata.loss = result.loss;
  file.metadata.converged = ok;
  file.metadata.restart_index = result.restart_index;
  file.metadata.iterations = result.iterations_used;
  if (!o.no_timestamp) file.metadata.timestamp = utc_timestamp();
  const auto text = dump(to_json(file));

  if (o.out.empty()) {
    out << text;
    err << dump(to_json(report));
  } else {
    const auto path = ok ? o.out : o.out + ".unconverged.json";
    write_text(path, text);
    nlohmann::ordered_json summary;
    summary["converged"] = ok;
    summary["loss"] = result.loss;
    summary["restart_index"] = result.restart_index;
    summary["output"] = path;
    summary["report"] = to_json(report);
    out << dump(summary);
  }
  if (!ok) err << "search: no fiducial found for dim " << o.dim << " (best loss " << result.loss << ")\n";
  return ok ? kOk : kNotConverged;
}

inline int cmd_verify(const Options& o, std::ostream& out) {
  const auto file = load_fiducial(o.in);
  const auto report = build_report(file.fiducial, o.tol);
  out << dump(to_json(report));
  return report.verification.pass ? kOk : kVerificationFailed;
}

inline int cmd_orbit(const Options& o, std::ostream& out) {
  const auto file = load_fiducial(o.in);
  const auto ens = orbit(gauge_fixed(file.fiducial));
  nlohmann::ordered_json j;
  j["dim"] = ens.dim();
  auto states = nlohmann::ordered_json::array();
  for (std::size_t k = 0; k < ens.size(); ++k) {
    const auto idx = DisplacementIndex::from_flat(k, ens.dim());
    states.push_back({{"p", {idx.p1(), idx.p2()}}, {"state", ens[k].params()}});
  }
  j["states"] = std::move(states);
  out << dump(j);
  return kOk;
}

inline int cmd_report(const Options& o, std::ostream& out) {
  const auto file = load_fiducial(o.in);
  const auto ens = orbit(gauge_fixed(file.fiducial));
  const auto simplex = sic_simplex_report(ens);
  nlohmann::ordered_json j;
  j["dim"] = ens.dim();
  j["simplex"] = to_json(simplex);
  j["centre"] = hermitian_coords(DensityMatrix::maximally_mixed(ens.dim())).vec;
  auto vertices = nlohmann::ordered_json::array();
  for (std::size_t k = 0; k < ens.size(); ++k) {
    const auto idx = DisplacementIndex::from_flat(k, ens.dim());
    vertices.push_back(
        {{"p", {idx.p1(), idx.p2()}}, {"coords", hermitian_coords(projector(ens[k])).vec}});
  }
  j["vertices"] = std::move(vertices);
  out << dump(j);
  return simplex.regular && simplex.on_outsphere ? kOk : kVerificationFailed;
}

inline int cmd_moment_demo(const Options& o, std::ostream& out) {
  const auto images = vertex_images(o.dim);
  nlohmann::ordered_json j;
  j["M"] = o.dim;
  auto rows = nlohmann::ordered_json::array();
  for (const auto& im : images) rows.push_back(im.coords());
  j["vertices"] = std::move(rows);
  double lo = 0.0, hi = 0.0;
  bool first = true;
  for (std::size_t a = 0; a < images.size(); ++a)
    for (std::size_t b = a + 1; b < images.size(); ++b) {
      const double d2 = squared_distance(images[a].coords(), images[b].coords());
      lo = first ? d2 : std::min(lo, d2);
      hi = first ? d2 : std::max(hi, d2);
      first = false;
    }
  j["pairwise_distance_sq"] = {{"min", lo}, {"max", hi}};
  j["regular"] = lo == hi;
  out << dump(j);
  return kOk;
}

inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Search, certify and analyze SIC-POVMs in small dimensions", "sicpovm"};
  app.require_subcommand(1);
  Options o;

  auto* search_cmd = app.add_subcommand("search", "Search for a Weyl-Heisenberg SIC fiducial");
  search_cmd->add_option("--dim", o.dim, "Hilbert space dimension N")
      ->required()
      ->check(CLI::Range(std::size_t{1}, std::size_t{64}));
  search_cmd->add_option("--seed", o.seed, "Base seed; restart r uses seed + r")->capture_default_str();
  search_cmd->add_option("--restarts", o.restarts, "Number of random starts")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  search_cmd->add_option("--tol", o.tol, "Certification tolerance")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  search_cmd->add_option("--out", o.out, "Output fiducial file (default: stdout)");
  search_cmd->add_flag("--no-timestamp", o.no_timestamp, "Omit the timestamp metadata field");

  auto* verify_cmd = app.add_subcommand("verify", "Certify the orbit of a fiducial file");
  verify_cmd->add_option("file", o.in, "Fiducial file")->required();
  verify_cmd->add_option("--tol", o.tol, "Certification tolerance")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  auto* orbit_cmd = app.add_subcommand("orbit", "Print the N^2 orbit states of a fiducial file");
  orbit_cmd->add_option("file", o.in, "Fiducial file")->required();

  auto* report_cmd =
      app.add_subcommand("report", "Hermitian-space coordinates and simplex geometry of an orbit");
  report_cmd->add_option("file", o.in, "Fiducial file")->required();

  auto* demo_cmd = app.add_subcommand("moment-demo", "Moment-map images of the coordinate points");
  o.dim = 3;
  demo_cmd->add_option("--dim", o.dim, "Number of homogeneous coordinates M")
      ->check(CLI::Range(std::size_t{1}, std::size_t{4096}))
      ->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(std::move(reversed));
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "sicpovm: " << e.what() << "\n";
    return kUsage;
  }
  try {
    if (search_cmd->parsed()) return cmd_search(o, out, err);
    if (verify_cmd->parsed()) return cmd_verify(o, out);
    if (orbit_cmd->parsed()) return cmd_orbit(o, out);
    if (report_cmd->parsed()) return cmd_report(o, out);
    if (demo_cmd->parsed()) return cmd_moment_demo(o, out);
  } catch (const DataFormatError& e) {
    err << "sicpovm: data format error: " << e.what() << "\n";
    return kDataFormat;
  } catch (const IoError& e) {
    err << "sicpovm: I/O error: " << e.what() << "\n";
    return kIo;
  } catch (const std::exception& e) {
    err << "sicpovm: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace sicpovm::cli
