#include "theta4/cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>

#include "theta4/io.hpp"
#include "theta4/labels.hpp"

namespace theta4::cli {

namespace {

using io::json;

struct Source {
  std::string points, inventory, cache_dir;
  int precision = 60;
  int jobs = 0;
};

void add_source(CLI::App* cmd, Source& s) {
  auto* p = cmd->add_option("--points", s.points, "points JSON file");
  auto* i = cmd->add_option("--inventory", s.inventory, "inventory written by `build`");
  p->excludes(i);
  cmd->add_option("--cache-dir", s.cache_dir, "reuse inventories built from --points");
  cmd->add_option("--precision", s.precision, "decimal digits")->capture_default_str();
  cmd->add_option("--jobs", s.jobs, "parallel workers (0 = all)")->capture_default_str();
}

quotient::Inventory load_inventory(const Source& s) {
  if (!s.inventory.empty()) return io::inventory_from_json(io::read_json_file(s.inventory));
  if (s.points.empty()) throw io::InputError("need --points or --inventory");
  auto pts = io::points_from_json(io::read_json_file(s.points));
  std::filesystem::path cached;
  if (!s.cache_dir.empty()) {
    cached = std::filesystem::path(s.cache_dir) /
             ("inventory-" + io::points_digest(pts) + "-p" + std::to_string(s.precision) + ".json");
    if (std::filesystem::exists(cached)) return io::inventory_from_json(io::read_json_file(cached.string()));
  }
  auto inv = quotient::build_inventory(pts, s.precision, s.jobs);
  if (!cached.empty()) {
    std::filesystem::create_directories(cached.parent_path());
    io::write_json_file(cached.string(), io::to_json(inv));
  }
  return inv;
}

std::string label_json(const std::vector<int>& l) { return json(l).dump(); }

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Theta-constant quotients of genus-4 curves on a quadric cone"};
  app.require_subcommand(1);

  Source bsrc;
  std::string build_out;
  auto* build = app.add_subcommand("build", "build curve, tritangents and contacts from 8 points");
  build->add_option("--points", bsrc.points, "points JSON file")->required();
  build->add_option("--out", build_out, "inventory output file")->required();
  build->add_option("--precision", bsrc.precision, "decimal digits of stored contact points")->capture_default_str();
  build->add_option("--jobs", bsrc.jobs, "parallel workers (0 = all)")->capture_default_str();

  Source tsrc;
  std::string type_filter;
  auto* tris = app.add_subcommand("tritangents", "print the labeled tritangent planes");
  add_source(tris, tsrc);
  tris->add_option("--type", type_filter, "only this exceptional type, e.g. \"(3,3)\"");

  std::string subset, sp1, sp2;
  auto* steiner = app.add_subcommand("steiner", "Steiner pairs of an even subset, or of p1 + p2");
  steiner->add_option("--subset", subset, "even subset, e.g. 1,2");
  steiner->add_option("--p1", sp1);
  steiner->add_option("--p2", sp2);

  Source qsrc;
  std::string qp1, qp2, request_file;
  std::uint64_t seed = 0;
  int max_restarts = 8;
  auto* quot = app.add_subcommand("quotient", "fourth-power quotient theta[p1]^4 / theta[p2]^4");
  add_source(quot, qsrc);
  quot->add_option("--p1", qp1, "even label, e.g. 1,2,3,4,5");
  quot->add_option("--p2", qp2, "even label");
  quot->add_option("--request", request_file, "request JSON instead of --p1/--p2");
  quot->add_option("--seed", seed, "selection seed")->capture_default_str();
  quot->add_option("--max-restarts", max_restarts)->capture_default_str();

  Source vsrc;
  std::string vp1, vp2, riemann_file;
  int theta_digits = 15;
  auto* verify = app.add_subcommand("verify", "compare a quotient against theta constants of a Riemann matrix");
  add_source(verify, vsrc);
  verify->add_option("--riemann", riemann_file, "Riemann matrix JSON")->required();
  verify->add_option("--p1", vp1)->required();
  verify->add_option("--p2", vp2)->required();
  verify->add_option("--theta-digits", theta_digits, "digits for the theta series")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*build) {
      auto pts = io::points_from_json(io::read_json_file(bsrc.points));
      io::write_json_file(build_out, io::to_json(quotient::build_inventory(pts, bsrc.precision, bsrc.jobs)));
      out << "wrote " << build_out << '\n';
      return kOk;
    }
    if (*tris) {
      auto inv = load_inventory(tsrc);
      json a = json::array();
      for (const auto& t : inv.tritangents)
        if (type_filter.empty() || delpezzo::type_name(t.type) == type_filter) a.push_back(io::to_json(t));
      out << a.dump(1) << '\n';
      return kOk;
    }
    if (*steiner) {
      const auto& L = genus4_labels();
      std::vector<int> v;
      if (!subset.empty()) {
        v = io::parse_label_list(subset);
      } else if (!sp1.empty() && !sp2.empty()) {
        v = f2::symmetric_difference(io::parse_label_list(sp1), io::parse_label_list(sp2));
      } else {
        throw io::InputError("need --subset or both --p1 and --p2");
      }
      if (v.size() % 2 != 0) throw io::InputError("Steiner sets are indexed by even subsets");
      json pairs = json::array();
      for (const auto& [a, b] : L.steiner_pairs(v)) pairs.push_back(json::array({a, b}));
      json basis = json::array();
      for (const auto& s : L.steiner_basis_subsets()) basis.push_back(s);
      out << json{{"subset", v}, {"pairs", pairs}, {"coordinate_basis", basis}}.dump(1) << '\n';
      return kOk;
    }
    if (*quot) {
      quotient::QuotientRequest req;
      if (!request_file.empty()) {
        req = io::request_from_json(io::read_json_file(request_file));
      } else {
        if (qp1.empty() || qp2.empty()) throw io::InputError("need --p1 and --p2, or --request");
        req.p1 = io::parse_label_list(qp1);
        req.p2 = io::parse_label_list(qp2);
        req.precision = qsrc.precision;
        req.seed = seed;
      }
      req.max_restarts = max_restarts;
      req.jobs = qsrc.jobs;
      // label errors are cheaper to report than building the inventory first
      for (const auto* p : {&req.p1, &req.p2})
        if (!genus4_labels().is_even_label(*p)) throw std::invalid_argument("label parity: " + label_json(*p) + " is not an even label");
      qsrc.precision = req.precision;
      auto inv = load_inventory(qsrc);
      out << io::to_json(quotient::assemble_quotient(req, inv)).dump(1) << '\n';
      return kOk;
    }
    if (*verify) {
      auto tau = io::riemann_from_json(io::read_json_file(riemann_file));
      auto diag = theta::validate_riemann(tau);
      quotient::QuotientRequest req;
      req.p1 = io::parse_label_list(vp1);
      req.p2 = io::parse_label_list(vp2);
      req.precision = vsrc.precision;
      req.jobs = vsrc.jobs;
      for (const auto* p : {&req.p1, &req.p2})
        if (!genus4_labels().is_even_label(*p)) throw std::invalid_argument("label parity: " + label_json(*p) + " is not an even label");
      auto inv = load_inventory(vsrc);
      auto res = quotient::assemble_quotient(req, inv);

      const auto& L = genus4_labels();
      auto z = L.form(quotient::cone_label());
      int pairing = f2::pairing(f2::difference(L.form(req.p1), z), f2::difference(L.form(req.p2), z));
      const double tol = theta::cross_check_tolerance(tau.stated_digits);
      auto table = theta::all_even_theta_constants(tau, theta_digits, vsrc.jobs);
      auto zeros = theta::vanishing_constants(table, tol);
      json report;
      report["riemann"] = {{"symmetry_defect", diag.symmetry_defect}, {"min_eigenvalue", diag.min_eigenvalue}};
      report["tolerance"] = tol;
      report["vanishing_count"] = zeros.size();
      {
        PrecisionScope scope(req.precision + quotient::kGuardDigits);
        report["algebraic_value"] = to_string(res.value, req.precision);
      }
      bool pass = false;
      if (zeros.size() == 1) {
        auto m = theta::match_quotient(table, res.value, pairing, tol, tol);
        PrecisionScope scope(theta_digits + 10);
        report["numeric_value"] = to_string(m.ratio, theta_digits);
        report["difference"] = m.error;
        report["vanishing_characteristic"] = f2::serialize(m.vanishing);
        report["matched"] = {f2::serialize(m.a), f2::serialize(m.b)};
        report["candidate_pairs"] = m.candidates;
        report["pairs_within_tolerance"] = m.within_tolerance;
        pass = m.error < tol;
      }
      report["pass"] = pass;
      out << report.dump(1) << '\n';
      return pass ? kOk : kMismatch;
    }
  } catch (const quotient::RestartsExhausted& e) {
    err << "error: " << e.what() << '\n';
    return kRestartsExhausted;
  } catch (const std::invalid_argument& e) {  // InputError, InvalidRiemann, label and geometry checks
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
  return kFailure;
}

}  // namespace theta4::cli
