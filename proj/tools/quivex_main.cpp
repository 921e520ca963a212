// Command-line frontend: wires the library to quiver files and CSV/JSON
// reports. Rationals are written p/q on the command line; floats appear only
// in outputs, printed with 12 significant digits. Exit codes: 0 success,
// 1 domain error, 2 budget error.

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "quivex/quivex.hpp"

namespace {

using nlohmann::json;
using namespace quivex;

std::vector<Rational> parse_rational_list(const std::string& s) {
  std::vector<Rational> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(parse_rational(item));
  }
  if (out.empty()) fail(errc::malformed_input, "empty rational list");
  return out;
}

std::string csv_field(const std::string& s) {
  if (s.find(',') == std::string::npos) return s;
  return "\"" + s + "\"";
}

struct QuiverInput {
  Quiver q;
  std::string path;
  std::string digest;
};

QuiverInput load_quiver(const std::string& path) {
  const std::string bytes = read_file(path);
  return {Quiver::parse(bytes), path, fnv1a64_hex(bytes)};
}

/// Slope flags shared by several subcommands: either explicit --theta/--kappa
/// lists or --from-d (Theta = {d,_}, kappa = -(d,_)).
struct SlopeFlags {
  std::string theta, kappa;
  bool from_d = false;

  SlopeFunction resolve(const Quiver& q, const IVec& d) const {
    if (from_d) {
      if (d.empty()) fail(errc::malformed_input, "--from-d needs --d");
      return slope_from_d(q, d);
    }
    if (theta.empty() || kappa.empty())
      fail(errc::malformed_input, "need --theta and --kappa, or --from-d");
    return make_slope_function(parse_rational_list(theta), parse_rational_list(kappa));
  }

  void add_to(CLI::App* cmd) {
    cmd->add_option("--theta", theta, "Theta as comma-separated rationals, canonical vertex order");
    cmd->add_option("--kappa", kappa, "kappa as comma-separated rationals (all positive)");
    cmd->add_flag("--from-d", from_d, "derive Theta={d,_}, kappa=-(d,_) from --d");
  }
};

void emit(const std::string& out_path, const std::string& content) {
  if (out_path.empty())
    std::cout << content;
  else
    write_file(out_path, content);
}

std::string epsilon_line(const EpsilonResult& r) {
  if (r.unconstrained()) return "Unconstrained";
  return to_string(*r.value) + " witness " + to_string(*r.witness);
}

json certificate_json(const SpectralCertificate& cert, const std::vector<Rational>& grid) {
  json j;
  j["lambda1"] = cert.lambda1;
  j["lambda2"] = cert.lambda2;
  j["v1"] = std::vector<double>(cert.v1.data(), cert.v1.data() + cert.v1.size());
  j["gamma"] = cert.gamma;
  j["gamma_threshold"] = cert.gamma_threshold;
  j["lambda_H"] = cert.lambda_h_applicable ? json(cert.lambda_h) : json(nullptr);
  j["C"] = cert.c_constant;
  j["flags"] = {{"connected", cert.connected},
                {"wild", cert.wild},
                {"interior", cert.interior},
                {"gamma_ok", cert.gamma_ok}};
  j["valid"] = cert.valid;
  j["verdict"] = "certified";
  auto table = json::array();
  for (const auto& delta : grid)
    table.push_back({{"delta", to_string(delta)}, {"bound", cert.bound(to_double(delta))}});
  j["bound_table"] = std::move(table);
  return j;
}

json fpmat_json(const FpMat& m) {
  auto rows = json::array();
  for (int r = 0; r < m.rows; ++r) {
    auto row = json::array();
    for (int c = 0; c < m.cols; ++c) row.push_back(m.at(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

int dispatch(int argc, char** argv) {
  CLI::App app{
      "quivex: expansion properties of quiver representations.\n"
      "Dimension vectors are given in the canonical vertex order (sources\n"
      "first, ties lexicographic). Rationals are written p/q.\n"
      "CSV columns: scan -> k,delta,epsilon,witness; kronecker --curve ->\n"
      "delta,zeta,epsilon_bound; coxeter --slopes -> k,dim,slope,gap."};
  app.require_subcommand(1);

  std::string quiver_path, out_path;
  IVec dvec, evec;
  long long budget = kDefaultLatticeBudget;
  long long subspace_budget = kDefaultSubspaceBudget;

  auto add_quiver_arg = [&](CLI::App* cmd) {
    cmd->add_option("quiver", quiver_path, "quiver file (text or JSON)")->required();
  };

  // classify
  auto* c_classify = app.add_subcommand("classify", "Dynkin / extended Dynkin / wild type");
  add_quiver_arg(c_classify);

  // form
  auto* c_form = app.add_subcommand("form", "Euler, symmetrized and antisymmetrized form values");
  add_quiver_arg(c_form);
  c_form->add_option("--d", dvec, "left vector")->required()->expected(-1);
  c_form->add_option("--e", evec, "right vector")->required()->expected(-1);

  // embeds
  auto* c_embeds = app.add_subcommand("embeds", "decide e -> d (general subrepresentation)");
  add_quiver_arg(c_embeds);
  c_embeds->add_option("--e", evec, "subrepresentation dimension vector")->required()->expected(-1);
  c_embeds->add_option("--d", dvec, "ambient dimension vector")->required()->expected(-1);
  c_embeds->add_option("--budget", budget, "lattice-point budget");

  // subreps
  auto* c_subreps = app.add_subcommand("subreps", "all general subrepresentation dimension vectors");
  add_quiver_arg(c_subreps);
  c_subreps->add_option("--d", dvec, "ambient dimension vector")->required()->expected(-1);
  c_subreps->add_option("--budget", budget, "lattice-point budget");
  c_subreps->add_option("--out", out_path, "write one vector per line");

  // epsilon
  std::string which = "eff", delta_list;
  SlopeFlags eps_slope;
  auto* c_eps = app.add_subcommand("epsilon", "expansion coefficient eps_d(delta)");
  add_quiver_arg(c_eps);
  c_eps->add_option("--which", which, "eff | opt")->check(CLI::IsMember({"eff", "opt"}));
  c_eps->add_option("--d", dvec, "dimension vector")->required()->expected(-1);
  c_eps->add_option("--delta", delta_list, "rational or comma list in (0,1)")->required();
  eps_slope.add_to(c_eps);
  c_eps->add_option("--budget", budget, "lattice-point budget");

  // exists
  std::string eps_value;
  SlopeFlags exists_slope;
  auto* c_exists = app.add_subcommand("exists", "does a (delta,eps)-expander of dimension d exist");
  add_quiver_arg(c_exists);
  c_exists->add_option("--d", dvec, "dimension vector")->required()->expected(-1);
  c_exists->add_option("--delta", delta_list, "rational in (0,1)")->required();
  c_exists->add_option("--eps", eps_value, "positive rational")->required();
  exists_slope.add_to(c_exists);
  c_exists->add_option("--budget", budget, "lattice-point budget");

  // scan
  long long kmax = 8;
  SlopeFlags scan_slope;
  auto* c_scan = app.add_subcommand("scan", "uniform scan eps_{k d}(delta), k = 1..kmax");
  add_quiver_arg(c_scan);
  c_scan->add_option("--d", dvec, "base dimension vector")->required()->expected(-1);
  c_scan->add_option("--delta", delta_list, "rational or comma list in (0,1)")->required();
  c_scan->add_option("--kmax", kmax, "number of multiples");
  c_scan->add_option("--which", which, "eff | opt")->check(CLI::IsMember({"eff", "opt"}));
  scan_slope.add_to(c_scan);
  c_scan->add_option("--budget", budget, "lattice-point budget");
  c_scan->add_option("--out", out_path, "write CSV here instead of stdout");

  // certify
  std::string grid_list = "1/10,2/10,3/10,4/10,5/10,6/10,7/10,8/10,9/10";
  bool do_search = false;
  auto* c_certify = app.add_subcommand("certify", "spectral uniform-expansion certificate");
  add_quiver_arg(c_certify);
  c_certify->add_option("--d", dvec, "dimension vector (omit with --search)")->expected(-1);
  c_certify->add_flag("--search", do_search, "search the rounding schedule along v1");
  c_certify->add_option("--deltas", grid_list, "delta grid for the bound table");
  c_certify->add_option("--out", out_path, "write certificate JSON here");

  // kronecker
  bool do_curve = false, do_translate = false;
  long long km = 3, kd1 = 1, kd2 = 1;
  std::string kk1 = "1", kk2 = "1", kdelta, keps;
  auto* c_kron = app.add_subcommand("kronecker", "closed forms for m-Kronecker quivers (m >= 3)");
  c_kron->add_flag("--curve", do_curve, "emit CSV delta,zeta,epsilon_bound over --deltas");
  c_kron->add_flag("--translate", do_translate, "translate (delta,eps) into (delta',eps')");
  c_kron->add_option("--m", km, "arrow count")->required();
  c_kron->add_option("--d1", kd1, "dimension at the source")->required();
  c_kron->add_option("--d2", kd2, "dimension at the sink")->required();
  c_kron->add_option("--kappa1", kk1, "weight at the source");
  c_kron->add_option("--kappa2", kk2, "weight at the sink");
  c_kron->add_option("--deltas", grid_list, "delta grid for --curve");
  c_kron->add_option("--delta", kdelta, "delta for --translate");
  c_kron->add_option("--eps", keps, "eps for --translate");
  c_kron->add_option("--out", out_path, "write CSV here instead of stdout");

  // coxeter
  bool do_orbit = false, do_slopes = false;
  std::string vertex_id;
  long long nmax = 8;
  SlopeFlags cox_slope;
  auto* c_cox = app.add_subcommand("coxeter", "Coxeter orbits and slope convergence");
  add_quiver_arg(c_cox);
  c_cox->add_flag("--orbit", do_orbit, "print Phi^{-k} dim P_i");
  c_cox->add_flag("--slopes", do_slopes, "emit CSV k,dim,slope,gap");
  c_cox->add_option("--vertex", vertex_id, "vertex id")->required();
  c_cox->add_option("--nmax", nmax, "number of Coxeter steps");
  c_cox->add_option("--d", dvec, "dimension vector for --from-d")->expected(-1);
  cox_slope.add_to(c_cox);
  c_cox->add_option("--out", out_path, "write CSV here instead of stdout");

  // sample
  long long prime = 101;
  std::uint64_t seed = 1;
  long long samples = 1;
  bool do_check = false;
  SlopeFlags sample_slope;
  auto* c_sample = app.add_subcommand("sample", "random finite-field representations (empirical)");
  add_quiver_arg(c_sample);
  c_sample->add_option("--d", dvec, "dimension vector")->required()->expected(-1);
  c_sample->add_option("--p", prime, "prime modulus");
  c_sample->add_option("--seed", seed, "base seed; sample k uses seed+k");
  c_sample->add_option("--samples", samples, "number of consecutive seeds");
  c_sample->add_flag("--check", do_check, "run the empirical expander check");
  c_sample->add_option("--delta", kdelta, "delta for --check");
  c_sample->add_option("--eps", keps, "eps for --check");
  sample_slope.add_to(c_sample);
  c_sample->add_option("--subspace-budget", subspace_budget, "Grassmannian tuple budget");
  c_sample->add_option("--out", out_path, "write report JSON here");

  // verify-appendix
  int vn = 4, vtrials = 1000;
  auto* c_verify = app.add_subcommand("verify-appendix", "randomized hyperplane-estimate verifier");
  c_verify->add_option("--n", vn, "matrix dimension (>= 2)");
  c_verify->add_option("--trials", vtrials, "number of trials");
  c_verify->add_option("--seed", seed, "seed");
  c_verify->add_option("--out", out_path, "write report JSON here");

  CLI11_PARSE(app, argc, argv);

  if (c_classify->parsed()) {
    const auto in = load_quiver(quiver_path);
    const auto classes = classify(in.q);
    if (in.q.is_connected()) {
      const Spectrum s = cartan_spectrum(in.q);
      std::cout << to_string(classes.front().cls) << "; lambda1=" << fmt_double(s.eigenvalues(0));
      if (in.q.size() > 1) std::cout << ", lambda2=" << fmt_double(s.eigenvalues(1));
      std::cout << "\n";
    } else {
      for (std::size_t c = 0; c < classes.size(); ++c) {
        std::cout << "component " << c << " [";
        for (std::size_t i = 0; i < classes[c].vertices.size(); ++i)
          std::cout << (i ? " " : "") << in.q.vertex_ids()[classes[c].vertices[i]];
        std::cout << "]: " << to_string(classes[c].cls) << "\n";
      }
    }
    return 0;
  }

  if (c_form->parsed()) {
    const auto in = load_quiver(quiver_path);
    std::cout << "euler=" << euler_form(in.q, dvec, evec) << " sym=" << sym_form(in.q, dvec, evec)
              << " antisym=" << antisym_form(in.q, dvec, evec) << "\n";
    return 0;
  }

  if (c_embeds->parsed()) {
    const auto in = load_quiver(quiver_path);
    EmbedCache cache(in.q, budget);
    std::cout << (embeds(in.q, evec, dvec, cache) ? "true" : "false") << "\n";
    return 0;
  }

  if (c_subreps->parsed()) {
    const auto in = load_quiver(quiver_path);
    EmbedCache cache(in.q, budget);
    std::ostringstream body;
    for (const auto& e : general_subreps(in.q, dvec, cache)) body << to_string(e) << "\n";
    emit(out_path, body.str());
    return 0;
  }

  if (c_eps->parsed()) {
    const auto in = load_quiver(quiver_path);
    const SlopeFunction mu = eps_slope.resolve(in.q, dvec);
    EmbedCache cache(in.q, budget);
    const auto deltas = parse_rational_list(delta_list);
    for (const auto& delta : deltas) {
      const EpsilonResult r = which == "eff" ? epsilon_eff(in.q, mu, dvec, delta, budget)
                                             : epsilon_opt(in.q, mu, dvec, delta, cache);
      if (deltas.size() > 1) std::cout << "delta=" << to_string(delta) << ": ";
      std::cout << epsilon_line(r) << "\n";
    }
    return 0;
  }

  if (c_exists->parsed()) {
    const auto in = load_quiver(quiver_path);
    const SlopeFunction mu = exists_slope.resolve(in.q, dvec);
    EmbedCache cache(in.q, budget);
    const auto decision = expander_exists(in.q, mu, dvec, parse_rational(delta_list),
                                          parse_rational(eps_value), cache);
    if (decision.exists)
      std::cout << "true\n";
    else
      std::cout << "false witness " << to_string(*decision.violator) << "\n";
    return 0;
  }

  if (c_scan->parsed()) {
    const auto in = load_quiver(quiver_path);
    const SlopeFunction mu = scan_slope.resolve(in.q, dvec);
    EmbedCache cache(in.q, budget);
    const EpsilonKind kind = which == "eff" ? EpsilonKind::Effective : EpsilonKind::Optimal;
    std::ostringstream body, mins;
    body << "# input_digest=" << in.digest << " budget=" << budget << "\n";
    body << "k,delta,epsilon,witness\n";
    for (const auto& delta : parse_rational_list(delta_list)) {
      const auto rows = uniform_scan(in.q, mu, dvec, delta, kmax, kind, cache);
      std::optional<Rational> running;
      for (const auto& row : rows) {
        body << row.k << "," << to_string(delta) << ",";
        if (row.result.unconstrained())
          body << "Unconstrained,";
        else
          body << to_string(*row.result.value) << "," << csv_field(to_string(*row.result.witness));
        body << "\n";
        running = row.running_min;
      }
      mins << "# running_min delta=" << to_string(delta) << ": "
           << (running ? to_string(*running) : "Unconstrained") << "\n";
    }
    body << mins.str();
    emit(out_path, body.str());
    return 0;
  }

  if (c_certify->parsed()) {
    const auto in = load_quiver(quiver_path);
    SpectralCertificate cert;
    IVec d = dvec;
    if (do_search) {
      auto found = find_expander_dimvector(in.q);
      cert = found.cert;
      d = found.d;
    } else {
      if (d.empty()) fail(errc::malformed_input, "need --d or --search");
      cert = certificate(in.q, d);
    }
    json j = certificate_json(cert, parse_rational_list(grid_list));
    j["command"] = "certify";
    j["input"] = in.path;
    j["input_digest"] = in.digest;
    j["d"] = d;
    std::cout << "valid=" << (cert.valid ? "true" : "false") << " C=" << fmt_double(cert.c_constant)
              << " lambda1=" << fmt_double(cert.lambda1) << " lambda2=" << fmt_double(cert.lambda2)
              << " gamma=" << fmt_double(cert.gamma)
              << " threshold=" << fmt_double(cert.gamma_threshold) << " lambda_H="
              << (cert.lambda_h_applicable ? fmt_double(cert.lambda_h) : std::string("n/a"))
              << " d=" << to_string(d) << "\n";
    if (!out_path.empty()) write_file(out_path, j.dump(2) + "\n");
    return 0;
  }

  if (c_kron->parsed()) {
    if (do_curve == do_translate)
      fail(errc::malformed_input, "pick exactly one of --curve / --translate");
    const KroneckerInstance inst(km, kd1, kd2, parse_rational(kk1), parse_rational(kk2));
    if (do_translate) {
      if (kdelta.empty() || keps.empty()) fail(errc::malformed_input, "--translate needs --delta and --eps");
      const auto [dp, ep] = kronecker_translate(inst, parse_rational(kdelta), parse_rational(keps));
      std::cout << "delta_prime=" << to_string(dp) << " eps_prime=" << to_string(ep) << "\n";
      return 0;
    }
    std::ostringstream body;
    body << "delta,zeta,epsilon_bound\n";
    for (const auto& delta : parse_rational_list(grid_list)) {
      body << to_string(delta) << ","
           << fmt_double(kronecker_zeta(inst.m, Rational(inst.d2, inst.d1), to_double(delta)))
           << "," << fmt_double(kronecker_epsilon_bound(inst, delta)) << "\n";
    }
    emit(out_path, body.str());
    return 0;
  }

  if (c_cox->parsed()) {
    if (do_orbit == do_slopes) fail(errc::malformed_input, "pick exactly one of --orbit / --slopes");
    const auto in = load_quiver(quiver_path);
    const int vertex = in.q.index_of(vertex_id);
    if (do_orbit) {
      const auto orbit = tau_orbit(in.q, vertex, nmax);
      for (std::size_t k = 0; k < orbit.size(); ++k)
        std::cout << "k=" << k << " dim=" << to_string(orbit[k]) << "\n";
      return 0;
    }
    const SlopeFunction mu = cox_slope.resolve(in.q, dvec);
    const auto report = slope_convergence_report(in.q, mu, vertex, nmax);
    std::ostringstream body;
    body << "# input_digest=" << in.digest << " rho=" << fmt_double(report.rho)
         << " mu_limit=" << fmt_double(report.mu_limit) << "\n";
    body << "k,dim,slope,gap\n";
    for (const auto& row : report.rows)
      body << row.k << "," << csv_field(to_string(row.dim)) << "," << to_string(row.slope_value)
           << "," << fmt_double(row.gap) << "\n";
    emit(out_path, body.str());
    return 0;
  }

  if (c_sample->parsed()) {
    const auto in = load_quiver(quiver_path);
    json report;
    report["command"] = "sample";
    report["input"] = in.path;
    report["input_digest"] = in.digest;
    report["p"] = prime;
    report["seed"] = seed;
    report["samples"] = samples;
    report["subspace_budget"] = subspace_budget;
    report["verdict_kind"] = "empirical";
    auto rows = json::array();
    std::optional<SlopeFunction> mu;
    if (do_check) mu = sample_slope.resolve(in.q, dvec);
    for (long long s = 0; s < samples; ++s) {
      const std::uint64_t sample_seed = seed + static_cast<std::uint64_t>(s);
      const FiniteFieldRep rep = sample_rep(in.q, dvec, prime, sample_seed);
      json row;
      row["seed"] = sample_seed;
      auto maps = json::array();
      for (const auto& m : rep.maps) maps.push_back(fpmat_json(m));
      row["maps"] = std::move(maps);
      auto dims = json::array();
      for (const auto& e : all_subrep_dims(in.q, rep, subspace_budget)) dims.push_back(e);
      row["subrep_dims"] = std::move(dims);
      if (do_check) {
        const auto check = empirical_expander_check(in.q, rep, *mu, parse_rational(kdelta),
                                                    parse_rational(keps), subspace_budget);
        row["expander_check"] = check.pass ? "pass" : "fail";
        if (!check.pass) {
          row["violator"] = *check.violator;
          auto wit = json::array();
          for (const auto& m : check.violating_subspaces) wit.push_back(fpmat_json(m));
          row["violating_subspaces"] = std::move(wit);
        }
      }
      rows.push_back(std::move(row));
    }
    report["rows"] = std::move(rows);
    const std::string text = report.dump(2) + "\n";
    if (out_path.empty())
      std::cout << text;
    else
      write_file(out_path, text);
    return 0;
  }

  if (c_verify->parsed()) {
    const auto report = verify_appendix_lemma(vn, vtrials, seed);
    std::cout << report.passes << "/" << report.trials
              << " pass; worst margin " << fmt_double(report.worst_margin) << "\n";
    if (!out_path.empty()) {
      json j;
      j["command"] = "verify-appendix";
      j["n"] = vn;
      j["trials"] = report.trials;
      j["seed"] = seed;
      j["passes"] = report.passes;
      j["worst_margin"] = report.worst_margin;
      j["r_monotonicity_violations"] = report.r_monotonicity_violations;
      auto margins = json::array();
      for (const auto& row : report.rows) margins.push_back(row.margin);
      j["margins"] = std::move(margins);
      write_file(out_path, j.dump(2) + "\n");
    }
    return 0;
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return dispatch(argc, argv);
  } catch (const quivex::Error& e) {
    std::cerr << e.what() << "\n";
    return e.code() == quivex::errc::budget_exceeded ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
