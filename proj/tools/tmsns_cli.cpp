// Command-line front end: every library operation behind one subcommand,
// with deterministic CSV/JSON output for scripting and offline plotting.

#include <array>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "tmsns/fock.hpp"
#include "tmsns/majorization.hpp"
#include "tmsns/scan.hpp"
#include "tmsns/schmidt.hpp"
#include "tmsns/witness.hpp"

#include "config.hpp"
#include "output.hpp"

namespace {

using namespace tmsns;
using cli::Config;
using cli::Json;
using cli::OutputRecord;

constexpr int kOk = 0;         // Majorizes / stochastic / check passed
constexpr int kFalse = 1;      // DoesNotMajorize / not stochastic / check failed
constexpr int kUsage = 2;      // flag or argument errors
constexpr int kNumeric = 3;    // TruncationOverflow, CutoffTooSmall, ...
constexpr int kUndecided = 4;  // verdict within the slack band

std::pair<StateLabel, StateLabel> parse_pair(const std::string& text) {
  int a = 0, b = 0, c = 0, d = 0;
  char extra = 0;
  if (std::sscanf(text.c_str(), "%d,%d:%d,%d%c", &a, &b, &c, &d, &extra) != 4) {
    throw std::invalid_argument("--pair must look like NA1,NB1:NA2,NB2");
  }
  return {StateLabel(a, b), StateLabel(c, d)};
}

WitnessFamily parse_family(const std::string& name) {
  if (name == "d") return WitnessFamily::D;
  if (name == "a10-11") return WitnessFamily::A1011;
  if (name == "a00-11") return WitnessFamily::A0011;
  if (name == "a-prime") return WitnessFamily::APrime;
  throw std::invalid_argument("--family must be one of d, a10-11, a00-11, a-prime");
}

int outcome_exit(Outcome o) {
  switch (o) {
    case Outcome::Majorizes: return kOk;
    case Outcome::DoesNotMajorize: return kFalse;
    case Outcome::Undecided: return kUndecided;
  }
  return kUndecided;
}

struct SchmidtArgs {
  int na = 0, nb = 0;
  double lambda = 0.0;
  double eps_tail = 0.0;
  std::size_t count = 0;  // 0 = automatic from the certified prefix
  bool nb_check = false;  // compare against the negative-binomial closed form
  std::string format = "csv";
};

int cmd_schmidt(const SchmidtArgs& args, const Config& cfg) {
  const StateLabel label(args.na, args.nb);
  const Squeezing lambda(args.lambda);
  if (args.nb_check && args.nb != 0) {
    throw std::invalid_argument("--nb-check applies to the N_B = 0 family only");
  }
  std::size_t count = args.count;
  if (count == 0) {
    count = distribution(label, lambda, args.eps_tail, {cfg.max_terms, 0}).probs.size();
  }
  const SchmidtSpectrum spec = schmidt_spectrum(label, lambda, count);

  OutputRecord rec;
  rec.command = "schmidt";
  rec.params["na"] = args.na;
  rec.params["nb"] = args.nb;
  rec.params["lambda"] = args.lambda;
  rec.params["eps_tail"] = args.eps_tail;
  rec.params["count"] = count;
  rec.params["format"] = args.format;
  rec.columns = {"m", "C_m", "C_m_squared"};
  for (std::size_t m = 0; m < spec.amplitudes.size(); ++m) {
    const double c = spec.amplitudes[m];
    rec.rows.push_back({Json(m), Json(c), Json(c * c)});
  }
  rec.footer["tail_mass"] = spec.tail_mass;
  int code = kOk;
  if (args.nb_check) {
    const double dev = negative_binomial_check(args.na, lambda, static_cast<int>(count));
    rec.footer["negative_binomial_max_dev"] = dev;
    code = dev <= cfg.identity_tol ? kOk : kFalse;
  }
  cli::write_record(std::cout, rec, args.format);
  return code;
}

struct MajorizeArgs {
  std::string pair;
  double lambda = 0.0;
  double eps_tail = 0.0;
  std::string format = "csv";
};

int cmd_majorize(const MajorizeArgs& args, const Config& cfg) {
  const auto [pl, ql] = parse_pair(args.pair);
  const Squeezing lambda(args.lambda);
  const auto [p, q] =
      matched_distributions(pl, ql, lambda, args.eps_tail, {cfg.max_terms, 0});
  const MajorizationVerdict v = majorizes(p, q);

  OutputRecord rec;
  rec.command = "majorize";
  rec.params["pair"] = args.pair;
  rec.params["lambda"] = args.lambda;
  rec.params["eps_tail"] = args.eps_tail;
  rec.params["format"] = args.format;
  rec.columns = {"outcome", "witness_index", "margin", "slack"};
  rec.rows.push_back({Json(to_string(v.outcome)),
                      v.witness_index ? Json(*v.witness_index) : Json(nullptr), Json(v.margin),
                      Json(v.slack)});
  rec.footer["terms"] = p.probs.size();
  rec.footer["p_tail_mass"] = p.tail_mass;
  rec.footer["q_tail_mass"] = q.tail_mass;
  cli::write_record(std::cout, rec, args.format);
  return outcome_exit(v.outcome);
}

struct WitnessArgs {
  std::string family;
  double lambda = 0.0;
  std::size_t size = 64;
  bool verify = false;
  double eps_tail = 0.0;
  std::string format = "csv";
};

std::pair<StateLabel, StateLabel> family_pair(WitnessFamily family) {
  switch (family) {
    case WitnessFamily::D: return {StateLabel(0, 0), StateLabel(1, 0)};
    case WitnessFamily::A1011: return {StateLabel(1, 0), StateLabel(1, 1)};
    default: return {StateLabel(0, 0), StateLabel(1, 1)};
  }
}

int cmd_witness(const WitnessArgs& args, const Config& cfg) {
  const WitnessFamily family = parse_family(args.family);
  const Squeezing lambda(args.lambda);
  const StochTolerances tol{cfg.nonneg_tol, cfg.col_sum_tol};

  OutputRecord rec;
  rec.command = "witness";
  rec.params["family"] = args.family;
  rec.params["lambda"] = args.lambda;
  rec.params["size"] = args.size;
  rec.params["verify"] = args.verify;
  rec.params["eps_tail"] = args.eps_tail;
  rec.params["format"] = args.format;

  StochasticityReport rep;
  std::optional<ToeplitzWitness> toeplitz;
  std::optional<DenseWitness> dense;
  if (family == WitnessFamily::APrime) {
    dense = build_A_prime(lambda, args.size);
    rep = is_column_stochastic(*dense, tol);
    rec.columns = {"row", "col", "entry"};
    const std::size_t block = std::min<std::size_t>(8, args.size);
    for (std::size_t i = 0; i < block; ++i) {
      for (std::size_t j = 0; j <= std::min(dense->row_support(i), block - 1); ++j) {
        rec.rows.push_back({Json(i), Json(j), Json(dense->entry(i, j))});
      }
    }
  } else {
    switch (family) {
      case WitnessFamily::D: toeplitz = build_D(lambda, args.size); break;
      case WitnessFamily::A1011: toeplitz = build_A_10_11(lambda, args.size); break;
      default: toeplitz = build_A_00_11(lambda, args.size); break;
    }
    rep = is_column_stochastic(*toeplitz, tol);
    rec.columns = {"n", "a_n"};
    for (std::size_t n = 0; n < toeplitz->coeffs.size(); ++n) {
      rec.rows.push_back({Json(n), Json(toeplitz->coeffs[n])});
    }
  }

  rec.footer["is_column_stochastic"] = rep.is_column_stochastic;
  rec.footer["max_row_sum"] = rep.max_row_sum;
  rec.footer["max_col_residual"] = rep.max_col_residual;
  rec.footer["judged_columns"] = rep.judged_columns;
  if (rep.first_negative) {
    rec.footer["first_negative_row"] = rep.first_negative->row;
    rec.footer["first_negative_col"] = rep.first_negative->col;
    rec.footer["first_negative_value"] = rep.first_negative->value;
  }
  if (args.verify) {
    const auto [pl, ql] = family_pair(family);
    const auto [p, q] = matched_distributions(pl, ql, lambda, args.eps_tail, {cfg.max_terms, 0});
    const double dev =
        dense ? verify_witness(*dense, p, q) : verify_witness(*toeplitz, p, q);
    char pair_text[32];
    std::snprintf(pair_text, sizeof pair_text, "%d,%d:%d,%d", pl.n_a, pl.n_b, ql.n_a, ql.n_b);
    rec.footer["verify_pair"] = pair_text;
    rec.footer["max_deviation"] = dev;
    rec.footer["identity_ok"] = dev <= cfg.identity_tol;
  }
  cli::write_record(std::cout, rec, args.format);
  return rep.is_column_stochastic ? kOk : kFalse;
}

struct DeconvolveArgs {
  std::string pair;
  double lambda = 0.0;
  std::size_t size = 0;  // 0 = automatic
  double eps_tail = 0.0;
  std::string format = "csv";
};

int cmd_deconvolve(const DeconvolveArgs& args, const Config& cfg) {
  const auto [pl, ql] = parse_pair(args.pair);
  const Squeezing lambda(args.lambda);
  const Distribution p = distribution(pl, lambda, args.eps_tail, {cfg.max_terms, 0});
  const Distribution q = distribution(ql, lambda, args.eps_tail, {cfg.max_terms, 0});
  std::size_t size = args.size;
  if (size == 0) size = std::min<std::size_t>({64, p.probs.size(), q.probs.size()});
  const ToeplitzWitness w = toeplitz_deconvolve(p, q, size);
  const StochasticityReport rep = is_column_stochastic(w, {cfg.nonneg_tol, cfg.col_sum_tol});
  const double roundtrip = verify_witness(w, p, q);

  OutputRecord rec;
  rec.command = "deconvolve";
  rec.params["pair"] = args.pair;
  rec.params["lambda"] = args.lambda;
  rec.params["size"] = size;
  rec.params["eps_tail"] = args.eps_tail;
  rec.params["format"] = args.format;
  rec.columns = {"n", "a_n"};
  for (std::size_t n = 0; n < w.coeffs.size(); ++n) {
    rec.rows.push_back({Json(n), Json(w.coeffs[n])});
  }
  rec.footer["is_column_stochastic"] = rep.is_column_stochastic;
  rec.footer["max_row_sum"] = rep.max_row_sum;
  if (rep.first_negative) {
    rec.footer["first_negative_row"] = rep.first_negative->row;
    rec.footer["first_negative_value"] = rep.first_negative->value;
  }
  rec.footer["roundtrip_max_dev"] = roundtrip;
  cli::write_record(std::cout, rec, args.format);
  return rep.is_column_stochastic ? kOk : kFalse;
}

struct ScanArgs {
  std::string family;
  std::string pair;
  double lambda_max = 0.95;
  double tol = 1e-6;
  int grid = 64;
  std::size_t size = 64;
  double eps_tail = 0.0;
  std::string format = "csv";
};

int cmd_scan(const ScanArgs& args, const Config& cfg) {
  if (args.family.empty() == args.pair.empty()) {
    throw std::invalid_argument("scan: give exactly one of --family or --pair");
  }

  OutputRecord rec;
  rec.command = "scan";
  ScanResult res;
  if (!args.family.empty()) {
    const WitnessFamily family = parse_family(args.family);
    rec.params["family"] = args.family;
    rec.params["lambda_max"] = args.lambda_max;
    rec.params["tol"] = args.tol;
    rec.params["size"] = args.size;
    rec.params["format"] = args.format;
    rec.footer["method"] = "witness-nonnegativity";
    try {
      res = witness_threshold(family, args.lambda_max, args.tol,
                              {args.size, {cfg.nonneg_tol, cfg.col_sum_tol}});
    } catch (const NoSignChange& e) {
      rec.columns = {"lambda", "verdict"};
      rec.footer["error"] = "no-sign-change";
      cli::write_record(std::cout, rec, args.format);
      std::cerr << e.what() << "\n";
      return kNumeric;
    }
    if (family != WitnessFamily::D) {
      rec.footer["closed_form_threshold"] = closed_form_threshold(family);
    }
  } else {
    const auto [pl, ql] = parse_pair(args.pair);
    rec.params["pair"] = args.pair;
    rec.params["lambda_max"] = args.lambda_max;
    rec.params["grid"] = args.grid;
    rec.params["tol"] = args.tol;
    rec.params["eps_tail"] = args.eps_tail;
    rec.params["format"] = args.format;
    rec.footer["method"] = "empirical-majorization";
    res = empirical_boundary(pl, ql, args.lambda_max, args.grid, args.eps_tail,
                             {args.tol, {cfg.max_terms, 0}});
  }
  rec.columns = {"lambda", "verdict"};
  for (const ScanSample& s : res.samples) {
    rec.rows.push_back({Json(s.lambda), Json(to_string(s.verdict))});
  }
  rec.footer["boundary_low"] = res.boundary_low;
  rec.footer["boundary_high"] = res.boundary_high;
  cli::write_record(std::cout, rec, args.format);
  return kOk;
}

struct OracleArgs {
  int na = 0, nb = 0;
  double lambda = 0.0;
  int cutoff = 80;
  double tol = 0.0;
  std::size_t count = 12;
  std::string format = "csv";
};

int cmd_oracle_check(const OracleArgs& args, const Config& cfg) {
  const StateLabel label(args.na, args.nb);
  const Squeezing lambda(args.lambda);
  const TruncatedTwoModeState state =
      oracle_state(label, lambda, args.cutoff, {cfg.oracle_deficit});

  const int dn = std::abs(args.na - args.nb);
  const bool canonical = label.canonical();
  double max_dev = 0.0;
  double off_band = 0.0;
  for (int i = 0; i <= args.cutoff; ++i) {
    for (int j = 0; j <= args.cutoff; ++j) {
      const bool on_band = canonical ? (i - j == dn) : (j - i == dn);
      if (!on_band) off_band = std::max(off_band, std::fabs(state.at(i, j)));
    }
  }
  std::vector<std::array<double, 2>> band;  // closed-form prob, oracle prob
  for (int m = 0; m + dn <= args.cutoff; ++m) {
    const double oracle = canonical ? state.at(dn + m, m) : state.at(m, dn + m);
    const double c = schmidt_coefficient(label, m, lambda);
    band.push_back({c * c, oracle * oracle});
    max_dev = std::max(max_dev, std::fabs(c * c - oracle * oracle));
  }

  OutputRecord rec;
  rec.command = "oracle-check";
  rec.params["na"] = args.na;
  rec.params["nb"] = args.nb;
  rec.params["lambda"] = args.lambda;
  rec.params["cutoff"] = args.cutoff;
  rec.params["tol"] = args.tol;
  rec.params["format"] = args.format;
  rec.columns = {"m", "closed_form_prob", "oracle_prob", "abs_dev"};
  for (std::size_t m = 0; m < band.size() && m < args.count; ++m) {
    rec.rows.push_back({Json(m), Json(band[m][0]), Json(band[m][1]),
                        Json(std::fabs(band[m][0] - band[m][1]))});
  }
  rec.footer["max_dev"] = max_dev;
  rec.footer["off_band_max"] = off_band;
  rec.footer["norm_deficit"] = state.norm_deficit;
  rec.footer["dropped_mass"] = state.dropped_mass;
  cli::write_record(std::cout, rec, args.format);
  return (max_dev <= args.tol && off_band <= 1e-12) ? kOk : kFalse;
}

}  // namespace

int main(int argc, char** argv) {
  Config cfg;
  try {
    cfg = tmsns::cli::load_config();
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return kUsage;
  }

  CLI::App app{"Schmidt spectra, majorization ordering and column-stochastic witnesses "
               "for two-mode squeezed number states"};
  app.require_subcommand(1);
  const std::vector<std::string> formats{"csv", "json"};

  SchmidtArgs schmidt_args;
  schmidt_args.eps_tail = cfg.eps_tail;
  auto* sc_schmidt = app.add_subcommand("schmidt", "Schmidt coefficients C_m and probabilities");
  sc_schmidt->add_option("--na", schmidt_args.na, "excitation N_A")->required();
  sc_schmidt->add_option("--nb", schmidt_args.nb, "excitation N_B")->required();
  sc_schmidt->add_option("--lambda", schmidt_args.lambda, "squeezing in [0,1)")->required();
  sc_schmidt->add_option("--eps-tail", schmidt_args.eps_tail, "tail mass target");
  sc_schmidt->add_option("--count", schmidt_args.count, "rows to print (0 = automatic)");
  sc_schmidt->add_flag("--nb-check", schmidt_args.nb_check,
                       "check the N_B = 0 family against the negative-binomial form");
  sc_schmidt->add_option("--format", schmidt_args.format)->check(CLI::IsMember(formats));

  MajorizeArgs majorize_args;
  majorize_args.eps_tail = cfg.eps_tail;
  auto* sc_majorize = app.add_subcommand("majorize", "Partial-sum majorization verdict");
  sc_majorize->add_option("--pair", majorize_args.pair, "NA1,NB1:NA2,NB2")->required();
  sc_majorize->add_option("--lambda", majorize_args.lambda)->required();
  sc_majorize->add_option("--eps-tail", majorize_args.eps_tail);
  sc_majorize->add_option("--format", majorize_args.format)->check(CLI::IsMember(formats));

  WitnessArgs witness_args;
  witness_args.eps_tail = cfg.eps_tail;
  auto* sc_witness = app.add_subcommand("witness", "Build a witness family member and check it");
  sc_witness->add_option("--family", witness_args.family, "d | a10-11 | a00-11 | a-prime")
      ->required();
  sc_witness->add_option("--lambda", witness_args.lambda)->required();
  sc_witness->add_option("--size", witness_args.size, "truncation size");
  sc_witness->add_flag("--verify", witness_args.verify, "check the mapping identity");
  sc_witness->add_option("--eps-tail", witness_args.eps_tail);
  sc_witness->add_option("--format", witness_args.format)->check(CLI::IsMember(formats));

  DeconvolveArgs deconvolve_args;
  deconvolve_args.eps_tail = cfg.eps_tail;
  auto* sc_deconvolve =
      app.add_subcommand("deconvolve", "Solve for the Toeplitz witness mapping p to q");
  sc_deconvolve->add_option("--pair", deconvolve_args.pair, "NA1,NB1:NA2,NB2")->required();
  sc_deconvolve->add_option("--lambda", deconvolve_args.lambda)->required();
  sc_deconvolve->add_option("--size", deconvolve_args.size, "coefficients to solve (0 = auto)");
  sc_deconvolve->add_option("--eps-tail", deconvolve_args.eps_tail);
  sc_deconvolve->add_option("--format", deconvolve_args.format)->check(CLI::IsMember(formats));

  ScanArgs scan_args;
  scan_args.eps_tail = cfg.eps_tail;
  auto* sc_scan = app.add_subcommand("scan", "Locate lambda thresholds");
  sc_scan->add_option("--family", scan_args.family, "witness-nonnegativity scan");
  sc_scan->add_option("--pair", scan_args.pair, "empirical majorization scan");
  sc_scan->add_option("--lambda-max", scan_args.lambda_max);
  sc_scan->add_option("--tol", scan_args.tol, "bisection bracket width");
  sc_scan->add_option("--grid", scan_args.grid, "grid points before bisection");
  sc_scan->add_option("--size", scan_args.size, "witness truncation size");
  sc_scan->add_option("--eps-tail", scan_args.eps_tail);
  sc_scan->add_option("--format", scan_args.format)->check(CLI::IsMember(formats));

  OracleArgs oracle_args;
  oracle_args.tol = cfg.oracle_tol;
  auto* sc_oracle =
      app.add_subcommand("oracle-check", "Compare closed-form C_m against the Fock-space oracle");
  sc_oracle->add_option("--na", oracle_args.na)->required();
  sc_oracle->add_option("--nb", oracle_args.nb)->required();
  sc_oracle->add_option("--lambda", oracle_args.lambda)->required();
  sc_oracle->add_option("--cutoff", oracle_args.cutoff);
  sc_oracle->add_option("--tol", oracle_args.tol, "pass threshold on max deviation");
  sc_oracle->add_option("--count", oracle_args.count, "rows to print");
  sc_oracle->add_option("--format", oracle_args.format)->check(CLI::IsMember(formats));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (sc_schmidt->parsed()) return cmd_schmidt(schmidt_args, cfg);
    if (sc_majorize->parsed()) return cmd_majorize(majorize_args, cfg);
    if (sc_witness->parsed()) return cmd_witness(witness_args, cfg);
    if (sc_deconvolve->parsed()) return cmd_deconvolve(deconvolve_args, cfg);
    if (sc_scan->parsed()) return cmd_scan(scan_args, cfg);
    if (sc_oracle->parsed()) return cmd_oracle_check(oracle_args, cfg);
  } catch (const tmsns::Error& e) {
    std::cerr << e.what() << "\n";
    return kNumeric;
  } catch (const std::invalid_argument& e) {
    std::cerr << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
