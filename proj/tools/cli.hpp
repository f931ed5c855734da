#pragma once

#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "jackhilb/jackhilb.hpp"

namespace jackhilb::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;
inline constexpr int kExitUsage = 2;

/// Bad or unparsable option values; reported as usage errors.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

struct ModelOptions {
  std::string model;
  std::optional<long> alpha, beta, gamma;

  void attach(CLI::App* app, bool model_required = true) {
    auto* m = app->add_option("--model", model, "plane | linebundle")
                  ->check(CLI::IsMember({"plane", "linebundle"}));
    if (model_required) m->required();
    app->add_option("--alpha", alpha, "plane weight alpha");
    app->add_option("--beta", beta, "plane weight beta");
    app->add_option("--gamma", gamma, "line bundle degree gamma >= 2");
  }

  SurfaceModel build() const {
    if (model == "plane") {
      if (!alpha || !beta) throw UsageError("--model plane needs --alpha and --beta");
      if (gamma) throw UsageError("--gamma does not apply to --model plane");
      return SurfaceModel::plane(*alpha, *beta);
    }
    if (!gamma) throw UsageError("--model linebundle needs --gamma");
    if (alpha || beta) throw UsageError("--alpha/--beta do not apply to --model linebundle");
    return SurfaceModel::line_bundle(*gamma);
  }
};

template <class F>
auto usage_guard(const std::string& what, F&& f) {
  try {
    return f();
  } catch (const std::invalid_argument& e) {
    throw UsageError(what + ": " + e.what());
  } catch (const io::ParseError& e) {
    throw UsageError(what + ": " + e.what());
  }
}

inline std::string read_source(const std::string& path, std::istream& in) {
  if (path == "-") return std::string(std::istreambuf_iterator<char>(in), {});
  std::ifstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot read '" + path + "'");
  return std::string(std::istreambuf_iterator<char>(f), {});
}

/// A class argument: a basis key literal such as [2,1] or [[1],[]], or
/// @FILE naming an equivclass document.
inline EquivClass class_argument(const std::string& text, const SurfaceModel& model,
                                 std::istream& in, const std::string& what) {
  if (!text.empty() && text.front() == '@') {
    const std::string body = read_source(text.substr(1), in);
    io::Document doc = usage_guard(what, [&] { return io::parse_document(body); });
    if (!std::holds_alternative<EquivClass>(doc))
      throw UsageError(what + ": expected an equivclass document");
    EquivClass a = std::get<EquivClass>(std::move(doc));
    require_same_model(a.model(), model);
    return a;
  }
  const Bipartition key = usage_guard(what, [&] {
    if (model.is_plane()) return Bipartition{io::parse_partition(text), {}};
    return io::parse_bipartition(text);
  });
  return EquivClass::basis_element(model, key);
}

}  // namespace detail

/// Runs one command line. Documents go to `out`, diagnostics to `err`.
/// Exit status: 0 success, 1 domain error, 2 usage error.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
               std::istream& in = std::cin) {
  CLI::App app{"Exact computations with Jack polynomials and equivariant cohomology of Hilbert schemes",
               "jackhilb"};
  app.require_subcommand(1);
  std::string format = "json";
  unsigned jobs = 1;
  app.add_option("--format", format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--jobs", jobs, "worker threads for table computations")
      ->check(CLI::PositiveNumber);

  // jack
  std::string jack_lambda, jack_param, jack_basis = "m";
  auto* jack = app.add_subcommand("jack", "Jack polynomial P_lambda^(r)");
  jack->add_option("--lambda", jack_lambda, "partition, e.g. [2,1]")->required();
  jack->add_option("--param", jack_param, "Jack parameter r > 0, e.g. 1/2")->required();
  jack->add_option("--basis", jack_basis, "output basis: m | p | pnorm | jack:r");

  // convert
  std::string convert_input, convert_json, convert_to;
  auto* conv = app.add_subcommand("convert", "change basis of a symmetric function document");
  auto* conv_in = conv->add_option("--input", convert_input, "sympoly document file, '-' for stdin");
  auto* conv_js = conv->add_option("--json", convert_json, "inline sympoly document");
  conv_in->excludes(conv_js);
  conv->add_option("--to", convert_to, "m | p | pnorm | jack:r")->required();

  // pair / star
  detail::ModelOptions pair_model, star_model;
  std::string pair_left, pair_right, star_left, star_right;
  auto* pair = app.add_subcommand("pair", "bilinear form on H^{2n}_T");
  pair_model.attach(pair);
  pair->add_option("--left", pair_left, "basis key or @FILE")->required();
  pair->add_option("--right", pair_right, "basis key or @FILE")->required();
  auto* starc = app.add_subcommand("star", "star product on H^{2n}_T");
  star_model.attach(starc);
  starc->add_option("--left", star_left, "basis key or @FILE")->required();
  starc->add_option("--right", star_right, "basis key or @FILE")->required();

  // cup
  std::string cup_q1, cup_q2, cup_model_name = "linebundle";
  long cup_gamma = 0;
  auto* cup = app.add_subcommand("cup", "ordinary cup product of Q-basis monomials on X(gamma)^[n]");
  cup->add_option("--q1", cup_q1, "bipartition, e.g. [[],[1]]")->required();
  cup->add_option("--q2", cup_q2, "bipartition")->required();
  cup->add_option("--gamma", cup_gamma, "gamma >= 2")->required();
  cup->add_option("--model", cup_model_name, "linebundle")->check(CLI::IsMember({"linebundle"}));

  // structconsts
  detail::ModelOptions sc_model;
  int sc_n = 0;
  std::string sc_basis = "fixedpoint";
  auto* sc = app.add_subcommand("structconsts", "multiplication table");
  sc_model.attach(sc);
  sc->add_option("--n", sc_n, "number of points")->required()->check(CLI::NonNegativeNumber);
  sc->add_option("--basis", sc_basis, "fixedpoint | Q-graded")
      ->check(CLI::IsMember({"fixedpoint", "Q-graded"}));

  // heis-check
  detail::ModelOptions hc_model;
  int hc_maxdeg = 5, hc_maxk = 4;
  auto* hc = app.add_subcommand("heis-check", "verify the Heisenberg commutation relations");
  hc_model.attach(hc);
  hc->add_option("--maxdeg", hc_maxdeg, "largest basis-state degree")->check(CLI::NonNegativeNumber);
  hc->add_option("--maxk", hc_maxk, "largest |mode|")->check(CLI::PositiveNumber);

  for (auto* sub : {jack, conv, pair, starc, cup, sc, hc}) sub->fallthrough();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }

  auto emit = [&](const io::Document& doc) {
    if (format == "csv") {
      if (!std::holds_alternative<StructureTable>(doc))
        throw UsageError("--format csv applies to structconsts only");
      out << io::serialize_csv(std::get<StructureTable>(doc));
    } else {
      out << io::serialize(doc);
    }
  };

  try {
    if (*jack) {
      const Partition lambda = detail::usage_guard("--lambda", [&] { return io::parse_partition(jack_lambda); });
      const Rational r = detail::usage_guard("--param", [&] { return parse_rational(jack_param); });
      const BasisLabel basis = detail::usage_guard("--basis", [&] { return io::parse_basis(jack_basis); });
      emit(convert(jack_in_m(lambda, r), basis));
    } else if (*conv) {
      if (convert_input.empty() && convert_json.empty())
        throw UsageError("convert needs --input or --json");
      const BasisLabel target = detail::usage_guard("--to", [&] { return io::parse_basis(convert_to); });
      const std::string text = convert_json.empty() ? detail::read_source(convert_input, in) : convert_json;
      io::Document doc = detail::usage_guard("input", [&] { return io::parse_document(text); });
      if (!std::holds_alternative<SymPoly>(doc)) throw UsageError("input: expected a sympoly document");
      emit(convert(std::get<SymPoly>(doc), target));
    } else if (*pair) {
      const SurfaceModel model = pair_model.build();
      const EquivClass a = detail::class_argument(pair_left, model, in, "--left");
      const EquivClass b = detail::class_argument(pair_right, model, in, "--right");
      emit(pairing(a, b));
    } else if (*starc) {
      const SurfaceModel model = star_model.build();
      const EquivClass a = detail::class_argument(star_left, model, in, "--left");
      const EquivClass b = detail::class_argument(star_right, model, in, "--right");
      emit(star(a, b));
    } else if (*cup) {
      const Bipartition q1 = detail::usage_guard("--q1", [&] { return io::parse_bipartition(cup_q1); });
      const Bipartition q2 = detail::usage_guard("--q2", [&] { return io::parse_bipartition(cup_q2); });
      const SurfaceModel model = SurfaceModel::line_bundle(cup_gamma);
      emit(ordinary_cup(HeisMonomial{q1, HeisBasis::Q}, HeisMonomial{q2, HeisBasis::Q}, model));
    } else if (*sc) {
      const SurfaceModel model = sc_model.build();
      const TableBasis basis = sc_basis == "fixedpoint" ? TableBasis::FixedPoint : TableBasis::QGraded;
      emit(structure_constants(sc_n, model, basis, jobs));
    } else if (*hc) {
      const SurfaceModel model = hc_model.build();
      const HeisenbergCheck check = check_heisenberg(model, hc_maxdeg, hc_maxk);
      io::CheckReport report{check.failures.empty() ? "all commutators match" : "commutator mismatch",
                             check.checked, check.failures};
      emit(report);
      return check.failures.empty() ? kExitOk : kExitDomain;
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitDomain;
  }
  return kExitOk;
}

}  // namespace jackhilb::cli
