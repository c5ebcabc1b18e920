#include "cli.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>

#include "gradlab/gradlab.hpp"

namespace gradlab::cli {

namespace {

std::vector<double> parse_csv_numbers(const std::string& text, const std::string& flag) {
  std::vector<double> out;
  std::string tok;
  std::istringstream is(text);
  while (std::getline(is, tok, ',')) {
    try {
      std::size_t pos = 0;
      out.push_back(std::stod(tok, &pos));
      if (pos != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw CLI::ValidationError(flag, "bad number '" + tok + "'");
    }
  }
  if (out.empty()) throw CLI::ValidationError(flag, "expected a comma-separated list");
  return out;
}

Domain parse_domain(const std::string& box_text, const std::string& ball_text) {
  if (!box_text.empty() && !ball_text.empty())
    throw CLI::ValidationError("--box/--ball", "give at most one of --box and --ball");
  if (!box_text.empty()) {
    const auto nums = parse_csv_numbers(box_text, "--box");
    if (nums.size() % 2 != 0 || nums.empty())
      throw CLI::ValidationError("--box", "expected lo...,hi... (2k numbers)");
    const int d = static_cast<int>(nums.size() / 2);
    Vec lo(d), hi(d);
    for (int i = 0; i < d; ++i) {
      lo[i] = nums[static_cast<std::size_t>(i)];
      hi[i] = nums[static_cast<std::size_t>(i) + d];
    }
    return Domain::box(std::move(lo), std::move(hi));
  }
  if (!ball_text.empty()) {
    const auto nums = parse_csv_numbers(ball_text, "--ball");
    if (nums.size() < 2) throw CLI::ValidationError("--ball", "expected center...,radius");
    const int d = static_cast<int>(nums.size() - 1);
    Vec c(d);
    for (int i = 0; i < d; ++i) c[i] = nums[static_cast<std::size_t>(i)];
    return Domain::ball(std::move(c), nums.back());
  }
  return Domain::box(vec_of({-2.0, -2.0}), vec_of({2.0, 2.0}));
}

void print_run_header(std::uint64_t seed, const Tolerances& tol) {
  char buf[256];
  std::snprintf(buf, sizeof(buf),
                "seed=%llu tol_grad_norm=%g tol_residual=%g tol_equal=%g fd_step=%g "
                "singular_margin=%g",
                static_cast<unsigned long long>(seed), tol.tol_grad_norm, tol.tol_residual,
                tol.tol_equal, tol.fd_step, tol.singular_margin);
  std::cout << buf << "\n";
}

std::string describe(const Verdict& v) {
  std::ostringstream os;
  os << to_string(v.kind());
  switch (v.kind()) {
    case VerdictKind::Affine: {
      const auto& a = std::get<AffineVerdict>(v.outcome);
      os << " c1=" << format_point(a.c1) << " c0=" << a.c0;
      break;
    }
    case VerdictKind::Constant:
      os << " c0=" << std::get<ConstantVerdict>(v.outcome).c0;
      break;
    case VerdictKind::NotConstantNorm: {
      const auto& n = std::get<NotConstantNormVerdict>(v.outcome);
      os << " min=" << n.min << " max=" << n.max << " spread=" << n.spread;
      break;
    }
    case VerdictKind::NotConvex: {
      const auto& n = std::get<NotConvexVerdict>(v.outcome);
      os << " gap=" << n.gap << " u=" << format_point(n.u) << " v=" << format_point(n.v);
      break;
    }
    case VerdictKind::NotDifferentiable: {
      const auto& n = std::get<NotDifferentiableVerdict>(v.outcome);
      os << " point=" << format_point(n.point) << " instability=" << n.evidence;
      break;
    }
  }
  return os.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << content;
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

struct CommonFlags {
  std::string box_text, ball_text;
  std::uint64_t seed = 0;
  Tolerances tol;

  void attach(CLI::App* cmd, bool with_domain = true) {
    if (with_domain) {
      cmd->add_option("--box", box_text, "Box domain lo...,hi... (e.g. -2,-2,2,2)");
      cmd->add_option("--ball", ball_text, "Ball domain center...,radius");
    }
    cmd->add_option("--seed", seed, "Deterministic sampling seed (default 0)");
    cmd->add_option("--tol-grad", tol.tol_grad_norm, "Gradient-norm tolerance");
    cmd->add_option("--tol-res", tol.tol_residual, "Residual tolerance");
    cmd->add_option("--fd-step", tol.fd_step, "Central-difference step");
  }
};

}  // namespace

int run_cli(const std::vector<std::string>& args) {
  CLI::App app{"gradlab: distance fields, gradient-norm checks, affine classification"};
  app.require_subcommand(1);

  // check
  auto* check = app.add_subcommand("check", "Classify a field against the zoo claims");
  std::string check_field;
  std::string check_mode = "convex";
  std::string check_out;
  int check_samples = 100;
  check->add_option("--field", check_field, "Field spec, e.g. affine:0.6,0.8:1.0")->required();
  check->add_option("--mode", check_mode, "convex|concave (default convex)")
      ->check(CLI::IsMember({"convex", "concave"}));
  check->add_option("--samples", check_samples, "Sample count (default 100)");
  check->add_option("--out", check_out, "Write the verdict report JSON here");
  CommonFlags check_flags;
  check_flags.attach(check);

  // field
  auto* fieldcmd = app.add_subcommand("field", "Emit a distance-field grid (CSV, optional PGM)");
  std::string field_graph = "parabola";
  std::string field_out, field_pgm;
  std::string field_pgm_column = "value";
  int nx = 200, ny = 200;
  fieldcmd->add_option("--graph", field_graph, "Graph spec (parabola)");
  fieldcmd->add_option("--nx", nx, "Grid nodes along u1 (default 200)");
  fieldcmd->add_option("--ny", ny, "Grid nodes along u2 (default 200)");
  fieldcmd->add_option("--out", field_out, "CSV output path")->required();
  fieldcmd->add_option("--pgm", field_pgm, "Optional PGM output path");
  fieldcmd->add_option("--pgm-column", field_pgm_column, "value|gradnorm|class")
      ->check(CLI::IsMember({"value", "gradnorm", "class"}));
  CommonFlags field_flags;
  field_flags.attach(fieldcmd);

  // witness
  auto* witness = app.add_subcommand("witness", "Run proof-step probes and write a JSON report");
  std::string witness_field;
  std::string witness_mode = "convex";
  std::string witness_out;
  double witness_radius = 1.0;
  witness->add_option("--field", witness_field, "Field spec")->required();
  witness->add_option("--radius", witness_radius, "Largest fixed-point radius (default 1)");
  witness->add_option("--mode", witness_mode, "convex|concave")
      ->check(CLI::IsMember({"convex", "concave"}));
  witness->add_option("--out", witness_out, "Report JSON path");
  CommonFlags witness_flags;
  witness_flags.attach(witness);

  // zoo
  auto* zoo = app.add_subcommand("zoo", "List available field specs");

  std::vector<std::string> argv(args.rbegin(), args.rend());
  try {
    app.parse(argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      return app.exit(e);  // --help and friends
    }
    app.exit(e);
    return 2;
  }

  try {
    if (zoo->parsed()) {
      for (const ZooEntry& entry : zoo_catalog()) {
        std::printf("%-18s %-28s %s\n", entry.name.c_str(), entry.syntax.c_str(),
                    entry.notes.c_str());
      }
      return 0;
    }

    if (check->parsed()) {
      check_flags.tol.validate();
      print_run_header(check_flags.seed, check_flags.tol);
      const Domain domain = parse_domain(check_flags.box_text, check_flags.ball_text);
      const ScalarField field = make_zoo_field(check_field, domain.dim());
      const ClassifyMode mode =
          (check_mode == "concave") ? ClassifyMode::Concave : ClassifyMode::Convex;
      ClassifyOptions opts;
      opts.samples = check_samples;
      opts.seed = check_flags.seed;
      const Verdict verdict = classify_field(field, domain, check_flags.tol, mode, opts);
      std::cout << "verdict: " << describe(verdict) << "\n";
      if (!check_out.empty()) write_text_file(check_out, to_json(verdict));
      return verdict.contradicts(field.claims, mode == ClassifyMode::Convex) ? 1 : 0;
    }

    if (fieldcmd->parsed()) {
      field_flags.tol.validate();
      print_run_header(field_flags.seed, field_flags.tol);
      if (field_graph != "parabola")
        throw CLI::ValidationError("--graph", "unknown graph '" + field_graph + "'");
      const Domain domain = parse_domain(field_flags.box_text, field_flags.ball_text);
      if (!domain.is_box() || domain.dim() != 2)
        throw CLI::ValidationError("--box", "field needs a 2-D box domain");
      const Box& box = domain.as_box();
      GridSpec grid;
      grid.lo1 = box.lo[0];
      grid.lo2 = box.lo[1];
      grid.hi1 = box.hi[0];
      grid.hi2 = box.hi[1];
      grid.nx = nx;
      grid.ny = ny;
      const auto records = compute_grid(make_parabola_graph(), grid, field_flags.tol);
      write_grid_csv(records, field_out);
      std::cout << "wrote " << records.size() << " records to " << field_out << "\n";
      if (!field_pgm.empty()) {
        GridColumn col = GridColumn::Value;
        if (field_pgm_column == "gradnorm") col = GridColumn::GradNorm;
        if (field_pgm_column == "class") col = GridColumn::Class;
        write_grid_pgm(records, grid, col, field_pgm);
        std::cout << "wrote " << field_pgm << "\n";
      }
      return 0;
    }

    if (witness->parsed()) {
      witness_flags.tol.validate();
      print_run_header(witness_flags.seed, witness_flags.tol);
      const Domain domain = parse_domain(witness_flags.box_text, witness_flags.ball_text);
      const ScalarField field = make_zoo_field(witness_field, domain.dim());
      const ClassifyMode mode =
          (witness_mode == "concave") ? ClassifyMode::Concave : ClassifyMode::Convex;
      if (!(witness_radius > 0))
        throw CLI::ValidationError("--radius", "radius must be positive");
      WitnessOptions opts;
      opts.classify.seed = witness_flags.seed;
      opts.radii.clear();
      for (double r = witness_radius; r > 1e-3; r /= 10.0) opts.radii.push_back(r);
      opts.radii.push_back(std::min(witness_radius, 1e-3));
      const Verdict verdict = run_witness(field, domain, witness_flags.tol, mode, opts);
      const std::string json = to_json(verdict);
      if (!witness_out.empty()) {
        write_text_file(witness_out, json);
        std::cout << "wrote " << witness_out << "\n";
      } else {
        std::cout << json;
      }
      std::cout << "verdict: " << describe(verdict) << "\n";
      return verdict.contradicts(field.claims, mode == ClassifyMode::Convex) ? 1 : 0;
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const DimensionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}

}  // namespace gradlab::cli
