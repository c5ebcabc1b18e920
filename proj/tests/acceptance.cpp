// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails. Run via `ctest -R acceptance` or directly from the build
// tree.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "gradlab/gradlab.hpp"
#include "oracles.hpp"

using namespace gradlab;
namespace fs = std::filesystem;

namespace {

struct Checker {
  int failures = 0;
  std::ostringstream detail;

  void expect(bool ok, const std::string& what) {
    if (!ok) {
      ++failures;
      if (failures <= 8) detail << "\n    - " << what;
    }
  }
};

double now_seconds() {
  using clock = std::chrono::steady_clock;
  static const clock::time_point start = clock::now();
  return std::chrono::duration<double>(clock::now() - start).count();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Vec seeded_unit(const CounterRng& rng, std::uint64_t k, int dim) {
  Vec v(dim);
  for (int j = 0; j < dim; ++j) v[j] = rng.gaussian(k * 32 + static_cast<std::uint64_t>(j));
  if (v.norm() == 0) v[0] = 1.0;
  return v / v.norm();
}

std::string affine_spec(const Vec& c1, double c0) {
  std::ostringstream os;
  os << "affine:";
  for (Eigen::Index i = 0; i < c1.size(); ++i) {
    if (i) os << ",";
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", c1[i]);
    os << buf;
  }
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", c0);
  os << ":" << buf;
  return os.str();
}

Domain sym_box(int dim, double half) {
  return Domain::box(Vec::Constant(dim, -half), Vec::Constant(dim, half));
}

// ---------------------------------------------------------------------------

void criterion_1_unit_gradient_norm(Checker& c) {
  const double t0 = now_seconds();
  const Tolerances tol;
  const GraphSpec parabola = make_parabola_graph();
  GridSpec grid{-2.0, -2.0, 2.0, 2.0, 200, 200};
  const auto records = compute_grid(parabola, grid, tol);

  ScalarField dist;
  dist.dim = 2;
  dist.label = "parabola-distance";
  dist.eval = [&parabola](const Vec& u) { return project_to_graph(parabola, u).value; };

  int checked = 0;
  double worst_identity = 0, worst_fd = 0;
  for (const GridRecord& r : records) {
    if (r.cls != SingularClass::Regular || !(r.value > 0.05)) continue;
    ++checked;
    worst_identity = std::max(worst_identity, std::abs(r.gradnorm - 1.0));
    const Vec fd = fd_gradient(dist, vec_of({r.u1, r.u2}), tol.fd_step);
    worst_fd = std::max(worst_fd, std::abs(fd.norm() - 1.0));
  }
  const double elapsed = now_seconds() - t0;

  c.expect(checked > 20000, "expected a mostly-Regular grid, got " + std::to_string(checked));
  c.expect(worst_identity < 1e-6,
           "projection-identity |grad| off unit by " + std::to_string(worst_identity));
  c.expect(worst_fd < 1e-4, "FD |grad| off unit by " + std::to_string(worst_fd));
  c.expect(elapsed < 10.0, "runtime " + std::to_string(elapsed) + "s exceeds 10s");
  std::printf("    [1] nodes checked=%d identity=%.3g fd=%.3g elapsed=%.2fs\n", checked,
              worst_identity, worst_fd, elapsed);
}

void criterion_2_closed_form(Checker& c) {
  const double t0 = now_seconds();
  const GraphSpec parabola = make_parabola_graph();
  const CounterRng rng(2026);
  int tested = 0;
  double worst_agree = 0, worst_residual = 0;
  for (std::uint64_t k = 0; tested < 1000; ++k) {
    c.expect(k < 1000000, "seeded rejection sampling exhausted");
    if (k >= 1000000) break;
    Vec u(2);
    u[0] = rng.uniform(2 * k, -3.0, 3.0);
    u[1] = rng.uniform(2 * k + 1, -3.0, 3.0);
    const double d = parabola_discriminant(u);
    if (!(d > 1e-6)) continue;
    ++tested;
    const double closed = parabola_projection(u);
    const ProjectionResult pr = project_to_graph(parabola, u);
    worst_agree = std::max(worst_agree, std::abs(closed - pr.minimizer[0]));
    const double p = 0.5 - u[1];
    worst_residual =
        std::max(worst_residual, std::abs(closed * closed * closed + p * closed - u[0] / 2.0));
  }
  const double elapsed = now_seconds() - t0;
  c.expect(worst_agree < 1e-8, "closed-form vs numeric " + std::to_string(worst_agree));
  c.expect(worst_residual < 1e-10, "cubic residual " + std::to_string(worst_residual));
  c.expect(elapsed < 2.0, "runtime " + std::to_string(elapsed) + "s exceeds 2s");
  std::printf("    [2] points=%d agree=%.3g residual=%.3g elapsed=%.2fs\n", tested, worst_agree,
              worst_residual, elapsed);
}

void criterion_3_theorem_verdicts(Checker& c) {
  const CounterRng rng(33);
  // Ten seeded affine fields across dims 1..5.
  for (std::uint64_t k = 0; k < 10; ++k) {
    const int dim = 1 + static_cast<int>(k % 5);
    Vec c1(dim);
    for (int j = 0; j < dim; ++j) c1[j] = rng.uniform(k * 8 + static_cast<std::uint64_t>(j), -2.0, 2.0);
    if (c1.norm() < 0.1) c1[0] += 1.0;
    const double c0 = rng.uniform(k * 8 + 7, -3.0, 3.0);
    const ScalarField f = make_zoo_field(affine_spec(c1, c0), dim);
    const Verdict v = classify_field(f, sym_box(dim, 2.0));
    if (v.kind() != VerdictKind::Affine) {
      c.expect(false, "affine field " + std::to_string(k) + " classified " +
                          std::string(to_string(v.kind())));
      continue;
    }
    const auto& a = std::get<AffineVerdict>(v.outcome);
    c.expect((a.c1 - c1).lpNorm<Eigen::Infinity>() < 1e-8, "affine c1 recovery error");
    c.expect(std::abs(a.c0 - c0) < 1e-8, "affine c0 recovery error");
    c.expect(a.max_residual < 1e-8, "affinity residual " + std::to_string(a.max_residual));
  }

  const Verdict sq = classify_field(make_zoo_field("sqrt_quadratic", 2), sym_box(2, 2.0));
  c.expect(sq.kind() == VerdictKind::NotConstantNorm, "sqrt_quadratic verdict");
  if (sq.kind() == VerdictKind::NotConstantNorm) {
    c.expect(std::get<NotConstantNormVerdict>(sq.outcome).min < 0.01,
             "sqrt_quadratic min |grad| not near zero");
  }

  const ScalarField pd = make_zoo_field("parabola_distance");
  const Verdict pdv = classify_field(pd, sym_box(2, 2.0));
  c.expect(pdv.kind() == VerdictKind::NotConvex, "parabola_distance verdict");
  if (pdv.kind() == VerdictKind::NotConvex) {
    const auto& n = std::get<NotConvexVerdict>(pdv.outcome);
    c.expect(n.gap < -1e-3, "parabola_distance witness gap " + std::to_string(n.gap));
    c.expect(first_order_gap(pd, n.u, n.v) < -1e-3, "witness pair does not replay");
  }

  const Verdict nv = classify_field(make_zoo_field("norm:0", 2), sym_box(2, 2.0));
  c.expect(nv.kind() == VerdictKind::NotDifferentiable, "norm verdict");
  if (nv.kind() == VerdictKind::NotDifferentiable) {
    c.expect(std::get<NotDifferentiableVerdict>(nv.outcome).point.norm() <= 0.1,
             "flagged point not near the origin");
  }
}

void criterion_4_proof_steps(Checker& c) {
  const CounterRng rng(44);
  for (std::uint64_t k = 0; k < 6; ++k) {
    const int dim = 2 + static_cast<int>(k % 3);
    const Vec c1 = seeded_unit(rng, k, dim);
    const ScalarField f = make_zoo_field(affine_spec(c1, 0.5), dim);

    for (double r : {0.01, 0.1, 1.0, 10.0}) {
      const FixedPointResult b = brouwer_fixed_point(f, r);
      c.expect(b.converged && b.residual < 1e-8, "brouwer residual at r=" + std::to_string(r));
      c.expect(std::abs(b.point.norm() - r) < 1e-6, "sphere law at r=" + std::to_string(r));
      const FixedPointResult s = resolvent_point(f, r);
      c.expect(s.converged, "resolvent convergence at r=" + std::to_string(r));
      c.expect((b.point + s.point).norm() < 1e-9, "brouwer/resolvent duality");
    }

    const Vec dir = limit_direction(f, {1.0, 0.1, 0.01, 0.001});
    c.expect((dir - c1).norm() < 1e-8, "limit direction recovery");

    Vec base = Vec::Zero(dim);
    base[0] = 0.7;
    c.expect(ray_deviation(f, base, -10.0, 10.0, 101) < 1e-9, "ray deviation");
    c.expect(ray_gradient_drift(f, base, -10.0, 10.0, 101) < 1e-9, "ray gradient drift");
  }
}

void criterion_5_line_gap_oracle(Checker& c) {
  const CounterRng rng(55);
  int done = 0;
  for (std::uint64_t k = 0; done < 50; ++k) {
    if (k >= 5000) {
      c.expect(false, "line-pair generation exhausted");
      break;
    }
    const int dim = 2 + static_cast<int>(rng.bits(900000 + k) % 3);
    Vec b1(dim), b2(dim), d1(dim), d2(dim);
    for (int j = 0; j < dim; ++j) {
      const std::uint64_t base = k * 64 + static_cast<std::uint64_t>(j);
      b1[j] = rng.uniform(base, -2.0, 2.0);
      b2[j] = rng.uniform(base + 16, -2.0, 2.0);
      d1[j] = rng.uniform(base + 32, -1.0, 1.0);
      d2[j] = rng.uniform(base + 48, -1.0, 1.0);
    }
    if (d1.norm() < 1e-3 || d2.norm() < 1e-3) continue;
    const Line l1 = Line::through(b1, d1);
    const Line l2 = Line::through(b2, d2);
    const LineGapResult g = closest_points_between_lines(l1, l2);
    if (std::abs(g.s_star) > 6.0 || std::abs(g.t_star) > 6.0) continue;
    ++done;
    const auto brute = oracles::brute_line_gap(l1, l2);
    c.expect(std::abs(g.gap - brute.gap) <= 1e-6,
             "gap vs brute force differs by " + std::to_string(std::abs(g.gap - brute.gap)));
    if (!g.parallel) {
      c.expect(std::abs(g.diff.dot(l1.dir)) < 1e-9, "orthogonality against dir1");
      c.expect(std::abs(g.diff.dot(l2.dir)) < 1e-9, "orthogonality against dir2");
    }
  }
}

void criterion_6_invariance(Checker& c) {
  const CounterRng rng(66);
  const ScalarField base = make_zoo_field("affine:0.6,0.8:1");
  const Domain box = sym_box(2, 2.0);
  const Verdict v0 = classify_field(base, box);
  if (v0.kind() != VerdictKind::Affine) {
    c.expect(false, "baseline affine classification failed");
    return;
  }
  const auto& a0 = std::get<AffineVerdict>(v0.outcome);

  for (std::uint64_t k = 0; k < 20; ++k) {
    Vec a(2);
    a[0] = rng.uniform(3 * k, -1.0, 1.0);
    a[1] = rng.uniform(3 * k + 1, -1.0, 1.0);
    const double b = rng.uniform(3 * k + 2, -5.0, 5.0);
    ScalarField shifted = base;
    auto inner = base.eval;
    shifted.eval = [inner, a, b](const Vec& u) { return inner(u + a) + b; };
    auto ig = std::get<AnalyticGrad>(base.grad_mode).fn;
    shifted.grad_mode = AnalyticGrad{[ig, a](const Vec& u) { return ig(u + a); }};

    const Verdict v = classify_field(shifted, box);
    if (v.kind() != VerdictKind::Affine) {
      c.expect(false, "shifted affine lost its verdict");
      continue;
    }
    const auto& af = std::get<AffineVerdict>(v.outcome);
    c.expect((af.c1 - a0.c1).lpNorm<Eigen::Infinity>() <= 1e-8, "c1 invariance");
    c.expect(std::abs(af.c0 - (a0.c0 + b + a0.c1.dot(a))) <= 1e-8, "c0 shift law");
  }

  // Concave duality on the negated field.
  const ScalarField neg = negate(base);
  const Verdict concave = classify_field(neg, box, {}, ClassifyMode::Concave);
  if (concave.kind() != VerdictKind::Affine) {
    c.expect(false, "concave-mode classification failed");
  } else {
    const auto& d = std::get<AffineVerdict>(concave.outcome);
    c.expect((d.c1 + a0.c1).lpNorm<Eigen::Infinity>() <= 1e-8, "concave duality c1");
    c.expect(std::abs(d.c0 + a0.c0) <= 1e-8, "concave duality c0");
  }

  const Verdict constant = classify_field(make_zoo_field("constant:3.25", 2), box);
  c.expect(constant.kind() == VerdictKind::Constant, "zero-gradient convex field");
  if (constant.kind() == VerdictKind::Constant) {
    c.expect(std::abs(std::get<ConstantVerdict>(constant.outcome).c0 - 3.25) <= 1e-12,
             "constant value");
  }
}

void criterion_7_cli_determinism(Checker& c) {
  const fs::path dir = fs::path("acceptance_artifacts");
  fs::create_directories(dir);
  const std::string csv1 = (dir / "dist1.csv").string();
  const std::string csv2 = (dir / "dist2.csv").string();
  const std::string pgm1 = (dir / "dist1.pgm").string();
  const std::string pgm2 = (dir / "dist2.pgm").string();
  const std::string json1 = (dir / "report1.json").string();
  const std::string json2 = (dir / "report2.json").string();

  auto field_args = [&](const std::string& csv, const std::string& pgm) {
    return std::vector<std::string>{"field", "--graph", "parabola", "--box", "-2,-2,2,2",
                                    "--nx",  "64",      "--ny",     "64",    "--out",
                                    csv,     "--pgm",   pgm};
  };
  c.expect(cli::run_cli(field_args(csv1, pgm1)) == 0, "field run 1 exit code");
  c.expect(cli::run_cli(field_args(csv2, pgm2)) == 0, "field run 2 exit code");
  c.expect(!slurp(csv1).empty() && slurp(csv1) == slurp(csv2), "CSV byte-identical");
  c.expect(!slurp(pgm1).empty() && slurp(pgm1) == slurp(pgm2), "PGM byte-identical");

  auto witness_args = [&](const std::string& out) {
    return std::vector<std::string>{"witness", "--field", "smoothed_norm:0.1:0", "--radius",
                                    "1",       "--seed",  "0",       "--out",    out};
  };
  c.expect(cli::run_cli(witness_args(json1)) == 0, "witness run 1 exit code");
  c.expect(cli::run_cli(witness_args(json2)) == 0, "witness run 2 exit code");
  c.expect(!slurp(json1).empty() && slurp(json1) == slurp(json2), "JSON byte-identical");
}

struct Criterion {
  const char* name;
  std::function<void(Checker&)> fn;
};

}  // namespace

int main() {
  std::cout.setf(std::ios::unitbuf);
  const std::vector<Criterion> criteria = {
      {"1 unit-gradient-norm reproduction (200x200 grid)", criterion_1_unit_gradient_norm},
      {"2 closed-form cubic agreement (1000 seeded points)", criterion_2_closed_form},
      {"3 theorem verdicts across the zoo", criterion_3_theorem_verdicts},
      {"4 proof-step witnesses on affine fields", criterion_4_proof_steps},
      {"5 line-gap oracle equivalence (50 seeded pairs)", criterion_5_line_gap_oracle},
      {"6 invariance suite", criterion_6_invariance},
      {"7 CLI determinism (byte-identical artifacts)", criterion_7_cli_determinism},
  };

  // Silence CLI chatter during criterion 7.
  int failed = 0;
  for (const Criterion& crit : criteria) {
    Checker checker;
    std::string error;
    std::stringstream captured;
    std::streambuf* old = nullptr;
    if (crit.name[0] == '7') old = std::cout.rdbuf(captured.rdbuf());
    try {
      crit.fn(checker);
    } catch (const std::exception& e) {
      checker.expect(false, std::string("exception: ") + e.what());
    }
    if (old) std::cout.rdbuf(old);
    if (checker.failures == 0) {
      std::printf("PASS  criterion %s\n", crit.name);
    } else {
      ++failed;
      std::printf("FAIL  criterion %s (%d checks)%s\n", crit.name, checker.failures,
                  checker.detail.str().c_str());
    }
  }
  if (failed == 0) {
    std::printf("acceptance: all %zu criteria passed\n", criteria.size());
  } else {
    std::printf("acceptance: %d of %zu criteria FAILED\n", failed, criteria.size());
  }
  return failed == 0 ? 0 : 1;
}
