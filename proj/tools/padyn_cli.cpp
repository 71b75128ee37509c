// padyn: exact p-adic arithmetic-dynamics toolkit, command-line surface.
//
// Exit status: 0 success, 1 usage error, 2 certified mathematical failure
// (the violated inequality is reported with both sides as value-group
// exponents). All output is exact: digit literals and p^q radii, no floats.

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "padyn/conjugacy.hpp"
#include "padyn/expansion.hpp"
#include "padyn/io.hpp"
#include "padyn/symbolic.hpp"

namespace {

using namespace padyn;

struct RunConfig {
  int64_t p = 3;
  int64_t precision = kDefaultRelPrecision;
  uint64_t seed = SampleConfig{}.seed;
  std::string format = "text";  // text | records

  bool records() const { return format == "records"; }
  int64_t poly_precision() const { return precision + kGuardDigits; }
};

// one structured record: "rec=<name> k1=v1 k2=v2 ..."
class Record {
 public:
  explicit Record(const std::string& name) { line_ = "rec=" + name; }
  Record& field(const std::string& k, const std::string& v) {
    line_ += " " + k + "=" + v;
    return *this;
  }
  Record& field(const std::string& k, int64_t v) {
    return field(k, std::to_string(v));
  }
  void emit() const { std::cout << line_ << "\n"; }

 private:
  std::string line_;
};

std::string describe(const PadicNumber& x) {
  if (x.is_exact_zero()) return "0";
  return x.str();
}

std::string precision_of(const PadicNumber& x) {
  if (x.is_exact_zero()) return "exact";
  return "p^-" + std::to_string(x.abs_precision());
}

void print_value(const RunConfig& cfg, const std::string& label,
                 const PadicNumber& x) {
  if (cfg.records()) {
    Record r("value");
    r.field("name", label).field("value", describe(x)).field("prec", precision_of(x));
    if (x.is_regular()) r.field("norm", x.norm().str());
    r.emit();
  } else {
    std::cout << label << " = " << describe(x);
    if (x.is_regular()) std::cout << "   (norm " << x.norm().str() << ")";
    std::cout << "   [known to " << precision_of(x) << "]\n";
  }
}

void print_context(const RunConfig& cfg, const ExpansionContext& ctx) {
  if (cfg.records()) {
    Record("context")
        .field("map", ctx.map().str())
        .field("region", ctx.region().str())
        .field("lambda", ctx.lambda().str())
        .field("delta", ctx.delta().str())
        .field("mu", ctx.mu().str())
        .field("M", ctx.bigM().str())
        .emit();
    for (const auto& c : ctx.invariance_evidence().containments)
      Record("preimage_containment")
          .field("member", c.member)
          .field("center", describe(c.preimage_center))
          .field("radius", c.preimage_radius.str())
          .field("inside_member", c.contained_in)
          .emit();
    if (!ctx.invariance_evidence().note.empty())
      Record("note").field("text", ctx.invariance_evidence().note).emit();
  } else {
    std::cout << "certified expansion context\n"
              << "  map:    " << ctx.map().str() << "\n"
              << "  region: " << ctx.region().str() << "\n"
              << "  lambda = " << ctx.lambda().str() << "   delta = "
              << ctx.delta().str() << "   mu = " << ctx.mu().str() << "   M = "
              << ctx.bigM().str() << "\n";
    for (const auto& c : ctx.invariance_evidence().containments)
      std::cout << "  member " << c.member << ": preimage disk ("
                << describe(c.preimage_center) << ", " << c.preimage_radius.str()
                << ") inside member " << c.contained_in << "\n";
    if (!ctx.invariance_evidence().note.empty())
      std::cout << "  note: " << ctx.invariance_evidence().note << "\n";
  }
}

Region region_from(const RunConfig& cfg, const std::string& text) {
  return parse_region(text, cfg.p, cfg.poly_precision());
}

std::optional<Radius> delta_from(const RunConfig& cfg, const std::string& text) {
  if (text.empty()) return std::nullopt;
  return parse_radius_literal(text, cfg.p);
}

int run(CLI::App& app, const RunConfig& cfg, int argc, char** argv) {
  // ---- eval ----------------------------------------------------------
  std::string ev_poly, ev_point;
  CLI::App* eval = app.add_subcommand("eval", "evaluate a polynomial at a point");
  eval->add_option("--poly", ev_poly, "polynomial text")->required();
  eval->add_option("--point", ev_point, "p-adic literal")->required();
  eval->callback([&] {
    Polynomial f = parse_polynomial(ev_poly, cfg.p, cfg.poly_precision());
    PadicNumber z = parse_padic_literal(ev_point, cfg.p, cfg.poly_precision());
    print_value(cfg, "f(z)", f.evaluate(z));
  });

  // ---- newton-count --------------------------------------------------
  std::string nc_poly, nc_center, nc_radius;
  CLI::App* ncount = app.add_subcommand(
      "newton-count", "zeros in a closed disk, counted with multiplicity");
  ncount->add_option("--poly", nc_poly)->required();
  ncount->add_option("--center", nc_center)->required();
  ncount->add_option("--radius", nc_radius, "radius literal p^q")->required();
  ncount->callback([&] {
    Polynomial f = parse_polynomial(nc_poly, cfg.p, cfg.poly_precision());
    Disk disk(parse_padic_literal(nc_center, cfg.p, cfg.poly_precision()),
              parse_radius_literal(nc_radius, cfg.p));
    Polynomial shifted = f.taylor_shift(disk.center());
    auto profile = newton_polygon_profile(shifted, disk.radius());
    int64_t count = newton_root_count(f, disk);
    if (cfg.records()) {
      Record("newton_count").field("count", count).emit();
      for (const auto& t : profile) {
        if (t.exact_zero) continue;
        mpq_class e = -t.wexp;  // term value is p^e
        Record("polygon_term")
            .field("index", t.index)
            .field("exponent", (t.upper_bound ? "<=" : "") + e.get_str())
            .emit();
      }
    } else {
      std::cout << "zeros in " << disk.str() << ": " << count << "\n";
      for (const auto& t : profile) {
        if (t.exact_zero) continue;
        mpq_class e = -t.wexp;
        std::cout << "  term " << t.index << ": |c_k| r^k " << (t.upper_bound ? "<= " : "= ")
                  << std::to_string(cfg.p) << "^" << e.get_str() << "\n";
      }
    }
  });

  // ---- root-in-disk --------------------------------------------------
  std::string rd_poly, rd_center, rd_radius;
  CLI::App* rootd = app.add_subcommand("root-in-disk",
                                       "the unique zero in a count-1 disk");
  rootd->add_option("--poly", rd_poly)->required();
  rootd->add_option("--center", rd_center)->required();
  rootd->add_option("--radius", rd_radius)->required();
  rootd->callback([&] {
    Polynomial f = parse_polynomial(rd_poly, cfg.p, cfg.poly_precision());
    Disk disk(parse_padic_literal(rd_center, cfg.p, cfg.poly_precision()),
              parse_radius_literal(rd_radius, cfg.p));
    print_value(cfg, "root", unique_root_in_disk(f, disk));
  });

  // ---- preimages -----------------------------------------------------
  std::string pr_map, pr_region, pr_delta, pr_center, pr_radius;
  CLI::App* pre = app.add_subcommand(
      "preimages", "disk-preimage decomposition of f^{-1} of a disk");
  pre->add_option("--map", pr_map)->required();
  pre->add_option("--region", pr_region, "disks:[(c,p^q),...] or sphere:p^q")->required();
  pre->add_option("--delta", pr_delta, "sphere regions: explicit delta");
  pre->add_option("--center", pr_center)->required();
  pre->add_option("--radius", pr_radius)->required();
  pre->callback([&] {
    Polynomial f = parse_polynomial(pr_map, cfg.p, cfg.poly_precision());
    ExpansionContext ctx = ExpansionContext::build(f, region_from(cfg, pr_region),
                                                   delta_from(cfg, pr_delta));
    Disk target(parse_padic_literal(pr_center, cfg.p, cfg.poly_precision()),
                parse_radius_literal(pr_radius, cfg.p));
    auto disks = preimage_disks(ctx, target, SampleConfig{cfg.seed, 20});
    if (cfg.records()) {
      for (const auto& d : disks)
        Record("preimage")
            .field("center", describe(d.center))
            .field("prec", precision_of(d.center))
            .field("radius", d.radius.str())
            .field("deriv_norm", d.deriv_norm.str())
            .emit();
    } else {
      std::cout << "f^{-1}(" << target.str() << ") = disjoint union of "
                << disks.size() << " disks\n";
      for (const auto& d : disks)
        std::cout << "  (" << describe(d.center) << ", " << d.radius.str()
                  << ")   |f'(z_k)| = " << d.deriv_norm.str() << "\n";
    }
  });

  // ---- certify -------------------------------------------------------
  std::string ce_map, ce_region, ce_delta;
  CLI::App* cert = app.add_subcommand(
      "certify", "build and report an expansion context (lambda, delta, mu, M)");
  cert->add_option("--map", ce_map)->required();
  cert->add_option("--region", ce_region)->required();
  cert->add_option("--delta", ce_delta);
  cert->callback([&] {
    Polynomial f = parse_polynomial(ce_map, cfg.p, cfg.poly_precision());
    print_context(cfg, ExpansionContext::build(f, region_from(cfg, ce_region),
                                               delta_from(cfg, ce_delta)));
  });

  // ---- tau -----------------------------------------------------------
  std::string ta_map, ta_region, ta_delta;
  CLI::App* tau = app.add_subcommand("tau", "perturbation thresholds tau(i)");
  tau->add_option("--map", ta_map)->required();
  tau->add_option("--region", ta_region)->required();
  tau->add_option("--delta", ta_delta);
  tau->callback([&] {
    Polynomial f = parse_polynomial(ta_map, cfg.p, cfg.poly_precision());
    ExpansionContext ctx = ExpansionContext::build(f, region_from(cfg, ta_region),
                                                   delta_from(cfg, ta_delta));
    for (int64_t i = 0; i <= ctx.map().degree(); ++i) {
      Radius t = tau_threshold(i, ctx);
      if (cfg.records())
        Record("tau").field("i", i).field("value", t.str()).emit();
      else
        std::cout << "tau(" << i << ") = " << t.str() << "\n";
    }
  });

  // ---- conjugate -----------------------------------------------------
  std::string cj_f, cj_g, cj_region, cj_delta, cj_point, cj_target;
  CLI::App* conj = app.add_subcommand(
      "conjugate", "evaluate the stability conjugacy h at a point");
  conj->add_option("--f", cj_f, "base map")->required();
  conj->add_option("--g", cj_g, "perturbed map")->required();
  conj->add_option("--region", cj_region)->required();
  conj->add_option("--delta", cj_delta);
  conj->add_option("--point", cj_point)->required();
  conj->add_option("--target", cj_target, "certified error, e.g. 3^-10")->required();
  conj->callback([&] {
    Polynomial f = parse_polynomial(cj_f, cfg.p, cfg.poly_precision());
    Polynomial g = parse_polynomial(cj_g, cfg.p, cfg.poly_precision());
    ExpansionContext ctx = ExpansionContext::build(f, region_from(cfg, cj_region),
                                                   delta_from(cfg, cj_delta));
    ConjugacyProblem problem = neighborhood_check(f, g, ctx);
    PadicNumber z = parse_padic_literal(cj_point, cfg.p, cfg.poly_precision());
    Radius target = parse_radius_literal(cj_target, cfg.p);
    ShadowingTrace trace;
    PadicNumber h = conjugate_point(problem, z, target, &trace);
    if (cfg.records()) {
      Record("conjugate")
          .field("value", describe(h))
          .field("prec", precision_of(h))
          .field("depth", trace.depth)
          .field("certified_error", trace.certified_error.str())
          .emit();
      for (const auto& s : trace.steps)
        Record("correction")
            .field("level", s.level)
            .field("bound", s.bound.str())
            .field("norm", s.correction_norm.str())
            .emit();
    } else {
      std::cout << "h(z) = " << describe(h) << "   [error <= "
                << trace.certified_error.str() << ", depth " << trace.depth << "]\n";
      for (const auto& s : trace.steps)
        std::cout << "  level " << s.level << ": |h_{k+1}-h_k| = "
                  << s.correction_norm.str() << " <= " << s.bound.str() << "\n";
    }
  });

  // ---- thm23 ---------------------------------------------------------
  int64_t th_d = 2;
  std::string th_c, th_c2, th_point, th_target;
  CLI::App* thm = app.add_subcommand(
      "thm23", "z^d + c family conjugacy between escaping parameters");
  thm->add_option("--d", th_d, "degree (p must not divide d)")->required();
  thm->add_option("--c", th_c)->required();
  thm->add_option("--c2", th_c2)->required();
  thm->add_option("--point", th_point)->required();
  thm->add_option("--target", th_target)->required();
  thm->callback([&] {
    PadicNumber c = parse_padic_literal(th_c, cfg.p, cfg.poly_precision());
    PadicNumber c2 = parse_padic_literal(th_c2, cfg.p, cfg.poly_precision());
    ConjugacyProblem problem = power_family_conjugacy(th_d, c, c2);
    PadicNumber z = parse_padic_literal(th_point, cfg.p, cfg.poly_precision());
    Radius target = parse_radius_literal(th_target, cfg.p);
    ShadowingTrace trace;
    PadicNumber h = conjugate_point(problem, z, target, &trace);
    if (cfg.records()) {
      Record("thm23")
          .field("lambda", problem.lambda.str())
          .field("sphere", problem.ctx.region().sphere_radius().str())
          .field("value", describe(h))
          .field("prec", precision_of(h))
          .field("depth", trace.depth)
          .emit();
    } else {
      std::cout << "sphere " << problem.ctx.region().sphere_radius().str()
                << ", lambda = " << problem.lambda.str() << "\n"
                << "h(z) = " << describe(h) << "   [depth " << trace.depth << "]\n";
    }
  });

  // ---- itinerary -----------------------------------------------------
  std::string it_point;
  int64_t it_depth = 10;
  CLI::App* itin = app.add_subcommand("itinerary",
                                      "binary coding of a point of J(z(z-1)/p)");
  itin->add_option("--point", it_point)->required();
  itin->add_option("--depth", it_depth)->required();
  itin->callback([&] {
    PadicNumber z = parse_padic_literal(it_point, cfg.p, cfg.poly_precision());
    ItineraryWord w = itinerary(z, it_depth);
    if (cfg.records())
      Record("itinerary").field("word", w.str()).field("depth", it_depth).emit();
    else
      std::cout << w.str() << "\n";
  });

  // ---- decode --------------------------------------------------------
  std::string de_word;
  CLI::App* dec = app.add_subcommand("decode", "disk of points with a given itinerary prefix");
  dec->add_option("--word", de_word, "bit string, e.g. 0110")->required();
  dec->callback([&] {
    ItineraryWord w = ItineraryWord::parse(de_word);
    if (w.empty()) {
      Region r = decode_region(w, cfg.p, cfg.poly_precision());
      if (cfg.records())
        Record("decode").field("region", r.str()).emit();
      else
        std::cout << r.str() << "\n";
      return;
    }
    Disk d = decode(w, cfg.p, cfg.poly_precision());
    if (cfg.records())
      Record("decode")
          .field("center", describe(d.center()))
          .field("prec", precision_of(d.center()))
          .field("radius", d.radius().str())
          .emit();
    else
      std::cout << d.str() << "\n";
  });

  // ---- cor42 ---------------------------------------------------------
  std::string co_c, co_point, co_target = "";
  int64_t co_depth = 10;
  bool co_selfcheck = false;
  CLI::App* cor = app.add_subcommand(
      "cor42", "itinerary coding of J(z^2+c) through the three-map conjugacy");
  cor->add_option("--c", co_c)->required();
  cor->add_option("--point", co_point)->required();
  cor->add_option("--depth", co_depth)->required();
  cor->add_option("--target", co_target, "conjugacy evaluation accuracy");
  cor->add_flag("--selfcheck", co_selfcheck, "verify shift equivariance at the point");
  cor->callback([&] {
    PadicNumber c = parse_padic_literal(co_c, cfg.p, cfg.poly_precision());
    PadicNumber z = parse_padic_literal(co_point, cfg.p, cfg.poly_precision());
    Radius target = co_target.empty()
                        ? Radius::from_valuation(cfg.p, co_depth + 6)
                        : parse_radius_literal(co_target, cfg.p);
    ItineraryWord w = binary_coding_pipeline(c, z, co_depth, target);
    bool check_ok = true;
    if (co_selfcheck && co_depth >= 1) {
      Polynomial fc = power_family_map(2, c);
      ItineraryWord shifted =
          binary_coding_pipeline(c, fc.evaluate(z), co_depth - 1, target);
      check_ok = shifted == shift(w);
    }
    if (cfg.records()) {
      Record r("cor42");
      r.field("word", w.str()).field("depth", co_depth);
      if (co_selfcheck) r.field("equivariance", check_ok ? "pass" : "fail");
      r.emit();
    } else {
      std::cout << w.str() << "\n";
      if (co_selfcheck)
        std::cout << "equivariance self-check: " << (check_ok ? "pass" : "fail") << "\n";
    }
    if (co_selfcheck && !check_ok)
      throw certification_error("shift equivariance self-check failed");
  });

  app.require_subcommand(1);
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"padyn: exact p-adic arithmetic-dynamics toolkit"};
  // global flags may follow the subcommand name
  app.fallthrough();
  RunConfig cfg;
  app.add_option("--p", cfg.p, "working prime")->capture_default_str();
  app.add_option("--precision", cfg.precision, "relative precision in base-p digits")
      ->check(CLI::Range(static_cast<int64_t>(8), static_cast<int64_t>(1 << 20)))
      ->capture_default_str();
  app.add_option("--seed", cfg.seed, "seed for deterministic sampling")
      ->capture_default_str();
  app.add_option("--format", cfg.format, "text | records")
      ->check(CLI::IsMember({"text", "records"}))
      ->capture_default_str();
  app.set_config("--config", "", "key=value defaults file");

  try {
    return run(app, cfg, argc, argv);
  } catch (const padyn::error& e) {
    const char* kind = "certification";
    if (e.code() == padyn::errc::precision) kind = "precision";
    if (e.code() == padyn::errc::math_domain) kind = "domain";
    std::cerr << "error kind=" << kind << " msg=\"" << e.what() << "\"\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error kind=usage msg=\"" << e.what() << "\"\n";
    return 1;
  }
}
