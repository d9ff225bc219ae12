#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "CLI11.hpp"
#include "ivol/phase.hpp"
#include "ivol/verify.hpp"

namespace {

using nlohmann::json;

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

ivol::Kind parse_kind(const std::string& s) {
  if (s == "intrinsic") return ivol::Kind::intrinsic;
  if (s == "rotation") return ivol::Kind::rotation;
  if (s == "rigid") return ivol::Kind::rigid_motion;
  throw CLI::ValidationError("--kind", "expected intrinsic, rotation, or rigid");
}

const char* kind_name(ivol::Kind k) {
  switch (k) {
    case ivol::Kind::intrinsic:
      return "intrinsic";
    case ivol::Kind::rotation:
      return "rotation";
    case ivol::Kind::rigid_motion:
      return "rigid_motion";
  }
  return "?";
}

const char* functional_name(ivol::Functional f) {
  switch (f) {
    case ivol::Functional::rand_proj:
      return "randproj";
    case ivol::Functional::rand_slice:
      return "randslice";
    case ivol::Functional::rot_mean:
      return "rotmean";
    case ivol::Functional::kinematic:
      return "kinematic";
  }
  return "?";
}

ivol::Functional parse_functional(const std::string& s) {
  if (s == "randproj") return ivol::Functional::rand_proj;
  if (s == "randslice") return ivol::Functional::rand_slice;
  if (s == "rotmean") return ivol::Functional::rot_mean;
  if (s == "kinematic") return ivol::Functional::kinematic;
  throw CLI::ValidationError("--functional",
                             "expected randproj, randslice, rotmean, or kinematic");
}

const char* class_name(ivol::PhaseClass c) {
  switch (c) {
    case ivol::PhaseClass::low:
      return "low";
    case ivol::PhaseClass::transition:
      return "transition";
    case ivol::PhaseClass::high:
      return "high";
  }
  return "?";
}

// Shared body-selection flags; `suffix` distinguishes the second body of a
// two-body functional.
struct BodyFlags {
  std::vector<double> ball;   // n scale
  std::vector<double> cube;   // n scale
  std::string ptope;          // comma-separated sides
  std::string body_json;      // path to a BodySpec JSON file

  void attach(CLI::App* cmd, const std::string& suffix, bool required) {
    auto* a = cmd->add_option("--ball" + suffix, ball, "ball: dimension and scale")
                  ->expected(2);
    auto* b = cmd->add_option("--cube" + suffix, cube, "cube: dimension and scale")
                  ->expected(2);
    auto* c = cmd->add_option("--ptope" + suffix, ptope, "parallelotope side lengths (csv)");
    auto* d = cmd->add_option("--body-json" + suffix, body_json, "BodySpec JSON file");
    a->excludes(b)->excludes(c)->excludes(d);
    b->excludes(c)->excludes(d);
    c->excludes(d);
    if (required) {
      // one-of enforcement happens in parse(); CLI11 lacks grouped "require one"
    }
  }

  bool present() const {
    return !ball.empty() || !cube.empty() || !ptope.empty() || !body_json.empty();
  }

  ivol::BodySpec parse() const {
    if (!ball.empty()) {
      return ivol::BodySpec{ivol::Ball{static_cast<int>(ball[0]), ball[1]}};
    }
    if (!cube.empty()) {
      return ivol::BodySpec{ivol::Cube{static_cast<int>(cube[0]), cube[1]}};
    }
    if (!ptope.empty()) {
      std::vector<double> sides;
      std::stringstream ss(ptope);
      std::string item;
      while (std::getline(ss, item, ',')) sides.push_back(std::stod(item));
      return ivol::BodySpec{ivol::Parallelotope{std::move(sides)}};
    }
    if (!body_json.empty()) {
      std::ifstream in(body_json);
      if (!in) throw CLI::ValidationError("--body-json", "cannot open " + body_json);
      std::stringstream buf;
      buf << in.rdbuf();
      return ivol::BodySpec::from_json(buf.str());
    }
    throw CLI::ValidationError("body", "one of --ball/--cube/--ptope/--body-json is required");
  }
};

struct OutputFlags {
  std::string format = "csv";
  std::string out;

  void attach(CLI::App* cmd) {
    cmd->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--out", out, "output path (default stdout)");
  }

  void write(const std::string& text) const {
    if (out.empty()) {
      std::cout << text;
    } else {
      std::ofstream f(out);
      if (!f) throw std::runtime_error("cannot open output path " + out);
      f << text;
    }
  }
};

ivol::LogSequence sequence_for(const ivol::BodySpec& body, ivol::Kind kind) {
  ivol::LogSequence seq = ivol::intrinsic_volumes(body);
  if (kind == ivol::Kind::rotation) return ivol::to_rotation(seq);
  if (kind == ivol::Kind::rigid_motion) return ivol::to_rigid_motion(seq);
  return seq;
}

double lin(double log_v) { return log_v == ivol::kLogZero ? 0.0 : std::exp(log_v); }

// Parse "start:stop:count" into an inclusive linear grid.
std::vector<double> parse_grid(const std::string& spec) {
  double start, stop;
  int count;
  if (std::sscanf(spec.c_str(), "%lf:%lf:%d", &start, &stop, &count) != 3 || count < 1) {
    throw CLI::ValidationError("--grid", "expected start:stop:count");
  }
  std::vector<double> grid;
  for (int i = 0; i < count; ++i) {
    grid.push_back(count == 1 ? start : start + (stop - start) * i / (count - 1));
  }
  return grid;
}

int run_volumes(const BodyFlags& body_flags, const std::string& kind_str,
                const OutputFlags& out) {
  const ivol::BodySpec body = body_flags.parse();
  const ivol::Kind kind = parse_kind(kind_str);
  const ivol::LogSequence seq = sequence_for(body, kind);
  std::ostringstream os;
  if (out.format == "csv") {
    os << "i,V\n";
    for (int i = 0; i <= seq.n; ++i) os << i << "," << fmt(lin(seq.log_values[i])) << "\n";
  } else {
    json values = json::array();
    for (int i = 0; i <= seq.n; ++i) values.push_back(lin(seq.log_values[i]));
    json j{{"body", json::parse(body.to_json())},
           {"kind", kind_name(kind)},
           {"n", seq.n},
           {"values", values},
           {"log_total", ivol::log_sum_exp(seq.log_values)}};
    os << j.dump(2) << "\n";
  }
  out.write(os.str());
  return 0;
}

int run_distribution(const BodyFlags& body_flags, const std::string& kind_str,
                     const OutputFlags& out) {
  const ivol::BodySpec body = body_flags.parse();
  const ivol::Kind kind = parse_kind(kind_str);
  const ivol::VolumeDistribution dist = ivol::distribution(sequence_for(body, kind));
  std::ostringstream os;
  if (out.format == "csv") {
    os << "k,p\n";
    for (int k = 0; k <= dist.n; ++k) os << k << "," << fmt(lin(dist.log_pmf[k])) << "\n";
  } else {
    json pmf = json::array();
    for (int k = 0; k <= dist.n; ++k) pmf.push_back(lin(dist.log_pmf[k]));
    json j{{"body", json::parse(body.to_json())},
           {"kind", kind_name(kind)},
           {"n", dist.n},
           {"pmf", pmf},
           {"delta", ivol::central_volume(dist)},
           {"variance", ivol::exact_variance(dist)},
           {"log_total", dist.log_total}};
    os << j.dump(2) << "\n";
  }
  out.write(os.str());
  return 0;
}

ivol::Kind functional_kind(ivol::Functional f) {
  return (f == ivol::Functional::rand_proj || f == ivol::Functional::rot_mean)
             ? ivol::Kind::rotation
             : ivol::Kind::rigid_motion;
}

int run_phase(const BodyFlags& body_flags, const BodyFlags& body2_flags,
              const std::string& functional_str, double alpha, const OutputFlags& out) {
  const ivol::Functional f = parse_functional(functional_str);
  const ivol::Kind kind = functional_kind(f);
  const ivol::BodySpec body = body_flags.parse();
  const ivol::VolumeDistribution dist = ivol::distribution(sequence_for(body, kind));
  std::ostringstream os;
  if (f == ivol::Functional::rand_proj || f == ivol::Functional::rand_slice) {
    const ivol::PhaseReport report = ivol::classify(f, dist, alpha);
    if (out.format == "csv") {
      os << "functional,n,param1,param2,m,value,classification\n";
      for (const auto& pt : report.points) {
        os << functional_name(f) << "," << report.n << "," << fmt(pt.param1) << ",,"
           << pt.m << "," << fmt(pt.value) << "," << class_name(pt.cls) << "\n";
      }
    } else {
      json points = json::array();
      for (const auto& pt : report.points) {
        points.push_back({{"m", pt.m},
                          {"value", pt.value},
                          {"classification", class_name(pt.cls)}});
      }
      json j{{"functional", functional_name(f)},
             {"n", report.n},
             {"location", report.location},
             {"alpha", report.alpha},
             {"width", report.points.empty() ? 0.0 : report.points.front().width},
             {"points", points}};
      os << j.dump(2) << "\n";
    }
  } else {
    if (!body2_flags.present()) {
      throw CLI::ValidationError("body", "two-body functionals need a second body (--ball2 ...)");
    }
    const ivol::BodySpec body2 = body2_flags.parse();
    const ivol::VolumeDistribution dist2 = ivol::distribution(sequence_for(body2, kind));
    const ivol::PhasePoint pt =
        ivol::classify_pair_point(f, dist, dist2, alpha, 0.0, 0.0);
    const double delta_sum = ivol::central_volume(dist) + ivol::central_volume(dist2);
    if (out.format == "csv") {
      os << "functional,n,param1,param2,m,value,classification\n";
      os << functional_name(f) << "," << dist.n << "," << fmt(delta_sum) << ",,,"
         << fmt(pt.value) << "," << class_name(pt.cls) << "\n";
    } else {
      json j{{"functional", functional_name(f)},
             {"n", dist.n},
             {"location", static_cast<double>(dist.n)},
             {"delta_sum", delta_sum},
             {"alpha", alpha},
             {"width", pt.width},
             {"value", pt.value},
             {"classification", class_name(pt.cls)}};
      os << j.dump(2) << "\n";
    }
  }
  out.write(os.str());
  return 0;
}

int run_sweep(const std::string& functional_str, const std::string& family, int n,
              const std::string& grid_spec, const std::string& grid2_spec, int m,
              double alpha, const OutputFlags& out) {
  const ivol::Functional f = parse_functional(functional_str);
  const ivol::Kind kind = functional_kind(f);
  const bool pair =
      f == ivol::Functional::rot_mean || f == ivol::Functional::kinematic;
  const auto make_dist = [&](double scale) {
    ivol::BodySpec body = family == "ball"
                              ? ivol::BodySpec{ivol::Ball{n, scale}}
                              : ivol::BodySpec{ivol::Cube{n, scale}};
    return ivol::distribution(sequence_for(body, kind));
  };
  const std::vector<double> grid1 = parse_grid(grid_spec);
  std::ostringstream os;
  os << "functional,n,param1,param2,m,value,classification\n";
  if (pair) {
    const std::vector<double> grid2 =
        grid2_spec.empty() ? grid1 : parse_grid(grid2_spec);
    for (double p1 : grid1) {
      const ivol::VolumeDistribution d1 = make_dist(p1);
      for (double p2 : grid2) {
        const ivol::PhasePoint pt =
            ivol::classify_pair_point(f, d1, make_dist(p2), alpha, p1, p2);
        os << functional_name(f) << "," << n << "," << fmt(p1) << "," << fmt(p2) << ",,"
           << fmt(pt.value) << "," << class_name(pt.cls) << "\n";
      }
    }
  } else {
    if (m < 0 || m > n) throw CLI::ValidationError("--m", "required in 0..n for cdf sweeps");
    const std::vector<int> ms{m};
    for (double p1 : grid1) {
      const ivol::PhaseReport report = ivol::classify(f, make_dist(p1), alpha, ms);
      const auto& pt = report.points.front();
      // Classification compares m against the per-scale central volume.
      os << functional_name(f) << "," << n << "," << fmt(p1) << ",," << m << ","
         << fmt(pt.value) << "," << class_name(pt.cls) << "\n";
    }
  }
  out.write(os.str());
  return 0;
}

int run_mc_verify(int n, int m, double lambda, std::uint64_t seed, int samples,
                  const OutputFlags& out) {
  const ivol::McConfig cfg{seed, samples};
  const ivol::McEstimate est = ivol::mc_rand_proj(n, m, lambda, cfg);
  const ivol::VolumeDistribution dist = ivol::distribution(
      ivol::to_rotation(ivol::intrinsic_cube(n, lambda)));
  const double exact = ivol::rand_proj(dist, m);
  json j{{"functional", "randproj"}, {"n", n},          {"m", m},
         {"exact", exact},           {"estimate", est.mean}, {"std_error", est.std_error},
         {"samples", est.samples},   {"seed", seed}};
  std::ostringstream os;
  os << j.dump(2) << "\n";
  out.write(os.str());
  return 0;
}

int run_buffon(double ratio, const OutputFlags& out) {
  std::ostringstream os;
  const double p = ivol::buffon_probability(ratio, 1.0);
  if (out.format == "csv") {
    os << "p," << fmt(p) << "\n";
  } else {
    os << json{{"ratio", ratio}, {"p", p}}.dump(2) << "\n";
  }
  out.write(os.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Intrinsic volume toolkit"};
  app.require_subcommand(1);

  BodyFlags body, body2;
  OutputFlags output;
  std::string kind_str = "intrinsic";
  std::string functional_str;
  std::string family = "cube";
  std::string grid_spec, grid2_spec;
  double alpha = 0.01, lambda = 1.0, ratio = 1.0;
  int n = 2, m = -1, samples = 1000;
  std::uint64_t seed = 0;
  bool seed_set = false;

  auto* volumes = app.add_subcommand("volumes", "intrinsic or weighted volume sequence");
  body.attach(volumes, "", true);
  volumes->add_option("--kind", kind_str, "sequence kind");
  output.attach(volumes);

  auto* distribution = app.add_subcommand("distribution", "normalized volume pmf");
  body.attach(distribution, "", true);
  distribution->add_option("--kind", kind_str, "sequence kind");
  output.attach(distribution);

  auto* phase = app.add_subcommand("phase", "phase functional report");
  body.attach(phase, "", true);
  body2.attach(phase, "2", false);
  phase->add_option("--functional", functional_str, "functional")->required();
  phase->add_option("--alpha", alpha, "confidence level");
  output.attach(phase);

  auto* sweep = app.add_subcommand("sweep", "phase map over a scale grid");
  sweep->add_option("--functional", functional_str, "functional")->required();
  sweep->add_option("--family", family, "body family")
      ->check(CLI::IsMember({"ball", "cube"}));
  sweep->add_option("--n", n, "ambient dimension")->required();
  sweep->add_option("--grid", grid_spec, "scale grid start:stop:count")->required();
  sweep->add_option("--grid2", grid2_spec, "second scale grid (two-body functionals)");
  sweep->add_option("--m", m, "threshold for cdf functionals");
  sweep->add_option("--alpha", alpha, "confidence level");
  output.attach(sweep);

  auto* mc = app.add_subcommand("mc-verify", "Monte Carlo projection check");
  mc->add_option("--n", n, "ambient dimension")->required();
  mc->add_option("--m", m, "subspace dimension")->required();
  mc->add_option("--scale", lambda, "cube scale");
  mc->add_option("--seed", seed, "RNG seed (required)")->each([&](const std::string&) {
    seed_set = true;
  });
  mc->add_option("--samples", samples, "sample count");
  output.attach(mc);

  auto* buffon = app.add_subcommand("buffon", "needle crossing probability");
  buffon->add_option("--ratio", ratio, "needle length over plank width")->required();
  output.attach(buffon);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);  // --help exits zero with the usage text
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }

  try {
    if (volumes->parsed()) return run_volumes(body, kind_str, output);
    if (distribution->parsed()) return run_distribution(body, kind_str, output);
    if (phase->parsed()) return run_phase(body, body2, functional_str, alpha, output);
    if (sweep->parsed())
      return run_sweep(functional_str, family, n, grid_spec, grid2_spec, m, alpha, output);
    if (mc->parsed()) {
      if (!seed_set) {
        std::cerr << "mc-verify: --seed is required for reproducibility\n";
        return 2;
      }
      return run_mc_verify(n, m, lambda, seed, samples, output);
    }
    if (buffon->parsed()) return run_buffon(ratio, output);
  } catch (const CLI::Error& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
