#include "plg/cli.hpp"

#include "plg/constructions.hpp"
#include "plg/fallbacks.hpp"
#include "plg/render.hpp"
#include "plg/scene_io.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <ostream>

namespace plg {

namespace {

using nlohmann::ordered_json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string scene_path, output, check, invariant, algorithm, kind, random_kind = "doodle";
  std::vector<std::string> directions, apexes;
  std::optional<std::uint64_t> seed;
  std::string a = "2", b = "1";
  int n = 2, dim = 3, grid = 6;
};

Point parse_point(const std::string& text) {
  Point p;
  std::size_t start = 0;
  while (true) {
    auto comma = text.find(',', start);
    try {
      p.push_back(parse_scalar(text.substr(start, comma == std::string::npos ? std::string::npos : comma - start)));
    } catch (const std::exception& e) {
      throw UsageError("bad point '" + text + "': " + e.what());
    }
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return p;
}

std::vector<Point> parse_points(const std::vector<std::string>& v) {
  std::vector<Point> out;
  for (const auto& s : v) out.push_back(parse_point(s));
  return out;
}

void emit(const Options& o, const std::string& text, std::ostream& out) {
  if (o.output.empty())
    out << text;
  else
    write_text_file(o.output, text);
}

// Link / ornament components in file order.
std::vector<MapRef> primaries(const Scene& s) {
  std::vector<MapRef> out;
  for (const auto& c : s.components)
    if (c.role == Role::LinkComponent || c.role == Role::OrnamentComponent) out.push_back(c.map);
  return out;
}

template <std::size_t N>
std::array<MapRef, N> take(const std::vector<MapRef>& v, const std::string& what) {
  if (v.size() != N)
    throw UsageError(what + " needs " + std::to_string(N) + " components, scene has " + std::to_string(v.size()));
  std::array<MapRef, N> out;
  std::copy(v.begin(), v.end(), out.begin());
  return out;
}

// +, -, 0 by name when present, else the first three primaries.
std::array<MapRef, 3> pm0(const Scene& s) {
  const Component *p = s.find("+"), *m = s.find("-"), *z = s.find("0");
  if (p && m && z) return {p->map, m->map, z->map};
  return take<3>(primaries(s), "a +-0 triple");
}

std::array<MapRef, 2> star_zero(const Scene& s) {
  const Component *g = s.find("g*"), *z = s.find("g0");
  if (g && z) return {g->map, z->map};
  return take<2>(primaries(s), "a link map");
}

const HexFamily& family(const Scene& s) {
  if (!s.hex) throw UsageError("scene has no hex_family block");
  return *s.hex;
}

// k-th choice: user value (or default) first, then the fixed alternates.
template <class T>
T choose(int k, const std::optional<T>& user, const T& fallback_default, const std::vector<T>& alternates) {
  if (k == 0) return user ? *user : fallback_default;
  return alternates.at(static_cast<std::size_t>(k - 1));
}

std::optional<Point> nth_point(const std::vector<Point>& v, std::size_t k) {
  return k < v.size() ? std::optional<Point>(v[k]) : std::nullopt;
}

template <std::size_t N>
std::optional<std::array<Point, N>> point_group(const std::vector<Point>& v, const std::string& flag) {
  if (v.empty()) return std::nullopt;
  if (v.size() != N) throw UsageError("expected " + std::to_string(N) + " " + flag + " values");
  std::array<Point, N> out;
  std::copy(v.begin(), v.end(), out.begin());
  return out;
}

Point ints(std::initializer_list<long> xs) {
  Point p;
  for (long x : xs) p.emplace_back(x);
  return p;
}

InvariantReport compute(const Scene& s, const Options& o) {
  const auto dirs = parse_points(o.directions);
  const auto apexes = parse_points(o.apexes);
  const std::string& inv = o.invariant;
  const std::string alg = o.algorithm;
  auto bad_alg = [&] { return UsageError("algorithm '" + alg + "' does not apply to " + inv); };

  if (inv == "lk") {
    if (!alg.empty()) throw bad_alg();
    auto c = take<2>(primaries(s), "lk");
    auto user = nth_point(dirs, 0);
    return with_fallbacks("lk", [&](int k) {
      return linking_number(c[0], c[1], choose<Point>(k, user, ints({0, 0, 1}), alternate_directions(3)));
    });
  }
  if (inv == "mu-breve") {
    auto d = take<3>(primaries(s), "mu-breve");
    if (alg.empty() || alg == "homotopy") {
      auto user = point_group<3>(dirs, "--direction");
      return with_fallbacks("mu-breve", [&](int k) {
        auto disp = (k == 0 && user) ? *user : default_displacements(d, user ? k - 1 : k);
        return doodle_mu_breve_homotopy(d, disp);
      });
    }
    if (alg == "degree") {
      auto user = point_group<3>(dirs, "--direction");
      const std::array<Point, 3> w0{ints({3, 1}), ints({-1, 2}), ints({-2, -3})};
      return with_fallbacks("mu-breve", [&](int k) {
        return doodle_mu_breve_degree(d, choose(k, user, w0, alternate_configurations(2)));
      });
    }
    throw bad_alg();
  }
  if (inv == "mu") {
    if (!alg.empty()) throw bad_alg();
    auto curves = take<3>(primaries(s), "mu");
    auto given = take<3>(s.with_role(Role::SpanningSurface), "mu (spanning surfaces)");
    return with_fallbacks("mu", [&](int k) {
      // fallbacks replace a degenerate system by re-coned ones, validated again
      return milnor_mu(curves, k == 0 ? given : recone_spanning_system(curves, k - 1));
    });
  }
  if (inv == "mu-star") {
    if (!alg.empty()) throw bad_alg();
    const HexFamily& h = family(s);
    auto user = point_group<3>(dirs, "--direction");
    const std::array<Point, 3> w0{ints({3, 1, -2}), ints({-1, 2, 5}), ints({-2, -3, -3})};
    return with_fallbacks("mu-star",
                          [&](int k) { return mu_star(h, choose(k, user, w0, alternate_configurations(3))); });
  }
  if (inv == "beta-hat") {
    auto t = pm0(s);
    if (alg.empty() || alg == "rays") {
      auto user = point_group<2>(dirs, "--direction");
      const std::array<Point, 2> uw0{ints({2, 3, 5, 7}), ints({-3, 1, 4, -2})};
      return with_fallbacks("beta-hat", [&](int k) {
        auto uw = choose(k, user, uw0, alternate_direction_pairs(4));
        return beta_hat_rays(t[0], t[1], t[2], uw[0], uw[1]);
      });
    }
    if (alg == "homotopy") {
      auto user = point_group<2>(apexes, "--apex");
      const std::array<Point, 2> ap0{ints({9, 4, -5, 3}), ints({-6, 7, 2, -8})};
      auto alts = alternate_apexes(4);
      std::vector<std::array<Point, 2>> pairs{{alts[0], alts[1]}, {alts[1], alts[2]}, {alts[2], alts[0]}};
      return with_fallbacks("beta-hat", [&](int k) {
        auto ap = choose(k, user, ap0, pairs);
        return beta_hat_homotopy(t[0], t[1], t[2], ap[0], ap[1]);
      });
    }
    throw bad_alg();
  }
  if (inv == "beta") {
    if (!alg.empty() && alg != "homotopy") throw bad_alg();
    auto g = star_zero(s);
    auto user = nth_point(apexes, 0);
    return with_fallbacks("beta", [&](int k) {
      return beta_parity(g[0], g[1], choose<Point>(k, user, ints({9, 4, -5, 3}), alternate_apexes(4)));
    });
  }
  if (inv == "beta-star") {
    if (!alg.empty() && alg != "rays") throw bad_alg();
    auto g = star_zero(s);
    auto user = point_group<2>(dirs, "--direction");
    const std::array<Point, 2> uw0{ints({2, 3, 5, 7}), ints({-3, 1, 4, -2})};
    return with_fallbacks("beta-star", [&](int k) {
      auto uw = choose(k, user, uw0, alternate_direction_pairs(4));
      return beta_star(g[0], g[1], uw[0], uw[1]);
    });
  }
  throw UsageError("unknown invariant '" + inv + "'");
}

Validation validate(const Scene& s, const std::string& check) {
  if (check == "complex") {
    Validation v;
    v.check = "complex";
    auto one = [&](const std::string& where, const PLMap& m) {
      if (!v.ok) return;
      try {
        validate_complex(m.domain);
      } catch (const GeometryError& e) {
        v.ok = false;
        v.where = where + ": " + e.what();
      }
    };
    for (const auto& c : s.components) one(c.name, *c.map);
    if (s.hex)
      for (const auto& f : s.hex->faces)
        for (int i = 0; i < 3; ++i)
          one("face t" + std::to_string(f.k + 1) + "=" + std::to_string(f.value) + " map " + std::to_string(i + 1),
              *f.maps[i]);
    return v;
  }
  if (check == "linkmap") return validate_link_map(primaries(s));
  if (check == "ornament") return validate_ornament(take<3>(primaries(s), "ornament"));
  if (check == "pm0") {
    auto t = pm0(s);
    return validate_pm_ne_0(t[0], t[1], t[2]);
  }
  if (check == "hexagonal") return verify_hexagonal(family(s));
  throw UsageError("unknown check '" + check + "'");
}

Scalar param(const std::string& text, const char* name) {
  try {
    return parse_scalar(text);
  } catch (const std::exception& e) {
    throw UsageError(std::string("--") + name + ": " + e.what());
  }
}

SceneFile build(const Options& o) {
  SceneFile f;
  f.metadata["kind"] = o.kind;
  const Scalar a = param(o.a, "a"), b = param(o.b, "b");
  auto ab = [&] {
    f.metadata["a"] = to_string(a);
    f.metadata["b"] = to_string(b);
  };
  const std::string& k = o.kind;
  if (k == "borromean-rings") {
    ab();
    f.scene = build_borromean_rings(a, b);
  } else if (k == "borromean-disks") {
    ab();
    f.scene = build_borromean_disks(a, b);
  } else if (k == "borromean-alt-disks") {
    ab();
    f.scene = build_borromean_alt_disks(a, b);
  } else if (k == "borromean-diagonal-disks") {
    ab();
    f.scene = build_borromean_diagonal_disks(a, b);
  } else if (k == "borromean-doodle") {
    f.scene = build_borromean_doodle();
  } else if (k == "lifted-doodle") {
    f.scene = lift_spanning_system(lift_doodle(build_borromean_doodle()));
  } else if (k == "hopf") {
    f.scene = build_hopf_link();
  } else if (k == "split") {
    f.metadata["n"] = o.n;
    f.metadata["dim"] = o.dim;
    f.scene = build_split(o.n, o.dim);
  } else if (k == "cor33") {
    f.scene = build_cor33_linkmap();
  } else if (k == "doubled-cor33") {
    f.scene = double_link_map(build_cor33_linkmap());
  } else if (k == "hex-borromean") {
    ab();
    f.metadata["grid"] = o.grid;
    f.scene.ambient_dim = 3;
    f.scene.hex = build_borromean_hexagonal_family(a, b, o.grid);
  } else if (k == "random") {
    std::uint64_t seed = o.seed.value_or(1);
    f.metadata["random_kind"] = o.random_kind;
    f.metadata["seed"] = seed;
    f.scene = random_scene(parse_random_kind(o.random_kind), seed);
  } else {
    throw UsageError("unknown kind '" + k + "'");
  }
  return f;
}

ordered_json violation_json(const Validation& v) {
  ordered_json j;
  j["status"] = "violation";
  j["validation"] = validation_to_json(v);
  return j;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact PL Gauss-type invariants of links, doodles and link maps", "plgauss"};
  app.require_subcommand(1);
  Options o;

  auto* v = app.add_subcommand("validate", "Run a validator on a scene file");
  v->add_option("--scene", o.scene_path, "Scene file")->required();
  v->add_option("--check", o.check, "complex | linkmap | ornament | pm0 | hexagonal")->required();
  v->add_option("-o", o.output, "Write the result here instead of standard output");

  auto* c = app.add_subcommand("compute", "Compute an invariant of a scene file");
  c->add_option("--scene", o.scene_path, "Scene file")->required();
  c->add_option("--invariant", o.invariant, "lk | mu-breve | mu | mu-star | beta-hat | beta | beta-star")->required();
  c->add_option("--direction", o.directions, "Direction x,y,... (repeatable)");
  c->add_option("--apex", o.apexes, "Apex x,y,... (repeatable)");
  c->add_option("--seed", o.seed, "Recorded in the report");
  c->add_option("--algorithm", o.algorithm, "homotopy | degree | rays");
  c->add_option("-o", o.output, "Write the report here instead of standard output");

  auto* b = app.add_subcommand("build", "Write a standard scene");
  b->add_option("--kind", o.kind,
                "borromean-rings | borromean-disks | borromean-alt-disks | borromean-diagonal-disks | "
                "borromean-doodle | lifted-doodle | hopf | split | cor33 | doubled-cor33 | hex-borromean | random")
      ->required();
  b->add_option("--a", o.a, "Borromean long half-axis");
  b->add_option("--b", o.b, "Borromean short half-axis");
  b->add_option("--n", o.n, "split: number of components");
  b->add_option("--dim", o.dim, "split: ambient dimension (2, 3 or 4)");
  b->add_option("--grid", o.grid, "hex-borromean: subdivisions per face side");
  b->add_option("--seed", o.seed, "random: seed");
  b->add_option("--random-kind", o.random_kind, "random: doodle | pm0 | linkmap4");
  b->add_option("-o", o.output, "Write the scene here instead of standard output");

  auto* r = app.add_subcommand("render", "Draw a planar scene as SVG");
  r->add_option("--scene", o.scene_path, "Scene file")->required();
  r->add_option("-o", o.output, "Write the SVG here instead of standard output");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (v->parsed()) {
      Scene s = read_scene_file(o.scene_path).scene;
      Validation val = validate(s, o.check);
      ordered_json j;
      j["status"] = val.ok ? "certified" : "violation";
      j["validation"] = validation_to_json(val);
      emit(o, j.dump(2) + "\n", out);
      return val.ok ? kExitOk : kExitViolation;
    }
    if (c->parsed()) {
      Scene s = read_scene_file(o.scene_path).scene;
      InvariantReport rep = compute(s, o);
      if (o.seed) rep.seed = *o.seed;
      emit(o, report_to_json(rep).dump(2) + "\n", out);
      return kExitOk;
    }
    if (b->parsed()) {
      emit(o, serialize_scene(build(o)), out);
      return kExitOk;
    }
    if (r->parsed()) {
      Scene s = read_scene_file(o.scene_path).scene;
      if (s.ambient_dim != 2) {
        err << "render: scene has ambient_dim " << s.ambient_dim << ", expected 2\n";
        return kExitViolation;
      }
      emit(o, render_svg(s), out);
      return kExitOk;
    }
  } catch (const ValidationError& e) {
    out << violation_json(e.validation()).dump(2) << "\n";
    err << "violation: " << e.what() << "\n";
    return kExitViolation;
  } catch (const FallbacksExhausted& e) {
    ordered_json j;
    j["status"] = "degenerate";
    j["attempts"] = e.attempts();
    out << j.dump(2) << "\n";
    err << e.what() << "\n";
    return kExitDegenerate;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    // usage errors, bad parameters, unsupported dimensions
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace plg
