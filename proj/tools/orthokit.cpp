// orthokit: command-line front end for the orthokit library.
//
// Exit codes: 0 success, 1 assertion or property failed, 2 malformed input,
// 3 resource limit.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "orthokit/adjoint.hpp"
#include "orthokit/category.hpp"
#include "orthokit/gallery.hpp"
#include "orthokit/io.hpp"
#include "orthokit/report.hpp"

using namespace orthokit;

namespace {

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kBadInput = 2;
constexpr int kLimit = 3;

std::size_t default_limit() {
  if (const char* env = std::getenv("ORTHOKIT_LIMIT")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw Error(ErrorCode::InvalidArgument, std::string("ORTHOKIT_LIMIT is not a number: ") + env);
    }
  }
  return kDefaultLatticeLimit;
}

void print(const Json& j) { std::cout << j.dump(2) << "\n"; }

Json subset_json(const Orthoset& x, const Subset& s) { return labels_json(x, s.bits()); }

Json classification_json(const OrthoMap& f, const MapClassification& c) {
  Json j;
  j["adjointable"] = c.adjointable;
  j["coorthometry"] = c.coorthometry;
  j["generalised_inverse"] = c.generalised_inverse ? Json(c.generalised_inverse->to_string()) : Json();
  j["image"] = subset_json(f.cod(), c.image);
  j["image_closed"] = c.image_closed;
  j["injective"] = c.injective;
  j["kernel"] = subset_json(f.dom(), c.kernel);
  j["orthoisomorphism"] = c.orthoisomorphism;
  j["orthometry"] = c.orthometry;
  j["partial_orthometry"] = c.partial_orthometry;
  j["preserves_perp"] = c.preserves_perp;
  j["projection"] = c.projection ? Json(*c.projection) : Json();
  j["reflects_perp"] = c.reflects_perp;
  j["scalar"] = c.scalar ? Json(*c.scalar) : Json();
  j["self_adjoint"] = c.self_adjoint ? Json(*c.self_adjoint) : Json();
  j["surjective"] = c.surjective;
  j["zero_kernel"] = c.zero_kernel;
  return j;
}

/// Parses "0,s,w" against x.
Subset parse_subset(const Orthoset& x, const std::string& items) {
  Bits b(x.size());
  std::stringstream in(items);
  for (std::string item; std::getline(in, item, ',');) {
    if (item.empty()) continue;
    auto i = x.find(item);
    if (!i || *i >= x.size()) throw Error(ErrorCode::ParseError, "unknown element '" + item + "'");
    b.set(*i);
  }
  return x.subset(b);
}

bool is_lattice_path(const std::string& p) {
  return p.size() >= 5 && p.compare(p.size() - 5, 5, ".json") == 0;
}

Ortholattice load_lattice(const std::string& p, std::size_t limit, unsigned threads) {
  if (is_lattice_path(p)) return read_lattice(p);
  return build_CX(read_orth(p), limit, threads);
}

/// Compares a report value against a --expect value, read as JSON when
/// possible and as a bare string otherwise.
bool expectation_holds(const Json& actual, const std::string& want) {
  Json w;
  try {
    w = Json::parse(want);
  } catch (const Json::exception&) {
    w = want;
  }
  return actual == w;
}

int run_error(const Error& e) {
  std::cerr << "error: " << e.what() << "\n";
  switch (e.code()) {
    case ErrorCode::LimitExceeded:
    case ErrorCode::CapExceeded:
    case ErrorCode::SizeLimitExceeded:
      return kLimit;
    case ErrorCode::InternalCriterionMismatch:
      return kFailed;
    default:
      return kBadInput;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"orthokit: orthosets, orthoclosed subspaces and adjointable maps"};
  app.require_subcommand(1);
  app.fallthrough();
  std::size_t limit = 0;
  unsigned threads = 1;
  std::uint64_t seed = 0;
  app.add_option("--limit", limit, "Maximum number of orthoclosed subspaces to enumerate");
  app.add_option("--threads", threads, "Worker threads for subspace enumeration")->check(CLI::Range(1u, 256u));
  app.add_option("--seed", seed, "Seed for random generation");

  std::string path, path2, subset_arg, format = "json", mode = "os", name;
  std::vector<std::string> expects;
  bool ios = false;
  std::size_t rand_n = 6;
  double rand_p = 0.5;

  auto* check = app.add_subcommand("check", "Report properties of an orthoset");
  check->add_option("file", path, ".orth file")->required();
  check->add_option("--expect", expects, "Assert key=value on the report");

  auto* lattice = app.add_subcommand("lattice", "Emit the lattice of orthoclosed subspaces");
  lattice->add_option("file", path, ".orth or .lat.json file")->required();
  lattice->add_option("--format", format, "json or dot")->check(CLI::IsMember({"json", "dot"}));

  auto* adjoint_cmd = app.add_subcommand("adjoint", "Canonical adjoint of a map");
  adjoint_cmd->add_option("file", path, ".map file")->required();

  auto* classify_cmd = app.add_subcommand("classify", "Classify a map");
  classify_cmd->add_option("file", path, ".map file")->required();

  auto* sasaki = app.add_subcommand("sasaki", "Sasaki map onto an orthoclosed subset");
  sasaki->add_option("file", path, ".orth file")->required();
  sasaki->add_option("subset", subset_arg, "comma-separated elements")->required();

  auto* homcount = app.add_subcommand("homcount", "Count morphisms");
  homcount->add_option("from", path, "source")->required();
  homcount->add_option("to", path2, "target")->required();
  homcount->add_option("--mode", mode, "os, col or caol")->check(CLI::IsMember({"os", "col", "caol"}));

  auto* demo = app.add_subcommand("demo", "Certified demonstrations");
  demo->add_option("name", name, "equaliser")->required()->check(CLI::IsMember({"equaliser"}));
  demo->add_flag("--ios", ios, "Restrict to irredundant orthosets");

  auto* gallery_cmd = app.add_subcommand("gallery", "Named examples");
  gallery_cmd->require_subcommand(1);
  auto* gallery_list = gallery_cmd->add_subcommand("list", "List gallery entries");
  auto* gallery_emit = gallery_cmd->add_subcommand("emit", "Write a gallery entry as .orth or lattice JSON");
  gallery_emit->add_option("name", name, "entry name")->required();

  auto* random_cmd = app.add_subcommand("random", "Seeded random orthoset");
  random_cmd->add_option("-n", rand_n, "Number of proper elements");
  random_cmd->add_option("-p", rand_p, "Orthogonality probability")->check(CLI::Range(0.0, 1.0));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kBadInput;
  }

  try {
    if (limit == 0) limit = default_limit();

    if (*check) {
      const auto x = read_orth(path);
      const Json report = check_report(x, limit, threads);
      print(report);
      int rc = kOk;
      for (const auto& e : expects) {
        const auto eq = e.find('=');
        if (eq == std::string::npos) throw Error(ErrorCode::InvalidArgument, "--expect needs key=value: " + e);
        const auto key = e.substr(0, eq);
        const auto want = e.substr(eq + 1);
        if (!report.contains(key)) throw Error(ErrorCode::InvalidArgument, "unknown report key: " + key);
        if (!expectation_holds(report[key], want)) {
          std::cerr << "expectation failed: " << key << " is " << report[key].dump() << ", expected " << want << "\n";
          rc = kFailed;
        }
      }
      return rc;
    }

    if (*lattice) {
      const auto l = load_lattice(path, limit, threads);
      if (format == "dot") {
        std::cout << emit_dot(l);
      } else {
        print(lattice_json(l));
      }
      return kOk;
    }

    if (*adjoint_cmd) {
      const auto f = read_map(path);
      const auto r = find_adjoint(f);
      Json j;
      j["adjointable"] = r.adjointable;
      j["adjoint"] = r.canonical ? Json(r.canonical->to_string()) : Json();
      j["witness"] = r.witness ? Json(f.cod().label(*r.witness)) : Json();
      print(j);
      return r.adjointable ? kOk : kFailed;
    }

    if (*classify_cmd) {
      const auto f = read_map(path);
      print(classification_json(f, classify(f, nullptr, limit)));
      return kOk;
    }

    if (*sasaki) {
      const auto x = read_orth(path);
      const auto a = parse_subset(x, subset_arg);
      const auto r = sasaki_map(x, a);
      Json j;
      j["adjointable"] = r.map.has_value();
      j["map"] = r.map ? Json(r.map->to_string()) : Json();
      j["witness"] = r.witness ? Json(x.label(*r.witness)) : Json();
      Json failing = Json::array();
      for (Index v : r.failing) failing.push_back(x.label(v));
      j["failing"] = failing;
      print(j);
      return r.map ? kOk : kFailed;
    }

    if (*homcount) {
      std::uint64_t n = 0;
      if (mode == "os") {
        n = hom_count(read_orth(path), read_orth(path2));
      } else {
        n = hom_count(load_lattice(path, limit, threads), load_lattice(path2, limit, threads),
                      mode == "col" ? LatticeHomMode::Adjointable : LatticeHomMode::BasicPreserving);
      }
      std::cout << n << "\n";
      return kOk;
    }

    if (*demo) {
      const auto c = equaliser_nonexistence_demo(ios ? Category::iOS : Category::OS);
      const auto sq = example_square();
      Json j;
      j["status"] = to_string(c.status);
      j["category"] = ios ? "iOS" : "OS";
      j["equaliser_set"] = subset_json(sq, c.equaliser_set);
      j["size_bound"] = c.size_bound;
      Json trace = Json::array();
      for (const auto& s : c.trace) trace.push_back({{"claim", s.claim}, {"verified", s.verified}});
      j["trace"] = trace;
      print(j);
      return trace_verified(c) && c.status == EqualiserStatus::ExhaustedNoEqualiser ? kOk : kFailed;
    }

    if (*gallery_list) {
      for (const auto& e : gallery())
        std::cout << e.name << "\t" << (std::holds_alternative<Orthoset>(e.object) ? "orthoset" : "lattice") << "\t"
                  << e.description << "\n";
      return kOk;
    }

    if (*gallery_emit) {
      const auto e = gallery_entry(name);
      if (!e) throw Error(ErrorCode::InvalidArgument, "no gallery entry named " + name);
      if (const auto* x = std::get_if<Orthoset>(&e->object)) {
        std::cout << emit_orth(*x);
      } else {
        print(lattice_json(std::get<Ortholattice>(e->object)));
      }
      return kOk;
    }

    if (*random_cmd) {
      std::cout << emit_orth(random_orthoset(rand_n, rand_p, seed));
      return kOk;
    }
  } catch (const Error& e) {
    return run_error(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadInput;
  }
  return kOk;
}
