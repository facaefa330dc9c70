// Copyright 2026 The selfdeg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "selfdeg/cli.hpp"

#include <algorithm>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "selfdeg/degset.hpp"
#include "selfdeg/dsl.hpp"
#include "selfdeg/engine.hpp"
#include "selfdeg/manifold.hpp"

namespace selfdeg::cli {

namespace {

using Json = nlohmann::ordered_json;
using degset::DegreeSet;
using degset::Membership;
using numth::Int;

constexpr Int kMaxListWidth = 10'000'000;

struct Options {
  bool json = false;
  bool with_zero = false;
  bool quiet = false;
};

struct Failure {
  int code;
  std::string message;
  std::vector<dsl::Diagnostic> diagnostics;
};

// What a command produced, before formatting.
struct Outcome {
  std::vector<std::string> text;  // payload lines
  Json result;
  std::optional<std::string> geometry;
  std::vector<std::string> notes;
};

struct Parsed {
  manifold::ManifoldDesc desc;
  std::string canonical;
};

Parsed parse_manifold(const std::string& text) {
  dsl::ParseResult r = dsl::parse(text);
  if (!r.ok()) throw Failure{kInvalidInput, "invalid manifold description", std::move(r.diagnostics)};
  std::string canonical = dsl::render(*r.desc);
  return {std::move(*r.desc), std::move(canonical)};
}

Json membership_json(Membership m) {
  switch (m) {
    case Membership::kYes:
      return true;
    case Membership::kNo:
      return false;
    case Membership::kUnknown:
      return nullptr;
  }
  return nullptr;
}

// Degree set with the zero policy applied, plus the notes it implies.
struct Degrees {
  DegreeSet set;
  manifold::Geometry geometry;
  std::vector<std::string> notes;
};

Degrees compute(const Parsed& p, const Options& opt) {
  Degrees d{engine::degrees(p.desc), manifold::classify(p.desc), {}};
  if (degset::has_trivial_band(d.set)) {
    d.notes.emplace_back(
        "no self-map of degree other than 0, 1 or -1 exists; whether -1 occurs is not decided here");
  } else if (degset::contains(d.set, 0) == Membership::kNo) {
    if (opt.with_zero) {
      d.set = degset::normalize(degset::unite(d.set, DegreeSet::finite({0})));
      d.notes.emplace_back("0 added for constant maps (--with-zero)");
    } else {
      d.notes.emplace_back("set as given by the closed form; 0 (constant maps) is excluded, pass --with-zero to add it");
    }
  }
  return d;
}

Json set_json(const DegreeSet& s) {
  Json j;
  j["kind"] = "set";
  j["description"] = degset::describe(s);
  j["trivial_band"] = degset::has_trivial_band(s);
  if (s.is<degset::Periodic>()) {
    const auto& r = s.as<degset::Periodic>().residues;
    j["periodic"] = {{"modulus", r.modulus()}, {"residues", r.residues()}};
  } else if (s.is<degset::AllIntegers>()) {
    j["periodic"] = {{"modulus", 1}, {"residues", std::vector<Int>{0}}};
  } else {
    j["periodic"] = nullptr;
  }
  return j;
}

std::string join(const std::vector<Int>& v) {
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? " " : "") << v[i];
  return os.str();
}

std::string bool_text(Json v) {
  if (v.is_null()) return "unknown";
  return v.get<bool>() ? "true" : "false";
}

void emit_text(const Outcome& o, const Options& opt, std::ostream& out) {
  for (const auto& line : o.text) out << line << '\n';
  if (opt.quiet) return;
  if (o.geometry) out << "# geometry: " << *o.geometry << '\n';
  for (const auto& n : o.notes) out << "# note: " << n << '\n';
}

void emit_failure_text(const Failure& f, const std::string& input, std::ostream& err) {
  err << "error: " << f.message << '\n';
  for (const auto& d : f.diagnostics) {
    err << "  " << dsl::format_diagnostic(d) << '\n';
    if (!input.empty() && input.find('\n') == std::string::npos && d.span.begin <= input.size()) {
      const std::size_t width = std::max<std::size_t>(1, d.span.end - d.span.begin);
      err << "    " << input << '\n' << "    " << std::string(d.span.begin, ' ') << std::string(width, '^') << '\n';
    }
  }
}

Json failure_json(const Failure& f) {
  Json j;
  j["code"] = f.code;
  j["message"] = f.message;
  Json diags = Json::array();
  for (const auto& d : f.diagnostics) {
    diags.push_back({{"begin", d.span.begin}, {"end", d.span.end}, {"message", d.message}});
  }
  j["diagnostics"] = diags;
  return j;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact self-mapping degree sets of closed orientable 3-manifolds", "selfdeg"};
  app.require_subcommand(1);
  Options opt;
  app.add_flag("--json", opt.json, "Emit a JSON envelope on stdout");
  app.add_flag("--with-zero", opt.with_zero, "Include degree 0 (constant maps) in every set");
  app.add_flag("--quiet", opt.quiet, "Print only the result line(s)");

  std::string manifold_text;
  Int from = 0, to = 0, degree = 0, p = 0, q = 0;

  auto* describe = app.add_subcommand("describe", "Canonical description of D(M)");
  describe->add_option("manifold", manifold_text, "Manifold description")->required();
  auto* list = app.add_subcommand("list", "Members of D(M) in a range");
  list->add_option("manifold", manifold_text, "Manifold description")->required();
  list->add_option("--from", from, "Lower bound (inclusive)")->required()->allow_extra_args(false);
  list->add_option("--to", to, "Upper bound (inclusive)")->required()->allow_extra_args(false);
  auto* contains = app.add_subcommand("contains", "Whether d lies in D(M); write negative d after --");
  contains->add_option("manifold", manifold_text, "Manifold description")->required();
  contains->add_option("degree", degree, "Degree to test")->required();
  auto* classify = app.add_subcommand("classify", "Geometry of M");
  classify->add_option("manifold", manifold_text, "Manifold description")->required();
  auto* minus_one = app.add_subcommand("minus-one", "Whether -1 lies in D(M)");
  minus_one->add_option("manifold", manifold_text, "Manifold description")->required();
  auto* reversal = app.add_subcommand("lens-reversal", "Orientation-reversal predicates for L(p,q)");
  reversal->add_option("p", p, "Lens order")->required();
  reversal->add_option("q", q, "Lens parameter")->required();
  for (auto* sub : {describe, list, contains, classify, minus_one, reversal}) sub->fallthrough();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    const bool json = std::find(args.begin(), args.end(), "--json") != args.end();
    if (json) {
      Json j;
      j["status"] = "error";
      j["command"] = nullptr;
      j["error"] = failure_json(Failure{kInvalidInput, e.what(), {}});
      out << j.dump(2) << '\n';
    } else {
      err << "error: " << e.what() << '\n' << "run 'selfdeg --help' for usage\n";
    }
    return kInvalidInput;
  }

  const CLI::App* sub = app.get_subcommands().front();
  const std::string command = sub->get_name();
  Json query;
  if (sub == reversal) {
    query["p"] = p;
    query["q"] = q;
  } else {
    query["manifold"] = manifold_text;
    query["canonical"] = nullptr;
  }
  if (sub == list) {
    query["from"] = from;
    query["to"] = to;
  }
  if (sub == contains) query["degree"] = degree;
  query["with_zero"] = opt.with_zero;

  Outcome o;
  try {
    try {
      if (sub == reversal) {
        const engine::ReversalReport r = engine::lens_reversal_report(p, q);
        o.geometry = "S3";
        o.result = {{"kind", "reversal"},
                    {"has_degree_minus_one", r.has_degree_minus_one},
                    {"has_orientation_reversing_homeo", r.has_orientation_reversing_homeo},
                    {"every_degree_minus_one_homotopic_to_homeo", r.every_degree_minus_one_homotopic_to_homeo}};
        o.text = {std::string("has_degree_minus_one: ") + (r.has_degree_minus_one ? "true" : "false"),
                  std::string("has_orientation_reversing_homeo: ") + (r.has_orientation_reversing_homeo ? "true" : "false"),
                  std::string("every_degree_minus_one_homotopic_to_homeo: ") +
                      (r.every_degree_minus_one_homotopic_to_homeo ? "true" : "false")};
      } else {
        const Parsed parsed = parse_manifold(manifold_text);
        query["canonical"] = parsed.canonical;
        if (sub == classify) {
          const auto g = manifold::to_string(manifold::classify(parsed.desc));
          o.result = {{"kind", "geometry"}, {"geometry", g}};
          o.text = {g};
        } else {
          if (sub == list) {
            if (from > to) throw Failure{kInvalidInput, "empty range: --from exceeds --to", {}};
            if (static_cast<numth::Wide>(to) - from + 1 > kMaxListWidth) {
              throw Failure{kInvalidInput, "range width exceeds 10000000; narrow --from/--to", {}};
            }
          }
          Degrees d = compute(parsed, opt);
          o.geometry = manifold::to_string(d.geometry);
          o.notes = std::move(d.notes);
          if (sub == describe) {
            o.result = set_json(d.set);
            o.text = {degset::describe(d.set)};
          } else if (sub == list) {
            const std::vector<Int> members = degset::enumerate(d.set, from, to);
            o.result = {{"kind", "members"}, {"from", from}, {"to", to}, {"members", members}};
            o.text = {join(members)};
          } else {
            const Int target = sub == minus_one ? -1 : degree;
            const Json v = membership_json(degset::contains(d.set, target));
            o.result = {{"kind", "membership"}, {"degree", target}, {"value", v}};
            o.text = {bool_text(v)};
          }
        }
      }
    } catch (const Failure&) {
      throw;
    } catch (const manifold::InvalidManifold& e) {
      throw Failure{kInvalidInput, e.what(), {}};
    } catch (const degset::UnsupportedEnumeration& e) {
      throw Failure{kUnsupported, e.what(), {}};
    } catch (const std::invalid_argument& e) {
      throw Failure{kInvalidInput, e.what(), {}};
    } catch (const std::length_error& e) {
      throw Failure{kInvalidInput, std::string("input exceeds supported size: ") + e.what(), {}};
    } catch (const std::overflow_error& e) {
      throw Failure{kInvalidInput, std::string("input exceeds the 64-bit range: ") + e.what(), {}};
    } catch (const std::exception& e) {
      throw Failure{kInternal, std::string("internal error: ") + e.what(), {}};
    }
  } catch (const Failure& f) {
    if (opt.json) {
      Json j;
      j["status"] = "error";
      j["command"] = command;
      j["query"] = query;
      j["error"] = failure_json(f);
      out << j.dump(2) << '\n';
    } else {
      emit_failure_text(f, manifold_text, err);
    }
    return f.code;
  }

  if (opt.json) {
    Json j;
    j["status"] = "ok";
    j["command"] = command;
    j["query"] = query;
    j["geometry"] = o.geometry ? Json(*o.geometry) : Json(nullptr);
    j["result"] = o.result;
    j["notes"] = o.notes;
    out << j.dump(2) << '\n';
  } else {
    emit_text(o, opt, out);
  }
  return kOk;
}

}  // namespace selfdeg::cli
