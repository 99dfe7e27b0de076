#include <CLI11.hpp>

#include <fstream>
#include <future>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "chiral/bigraph.hpp"
#include "chiral/obstructions.hpp"
#include "chiral/real.hpp"
#include "chiral/spectra.hpp"
#include "chiral/weedcert.hpp"

using namespace chiral;
using nlohmann::json;

namespace {

constexpr int kInputError = 2;
constexpr int kInconclusive = 3;
constexpr int kCheckFailed = 4;

struct Globals {
  unsigned precision = 64;
  std::string tol = "1e-10";
  std::string designate;
};

ObstructionOptions options_from(const Globals& g) {
  set_working_precision(g.precision);
  ObstructionOptions opt;
  opt.tol = Real(g.tol);
  if (!g.designate.empty()) {
    const auto colon = g.designate.find(':');
    if (colon == std::string::npos) throw std::invalid_argument("--designate-p expects depth:index");
    // Depth is informational; designations always live at the branch depth.
    opt.designate_p = std::stoi(g.designate.substr(colon + 1)) - 1;
    if (*opt.designate_p < 0) throw std::invalid_argument("--designate-p index is 1-based");
  }
  return opt;
}

struct Line {
  int number;
  std::string plus, minus;
};

std::vector<Line> read_catalog(std::istream& in, std::vector<std::pair<int, std::string>>& errors) {
  std::vector<Line> out;
  std::string raw;
  int no = 0;
  while (std::getline(in, raw)) {
    ++no;
    if (auto h = raw.find('#'); h != std::string::npos) raw.erase(h);
    std::istringstream ss(raw);
    std::vector<std::string> tok;
    for (std::string t; ss >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    if (tok.size() != 2) {
      errors.push_back({no, "expected two graph strings"});
      continue;
    }
    out.push_back({no, tok[0], tok[1]});
  }
  return out;
}

struct Outcome {
  int line = 0;
  std::optional<ObstructionReport> report;
  std::string error;
};

Outcome obstruct_one(const Line& l, const Globals& g) {
  Outcome o;
  o.line = l.number;
  try {
    const auto opt = options_from(g);
    o.report = run_all(parse_pair(l.plus, l.minus), opt);
  } catch (const std::exception& e) {
    o.error = e.what();
  }
  return o;
}

int cmd_obstruct(const Globals& g, const std::vector<std::string>& pair, const std::string& catalog,
                 const std::string& format) {
  std::vector<std::pair<int, std::string>> bad;
  std::vector<Line> lines;
  if (!catalog.empty()) {
    std::ifstream in(catalog);
    if (!in) {
      std::cerr << "cannot open " << catalog << "\n";
      return kInputError;
    }
    lines = read_catalog(in, bad);
  } else if (pair.size() == 2) {
    lines.push_back({0, pair[0], pair[1]});
  } else {
    std::cerr << "obstruct needs a pair or --catalog\n";
    return kInputError;
  }

  std::vector<std::future<Outcome>> jobs;
  for (const auto& l : lines) jobs.push_back(std::async(std::launch::async, obstruct_one, l, g));
  std::vector<Outcome> results;
  for (auto& j : jobs) results.push_back(j.get());
  for (const auto& [no, msg] : bad) results.push_back({no, std::nullopt, msg});
  std::stable_sort(results.begin(), results.end(), [](const Outcome& a, const Outcome& b) { return a.line < b.line; });

  const bool single = catalog.empty();
  if (single && !results.front().report) {
    std::cerr << "error: " << results.front().error << "\n";
    return kInputError;
  }
  if (format == "tsv") {
    for (const auto& r : results) {
      if (r.report) std::cout << r.report->to_tsv() << "\n";
      else std::cout << "# line " << r.line << ": " << r.error << "\n";
    }
  } else if (single) {
    std::cout << results.front().report->to_json().dump(2) << "\n";
  } else {
    json arr = json::array();
    for (const auto& r : results) {
      json e = r.report ? r.report->to_json() : json{{"error", r.error}};
      e["line"] = r.line;
      arr.push_back(e);
    }
    std::cout << arr.dump(2) << "\n";
  }
  return 0;
}

int cmd_info(const Globals& g, const std::vector<std::string>& pair) {
  options_from(g);
  const auto p = parse_pair(pair.at(0), pair.at(1));
  const auto prof = spectral_profile(p, -1, Real(g.tol));
  json j = prof.to_json(std::min<int>(static_cast<int>(g.precision), 40));
  j["pair"] = to_json(p);
  std::cout << j.dump(2) << "\n";
  return 0;
}

int cmd_weed(const Globals& g, const std::string& spec_path, const std::string& out_path, const std::string& check) {
  set_working_precision(g.precision);
  if (!check.empty()) {
    std::ifstream in(check);
    if (!in) {
      std::cerr << "cannot open " << check << "\n";
      return kInputError;
    }
    json cert;
    try {
      cert = json::parse(in);
    } catch (const std::exception& e) {
      std::cerr << "invalid JSON: " << e.what() << "\n";
      return kCheckFailed;
    }
    const auto r = check_elimination(cert);
    std::cout << (r.ok ? "valid: " : "INVALID: ") << r.message << "\n";
    return r.ok ? 0 : kCheckFailed;
  }
  std::ifstream in(spec_path);
  if (!in) {
    std::cerr << "cannot open " << spec_path << "\n";
    return kInputError;
  }
  const WeedSpec w = WeedSpec::from_json(json::parse(in));
  const auto cert = eliminate_weed(w);
  const std::string text = cert.to_json().dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream(out_path) << text;
    std::cerr << to_string(cert.verdict) << ": " << cert.conclusion << "\n";
  }
  return cert.verdict == WeedVerdict::Inconclusive ? kInconclusive : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Principal graph invariants, chirality obstructions and weed certificates"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--precision", g.precision, "working precision in decimal digits")->capture_default_str();
  app.add_option("--tol", g.tol, "numeric tolerance")->capture_default_str();
  app.add_option("--designate-p", g.designate, "choose P on the plus graph as depth:index (1-based)");

  std::vector<std::string> info_pair;
  auto* info = app.add_subcommand("info", "spectral profile of a pair");
  info->add_option("pair", info_pair, "plus and minus graph strings")->expected(2)->required();

  std::vector<std::string> ob_pair;
  std::string catalog, format = "json";
  auto* ob = app.add_subcommand("obstruct", "apply every obstruction to a pair or a catalog");
  ob->add_option("pair", ob_pair, "plus and minus graph strings")->expected(2);
  ob->add_option("--catalog", catalog, "file with one pair per line");
  ob->add_option("--format", format, "json or tsv")->check(CLI::IsMember({"json", "tsv"}))->capture_default_str();

  std::string spec, out, check;
  auto* weed = app.add_subcommand("weed", "eliminate a weed family or re-check a certificate");
  weed->add_option("spec", spec, "weed spec JSON");
  weed->add_option("-o,--output", out, "write the certificate here");
  weed->add_option("--check", check, "re-validate an existing certificate");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kInputError;
  }
  try {
    if (*info) return cmd_info(g, info_pair);
    if (*ob) return cmd_obstruct(g, ob_pair, catalog, format);
    if (*weed) {
      if (spec.empty() == check.empty()) {
        std::cerr << "weed needs either a spec or --check\n";
        return kInputError;
      }
      return cmd_weed(g, spec, out, check);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
