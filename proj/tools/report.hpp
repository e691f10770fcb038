#pragma once

// Command logic behind the nkg tool: caps, verification runs and report
// rendering. Kept out of main() so tests can drive it directly.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "nkg/graph.hpp"

namespace nkg::cli {

using Json = nlohmann::ordered_json;

enum class Depth { kCounts, kAcyclicity, kFullSnf };
enum class Format { kJson, kCsv, kText };

/// Largest k the vertex encoding supports (C(k+6, 3) ids in 256 bits).
inline constexpr int kHardLimit = 6;
/// Default k caps per depth, lifted by --allow-large.
int depth_cap(Depth depth);
/// Full enumeration of F(N(S_{3,k})) is capped separately.
inline constexpr int kTheorem2Cap = 2;

Depth parse_depth(const std::string& text);
Format parse_format(const std::string& text);
std::string to_string(Depth depth);

struct RunConfig {
  std::string command;  // build | verify | betti | census | export
  std::string target;   // verify: theorem2 | theorem3 | lemma | all
  std::string lemma;    // verify lemma
  std::string what;     // export: edges | maximal | faces | boundary | matching
  int k = 0;
  int dim = -1;  // export faces/boundary; betti max dimension (-1: k+1)
  GraphKind kind = GraphKind::kKneser;
  Format format = Format::kJson;
  Depth depth = Depth::kAcyclicity;
  std::uint64_t seed = 1;
  bool allow_large = false;
  bool timing = false;
  unsigned threads = 0;
};

/// A request outside the caps; the message says which cap and how to lift it.
class Refusal : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Throws Refusal when the config exceeds a cap.
void check_caps(const RunConfig& config);

struct Item {
  std::string name;
  bool passed = true;
  Json data = Json::object();
  std::string witness;
};

struct Report {
  std::string command;
  int k = 0;
  std::uint64_t seed = 1;
  std::vector<Item> items;
  std::optional<double> elapsed_ms;
  bool passed() const;
  /// Names of failed items, first occurrence order, deduplicated.
  std::vector<std::string> failures() const;
};

/// Names accepted by `verify lemma --lemma NAME`.
std::vector<std::string> lemma_names();

/// Runs build, verify, betti or census. Checks caps first.
Report run(const RunConfig& config);

/// The first line is a status line naming any failed lemma.
void write_report(const Report& report, Format format, std::ostream& out);

/// Raw artifact dump for `export`.
void run_export(const RunConfig& config, std::ostream& out);

}  // namespace nkg::cli
