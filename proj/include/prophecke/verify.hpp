#ifndef PROPHECKE_VERIFY_HPP
#define PROPHECKE_VERIFY_HPP

#include <functional>

#include "prophecke/json_io.hpp"

namespace prophecke {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SuiteConfig {
  std::string group = "SL2";
  int q = 3;
  std::string mode = "both";  // generic | charp | both
  int max_len = 6;
  uint64_t seed = 0;
  std::vector<std::string> checks;  // empty = all
  std::string out_dir = ".";
  std::string format = "pretty";  // pretty | json | tsv
  int jobs = 1;
  std::vector<int> pi_scalars = {0};  // dlog exponents on mu_{q-1} generators
  std::string inject_fault;           // "", "quadratic"
};

struct CheckResult {
  std::string name;
  std::string anchor;  // the identity the check certifies
  long long instances = 0;
  enum class Status { Pass, Fail, Inconclusive } status = Status::Pass;
  std::string counterexample;  // first counterexample with the seed
  std::string note;
  double wall_ms = 0;
};

struct VerificationReport {
  SuiteConfig cfg;
  std::vector<CheckResult> checks;
  bool all_pass() const {
    for (const auto& c : checks)
      if (c.status == CheckResult::Status::Fail) return false;
    return true;
  }
};

// Names of all available checks, in canonical order.
std::vector<std::string> all_check_names();

VerificationReport run_suite(const SuiteConfig& cfg);

std::string report_pretty(const VerificationReport& r);
std::string report_tsv(const VerificationReport& r);    // deterministic
std::string report_json(const VerificationReport& r);   // deterministic

// Writes the selected tables (kinds: "ztable", "bernstein",
// "classification"; empty list writes nothing) into cfg.out_dir with stable
// names <group>_q<q>_<kind>.json; returns the file paths written.
std::vector<std::string> emit_tables(const SuiteConfig& cfg,
                                     const std::vector<std::string>& kinds = {
                                         "ztable", "bernstein", "classification"});

// Independent brute-force pipelines used by the enumeration cross-check.
struct SimpleModuleSignature {
  int dim = 0;
  std::vector<AffineChar> content;     // sorted affine character content
  std::vector<Fel> omega_scalars;      // action scalars of the Omega data
  bool supersingular = false;
  bool operator==(const SimpleModuleSignature& o) const {
    return dim == o.dim && content == o.content && omega_scalars == o.omega_scalars &&
           supersingular == o.supersingular;
  }
  bool operator<(const SimpleModuleSignature& o) const {
    if (dim != o.dim) return dim < o.dim;
    if (content != o.content) return content < o.content;
    if (omega_scalars != o.omega_scalars) return omega_scalars < o.omega_scalars;
    return supersingular < o.supersingular;
  }
};

}  // namespace prophecke

#endif
