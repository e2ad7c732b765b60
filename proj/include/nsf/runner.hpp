#pragma once

#include <string>
#include <vector>

#include "nsf/config.hpp"
#include "nsf/diagnostics.hpp"

namespace nsf {

// One structural hypothesis check. Failures name the inequality or
// identity that broke so a report line is actionable on its own.
struct AuditCheck {
    std::string name;
    bool passed = true;
    std::string detail;
};

struct AuditReport {
    std::vector<AuditCheck> checks;
    std::vector<std::string> warnings;  // admissibility findings, not failures
    bool all_passed() const;
    std::string text() const;
};

// Transport coefficient bands, kinetics simplex properties, thermodynamic
// admissibility sampling over a (rho, theta, Y) box, and cold
// pressure/energy consistency. Failures are report content, never throws.
AuditReport constitutive_audit(const RunConfig& cfg);

// Exit status contract:
//   0  clean run (admissibility findings are warnings only)
//   1  constitutive audit failed before the run started
//   2  positivity loss; failure report and last good snapshot written
//   3  entropy-production sign violation beyond tolerance
struct RunResult {
    int exit_code = 0;
    long long steps = 0;
    double t_final = 0.0;
    std::string summary;  // human-readable form, also written to summary.txt
    std::vector<DiagnosticsRecord> records;
};

// Time loop to t_end with records at the configured cadence, snapshots,
// config sidecar, and dual-format summary, all under cfg.output_dir.
RunResult run(const RunConfig& cfg);

}  // namespace nsf
