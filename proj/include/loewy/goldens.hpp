#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace loewy {

struct GoldenOutcome {
    std::string id;
    enum Status { Pass, PassNoted, Fail, Missing } status;
    std::string detail;
};

// Compare every golden file under `goldens_dir` against the artifacts in
// `artifacts_dir`. Never mutates artifacts. Returns one outcome per golden
// item; outcomes for goldens with a recorded source discrepancy read
// "pass (source discrepancy noted)" when the corrected value matches.
std::vector<GoldenOutcome> run_verify(const std::filesystem::path& goldens_dir,
                                      const std::filesystem::path& artifacts_dir);

// render + persist a verify report; returns the number of failures
int write_verify_report(const std::vector<GoldenOutcome>& outcomes,
                        const std::filesystem::path& artifacts_dir);

} // namespace loewy
