#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "banditsim/experiments.hpp"

namespace banditsim {

struct RunOverrides {
    std::optional<long long> trials;
    std::optional<std::uint64_t> seed;
    std::optional<long long> budget;
    int threads = 0;
};

// Executes the configured sweep, writes the CSV to out_path and prints a
// summary table to log. The CSV is byte-identical across reruns with the
// same config and seed.
void run_command(ExperimentConfig config, const RunOverrides& overrides,
                 const std::string& out_path, std::ostream& log);

// Emits a CSV of hardness values and error bounds: one row per m (one row
// total for a multi-bandit config) with n, H1, H2, the theorem bound
// clamped to 1 for display, and the sandwich endpoints H2 and
// log(2*count)*H2. Rows whose hardness is undefined are marked "inf".
void bounds_command(const ExperimentConfig& config, std::ostream& out);

// Readable hardness table; with a specific m also lists the per-arm gaps.
void complexity_command(const ExperimentConfig& config, std::optional<int> m,
                        std::ostream& out);

void list_experiments(std::ostream& out);

// CSV schema: experiment,strategy,params,m,n,trials,errors,p_hat,ci_low,
// ci_high,bound,seed -- '.' decimal, UTF-8, LF line endings. The bound
// column carries the unclamped theorem bound on SAR rows, and seed is the
// master seed of the whole run.
void write_sweep_csv(const SweepResult& sweep, long long trials, std::uint64_t seed,
                     std::ostream& out);

}  // namespace banditsim
