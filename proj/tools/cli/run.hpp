#pragma once

#include "cli/job.hpp"
#include "cli/report.hpp"

namespace folia::cli {

// Executes one job. Never throws for library, parse or I/O failures: they
// become a report with verdict "error" and a machine-readable code.
Report run(const JobSpec& job);

// Writes the report in the job's format to job.out (or standard output).
void emit(const JobSpec& job, const Report& report);

}  // namespace folia::cli
