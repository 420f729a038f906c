#pragma once

#include "run_config.hpp"

namespace litcx {

// Each command writes its outputs under cfg.out, plus <command>.config.txt
// (the effective configuration) and manifest.<command>.json. Errors are
// thrown as litcomplex::UserError / InvariantError.
void cmd_extract(const RunConfig& cfg);
void cmd_classify(const RunConfig& cfg);
void cmd_ablate(const RunConfig& cfg);
void cmd_report(const RunConfig& cfg);

// Maps exceptions to the documented exit codes: 1 user error, 2 invariant.
int run_guarded(void (*command)(const RunConfig&), const RunConfig& cfg);

}  // namespace litcx
