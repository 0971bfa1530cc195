#pragma once

#include <string>
#include <vector>

#include "hp/complex.hpp"
#include "hp/hermite_pade.hpp"
#include "hp/measures.hpp"

namespace hp {

// One JSON config drives every subcommand; fields a command does not use
// are ignored by it.  Numeric values may be JSON numbers or decimal
// strings; strings are the way to pass values a double cannot hold.
struct run_config {
  nikishin_generator gen;
  precision_policy policy;
  long degree_budget = 0;  // 0: derived from the indices a command touches
  int pole_sheet = 1;
  std::vector<long> index;
  int level = 0;  // zeros level; 0 picks the top of the chain
  std::vector<std::vector<long>> ladder;
  long ladder_from = 0, ladder_to = 0;
  std::vector<complex> probes;
  long jobs = 1;
  std::string raw;  // exact bytes the hash in report headers covers
};

std::string read_file(const std::string& path);

// bits_override > 0 replaces the configured precision before any numeric
// field is parsed, so string-valued constants land at final precision.
run_config parse_config(const std::string& text, long bits_override = 0);
run_config load_config(const std::string& path, long bits_override = 0);

// HP_PRECISION_BITS from the environment; 0 when unset.
long env_precision_bits();

// Sufficient table budget for one solve at this index.
long needed_budget(const multi_index& n);

}  // namespace hp
