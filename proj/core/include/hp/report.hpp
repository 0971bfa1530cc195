#pragma once

#include <string>
#include <vector>

#include "hp/asymptotics.hpp"
#include "hp/hermite_pade.hpp"
#include "hp/measures.hpp"
#include "hp/riemann.hpp"
#include "hp/zeros.hpp"

namespace hp {

// Identification block embedded in every artifact: a hash of the exact
// config bytes, the precision the run used, and one line per pipeline
// stage describing what actually happened.
struct report_header {
  std::string config_hash;
  long precision_bits = 0;
  std::vector<std::string> trace;
};

// FNV-1a over the raw bytes, 16 lowercase hex digits.
std::string fnv1a_hex(const std::string& bytes);

// JSON documents with fixed member order and decimal-string numerics, so
// identical inputs serialize to identical bytes.  Full-precision strings
// for data that may be fed back in, 32 digits for measured diagnostics.
std::string to_json(const report_header& hdr, const moment_table& table);
std::string to_json(const report_header& hdr, const hp_solution& sol,
                    const residual_report* resid = nullptr);
std::string to_json(const report_header& hdr, const monic_from_roots& mf,
                    const std::vector<long>& index, int level);
std::string to_json(const report_header& hdr, const surface_map& map,
                    const bvp_report& checks);
std::string to_json(const report_header& hdr, const experiment_report& rep);

// One row per index x series x probe, header comments up front.
std::string to_csv(const report_header& hdr, const experiment_report& rep);

// Self-contained gnuplot commands charting sup deviation against total
// degree for every series of the experiment.
std::string plot_script(const experiment_report& rep);

}  // namespace hp
