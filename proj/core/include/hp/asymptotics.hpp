#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "hp/complex.hpp"
#include "hp/hermite_pade.hpp"
#include "hp/measures.hpp"
#include "hp/zeros.hpp"

namespace hp {

// Per-index cache for one generator: solved linear forms, their monic zero
// factors Q_{n,j}, boundary values of the weighted quotients H_{n,j} on the
// slits, and the normalizing constants K/kappa.  Everything is computed on
// demand and kept; experiment runners share one family per worker.
class form_family {
 public:
  form_family(const moment_table& table, precision_policy policy);

  const hp_solution& solution(const multi_index& n);
  // Monic factor collecting the located zeros of the j-th form, j = 1..m.
  const monic_from_roots& factor(const multi_index& n, int j);
  // Q_{n,j} as a polynomial, with the empty products at j = 0 and j = m+1.
  poly factor_poly(const multi_index& n, int j);

  // H_{n,j} = Q_{n,j+1} A_{n,j} / Q_{n,j}, j = 0..m; quotient form, valid
  // away from the zeros of Q_{n,j}.
  complex H_quotient(const multi_index& n, int j, const complex& z);
  // Same function through its integral representation over the (j+1)-th
  // slit; smooth across the j-th slit, so this is also the boundary-value
  // route.  Valid for j = 0..m-1 (the top level is the constant (-1)^m).
  complex H_integral(const multi_index& n, int j, const complex& z);
  // Values of H_{n,j} at the nodes of the j-th base discretization, j=1..m.
  const std::vector<real>& H_slit_values(const multi_index& n, int j);

  struct k_constants {
    std::vector<real> K;      // K_{n,0..m}, with K_{n,m} = 1
    std::vector<real> kappa;  // kappa_{n,k} = K_{n,k-1}/K_{n,k}, k = 1..m
  };
  const k_constants& constants(const multi_index& n);

  const moment_table& table() const { return table_; }

 private:
  struct entry {
    std::unique_ptr<hp_solution> sol;
    std::map<int, monic_from_roots> factors;
    std::map<int, std::vector<real>> phi;      // integral weights per level
    std::map<int, std::vector<real>> h_nodes;  // H on the level's own nodes
    std::unique_ptr<k_constants> consts;
  };
  entry& at(const multi_index& n);
  const std::vector<real>& phi_weights(const multi_index& n, int j);

  const moment_table& table_;
  precision_policy policy_;
  std::map<std::vector<long>, entry> cache_;
};

struct experiment_row {
  std::vector<long> index;
  std::string series;
  complex probe;
  complex measured;
  complex reference;
  real deviation;
};

struct rate_fit {
  std::string series;
  double slope = 0.0;  // least-squares d log(sup deviation) / d |n|
  double ratio = 1.0;  // exp(slope), the fitted per-degree factor
  bool decreasing = false;
};

struct experiment_report {
  std::string experiment;
  std::vector<std::vector<long>> ladder;
  std::vector<complex> probes;
  std::vector<experiment_row> rows;
  std::vector<rate_fit> fits;

  std::vector<std::string> series_names() const;
  // Largest deviation among rows of the series at one ladder entry.
  real sup_deviation(const std::string& series,
                     const std::vector<long>& n) const;
};

// Diagonal multi-indices (k,...,k) for k = from..to.
std::vector<multi_index> diagonal_ladder(int m, long from, long to);
// Strictly decreasing components (k+m-1, k+m-2, ..., k) for k = from..to.
std::vector<multi_index> staircase_ladder(int m, long from, long to);
// Circles of radius two and four system diameters plus outside real points,
// all at distance >= 1/2 from every interval.
std::vector<complex> default_probes(const nikishin_generator& gen);

// Ratios of consecutive form coefficients against the reversed-system
// transforms, per level.
experiment_report run_markov_convergence(system_context& ctx,
                                         const std::vector<multi_index>& ladder,
                                         const std::vector<complex>& probes,
                                         long jobs = 1);
// Q_{n^l,k}/Q_{n,k} against the normalized branch products, and the
// top-coefficient ratio against the rescaled top branch.
experiment_report run_ratio_asymptotics(system_context& ctx,
                                        const std::vector<multi_index>& ladder,
                                        int l,
                                        const std::vector<complex>& probes,
                                        long jobs = 1);
// kappa_{n^l,k}/kappa_{n,k} against the surface constants, the telescoping
// K identity, and the form-ratio modulus check.
experiment_report run_kappa(system_context& ctx,
                            const std::vector<multi_index>& ladder, int l,
                            const std::vector<complex>& probes, long jobs = 1);
// Zero counts, interlacing along single-component increments, and
// sign-change lower bounds across the ladder.
experiment_report zero_structure_report(system_context& ctx,
                                        const std::vector<multi_index>& ladder);

}  // namespace hp
