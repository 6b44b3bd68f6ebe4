#ifndef ARCDELTA_SWEEP_HPP
#define ARCDELTA_SWEEP_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "arcdelta/geometry.hpp"

namespace arcdelta {

struct SweepRow {
  double beta = 0.0;
  int j = 0;
  bool present = false;  // absent levels are recorded, never zero-filled
  double energy = 0.0;   // E_j(beta)
  double mu = 0.0;       // mu_j
  double delta = 0.0;    // E_j + beta^2/4 - mu_j
  int n = 0;
  double tol = 0.0;
  std::string error;     // failure reason when !present
};

struct SweepTable {
  std::vector<SweepRow> rows;  // grouped by j, sorted by beta within each j
  std::vector<double> mu;      // mu_j, j = 1..j_max, computed once per curve
  std::uint64_t curve_hash = 0;
  std::string created;         // metadata only, excluded from exports
};

struct SweepParams {
  int n = 0;            // 0 = per-beta default resolution
  double tol = 1e-5;
  int grid_size = 0;    // 1D solver grid, 0 = default
  int workers = 1;
};

// Envelope constants of the remainder delta_j = E_j + beta^2/4 - mu_j:
// C_j = max |delta_j| beta / log(beta) over the sweep, plus a trend flag
// (|delta_j| non-increasing across the top half of the beta range).
struct RateFit {
  std::vector<double> c;      // per j, index j-1
  std::vector<bool> trend;
  std::vector<int> rows_used;
};

SweepTable sweep(const ArcCurve& curve, const std::vector<double>& betas, int j_max,
                 const SweepParams& params = {});

RateFit fit_rate(const SweepTable& table);

// True iff every present row with beta >= 50 satisfies
// (beta - log beta)/2 <= sqrt(-E_j) <= (beta + log beta)/2.
bool check_apriori(const SweepTable& table);

std::uint64_t curve_geometry_hash(const ArcCurve& curve);

}  // namespace arcdelta

#endif
