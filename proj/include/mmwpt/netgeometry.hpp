#pragma once

#include <cstdint>
#include <vector>

#include "mmwpt/params.hpp"
#include "mmwpt/quadrature.hpp"
#include "mmwpt/rng.hpp"

namespace mmwpt::geo {

enum class LinkClass { LoS, NLoS };

struct BsPoint {
  double radius_m;
  double azimuth_rad;
  LinkClass link;
};

struct NetworkRealization {
  std::vector<BsPoint> bss;
  int serving_idx = -1;  // -1 marks an empty deployment
  double sim_radius_m = 0.0;

  bool empty() const { return bss.empty(); }
};

/// LoS probability exp(-r / decay_length).
double los_probability(double r, const SystemParams& p);

/// Theta(x) = integral_0^x t f_Pr(t) dt (closed form for exponential f_Pr).
double theta_fn(double x, const SystemParams& p);

/// Xi(x) = integral_0^x t (1 - f_Pr(t)) dt; Theta(x) + Xi(x) = x^2/2.
double xi_fn(double x, const SystemParams& p);

/// Distance at which an NLoS link matches the path loss of a LoS link at x.
double boundary_los_to_nlos(double x, const SystemParams& p);
/// Inverse map: LoS distance matching an NLoS link at x.
double boundary_nlos_to_los(double x, const SystemParams& p);

/// Unnormalized association-distance densities; the LoS and NLoS branches
/// jointly integrate to one.
double assoc_pdf_los(double x, const SystemParams& p);
double assoc_pdf_nlos(double x, const SystemParams& p);

/// Probability of associating with a LoS BS, by quadrature of assoc_pdf_los.
double los_assoc_probability(const SystemParams& p,
                             const quad::QuadSpec& spec = {});

/// Simulation radius policy: large enough that the empty-deployment
/// probability is below 1e-6 and both blockage-decay and power-law
/// interference tails are negligible.
double default_sim_radius(const SystemParams& p);

/// One PPP deployment on a disk: Poisson count, uniform positions,
/// independent LoS thinning, smallest-path-loss association.
NetworkRealization sample_realization(const SystemParams& p, double sim_radius_m,
                                      std::uint64_t rng_seed,
                                      std::uint64_t rng_stream = 0);

/// As above, drawing from an existing generator (per-trial substreams).
NetworkRealization sample_realization(const SystemParams& p, double sim_radius_m,
                                      Rng& rng);

}  // namespace mmwpt::geo
