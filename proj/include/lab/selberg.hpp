#pragma once
#include <cstdint>
#include <limits>
#include <vector>

#include "lab/surface.hpp"

// Length spectrum enumeration and Selberg zeta values. Entries are conjugacy
// classes of primitive hyperbolic elements, deduplicated also under inversion;
// a generic class carries multiplicity 2 (both orientations), an
// inversion-symmetric one carries 1.
namespace lab::sel {

struct LengthEntry {
  double len = 0.0;
  int mult = 0;
};

struct LengthSpectrum {
  std::vector<LengthEntry> entries; // ascending in len
  double cutoff = 0.0;              // requested length cap
  double complete_below = 0.0;      // ball-certificate completeness radius
  double systole() const;
};

// Enumeration knobs. The orbit ball holds ~e^R/(4(g-1)) elements at prune
// radius R = cutoff + 2 D + slack, D = max generator displacement of the
// basepoint, so budgets bound both memory and time.
struct EnumBudget {
  std::size_t max_elements = 4u << 20; // stored orbit points
  double slack = 2.0;                  // prefix-wander margin beyond R
  // Hard cap on the prune radius; the orbit ball holds ~e^R/4 points. The
  // handle-collected generators displace the basepoint by 4-6 even at thick
  // points, so the certified radius cutoff + 2 D + slack is often
  // unaffordable; the cap keeps runs feasible and complete_below reports
  // what survives (usually 0 = uncertified, with short classes still found
  // in practice because their axes pass near the basepoint).
  double max_radius = 14.0;
};

// Reduced-word search over the 2g generators and inverses, pruned by
// basepoint displacement. Conjugacy classes are deduplicated by the exact
// canonical cyclic word (no float comparisons); visibly periodic words and
// numeric k-fold lengths of shorter entries are dropped as non-primitive.
// The basepoint is chosen among the hexagon frames to minimize the largest
// generator displacement.
LengthSpectrum length_spectrum(const hyp::FuchsianSurface& s, double l_max,
                               const EnumBudget& budget = {});

// Canonical class key of a reduced word: lexicographically minimal rotation
// among the cyclic word and its inverse. Letter 2i is generator i, 2i+1 its
// inverse. Exposed for the dedup property tests.
std::vector<std::int8_t> canonical_class_word(const std::vector<std::int8_t>& word);

struct ZetaEval {
  double s = 0.0;
  double value = 0.0;
  int k_max = 0;
  double l_max = 0.0;
  double truncation_bound = 0.0; // >= |log value gap to k_max + 2|
};

// Z(s) = prod_entries prod_{k<=k_max} (1 - e^{-(s+k) l})^mult, truncated to
// the spectrum's entries.
ZetaEval selberg_zeta(const LengthSpectrum& spec, double s, int k_max);

// log Z(s) as the double sum of log1p terms (the product form is the
// cross-check; both are exposed for the agreement property).
double log_selberg_zeta_sum(const LengthSpectrum& spec, double s, int k_max);
double log_selberg_zeta_product(const LengthSpectrum& spec, double s, int k_max);

// Z has a simple zero at s = 1 (constant eigenfunction), so Z'(1) is the
// limit of Z(1+h)/h, extrapolated by one Richardson step over h, h/2.
struct Zp1Eval {
  double value = 0.0;   // 2 D(h/2) - D(h)
  double rel_gap = 0.0; // |D(h/2) - D(h)| / |D(h/2)|
};
Zp1Eval selberg_zp1(const LengthSpectrum& spec, int k_max, double h = 1e-2);

// det' Delta = Z'(1) e^{(2g-2) C} and the ghost factor det(P*P)^{1/2}
// = Z(2) e^{(2g-2) C'}. The universal constants C, C' default to unset, in
// which case the raw Z'(1), Z(2) are returned with constants_set = false;
// every consumer works with ratios where the constants cancel.
struct DetPair {
  double det_prime = 0.0;
  double ghost = 0.0;
  bool constants_set = false;
  double zp1_rel_gap = 0.0;
};
struct DetConstants {
  bool set = false;
  double c = 0.0;
  double c_prime = 0.0;
};
DetPair dhoker_phong_dets(const LengthSpectrum& spec, int genus, int k_max,
                          const DetConstants& constants = {});

// Degeneration envelopes: prod_j e^{-pi^2/(3 l_j)} / l_j * prod_k lambda_k
// bounds Z'(1) from below up to a genus constant; the z2 variant uses l^3 in
// the denominator and no eigenvalue factor.
enum class Envelope { zp1, z2 };
double wolpert_envelope(const std::vector<double>& l_short,
                        const std::vector<double>& small_eigs, Envelope which);

} // namespace lab::sel
