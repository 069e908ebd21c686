#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "billiards/blmetric.hpp"
#include "billiards/bodies.hpp"
#include "billiards/geometry.hpp"
#include "billiards/patches.hpp"

namespace billiards {

struct ChordPair {
  Vec p;
  Vec q;  // the chord partner of p along the sample's direction
};

/// Sampled graph of the chord involution: for each p the second point q of
/// the boundary intersection with the line through p of direction alpha.
struct ChordPairSample {
  Vec alpha;                      // unit chord direction
  std::vector<ChordPair> pairs;
  std::vector<Vec> equator_points;  // chord-tangency points (single-body mode)
  int dropped = 0;                // lines that escaped a patch
};

struct InvolutionConfig {
  int samples = 96;               // target chord count
  double hemisphere_margin = 0.05;
  double transversality_min = 0.05;  // patch mode
  double max_drop_fraction = 0.2;    // patch mode failure threshold
};

ChordPairSample chord_involution(const GaugeBody& body, const Vec& alpha,
                                 int m, const InvolutionConfig& cfg = {});

/// Two-germ form: p samples the first patch, q is the intersection of the
/// line through p parallel to alpha with the second patch. Escaping or
/// non-transversal lines are dropped and counted.
ChordPairSample chord_involution(const PlanarPatch& s1, const PlanarPatch& s2,
                                 const Vec& alpha, int m,
                                 const InvolutionConfig& cfg = {});

/// Least-squares affine map through the pair set, fitted symmetrically with
/// both (p, q) and (q, p) orientations. Returns the map and the RMS error of
/// |L p + b - q| normalized by the diameter of the sampled cloud.
std::pair<AffineMap, double> fit_affine_map(const ChordPairSample& sample);

struct DefectReport {
  Vec alpha;
  AffineMap fitted;
  double fit_rms = 0.0;
  double involution_residual = 0.0;      // |L^2 - Id| + |L b + b|
  double eigenstructure_residual = 0.0;  // spectrum vs {+1 x (n-1), -1}
  double minus_one_axis_sine = 0.0;      // angle of the -1 eigenvector to alpha
  double anchor_discrepancy = 0.0;       // equator-anchored rebuild, diagnostic
  int pair_count = 0;
  int dropped = 0;
};

DefectReport projectivity_defect(const GaugeBody& body, const Vec& alpha,
                                 const InvolutionConfig& cfg = {});
DefectReport projectivity_defect(const PlanarPatch& s1, const PlanarPatch& s2,
                                 const Vec& alpha,
                                 const InvolutionConfig& cfg = {});

struct VerdictConfig {
  int grid = 0;          // direction count; 0 = 40 in 2D, 200 in 3D
  double tol = 1e-5;
  InvolutionConfig chords;
  int defect_samples = 256;  // boundary samples for the sphericity cross-check
  BLConfig bl;
};

struct VerdictRecord {
  bool is_ellipsoid_like = false;
  double max_defect = 0.0;
  Vec argmax_direction;
  double bl_cross_check = 0.0;  // sphericity defect of the second-moment metric
  std::vector<DefectReport> reports;
  int skipped_directions = 0;
};

/// Sweeps a quasi-uniform direction grid; true iff both the worst chord
/// fit_rms and the sphericity defect stay below tol.
VerdictRecord ellipsoid_verdict(const GaugeBody& body,
                                const VerdictConfig& cfg = {});

struct TwoPatchConfig {
  double cone = 0.2;      // half-angle around the base direction, radians
  int directions = 11;
  InvolutionConfig chords;
};

/// Defect sweep over a cone of chord directions around alpha0, which must be
/// transversal to both patches at their base points.
std::vector<DefectReport> two_patch_defect(const PlanarPatch& s1,
                                           const PlanarPatch& s2,
                                           const Vec& alpha0,
                                           const TwoPatchConfig& cfg = {});

}  // namespace billiards
