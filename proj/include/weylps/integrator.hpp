#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "weylps/atlas.hpp"
#include "weylps/residue.hpp"
#include "weylps/series.hpp"

namespace weylps {

/// Raised when the step size underflows or no chart keeps the solution
/// finite.
class IntegrationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Chart vector field with floating coefficients, evaluated over double or
/// complex<double>.
class CompiledField {
 public:
  CompiledField() = default;
  explicit CompiledField(const ChartVectorField& exact);

  void operator()(const std::vector<double>& x, std::vector<double>& out) const { eval(x, out); }
  void operator()(const std::vector<std::complex<double>>& x, std::vector<std::complex<double>>& out) const {
    eval(x, out);
  }

 private:
  struct Term {
    double c;
    std::vector<int> e;
  };
  template <class S>
  void eval(const std::vector<S>& x, std::vector<S>& out) const;

  std::size_t nvars_ = 0;
  int maxdeg_ = 0;
  std::vector<std::vector<Term>> rhs_;
};

/// Floating vector fields of every chart for one parameter point. Fields are
/// reconstructed on first use; the object is safe to share between threads.
class NumericAtlas {
 public:
  NumericAtlas(int l, RatVector alpha, int degree_bound = kDefaultDegreeBound);

  [[nodiscard]] int l() const { return l_; }
  [[nodiscard]] const RatVector& alpha() const { return alpha_; }
  const CompiledField& field(const ChartId& c) const;

 private:
  int l_;
  RatVector alpha_;
  int degree_bound_;
  mutable std::mutex mu_;
  mutable std::map<std::string, std::unique_ptr<CompiledField>> fields_;
};

struct IntegratorOptions {
  double rtol = 1e-9;
  double atol = 1e-12;
  double switch_threshold = 10.0;
  double hysteresis = 2.0;  // a chart is entered only if its score is below threshold / hysteresis
  double initial_step = 0.0;  // 0 picks one automatically
  long max_steps = 2'000'000;
  bool detect_poles = true;
  std::vector<double> output_times;  // steps are clipped to land on these
};

/// Reads WEYLPS_RTOL / WEYLPS_ATOL if set.
IntegratorOptions default_options();

template <class S>
struct TrajectorySampleT {
  S t;
  ChartPointT<S> point;
};
using TrajectorySample = TrajectorySampleT<double>;

struct PoleEvent {
  double t0 = 0.0;
  std::vector<double> residue_estimate;
  ResidueClass type;
  double local_error = 0.0;     // max deviation of the estimate from the class vector
  ChartPointT<double> point;    // regular chart representation at t0
};

struct Trajectory {
  RatVector alpha;
  std::vector<TrajectorySample> samples;  // initial point, every accepted step and every chart switch
  std::vector<TrajectorySample> outputs;  // values at options.output_times
  std::vector<PoleEvent> events;
  double rtol = 0.0;
  double atol = 0.0;
  long steps = 0;
  long rejected = 0;
  int chart_switches = 0;

  [[nodiscard]] const TrajectorySample& back() const { return samples.back(); }
};

struct ComplexTrajectory {
  RatVector alpha;
  std::vector<TrajectorySampleT<std::complex<double>>> vertices;  // one per contour vertex
  long steps = 0;
  int chart_switches = 0;
};

/// Adaptive Dormand-Prince 5(4) integration over real t from t0 to t1 (either
/// direction) with chart switching and pole detection. Real poles closer than
/// 10 sqrt(rtol) are reported as one event when their combined residue, seen
/// at a larger scale, is a class.
Trajectory integrate(const NumericAtlas& atlas, const ChartPointT<double>& init, double t0, double t1,
                     const IntegratorOptions& opt = {});

/// Integration along the piecewise-linear contour through `contour` (which
/// starts at the initial time). No pole detection.
ComplexTrajectory integrate_contour(const NumericAtlas& atlas, const ChartPointT<std::complex<double>>& init,
                                    const std::vector<std::complex<double>>& contour,
                                    const IntegratorOptions& opt = {});

/// A component f_j that went through infinity (1/f_j changed sign) during one
/// accepted step.
struct PoleHint {
  ChartPointT<double> start;  // point at the beginning of the step
  double t = 0.0;
  double h = 0.0;
  int component = 0;
};

/// Finds t0 by regula falsi on 1/f_j, estimates the residues from symmetric
/// samples around t0 and matches the nearest class. Returns nullopt if the
/// nearest class is the holomorphic one (no pole). Throws
/// IntegrationError("unclassified pole") if no class is within 0.1.
std::optional<PoleEvent> locate_and_classify_pole(const NumericAtlas& atlas, const PoleHint& hint, const IntegratorOptions& opt = {});

/// Residue classification tolerance (max norm).
constexpr double kPoleClassTolerance = 0.1;

/// Laurent family predicted by the correspondence formulas from the chart
/// values at the event (the chart of the event's stratum).
LaurentFamily local_family(const NumericAtlas& atlas, const PoleEvent& event, int order,
                           const IntegratorOptions& opt = {});

struct LocalDeviation {
  double absolute = 0.0;  // max |f_num - f_series|_inf
  double relative = 0.0;  // max |f_num - f_series|_inf / max(1, |f_series|_inf)
};

/// Integrates the numeric solution around the circle |t - t0| = radius and
/// compares it at the contour vertices with the order-N local family.
LocalDeviation local_expansion_deviation(const NumericAtlas& atlas, const PoleEvent& event, int order,
                                         double radius, const IntegratorOptions& opt = {}, int vertices = 32);

/// The relative part of local_expansion_deviation.
double compare_local_expansion(const NumericAtlas& atlas, const PoleEvent& event, int order, double radius,
                               const IntegratorOptions& opt = {}, int vertices = 32);

/// Root-test estimate min_i min_{from <= n <= order} |c_n^i|^{-1/n} of the
/// convergence radius of a family.
double coefficient_radius(const LaurentFamily& family, int from);

/// Relative distance to the start after integrating from t0 - span across
/// the pole to t0 + span and back.
double crossing_reversibility(const NumericAtlas& atlas, const PoleEvent& event, double span,
                              const IntegratorOptions& opt = {});

/// Chart point expressed in the empty chart (throws SingularError on the
/// polar locus).
std::vector<double> to_empty_chart(const NumericAtlas& atlas, const ChartPointT<double>& p);

}  // namespace weylps
