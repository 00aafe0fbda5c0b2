#pragma once

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <functional>
#include <iosfwd>
#include <limits>
#include <vector>

namespace asdlab {

using cplx = std::complex<double>;
using CVec = std::vector<cplx>;

// Ordered complex state; entries are checked finite on construction.
class StateVector {
 public:
  StateVector() = default;
  explicit StateVector(CVec entries);
  StateVector(std::initializer_list<cplx> entries) : StateVector(CVec(entries)) {}

  std::size_t dimension() const { return entries_.size(); }
  const CVec& entries() const { return entries_; }
  cplx operator[](std::size_t i) const { return entries_[i]; }
  double norm_inf() const;

 private:
  CVec entries_;
};

struct IntegratorOptions {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  double max_step = std::numeric_limits<double>::infinity();
  double blow_up_threshold = 1e8;
  long max_steps = 2000000;
  double initial_step = 0.0;  // 0 selects a starting step automatically

  void validate() const;
};

enum class Termination { Completed, BlowUp, StepFailure };
const char* termination_name(Termination t);

// dy = f(t, y). The callable writes into dy, which is pre-sized.
using VectorField = std::function<void(double t, const CVec& y, CVec& dy)>;

class Trajectory {
 public:
  double t_start() const { return t_start_; }
  double t_end() const { return t_end_; }
  // Last time the solution is defined on; equals t_end() when completed.
  double t_reached() const { return t_reached_; }
  Termination termination() const { return termination_; }
  std::size_t dimension() const { return dim_; }
  std::size_t num_nodes() const { return times_.size(); }
  const std::vector<double>& times() const { return times_; }
  const CVec& node_state(std::size_t i) const { return states_[i]; }
  long steps_accepted() const { return accepted_; }
  long steps_rejected() const { return rejected_; }

  StateVector eval(double t) const;
  bool covers(double t) const;

 private:
  friend Trajectory integrate(const VectorField&, const StateVector&, double, double,
                              const IntegratorOptions&);
  void interpolate(std::size_t step, double t, CVec& out) const;

  double t_start_ = 0, t_end_ = 0, t_reached_ = 0;
  Termination termination_ = Termination::Completed;
  std::size_t dim_ = 0;
  std::vector<double> times_;
  std::vector<CVec> states_;
  // Per step i (between node i and i+1): step size and 8 dense-output vectors.
  std::vector<double> step_h_;
  std::vector<std::array<CVec, 8>> dense_;
  long accepted_ = 0, rejected_ = 0;
};

// Adaptive DOP853 integration over [t0, t1]; t1 < t0 integrates backwards.
Trajectory integrate(const VectorField& field, const StateVector& y0, double t0, double t1,
                     const IntegratorOptions& opts = {});

StateVector dense_eval(const Trajectory& traj, double t);

// CSV with header t,re(y_0),im(y_0),...; 17 significant digits. Samples at
// the node times when `times` is empty.
void write_trajectory_csv(std::ostream& os, const Trajectory& traj,
                          const std::vector<double>& times = {});

// ---------------------------------------------------------------------------
// Contours and matrix transport

// A segment or circular arc, parametrized by s in [0, 1].
struct ContourPiece {
  enum class Kind { Segment, Arc } kind = Kind::Segment;
  cplx a, b;              // segment endpoints
  cplx center;            // arc data
  double radius = 0, theta0 = 0, theta1 = 0;

  cplx point(double s) const;
  cplx tangent(double s) const;  // d point / ds
  double distance_to(cplx z) const;
};

class Contour {
 public:
  Contour() = default;
  static Contour segment(cplx a, cplx b);
  static Contour circle(cplx center, double radius, double start_angle = 0.0, bool ccw = true);

  Contour& line_to(cplx b);
  Contour& arc(cplx center, double radius, double theta0, double theta1);
  Contour& append(const Contour& other);
  Contour reversed() const;

  const std::vector<ContourPiece>& pieces() const { return pieces_; }
  cplx start() const;
  cplx end() const;
  bool closed(double tol = 1e-12) const;
  double distance_to(cplx z) const;

 private:
  std::vector<ContourPiece> pieces_;
};

using MatrixField = std::function<Eigen::Matrix2cd(cplx z)>;

IntegratorOptions default_transport_options();

// Fundamental-solution transport of dY/dz = B(z) Y along the contour.
// Throws PoleOnPath if |B| exceeds opts.blow_up_threshold on the path.
Eigen::Matrix2cd integrate_matrix_ode(const MatrixField& coefficient, const Contour& path,
                                      const Eigen::Matrix2cd& Y0,
                                      const IntegratorOptions& opts = default_transport_options());

}  // namespace asdlab
