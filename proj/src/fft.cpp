#include "wpl/fft.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>

namespace wpl {

namespace {

// Plan cache keyed by (n_transform, n_batch, stride layout, sign). Plans are
// created with FFTW_ESTIMATE (deterministic algorithm choice) and
// FFTW_UNALIGNED so they can be executed on any caller buffer via the
// new-array interface. Creation is serialized; execution is thread-safe.
struct PlanKey {
  int n;        // transform length
  int howmany;  // batch count
  int stride;   // element stride within one transform
  int dist;     // distance between consecutive transforms
  int sign;
  bool operator<(const PlanKey& o) const {
    return std::tie(n, howmany, stride, dist, sign) <
           std::tie(o.n, o.howmany, o.stride, o.dist, o.sign);
  }
};

std::mutex g_plan_mutex;
std::map<PlanKey, fftw_plan>& plan_cache() {
  static std::map<PlanKey, fftw_plan> cache;
  return cache;
}

fftw_plan get_plan(const PlanKey& key) {
  std::lock_guard<std::mutex> lock(g_plan_mutex);
  auto& cache = plan_cache();
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;

  std::vector<cplx> scratch(static_cast<std::size_t>(key.dist) * key.howmany +
                            static_cast<std::size_t>(key.stride) * key.n);
  auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
  fftw_plan plan = fftw_plan_many_dft(1, &key.n, key.howmany, buf, nullptr,
                                      key.stride, key.dist, buf, nullptr,
                                      key.stride, key.dist, key.sign,
                                      FFTW_ESTIMATE | FFTW_UNALIGNED);
  if (!plan) throw std::runtime_error("fft: plan creation failed");
  cache.emplace(key, plan);
  return plan;
}

void run_axis(ComplexField& f, bool along_x, Direction dir) {
  const int nx = f.grid.nx;
  const int ny = f.grid.ny;
  const int sign = dir == Direction::forward ? FFTW_FORWARD : FFTW_BACKWARD;
  PlanKey key = along_x ? PlanKey{nx, ny, 1, nx, sign}
                        : PlanKey{ny, nx, nx, 1, sign};
  fftw_plan plan = get_plan(key);
  auto* buf = reinterpret_cast<fftw_complex*>(f.amp.data());
  fftw_execute_dft(plan, buf, buf);
  const double scale = 1.0 / std::sqrt(static_cast<double>(along_x ? nx : ny));
  for (cplx& c : f.amp) c *= scale;
}

[[noreturn]] void bad_rep(const char* what) {
  throw std::invalid_argument(std::string("transform: representation tag inconsistent with ") + what);
}

}  // namespace

void transform_inplace(ComplexField& f, Axis axis, Direction dir) {
  const bool fwd = dir == Direction::forward;
  switch (axis) {
    case Axis::both:
      if (f.rep != (fwd ? Rep::position : Rep::momentum)) bad_rep("full transform");
      run_axis(f, true, dir);
      run_axis(f, false, dir);
      f.rep = fwd ? Rep::momentum : Rep::position;
      return;
    case Axis::x_only:
      if (fwd) {
        if (f.rep == Rep::position) f.rep = Rep::mixed_kx;
        else if (f.rep == Rep::mixed_ky) f.rep = Rep::momentum;
        else bad_rep("forward x transform");
      } else {
        if (f.rep == Rep::mixed_kx) f.rep = Rep::position;
        else if (f.rep == Rep::momentum) f.rep = Rep::mixed_ky;
        else bad_rep("inverse x transform");
      }
      run_axis(f, true, dir);
      return;
    case Axis::y_only:
      if (fwd) {
        if (f.rep == Rep::position) f.rep = Rep::mixed_ky;
        else if (f.rep == Rep::mixed_kx) f.rep = Rep::momentum;
        else bad_rep("forward y transform");
      } else {
        if (f.rep == Rep::mixed_ky) f.rep = Rep::position;
        else if (f.rep == Rep::momentum) f.rep = Rep::mixed_kx;
        else bad_rep("inverse y transform");
      }
      run_axis(f, false, dir);
      return;
  }
  throw std::logic_error("transform: unreachable");
}

ComplexField transform(const ComplexField& field, Axis axis, Direction dir) {
  ComplexField out = field;
  transform_inplace(out, axis, dir);
  return out;
}

}  // namespace wpl
