#pragma once

#include <optional>
#include <string>
#include <vector>

#include "msk/circle_fun.hpp"

namespace msk {

struct BlaschkeFactor {
  Complex w;        // zero location, |w| <= 0.9
  CMat projection;  // orthogonal projection deciding which directions vanish
};

// A certified matrix-valued inner function: unitary boundary values on the
// grid within tol::inner, analytic, and (unless flagged constant) pure in the
// sense ||Theta(0)|| < 1 - tol::eps_strict.
class InnerFn {
 public:
  InnerFn() = default;

  const CircleFn& fn() const { return fn_; }
  int dim() const { return fn_.rows(); }
  int grid_size() const { return fn_.grid_size(); }

  double unitarity_defect() const { return defect_; }
  double purity() const { return purity_; }  // ||Theta(0)||
  // Constant unitary functions are accepted for bookkeeping but sit outside
  // the pure-case theory; downstream constructions reject them.
  bool constant() const { return constant_; }
  std::optional<int> degree_hint() const { return hint_; }
  const std::string& spec_json() const { return spec_; }

  CMat at_zero() const { return fn_.eval_disk(Complex(0.0, 0.0)); }
  CMat eval(Complex lambda) const { return fn_.eval_disk(lambda); }

  friend InnerFn certify(CircleFn fn, std::optional<int> degree_hint,
                         std::string spec_json);

 private:
  CircleFn fn_;
  double defect_ = 0.0;
  double purity_ = 0.0;
  bool constant_ = false;
  std::optional<int> hint_;
  std::string spec_;
};

// z^n I_d; the model space it carries has dimension n*d.
InnerFn monomial(int n, int d, int grid_size);

// Left-to-right product of factors b_w(z) P + (I - P), where
//   b_w(z) = z                        when w == 0,
//   b_w(z) = (|w|/w) (w - z)/(1 - conj(w) z)   otherwise  (so b_w(0) > 0).
// Degree hint is the sum of projection ranks.  Note a product whose first
// factor has P != I is not pure; generators that need purity lead with a
// full-rank factor.
InnerFn blaschke_potapov(const std::vector<BlaschkeFactor>& factors, int d,
                         int grid_size);

// Crofoot transform by a strict contraction W:
//   Theta'(z) = -W + D_{W*} (I - Theta(z) W*)^{-1} Theta(z) D_W.
// Maps pure inner to pure inner of the same degree.
InnerFn crofoot_inner(const InnerFn& theta, const CMat& w);

// Validate a grid function as inner: square shape, unitary boundary samples
// (NotInner beyond tol::inner), pure at the origin (NotPure) unless the
// function is constant, in which case it is accepted and flagged.  Non-exact
// budgets are re-measured from the computed spectrum.
InnerFn certify(CircleFn fn, std::optional<int> degree_hint = std::nullopt,
                std::string spec_json = {});

}  // namespace msk
