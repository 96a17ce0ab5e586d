#pragma once

#include "poisred/superfn.hpp"

#include <vector>

namespace poisred {

/// Global sign relating the contraction bracket pi(df,dg) to the iterated
/// bracket {{S,f},g} (and sharp(df) to {S,f}). Fixed once on the standard R^2
/// structure and guarded by tests; see fnBracket().
inline constexpr int kDerivedBracketSign = -1;

/// Degree-2 homogeneous value: a bivector field, equally the function S.
struct Bivector {
    SuperFn value;
    explicit Bivector(SuperFn v);
};

/// Degree-1 homogeneous value: a vector field sum a_i(x) xi_i.
struct VectorField {
    SuperFn value;
    explicit VectorField(SuperFn v);
};

/// The degree -1 Poisson bracket on graded polynomials, as a closed formula
/// in the partial derivatives:
///   {F,G} = sum_i [ (-1)^(|F|+1) (dF/dxi_i)(dG/dx_i) - (dF/dx_i)(dG/dxi_i) ]
/// for F homogeneous of odd degree |F|, extended bilinearly. The sign
/// placement is forced by {xi_j,x_k} = delta_jk together with graded
/// antisymmetry and the second-slot Leibniz rule.
SuperFn poissonBracket(const SuperFn& f, const SuperFn& g);

/// Independent recursive Schouten-bracket oracle: functions bracket to zero,
/// vector field against function is the directional derivative, vector
/// fields bracket by the Lie bracket, and higher degrees reduce through the
/// wedge Leibniz rule and graded antisymmetry. Shares no bracket logic with
/// poissonBracket.
SuperFn schoutenDirect(const SuperFn& p, const SuperFn& q);

/// X(f) for a degree-1 X = sum a_i xi_i and arbitrary f: sum a_i df/dx_i.
SuperFn applyVectorField(const SuperFn& x, const SuperFn& f);

/// pi(df,dg) by contraction: sum_{i<j} pi_ij (d_i f d_j g - d_j f d_i g).
SuperFn fnBracket(const Bivector& pi, const SuperFn& f, const SuperFn& g);

/// Contraction of a covector alpha = sum alpha_i dx_i with the bivector:
/// sharp(alpha) = sum_{i<j} pi_ij (alpha_i xi_j - alpha_j xi_i).
VectorField sharp(const Bivector& pi, const std::vector<SuperFn>& alpha);

/// L_X pi, computed as -{S, X}.
SuperFn lieDerivativeBivector(const VectorField& x, const Bivector& pi);

/// {S,S} = 0, i.e. [pi,pi] = 0.
bool isPoisson(const Bivector& pi);

/// {{f,g},h} + {{g,h},f} + {{h,f},g} with the contraction bracket; vanishes
/// for all triples of functions iff pi is Poisson.
SuperFn cyclicJacobiSum(const Bivector& pi, const SuperFn& f, const SuperFn& g, const SuperFn& h);

} // namespace poisred
