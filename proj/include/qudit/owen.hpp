#pragma once

namespace qudit {

// Standard Owen's T function T(h, a).
double owen_t(double h, double a);

// Generalized Owen's T,
//   T(h,a,b) = 1/(2*sqrt(2*pi)) * Int_h^inf exp(-x^2/2) erf((a*x+b)/sqrt(2)) dx,
// reduced to standard T plus erf terms; T(h,a,0) = T(h,a).
double owen_t_general(double h, double a, double b);

} // namespace qudit
