#pragma once

#include "fluctlab/measure.hpp"
#include "fluctlab/walk.hpp"

namespace fluct {

// The four ladder-height laws of a centered, adapted walk, obtained from the
// factorisation 1 - E[z^Y] = (1 - E[z^{S_{tau*+}}]) (1 - E[z^{S_{tau-}}]).
// The roots of z^L (E[z^Y] - 1) off the unit circle split into the two
// factors; the weak/strict atoms at zero follow from the extreme atoms of mu.
struct LadderFactorization {
  LatticeMeasure strict_ascending;   // mu*+ on [1, R]
  LatticeMeasure weak_ascending;     // mu+  on [0, R]
  LatticeMeasure weak_descending;    // mu-  on [-L, 0]
  LatticeMeasure strict_descending;  // mu*- on [-L, -1]
  // Largest coefficient error of the reassembled product against 1 - E[z^Y].
  double defect = 0.0;
};

LadderFactorization factorize_ladders(const WalkSpec& w);

}  // namespace fluct
