#ifndef MAIDKIT_BUILTIN_H_
#define MAIDKIT_BUILTIN_H_

#include <string>
#include <vector>

#include "maidkit/efg.h"
#include "maidkit/model.h"

namespace maidkit::builtin {

// Two taxis choose between a hotel (e) and a cheaper competitor (c); the
// second driver sees the first's choice.
Maim Taxi();
// Two states choose simultaneously to attack (a) or not (n).
Maim CyberWar();
// A worker of high (h) or low (l) ability goes to grad school (g) or
// applies (a); the firm, seeing only the choice, hires (j) or rejects (r).
// Pr(high) = p_high.
Maim JobHiring(double p_high = 0.5);
// Chance X informs D1; D2 sees D1. Four proper subgame bases that a
// game tree cannot show as subgames.
Maim TwoStage();

// Single-driver tree visiting one information set twice: exit at the
// first junction pays 0, at the second 4, never exiting pays 1.
Efg AbsentmindedDriver();
// Taxi game tree. With merged=true the two second-driver nodes form one
// intervention set.
Efg TaxiTree(bool merged);

// Names accepted by ByName.
std::vector<std::string> Names();
// Throws Error for an unknown name.
Maim ByName(const std::string& name);

}  // namespace maidkit::builtin

#endif  // MAIDKIT_BUILTIN_H_
