#ifndef RESONANCE_RESONANCE_HPP
#define RESONANCE_RESONANCE_HPP

#include "extremes.hpp"
#include "io.hpp"
#include "kernels.hpp"
#include "kronecker.hpp"
#include "lattice.hpp"
#include "resonator.hpp"
#include "trigpoly.hpp"

#endif // RESONANCE_RESONANCE_HPP
