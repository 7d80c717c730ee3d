#ifndef QTWO_QTWO_HPP
#define QTWO_QTWO_HPP

#include "arith.hpp"
#include "bring.hpp"
#include "chart.hpp"
#include "connecting.hpp"
#include "homology.hpp"
#include "serialize.hpp"
#include "spectral.hpp"
#include "tmf.hpp"
#include "verify.hpp"

#endif
