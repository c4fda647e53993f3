#pragma once

#include <synclat/admissible.hpp>
#include <synclat/field.hpp>
#include <synclat/jordan_special.hpp>
#include <synclat/matrix.hpp>
#include <synclat/network.hpp>
#include <synclat/partition.hpp>
#include <synclat/polydiag.hpp>
#include <synclat/polynomial.hpp>
#include <synclat/report.hpp>
#include <synclat/spectral.hpp>
#include <synclat/subspace.hpp>
#include <synclat/synchrony.hpp>
#include <synclat/verify.hpp>
