#pragma once

#include "orthosign/certificate.hpp"
#include "orthosign/classify.hpp"
#include "orthosign/combinatorics.hpp"
#include "orthosign/config.hpp"
#include "orthosign/constructions.hpp"
#include "orthosign/error.hpp"
#include "orthosign/exact_linalg.hpp"
#include "orthosign/matrix.hpp"
#include "orthosign/pattern.hpp"
#include "orthosign/random_sim.hpp"
#include "orthosign/rng.hpp"
#include "orthosign/scalar.hpp"
#include "orthosign/sipp.hpp"
