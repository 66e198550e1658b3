#ifndef CPLAP_CPLAP_HPP
#define CPLAP_CPLAP_HPP

#include "cplap/balance.hpp"
#include "cplap/consensus.hpp"
#include "cplap/error.hpp"
#include "cplap/fixtures.hpp"
#include "cplap/graph.hpp"
#include "cplap/io.hpp"
#include "cplap/oracle_check.hpp"
#include "cplap/random_graphs.hpp"
#include "cplap/sim.hpp"
#include "cplap/spectral.hpp"

#endif  // CPLAP_CPLAP_HPP
