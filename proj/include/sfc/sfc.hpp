#pragma once

// Standing Forest Coin protocol engine: deterministic off-chain simulator of
// the token ledger, oracle-gated preservation escrow, annual donation sweep
// and the tamper-evident audit trail.

#include "sfc/amount.hpp"
#include "sfc/audit.hpp"
#include "sfc/canonical.hpp"
#include "sfc/engine.hpp"
#include "sfc/errors.hpp"
#include "sfc/escrow.hpp"
#include "sfc/geo.hpp"
#include "sfc/ledger.hpp"
#include "sfc/oracle.hpp"
#include "sfc/scenario.hpp"
#include "sfc/sha256.hpp"
#include "sfc/simtime.hpp"
#include "sfc/sweep.hpp"
