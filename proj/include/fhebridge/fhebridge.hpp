#pragma once

#include "fhebridge/backend.hpp"
#include "fhebridge/bench.hpp"
#include "fhebridge/circuits.hpp"
#include "fhebridge/gates.hpp"
#include "fhebridge/lattice.hpp"
#include "fhebridge/report.hpp"
#include "fhebridge/secure_types.hpp"
