#pragma once

// Everything: core types, verifier, constructions, search oracle and I/O.

#include "smr/assembly.hpp"
#include "smr/base_constructions.hpp"
#include "smr/core.hpp"
#include "smr/even_k_partitions.hpp"
#include "smr/generate.hpp"
#include "smr/io.hpp"
#include "smr/odd_k_partitions.hpp"
#include "smr/search.hpp"
#include "smr/verifier.hpp"
