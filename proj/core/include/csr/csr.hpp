#pragma once

#include "csr/estimators.hpp"
#include "csr/guarantees.hpp"
#include "csr/io.hpp"
#include "csr/montecarlo.hpp"
#include "csr/sensing.hpp"
#include "csr/signal.hpp"
#include "csr/types.hpp"
