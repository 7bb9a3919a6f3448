#pragma once

#include "reglab/asymptotics.hpp"
#include "reglab/cli.hpp"
#include "reglab/hilbert.hpp"
#include "reglab/io.hpp"
#include "reglab/linalg.hpp"
#include "reglab/monomial.hpp"
#include "reglab/parallel.hpp"
#include "reglab/resolution.hpp"
#include "reglab/simplicial.hpp"
