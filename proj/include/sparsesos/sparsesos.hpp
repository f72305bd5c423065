#pragma once

#include "sparsesos/basis.hpp"
#include "sparsesos/certificate.hpp"
#include "sparsesos/error.hpp"
#include "sparsesos/exponent.hpp"
#include "sparsesos/generators.hpp"
#include "sparsesos/graph.hpp"
#include "sparsesos/hull.hpp"
#include "sparsesos/parser.hpp"
#include "sparsesos/pipeline.hpp"
#include "sparsesos/polynomial.hpp"
#include "sparsesos/sdp.hpp"
#include "sparsesos/symmetry.hpp"
