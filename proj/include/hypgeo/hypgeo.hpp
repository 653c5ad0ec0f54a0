#pragma once

#include "hypgeo/error.hpp"
#include "hypgeo/format.hpp"
#include "hypgeo/hypergeom.hpp"
#include "hypgeo/shape_classes.hpp"
#include "hypgeo/oracles.hpp"
#include "hypgeo/certificates.hpp"
#include "hypgeo/verifier.hpp"
#include "hypgeo/json_io.hpp"
#include "hypgeo/dispatch.hpp"
#include "hypgeo/scan.hpp"
