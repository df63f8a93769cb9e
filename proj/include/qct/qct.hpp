#pragma once

#include "qct/core.hpp"
#include "qct/special.hpp"
#include "qct/classical.hpp"
#include "qct/quantum.hpp"
#include "qct/filter.hpp"
#include "qct/decoherence.hpp"
#include "qct/scenario.hpp"
