#pragma once

#include "admmlp/bp.hpp"
#include "admmlp/channel.hpp"
#include "admmlp/code.hpp"
#include "admmlp/code_io.hpp"
#include "admmlp/decoder.hpp"
#include "admmlp/fixed_projection.hpp"
#include "admmlp/harness.hpp"
#include "admmlp/llr.hpp"
#include "admmlp/oracle.hpp"
#include "admmlp/projection.hpp"
#include "admmlp/qformat.hpp"
#include "admmlp/rng.hpp"
