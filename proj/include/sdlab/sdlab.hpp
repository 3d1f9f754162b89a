#pragma once

#include "cli.hpp"
#include "curve.hpp"
#include "stability.hpp"
#include "verify.hpp"
