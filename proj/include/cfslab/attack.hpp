#pragma once

#include "cfslab/attack/bench.hpp"
#include "cfslab/attack/cracker.hpp"
#include "cfslab/attack/extrapolate.hpp"
#include "cfslab/attack/heuristics.hpp"
#include "cfslab/attack/padding_collision.hpp"
#include "cfslab/attack/password_space.hpp"
#include "cfslab/attack/prefix_leak.hpp"
#include "cfslab/attack/secrecy_audit.hpp"
