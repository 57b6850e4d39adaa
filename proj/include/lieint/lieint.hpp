#pragma once

#include "lieint/errors.hpp"
#include "lieint/exact.hpp"
#include "lieint/rootsys.hpp"
#include "lieint/repweights.hpp"
#include "lieint/charring.hpp"
#include "lieint/asymptotics.hpp"
#include "lieint/torusquad.hpp"
#include "lieint/harness.hpp"
