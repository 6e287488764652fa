#pragma once

#include "qkdist/degree.hpp"
#include "qkdist/distance.hpp"
#include "qkdist/error.hpp"
#include "qkdist/qkcore.hpp"
#include "qkdist/rootsys.hpp"
#include "qkdist/verify.hpp"
#include "qkdist/weyl.hpp"
