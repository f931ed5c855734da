#pragma once

#include "jackhilb/rational.hpp"
#include "jackhilb/linalg.hpp"
#include "jackhilb/partition.hpp"
#include "jackhilb/symfunc.hpp"
#include "jackhilb/surface.hpp"
#include "jackhilb/fock.hpp"
#include "jackhilb/hilb.hpp"
#include "jackhilb/io.hpp"
