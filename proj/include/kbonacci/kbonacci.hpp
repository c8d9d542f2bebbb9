#pragma once

#include "kbonacci/errors.hpp"
#include "kbonacci/word.hpp"
#include "kbonacci/substitution.hpp"
#include "kbonacci/language.hpp"
#include "kbonacci/configuration.hpp"
#include "kbonacci/recognition.hpp"
#include "kbonacci/summation.hpp"
#include "kbonacci/potential.hpp"
#include "kbonacci/spectral.hpp"
#include "kbonacci/renorm.hpp"
#include "kbonacci/pressure.hpp"
#include "kbonacci/sampling.hpp"
