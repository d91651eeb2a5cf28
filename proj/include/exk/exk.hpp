#pragma once

#include "exk/enumeration.hpp"
#include "exk/errors.hpp"
#include "exk/excursion.hpp"
#include "exk/io.hpp"
#include "exk/jump_law.hpp"
#include "exk/montecarlo.hpp"
#include "exk/probability.hpp"
#include "exk/rational.hpp"
#include "exk/transforms.hpp"
#include "exk/tree.hpp"
#include "exk/vervaat.hpp"
