#pragma once

#include "autores/asymptotics.hpp"
#include "autores/envelope.hpp"
#include "autores/errors.hpp"
#include "autores/experiments.hpp"
#include "autores/integrator.hpp"
#include "autores/model.hpp"
#include "autores/reduction.hpp"
#include "autores/run_io.hpp"
#include "autores/stability.hpp"
