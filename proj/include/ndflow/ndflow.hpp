#ifndef NDFLOW_NDFLOW_HPP
#define NDFLOW_NDFLOW_HPP

#include "behavior.hpp"
#include "certificates.hpp"
#include "dnnl.hpp"
#include "equation_module.hpp"
#include "errors.hpp"
#include "flow.hpp"
#include "groebner.hpp"
#include "laurent.hpp"
#include "laurent_matrix.hpp"
#include "rational.hpp"
#include "realization.hpp"
#include "state_analysis.hpp"
#include "text.hpp"
#include "trajectory.hpp"
#include "unimodular.hpp"

#endif
